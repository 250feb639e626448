#include "hybridcat/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hybridcat {

std::string_view to_string(Polarization p) { return p == Polarization::H ? "H" : "V"; }

Polarization orthogonal(Polarization p) { return p == Polarization::H ? Polarization::V : Polarization::H; }

std::string to_string(const ModeLabel& label) {
    return label.spatial + "_" + std::string(to_string(label.polarization));
}

HilbertSpace::HilbertSpace(std::vector<ModeDescriptor> modes) : modes_(std::move(modes)) {
    if (modes_.empty()) throw ZeroCutoff("a Hilbert space needs at least one mode");
    std::set<ModeLabel> seen;
    for (const auto& m : modes_) {
        if (m.cutoff < 1) throw ZeroCutoff("mode " + to_string(m.label()) + " has cutoff < 1");
        if (!seen.insert(m.label()).second) throw DuplicateMode("duplicate mode " + to_string(m.label()));
    }
    strides_.assign(modes_.size(), 1);
    for (std::size_t i = modes_.size(); i-- > 0;) {
        strides_[i] = total_dim_;
        total_dim_ *= modes_[i].dim();
    }
}

std::optional<std::size_t> HilbertSpace::find(const ModeLabel& label) const {
    for (std::size_t i = 0; i < modes_.size(); ++i)
        if (modes_[i].label() == label) return i;
    return std::nullopt;
}

std::size_t HilbertSpace::index_of(const ModeLabel& label) const {
    if (auto i = find(label)) return *i;
    throw UnknownMode("unknown mode " + to_string(label));
}

bool HilbertSpace::has_spatial(std::string_view spatial) const {
    return std::any_of(modes_.begin(), modes_.end(), [&](const auto& m) { return m.spatial == spatial; });
}

std::vector<int> HilbertSpace::occupations(std::size_t basis_index) const {
    std::vector<int> occ(modes_.size());
    for (std::size_t i = 0; i < modes_.size(); ++i) occ[i] = occupation(basis_index, i);
    return occ;
}

std::size_t HilbertSpace::basis_index(std::span<const int> occupations) const {
    if (occupations.size() != modes_.size()) throw SpaceMismatch("occupation list length differs from mode count");
    std::size_t index = 0;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (occupations[i] < 0 || occupations[i] > modes_[i].cutoff)
            throw CutoffExceeded("occupation " + std::to_string(occupations[i]) + " outside [0, " +
                                 std::to_string(modes_[i].cutoff) + "] for mode " + to_string(modes_[i].label()));
        index += static_cast<std::size_t>(occupations[i]) * strides_[i];
    }
    return index;
}

HilbertSpace HilbertSpace::select(std::span<const std::size_t> mode_indices) const {
    std::vector<ModeDescriptor> picked;
    picked.reserve(mode_indices.size());
    for (auto i : mode_indices) picked.push_back(modes_.at(i));
    return HilbertSpace(std::move(picked));
}

HilbertSpace HilbertSpace::with_cutoff(const ModeLabel& label, int cutoff) const {
    auto modes = modes_;
    modes[index_of(label)].cutoff = cutoff;
    return HilbertSpace(std::move(modes));
}

HilbertSpace build_space(std::vector<ModeDescriptor> mode_specs) { return HilbertSpace(std::move(mode_specs)); }

HilbertSpace concat(const HilbertSpace& first, const HilbertSpace& second) {
    auto modes = first.modes();
    for (const auto& m : second.modes()) {
        if (first.contains(m.label())) throw OverlappingModes("mode " + to_string(m.label()) + " appears in both factors");
        modes.push_back(m);
    }
    return HilbertSpace(std::move(modes));
}

std::vector<std::size_t> mode_indices(const HilbertSpace& space, std::span<const ModeLabel> labels) {
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(space.index_of(l));
    return out;
}

std::vector<ModeLabel> spatial_modes(std::string_view spatial) {
    return {{std::string(spatial), Polarization::H}, {std::string(spatial), Polarization::V}};
}

namespace {

std::vector<std::size_t> offsets(const HilbertSpace& space, std::span<const std::size_t> modes) {
    std::size_t dim = 1;
    for (auto m : modes) dim *= space.mode(m).dim();
    std::vector<std::size_t> out(dim, 0);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::size_t rem = idx;
        std::size_t off = 0;
        for (std::size_t k = modes.size(); k-- > 0;) {
            const auto d = space.mode(modes[k]).dim();
            off += (rem % d) * space.stride(modes[k]);
            rem /= d;
        }
        out[idx] = off;
    }
    return out;
}

}  // namespace

ModeSplit::ModeSplit(const HilbertSpace& space, std::vector<std::size_t> selected)
    : selected_(std::move(selected)), local_space_(space.select(selected_)) {
    std::set<std::size_t> unique(selected_.begin(), selected_.end());
    if (unique.size() != selected_.size()) throw DuplicateMode("mode selected twice");
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < space.num_modes(); ++i)
        if (!unique.count(i)) rest.push_back(i);
    if (!rest.empty()) rest_space_ = space.select(rest);
    local_offset_ = offsets(space, selected_);
    rest_offset_ = offsets(space, rest);
}

ModeSplit::ModeSplit(const HilbertSpace& space, std::span<const ModeLabel> selected)
    : ModeSplit(space, mode_indices(space, selected)) {}

// StateVector ---------------------------------------------------------------

StateVector::StateVector(HilbertSpace space, Vector amplitudes) : space_(std::move(space)), amps_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amps_.size()) != space_.total_dim())
        throw SpaceMismatch("amplitude count " + std::to_string(amps_.size()) + " != total_dim " +
                            std::to_string(space_.total_dim()));
}

StateVector StateVector::vacuum(HilbertSpace space) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(space.total_dim()));
    v[0] = 1.0;
    return {std::move(space), std::move(v)};
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw DegenerateAmplitude("cannot normalize the zero vector");
    return {space_, amps_ / n};
}

StateVector StateVector::operator+(const StateVector& other) const {
    if (!(space_ == other.space_)) throw SpaceMismatch("adding states on different spaces");
    return {space_, amps_ + other.amps_};
}

StateVector StateVector::operator-(const StateVector& other) const {
    if (!(space_ == other.space_)) throw SpaceMismatch("subtracting states on different spaces");
    return {space_, amps_ - other.amps_};
}

// DensityMatrix -------------------------------------------------------------

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix elements)
    : space_(std::move(space)), elements_(std::move(elements)) {
    const auto d = static_cast<Eigen::Index>(space_.total_dim());
    if (elements_.rows() != d || elements_.cols() != d) throw SpaceMismatch("density matrix shape does not match space");
}

DensityMatrix DensityMatrix::from_pure(const StateVector& state) {
    const auto& v = state.amplitudes();
    return {state.space(), v * v.adjoint()};
}

DensityMatrix DensityMatrix::normalized() const {
    const double tr = trace().real();
    if (tr <= 0.0) throw DegenerateAmplitude("density matrix has non-positive trace");
    return {space_, elements_ / tr};
}

bool DensityMatrix::is_hermitian(double tol) const {
    return (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff() < tol;
}

// SparseOperator ------------------------------------------------------------

SparseOperator::SparseOperator(HilbertSpace space, SparseMatrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
    const auto d = static_cast<Eigen::Index>(space_.total_dim());
    if (entries_.rows() != d || entries_.cols() != d) throw SpaceMismatch("operator shape does not match space");
    entries_.makeCompressed();
}

SparseOperator SparseOperator::identity(HilbertSpace space) {
    const auto d = static_cast<Eigen::Index>(space.total_dim());
    SparseMatrix id(d, d);
    id.setIdentity();
    return {std::move(space), std::move(id)};
}

SparseOperator SparseOperator::adjoint() const { return {space_, SparseMatrix(entries_.adjoint())}; }

SparseOperator SparseOperator::operator*(const SparseOperator& rhs) const {
    if (!(space_ == rhs.space_)) throw SpaceMismatch("composing operators on different spaces");
    return {space_, SparseMatrix(entries_ * rhs.entries_)};
}

SparseOperator SparseOperator::operator+(const SparseOperator& rhs) const {
    if (!(space_ == rhs.space_)) throw SpaceMismatch("adding operators on different spaces");
    return {space_, SparseMatrix(entries_ + rhs.entries_)};
}

SparseOperator SparseOperator::operator-(const SparseOperator& rhs) const {
    if (!(space_ == rhs.space_)) throw SpaceMismatch("subtracting operators on different spaces");
    return {space_, SparseMatrix(entries_ - rhs.entries_)};
}

SparseOperator SparseOperator::scaled(Complex factor) const { return {space_, SparseMatrix(entries_ * factor)}; }

bool SparseOperator::is_unitary(double tol) const {
    SparseMatrix prod = entries_.adjoint() * entries_;
    SparseMatrix id(prod.rows(), prod.cols());
    id.setIdentity();
    prod -= id;
    double worst = 0.0;
    for (Eigen::Index k = 0; k < prod.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(prod, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    return worst < tol;
}

Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

SparseOperator embed(const HilbertSpace& space, std::span<const ModeLabel> modes, const Matrix& local) {
    ModeSplit split(space, modes);
    const auto ld = static_cast<Eigen::Index>(split.local_dim());
    if (local.rows() != ld || local.cols() != ld) throw SpaceMismatch("local operator shape does not match its modes");
    std::vector<Eigen::Triplet<Complex>> triplets;
    std::size_t nnz_local = 0;
    for (Eigen::Index i = 0; i < ld; ++i)
        for (Eigen::Index j = 0; j < ld; ++j)
            if (local(i, j) != Complex(0.0)) ++nnz_local;
    triplets.reserve(nnz_local * split.rest_dim());
    for (Eigen::Index i = 0; i < ld; ++i)
        for (Eigen::Index j = 0; j < ld; ++j) {
            const Complex v = local(i, j);
            if (v == Complex(0.0)) continue;
            for (std::size_t r = 0; r < split.rest_dim(); ++r)
                triplets.emplace_back(static_cast<Eigen::Index>(split.full_index(static_cast<std::size_t>(i), r)),
                                      static_cast<Eigen::Index>(split.full_index(static_cast<std::size_t>(j), r)), v);
        }
    const auto d = static_cast<Eigen::Index>(space.total_dim());
    SparseMatrix m(d, d);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return {space, std::move(m)};
}

SparseOperator annihilation(const HilbertSpace& space, const ModeLabel& mode) {
    const auto dim = static_cast<Eigen::Index>(space.mode(mode).dim());
    Matrix a = Matrix::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const ModeLabel modes[] = {mode};
    return embed(space, modes, a);
}

SparseOperator creation(const HilbertSpace& space, const ModeLabel& mode) { return annihilation(space, mode).adjoint(); }

SparseOperator number_operator(const HilbertSpace& space, const ModeLabel& mode) {
    const auto dim = static_cast<Eigen::Index>(space.mode(mode).dim());
    Matrix n = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    const ModeLabel modes[] = {mode};
    return embed(space, modes, n);
}

StateVector apply(const SparseOperator& op, const StateVector& state) {
    if (!(op.space() == state.space())) throw SpaceMismatch("operator and state live on different spaces");
    return {state.space(), op.entries() * state.amplitudes()};
}

Complex inner(const StateVector& a, const StateVector& b) {
    if (!(a.space() == b.space())) throw SpaceMismatch("inner product of states on different spaces");
    return a.amplitudes().dot(b.amplitudes());
}

StateVector tensor(const StateVector& first, const StateVector& second) {
    auto space = concat(first.space(), second.space());
    const auto d2 = static_cast<Eigen::Index>(second.dim());
    Vector amps(static_cast<Eigen::Index>(space.total_dim()));
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(first.dim()); ++i)
        amps.segment(i * d2, d2) = first.amplitudes()[i] * second.amplitudes();
    return {std::move(space), std::move(amps)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const ModeLabel> keep) {
    if (keep.empty()) throw UnknownMode("partial trace needs at least one kept mode");
    ModeSplit split(rho.space(), keep);
    const auto ld = static_cast<Eigen::Index>(split.local_dim());
    const auto& m = rho.elements();
    Matrix out = Matrix::Zero(ld, ld);
    for (std::size_t r = 0; r < split.rest_dim(); ++r)
        for (Eigen::Index i = 0; i < ld; ++i) {
            const auto fi = static_cast<Eigen::Index>(split.full_index(static_cast<std::size_t>(i), r));
            for (Eigen::Index j = 0; j < ld; ++j)
                out(i, j) += m(fi, static_cast<Eigen::Index>(split.full_index(static_cast<std::size_t>(j), r)));
        }
    return {split.local_space(), std::move(out)};
}

DensityMatrix reduced_density(const StateVector& state, std::span<const ModeLabel> keep) {
    if (keep.empty()) throw UnknownMode("reduced density needs at least one kept mode");
    ModeSplit split(state.space(), keep);
    const auto ld = static_cast<Eigen::Index>(split.local_dim());
    const auto rd = static_cast<Eigen::Index>(split.rest_dim());
    Matrix m(ld, rd);
    for (Eigen::Index r = 0; r < rd; ++r)
        for (Eigen::Index l = 0; l < ld; ++l)
            m(l, r) = state[split.full_index(static_cast<std::size_t>(l), static_cast<std::size_t>(r))];
    return {split.local_space(), m * m.adjoint()};
}

StateVector contract(const StateVector& state, std::span<const ModeLabel> modes, const Vector& local_ket) {
    ModeSplit split(state.space(), modes);
    if (!split.rest_space()) throw SpaceMismatch("contraction over every mode leaves no state");
    if (static_cast<std::size_t>(local_ket.size()) != split.local_dim())
        throw SpaceMismatch("local ket dimension does not match the contracted modes");
    Vector out = Vector::Zero(static_cast<Eigen::Index>(split.rest_dim()));
    for (std::size_t l = 0; l < split.local_dim(); ++l) {
        const Complex k = std::conj(local_ket[static_cast<Eigen::Index>(l)]);
        if (k == Complex(0.0)) continue;
        for (std::size_t r = 0; r < split.rest_dim(); ++r)
            out[static_cast<Eigen::Index>(r)] += k * state[split.full_index(l, r)];
    }
    return {*split.rest_space(), std::move(out)};
}

StateVector recast(const StateVector& state, const HilbertSpace& target, double tol) {
    const auto& src = state.space();
    if (src.num_modes() != target.num_modes()) throw SpaceMismatch("recast requires the same number of modes");
    Vector out = Vector::Zero(static_cast<Eigen::Index>(target.total_dim()));
    double dropped = 0.0;
    std::vector<int> occ(src.num_modes());
    for (std::size_t i = 0; i < src.total_dim(); ++i) {
        const Complex a = state[i];
        if (a == Complex(0.0)) continue;
        bool fits = true;
        for (std::size_t m = 0; m < src.num_modes(); ++m) {
            occ[m] = src.occupation(i, m);
            fits = fits && occ[m] <= target.mode(m).cutoff;
        }
        if (fits)
            out[static_cast<Eigen::Index>(target.basis_index(occ))] = a;
        else
            dropped += std::norm(a);
    }
    if (dropped > tol)
        throw CutoffExceeded("recast would drop weight " + std::to_string(dropped) + " above the target cutoffs");
    return {target, std::move(out)};
}

StateVector reorder_modes(const StateVector& state, const HilbertSpace& target, double tol) {
    const auto& src = state.space();
    if (src.num_modes() != target.num_modes()) throw SpaceMismatch("reorder requires the same modes");
    std::vector<std::size_t> from(target.num_modes());
    for (std::size_t k = 0; k < target.num_modes(); ++k) {
        const auto idx = src.find(target.mode(k).label());
        if (!idx) throw SpaceMismatch("reorder target has mode " + to_string(target.mode(k).label()) + " not in source");
        from[k] = *idx;
    }
    Vector out = Vector::Zero(static_cast<Eigen::Index>(target.total_dim()));
    double dropped = 0.0;
    std::vector<int> occ(target.num_modes());
    for (std::size_t i = 0; i < src.total_dim(); ++i) {
        const Complex a = state[i];
        if (a == Complex(0.0)) continue;
        bool fits = true;
        for (std::size_t k = 0; k < target.num_modes(); ++k) {
            occ[k] = src.occupation(i, from[k]);
            fits = fits && occ[k] <= target.mode(k).cutoff;
        }
        if (fits)
            out[static_cast<Eigen::Index>(target.basis_index(occ))] = a;
        else
            dropped += std::norm(a);
    }
    if (dropped > tol)
        throw CutoffExceeded("reorder would drop weight " + std::to_string(dropped) + " above the target cutoffs");
    return {target, std::move(out)};
}

HilbertSpace rename_spatial(const HilbertSpace& space, std::span<const std::pair<std::string, std::string>> renames) {
    auto modes = space.modes();
    for (auto& m : modes)
        for (const auto& [from, to] : renames)
            if (m.spatial == from) {
                m.spatial = to;
                break;
            }
    return HilbertSpace(std::move(modes));
}

}  // namespace hybridcat
