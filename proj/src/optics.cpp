#include "hybridcat/optics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace hybridcat {

namespace {

Matrix lowering(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix a = Matrix::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

void drop_roundoff(Matrix& m, double tol = 1e-15) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            Complex& v = m(i, j);
            v = {std::abs(v.real()) < tol ? 0.0 : v.real(), std::abs(v.imag()) < tol ? 0.0 : v.imag()};
        }
}

void check_reflectivity(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw BadReflectivity("amplitude reflectivity r = " + std::to_string(r) + " outside [0, 1]");
}

bool carries_photons(const StateVector& state, const ModeLabel& mode, double tol = 1e-14) {
    const auto m = state.space().index_of(mode);
    double weight = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i)
        if (state.space().occupation(i, m) > 0) weight += std::norm(state[i]);
    return weight > tol;
}

}  // namespace

SparseOperator two_mode_transform(const HilbertSpace& space, const ModeLabel& first, const ModeLabel& second,
                                  const Eigen::Matrix2cd& transform) {
    // transform = exp(iK) with K Hermitian, read off the Schur form of a normal matrix.
    Eigen::ComplexSchur<Eigen::Matrix2cd> schur(transform);
    const Eigen::Matrix2cd& q = schur.matrixU();
    Eigen::Matrix2cd phases = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i) phases(i, i) = std::arg(schur.matrixT()(i, i));
    const Eigen::Matrix2cd k = q * phases * q.adjoint();

    const std::size_t d1 = space.mode(first).dim();
    const std::size_t d2 = space.mode(second).dim();
    const Matrix a = lowering(d1);
    const Matrix b = lowering(d2);
    const Matrix a1 = kron(a, Matrix(Matrix::Identity(static_cast<Eigen::Index>(d2), static_cast<Eigen::Index>(d2))));
    const Matrix a2 = kron(Matrix(Matrix::Identity(static_cast<Eigen::Index>(d1), static_cast<Eigen::Index>(d1))), b);
    const Matrix ops[2] = {a1, a2};
    Matrix generator = Matrix::Zero(a1.rows(), a1.cols());
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
            if (k(j, l) != Complex(0.0)) generator += k(j, l) * ops[j].adjoint() * ops[l];
    generator = 0.5 * (generator + generator.adjoint()).eval();

    Eigen::SelfAdjointEigenSolver<Matrix> eig(generator);
    const Eigen::VectorXcd phase = (Complex(0.0, 1.0) * eig.eigenvalues().cast<Complex>()).array().exp();
    Matrix local = eig.eigenvectors() * phase.asDiagonal() * eig.eigenvectors().adjoint();
    drop_roundoff(local);
    const ModeLabel modes[] = {first, second};
    return embed(space, modes, local);
}

Eigen::Matrix2cd beam_splitter_matrix(double r) {
    check_reflectivity(r);
    const double t = std::sqrt(1.0 - r * r);
    Eigen::Matrix2cd m;
    m << t, r, -r, t;
    return m;
}

Eigen::Matrix2cd half_wave_plate_matrix(double theta) {
    const double c = std::cos(2.0 * theta);
    const double s = std::sin(2.0 * theta);
    Eigen::Matrix2cd m;
    m << c, s, s, -c;
    return m;
}

SparseOperator beam_splitter(const HilbertSpace& space, const std::string& spatial1, const std::string& spatial2,
                             double r) {
    check_reflectivity(r);
    const auto m = beam_splitter_matrix(r);
    const auto p1 = spatial_modes(spatial1);
    const auto p2 = spatial_modes(spatial2);
    return two_mode_transform(space, p1[0], p2[0], m) * two_mode_transform(space, p1[1], p2[1], m);
}

std::string_view to_string(TapOrder order) { return order == TapOrder::FirstOrder ? "first-order" : "exact-bs"; }

SparseOperator first_order_tap_operator(const HilbertSpace& space, const std::string& spatial_in,
                                        const std::string& spatial_tap, double r) {
    auto op = SparseOperator::identity(space);
    const auto in = spatial_modes(spatial_in);
    const auto tap = spatial_modes(spatial_tap);
    for (int p = 0; p < 2; ++p)
        op = op + (annihilation(space, in[p]) * creation(space, tap[p])).scaled(r);
    return op;
}

TapResult weak_tap(const StateVector& state, const std::string& spatial_in, const std::string& spatial_tap, double r,
                   TapOrder order) {
    check_reflectivity(r);
    for (const auto& m : spatial_modes(spatial_tap))
        if (carries_photons(state, m)) throw TapNotVacuum("tap port " + to_string(m) + " is not in vacuum");
    const auto& space = state.space();
    if (order == TapOrder::FirstOrder)
        return {apply(first_order_tap_operator(space, spatial_in, spatial_tap, r), state), spatial_in, spatial_tap, order};
    return {apply(beam_splitter(space, spatial_tap, spatial_in, r), state), spatial_in, spatial_tap, order};
}

namespace {

SparseOperator swap_modes(const HilbertSpace& space, const ModeLabel& x, const ModeLabel& y) {
    const auto d = space.mode(x).dim();
    if (space.mode(y).dim() != d)
        throw CutoffExceeded("cannot route " + to_string(x) + " into " + to_string(y) + ": cutoffs differ");
    const auto n = static_cast<Eigen::Index>(d);
    Matrix p = Matrix::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) p(j * n + i, i * n + j) = 1.0;
    const ModeLabel modes[] = {x, y};
    return embed(space, modes, p);
}

}  // namespace

SparseOperator pbs(const HilbertSpace& space, const std::string& spatial_in, const std::string& spatial_out_h,
                   const std::string& spatial_out_v) {
    auto op = SparseOperator::identity(space);
    const ModeLabel in_h{spatial_in, Polarization::H}, in_v{spatial_in, Polarization::V};
    const ModeLabel out_h{spatial_out_h, Polarization::H}, out_v{spatial_out_v, Polarization::V};
    space.index_of(in_h);
    space.index_of(in_v);
    if (!(out_h == in_h)) op = swap_modes(space, in_h, out_h) * op;
    if (!(out_v == in_v)) op = swap_modes(space, in_v, out_v) * op;
    return op;
}

StateVector apply_pbs(const StateVector& state, const std::string& spatial_in, const std::string& spatial_out_h,
                      const std::string& spatial_out_v) {
    for (const auto& out : {spatial_out_h, spatial_out_v}) {
        if (out == spatial_in) continue;
        for (const auto& m : spatial_modes(out))
            if (carries_photons(state, m)) throw OutputNotVacuum("PBS output " + to_string(m) + " is occupied");
    }
    return apply(pbs(state.space(), spatial_in, spatial_out_h, spatial_out_v), state);
}

SparseOperator half_wave_plate(const HilbertSpace& space, const std::string& spatial, double theta) {
    const auto modes = spatial_modes(spatial);
    if (space.mode(modes[0]).cutoff != space.mode(modes[1]).cutoff)
        throw CutoffExceeded("half-wave plate on " + spatial + " needs equal H and V cutoffs");
    return two_mode_transform(space, modes[0], modes[1], half_wave_plate_matrix(theta));
}

std::vector<Matrix> loss_kraus(int cutoff, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw BadEta("transmission eta = " + std::to_string(eta) + " outside [0, 1]");
    const auto d = static_cast<Eigen::Index>(cutoff + 1);
    std::vector<Matrix> kraus;
    for (int k = 0; k <= cutoff; ++k) {
        Matrix e = Matrix::Zero(d, d);
        for (int n = k; n <= cutoff; ++n) {
            const double binom = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
            e(n - k, n) = std::sqrt(binom * std::pow(eta, n - k) * std::pow(1.0 - eta, k));
        }
        kraus.push_back(std::move(e));
    }
    return kraus;
}

DensityMatrix loss_channel(const DensityMatrix& rho, const ModeLabel& mode, double eta) {
    const auto& space = rho.space();
    const auto kraus = loss_kraus(space.mode(mode).cutoff, eta);
    const ModeLabel modes[] = {mode};
    Matrix out = Matrix::Zero(rho.elements().rows(), rho.elements().cols());
    for (const auto& k : kraus) {
        const SparseMatrix op = embed(space, modes, k).entries();
        const Matrix left = op * rho.elements();
        out += left * op.adjoint();
    }
    return {space, std::move(out)};
}

}  // namespace hybridcat
