#include "hybridcat/states.hpp"

#include <array>
#include <cmath>

namespace hybridcat {

std::string_view to_string(CatParity p) { return p == CatParity::Plus ? "plus" : "minus"; }

CatParity flipped(CatParity p) { return p == CatParity::Plus ? CatParity::Minus : CatParity::Plus; }

double coherent_tail_weight(double abs_alpha, int cutoff) {
    const double mean = abs_alpha * abs_alpha;
    if (mean == 0.0) return 0.0;
    // Start at n = cutoff + 1 in log space, then step by the term ratio.
    int n = cutoff + 1;
    double term = std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
    double tail = 0.0;
    while (term > 0.0 && (n <= mean || term > 1e-18 * tail)) {
        tail += term;
        term *= mean / (n + 1);
        ++n;
    }
    return tail;
}

int default_cv_cutoff(double abs_alpha) {
    int cutoff = static_cast<int>(std::ceil(abs_alpha * abs_alpha + 6.0 * abs_alpha + 6.0));
    while (coherent_tail_weight(abs_alpha, cutoff) >= kTruncationTolerance) ++cutoff;
    return cutoff;
}

Vector coherent_amplitudes(Complex alpha, int cutoff) {
    const double tail = coherent_tail_weight(std::abs(alpha), cutoff);
    if (tail >= kTruncationTolerance)
        throw CutoffTooSmall("cutoff " + std::to_string(cutoff) + " drops weight " + std::to_string(tail) +
                             " of a coherent state with |alpha| = " + std::to_string(std::abs(alpha)) +
                             "; need cutoff >= " + std::to_string(default_cv_cutoff(std::abs(alpha))));
    Vector v(cutoff + 1);
    v[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= cutoff; ++n) v[n] = v[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    return v / v.norm();
}

CatSpec make_cat(Complex alpha, CatParity sign, int cutoff) {
    const Vector plus = coherent_amplitudes(alpha, cutoff);
    const Vector minus = coherent_amplitudes(-alpha, cutoff);
    const Vector sum = sign == CatParity::Plus ? Vector(plus + minus) : Vector(plus - minus);
    const double norm = sum.norm();
    if (norm < 1e-14) throw DegenerateAmplitude("odd cat state with alpha = 0 is the zero vector");
    return {alpha, sign, 1.0 / norm, cutoff, sum / norm};
}

StateVector place(const HilbertSpace& space, std::span<const ModeLabel> modes, const Vector& local_ket) {
    ModeSplit split(space, modes);
    if (static_cast<std::size_t>(local_ket.size()) != split.local_dim())
        throw SpaceMismatch("local ket dimension does not match its modes");
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(space.total_dim()));
    for (std::size_t l = 0; l < split.local_dim(); ++l)
        amps[static_cast<Eigen::Index>(split.full_index(l, 0))] = local_ket[static_cast<Eigen::Index>(l)];
    return {space, std::move(amps)};
}

StateVector fock_state(const HilbertSpace& space, const std::map<ModeLabel, int>& occupation) {
    std::vector<int> occ(space.num_modes(), 0);
    for (const auto& [label, count] : occupation) occ[space.index_of(label)] = count;
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(space.total_dim()));
    amps[static_cast<Eigen::Index>(space.basis_index(occ))] = 1.0;
    return {space, std::move(amps)};
}

StateVector coherent_state(const HilbertSpace& space, const ModeLabel& mode, Complex alpha) {
    const ModeLabel modes[] = {mode};
    return place(space, modes, coherent_amplitudes(alpha, space.mode(mode).cutoff));
}

StateVector cat_state(const HilbertSpace& space, const ModeLabel& mode, Complex alpha, CatParity sign) {
    const ModeLabel modes[] = {mode};
    return place(space, modes, make_cat(alpha, sign, space.mode(mode).cutoff).amplitudes);
}

Vector single_photon_ket(const HilbertSpace& space, const std::string& spatial, Polarization p) {
    const auto modes = spatial_modes(spatial);
    const auto dv = static_cast<Eigen::Index>(space.mode(modes[1]).dim());
    const auto dh = static_cast<Eigen::Index>(space.mode(modes[0]).dim());
    if (space.mode(modes[0]).cutoff < 1 || space.mode(modes[1]).cutoff < 1)
        throw CutoffExceeded("single photon does not fit mode " + spatial);
    Vector ket = Vector::Zero(dh * dv);
    // local index = n_H * dim_V + n_V
    ket[p == Polarization::H ? dv : 1] = 1.0;
    return ket;
}

StateVector polarization_qubit(const HilbertSpace& space, const std::string& spatial, Complex c_h, Complex c_v) {
    if (std::abs(std::norm(c_h) + std::norm(c_v) - 1.0) > 1e-10)
        throw NotNormalized("|c_H|^2 + |c_V|^2 = " + std::to_string(std::norm(c_h) + std::norm(c_v)));
    const auto modes = spatial_modes(spatial);
    const Vector ket = c_h * single_photon_ket(space, spatial, Polarization::H) +
                       c_v * single_photon_ket(space, spatial, Polarization::V);
    return place(space, modes, ket);
}

StateVector bell_pair(const HilbertSpace& space, const std::string& spatial_a, const std::string& spatial_b) {
    auto modes = spatial_modes(spatial_a);
    const auto b = spatial_modes(spatial_b);
    modes.insert(modes.end(), b.begin(), b.end());
    const Vector hh = kron(single_photon_ket(space, spatial_a, Polarization::H),
                                        single_photon_ket(space, spatial_b, Polarization::H));
    const Vector vv = kron(single_photon_ket(space, spatial_a, Polarization::V),
                                        single_photon_ket(space, spatial_b, Polarization::V));
    return place(space, modes, (hh + vv) / std::sqrt(2.0));
}

std::array<Vector, 2> cat_qubit_kets(const HilbertSpace& space, const std::string& spatial, Complex alpha) {
    const auto modes = spatial_modes(spatial);
    const auto& mh = space.mode(modes[0]);
    const auto& mv = space.mode(modes[1]);
    Vector vac_h = Vector::Zero(static_cast<Eigen::Index>(mh.dim()));
    Vector vac_v = Vector::Zero(static_cast<Eigen::Index>(mv.dim()));
    vac_h[0] = vac_v[0] = 1.0;
    const Vector even = make_cat(alpha, CatParity::Plus, mh.cutoff).amplitudes;
    const Vector odd = make_cat(alpha, CatParity::Minus, mv.cutoff).amplitudes;
    return {kron(even, vac_v), kron(vac_h, odd)};
}

StateVector polarization_coupled_cat(const HilbertSpace& space, const std::string& spatial, Complex alpha,
                                     int relative_sign) {
    const auto kets = cat_qubit_kets(space, spatial, alpha);
    const double s = relative_sign < 0 ? -1.0 : 1.0;
    return place(space, spatial_modes(spatial), (kets[0] + s * kets[1]) / std::sqrt(2.0));
}

}  // namespace hybridcat
