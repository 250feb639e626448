#include "hybridcat/measure.hpp"

#include <cmath>

#include "hybridcat/optics.hpp"
#include "hybridcat/states.hpp"

namespace hybridcat {

DensityMatrix HeraldedResult::density() const {
    if (is_pure()) return DensityMatrix::from_pure(pure());
    return mixed();
}

std::string_view to_string(BellOutcome outcome) {
    switch (outcome) {
        case BellOutcome::OmegaPlus: return "OmegaPlus";
        case BellOutcome::OmegaMinus: return "OmegaMinus";
        case BellOutcome::ThetaPlus: return "ThetaPlus";
        case BellOutcome::ThetaMinus: return "ThetaMinus";
    }
    return "?";
}

std::optional<BellOutcome> parse_bell_outcome(std::string_view text) {
    for (auto o : kBellOutcomes)
        if (to_string(o) == text) return o;
    return std::nullopt;
}

std::string_view to_string(Coincidence c) { return c == Coincidence::C13 ? "C13" : "C24"; }

Vector bell_ket(const HilbertSpace& space, const std::string& spatial_a, const std::string& spatial_b,
                BellOutcome outcome) {
    auto pair = [&](Polarization x, Polarization y) {
        return kron(single_photon_ket(space, spatial_a, x), single_photon_ket(space, spatial_b, y));
    };
    const auto H = Polarization::H;
    const auto V = Polarization::V;
    const double s = 1.0 / std::sqrt(2.0);
    switch (outcome) {
        case BellOutcome::OmegaPlus: return s * (pair(H, H) + pair(V, V));
        case BellOutcome::OmegaMinus: return s * (pair(H, H) - pair(V, V));
        case BellOutcome::ThetaPlus: return s * (pair(H, V) + pair(V, H));
        case BellOutcome::ThetaMinus: return s * (pair(H, V) - pair(V, H));
    }
    return {};
}

namespace {

HeraldedResult conditioned(std::string outcome, const StateVector& branch, double input_weight) {
    HeraldedResult result{std::move(outcome), branch.squared_norm() / input_weight, {}};
    if (result.probability > 0.0) result.state = branch.normalized();
    return result;
}

// Squared overlap with local_ket when the measured modes are the whole space.
double full_overlap_weight(const StateVector& state, const ModeSplit& split, const Vector& local_ket) {
    Complex amp = 0.0;
    for (std::size_t l = 0; l < split.local_dim(); ++l)
        amp += std::conj(local_ket[static_cast<Eigen::Index>(l)]) * state[split.full_index(l, 0)];
    return std::norm(amp);
}

std::vector<ModeLabel> pair_modes(const std::string& a, const std::string& b) {
    auto modes = spatial_modes(a);
    const auto mb = spatial_modes(b);
    modes.insert(modes.end(), mb.begin(), mb.end());
    return modes;
}

double binomial_weight(int n, int k, double eta) {
    if (k > n) return 0.0;
    const double binom = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
    return binom * std::pow(eta, k) * std::pow(1.0 - eta, n - k);
}

void check_efficiency(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw BadEta("detector efficiency eta = " + std::to_string(eta) + " outside (0, 1]");
}

}  // namespace

HeraldedResult project_fock(const StateVector& state, const ModeLabel& mode, int n) {
    const auto& desc = state.space().mode(mode);
    if (n < 0 || n > desc.cutoff)
        throw CutoffExceeded("cannot project " + to_string(mode) + " onto n = " + std::to_string(n));
    const ModeLabel modes[] = {mode};
    ModeSplit split(state.space(), modes);
    const std::string label = to_string(mode) + "=" + std::to_string(n);
    double weight = 0.0;
    for (std::size_t r = 0; r < split.rest_dim(); ++r)
        weight += std::norm(state[split.full_index(static_cast<std::size_t>(n), r)]);
    if (!split.rest_space()) return {label, weight / state.squared_norm(), {}};
    Vector ket = Vector::Zero(static_cast<Eigen::Index>(desc.dim()));
    ket[n] = 1.0;
    return conditioned(label, contract(state, modes, ket), state.squared_norm());
}

std::pair<HeraldedResult, HeraldedResult> click_detector(const DensityMatrix& rho, const ModeLabel& mode, double eta) {
    check_efficiency(eta);
    const ModeLabel modes[] = {mode};
    ModeSplit split(rho.space(), modes);
    const int cutoff = rho.space().mode(mode).cutoff;
    const double total = rho.trace().real();
    const auto& m = rho.elements();

    auto branch = [&](bool click) {
        const std::string label = to_string(mode) + (click ? ":click" : ":no-click");
        const auto rd = static_cast<Eigen::Index>(split.rest_dim());
        Matrix reduced = Matrix::Zero(rd, rd);
        double p = 0.0;
        for (int n = 0; n <= cutoff; ++n) {
            const double none = std::pow(1.0 - eta, n);
            const double w = click ? 1.0 - none : none;
            if (w == 0.0) continue;
            for (Eigen::Index r = 0; r < rd; ++r) {
                const auto fr = static_cast<Eigen::Index>(split.full_index(static_cast<std::size_t>(n), static_cast<std::size_t>(r)));
                p += w * m(fr, fr).real();
                for (Eigen::Index s = 0; s < rd; ++s)
                    reduced(r, s) += w * m(fr, static_cast<Eigen::Index>(split.full_index(static_cast<std::size_t>(n),
                                                                                        static_cast<std::size_t>(s))));
            }
        }
        HeraldedResult result{label, p / total, {}};
        if (p > 0.0 && split.rest_space()) result.state = DensityMatrix(*split.rest_space(), reduced / p);
        return result;
    };
    return {branch(true), branch(false)};
}

HeraldedResult bsm_project(const StateVector& state, const std::string& spatial_a, const std::string& spatial_b,
                           BellOutcome outcome) {
    const auto modes = pair_modes(spatial_a, spatial_b);
    const auto ket = bell_ket(state.space(), spatial_a, spatial_b, outcome);
    ModeSplit split(state.space(), modes);
    if (!split.rest_space())
        return {std::string(to_string(outcome)), full_overlap_weight(state, split, ket) / state.squared_norm(), {}};
    return conditioned(std::string(to_string(outcome)), contract(state, modes, ket), state.squared_norm());
}

double bsm_complement_probability(const StateVector& state, const std::string& spatial_a, const std::string& spatial_b) {
    const auto modes = pair_modes(spatial_a, spatial_b);
    ModeSplit split(state.space(), modes);
    // (1 - sum_k |B_k><B_k|) psi, reshaped local x rest
    Matrix reshaped(static_cast<Eigen::Index>(split.local_dim()), static_cast<Eigen::Index>(split.rest_dim()));
    for (std::size_t r = 0; r < split.rest_dim(); ++r)
        for (std::size_t l = 0; l < split.local_dim(); ++l)
            reshaped(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(r)) = state[split.full_index(l, r)];
    Matrix projected = reshaped;
    for (auto o : kBellOutcomes) {
        const Vector k = bell_ket(state.space(), spatial_a, spatial_b, o);
        projected -= k * (k.adjoint() * reshaped);
    }
    return projected.squaredNorm() / state.squared_norm();
}

StationSettings station_settings_for(BellOutcome outcome) {
    StationSettings s;
    constexpr double swap = std::numbers::pi / 4;
    switch (outcome) {
        case BellOutcome::ThetaMinus: break;
        case BellOutcome::ThetaPlus: s.hwp_input_d = 0.0; break;
        case BellOutcome::OmegaMinus: s.hwp_input_d = swap; break;
        case BellOutcome::OmegaPlus:
            s.hwp_input_b = 0.0;
            s.hwp_input_d = swap;
            break;
    }
    return s;
}

HeraldedResult central_station(const StateVector& state, const std::string& spatial_b, const std::string& spatial_d,
                               Coincidence coincidence, double eta, const StationSettings& settings) {
    check_efficiency(eta);
    const auto& space = state.space();
    StateVector evolved = state;
    auto plate = [&](const std::optional<double>& angle, const std::string& spatial) {
        if (angle) evolved = apply(half_wave_plate(space, spatial, *angle), evolved);
    };
    plate(settings.hwp_input_b, spatial_b);
    plate(settings.hwp_input_d, spatial_d);
    evolved = apply(beam_splitter(space, spatial_b, spatial_d, 1.0 / std::sqrt(2.0)), evolved);
    plate(settings.hwp_arm1, spatial_b);
    plate(settings.hwp_arm2, spatial_d);

    // PBS per arm: detector k reads one polarization mode of one arm.
    const std::vector<ModeLabel> detectors = {{spatial_b, Polarization::H},
                                              {spatial_b, Polarization::V},
                                              {spatial_d, Polarization::H},
                                              {spatial_d, Polarization::V}};
    const std::array<bool, 4> fires = coincidence == Coincidence::C13 ? std::array{true, false, true, false}
                                                                      : std::array{false, true, false, true};
    ModeSplit split(space, detectors);
    const auto& local = split.local_space();

    auto weight = [&](std::size_t l) {
        double w = 1.0;
        for (std::size_t k = 0; k < 4; ++k) {
            const int n = local.occupation(l, k);
            if (settings.detectors == DetectorModel::NumberResolving)
                w *= binomial_weight(n, fires[k] ? 1 : 0, eta);
            else {
                const double dark = std::pow(1.0 - eta, n);
                w *= fires[k] ? 1.0 - dark : dark;
            }
        }
        return w;
    };

    const double input = state.squared_norm();
    HeraldedResult result{std::string(to_string(coincidence)), 0.0, {}};
    if (!split.rest_space()) {
        for (std::size_t l = 0; l < split.local_dim(); ++l)
            result.probability += weight(l) * std::norm(evolved[split.full_index(l, 0)]) / input;
        return result;
    }

    std::vector<std::pair<double, StateVector>> branches;
    for (std::size_t l = 0; l < split.local_dim(); ++l) {
        const double w = weight(l);
        if (w <= 0.0) continue;
        Vector ket = Vector::Zero(static_cast<Eigen::Index>(split.local_dim()));
        ket[static_cast<Eigen::Index>(l)] = 1.0;
        auto branch = contract(evolved, detectors, ket);
        if (branch.squared_norm() == 0.0) continue;
        branches.emplace_back(w, std::move(branch));
    }

    for (const auto& [w, b] : branches) result.probability += w * b.squared_norm() / input;
    if (result.probability <= 0.0) return result;
    if (branches.size() == 1) {
        result.state = branches.front().second.normalized();
        return result;
    }
    const auto& rest = branches.front().second.space();
    const auto d = static_cast<Eigen::Index>(rest.total_dim());
    Matrix rho = Matrix::Zero(d, d);
    for (const auto& [w, b] : branches) rho.noalias() += w * b.amplitudes() * b.amplitudes().adjoint();
    result.state = DensityMatrix(rest, rho / rho.trace().real());
    return result;
}

std::size_t sample_outcome(std::span<const HeraldedResult> results, std::mt19937_64& rng) {
    double total = 0.0;
    for (const auto& r : results) total += r.probability;
    // 53-bit uniform draw; avoids implementation-defined distributions.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        acc += results[i].probability;
        if (u < acc) return i;
    }
    return results.empty() ? 0 : results.size() - 1;
}

}  // namespace hybridcat
