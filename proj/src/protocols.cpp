#include "hybridcat/protocols.hpp"

#include <cmath>
#include <cstdio>

namespace hybridcat {

std::string_view to_string(BsmModel model) { return model == BsmModel::ProjectorBSM ? "projector" : "physical"; }

std::string to_string(const ResourceQuality& q) {
    if (q.kind == ResourceQuality::Kind::Ideal) return "ideal";
    char buf[64];
    std::snprintf(buf, sizeof buf, "generated(r=%.12g)", q.r);
    return buf;
}

HeraldCalibration calibration_for(int variant) {
    // Variant 1 needs Theta+ plus an H<->V swap on c to land in the
    // {Cat+_H, Cat-_V} basis; the others come out directly under Omega+.
    switch (variant) {
        case 1: return {BellOutcome::ThetaPlus, true};
        case 2:
        case 3:
        case 4: return {BellOutcome::OmegaPlus, false};
    }
    throw BadVariant("variant must be 1..4, got " + std::to_string(variant));
}

namespace {

void check_variant(int variant) {
    if (variant < 1 || variant > 4) throw BadVariant("variant must be 1..4, got " + std::to_string(variant));
}

Vector unit(std::size_t dim, std::size_t index) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return v;
}

// Cat on one polarization of `spatial`, vacuum on the other; local (H, V) basis.
Vector polarized_cat(const HilbertSpace& space, const std::string& spatial, Polarization pol, const Vector& cat) {
    const auto modes = spatial_modes(spatial);
    const auto dh = space.mode(modes[0]).dim();
    const auto dv = space.mode(modes[1]).dim();
    return pol == Polarization::H ? kron(cat, unit(dv, 0)) : kron(unit(dh, 0), cat);
}

std::vector<ModeLabel> joint_modes(const std::string& x, const std::string& y) {
    auto modes = spatial_modes(x);
    const auto m = spatial_modes(y);
    modes.insert(modes.end(), m.begin(), m.end());
    return modes;
}

int resolve_cutoff(double alpha, std::optional<int> cutoff) { return cutoff.value_or(default_cv_cutoff(std::abs(alpha))); }

HilbertSpace dv_cv_space(const std::string& dv, const std::string& cv, int cutoff) {
    return build_space({{dv, Polarization::H, kSinglePhotonCutoff},
                        {dv, Polarization::V, kSinglePhotonCutoff},
                        {cv, Polarization::H, cutoff},
                        {cv, Polarization::V, cutoff}});
}

HilbertSpace dv_space(const std::string& spatial) {
    return build_space({{spatial, Polarization::H, kSinglePhotonCutoff}, {spatial, Polarization::V, kSinglePhotonCutoff}});
}

ConditionalState apply_unitary(const ConditionalState& state, const std::string& spatial, double angle) {
    if (const auto* pure = std::get_if<StateVector>(&state)) return apply(half_wave_plate(pure->space(), spatial, angle), *pure);
    if (const auto* mixed = std::get_if<DensityMatrix>(&state)) {
        const SparseMatrix u = half_wave_plate(mixed->space(), spatial, angle).entries();
        const Matrix left = u * mixed->elements();
        return DensityMatrix(mixed->space(), left * u.adjoint());
    }
    return state;
}

}  // namespace

StateVector generation_target(const HilbertSpace& space, const std::string& dv, const std::string& cv, int variant,
                              double alpha, TargetConvention convention) {
    check_variant(variant);
    const int cutoff = space.mode({cv, Polarization::H}).cutoff;
    const CatSpec plus = make_cat(alpha, CatParity::Plus, cutoff);
    const CatSpec minus = make_cat(alpha, CatParity::Minus, cutoff);
    const double g_plus = alpha * plus.normalization / minus.normalization;
    const double g_minus = alpha * minus.normalization / plus.normalization;
    const bool literal = convention == TargetConvention::Literal;
    const double cp = literal ? g_plus : g_minus;  // weight of the Cat+ term
    const double cm = literal ? g_minus : g_plus;  // weight of the Cat- term

    const auto H = Polarization::H;
    const auto V = Polarization::V;
    auto term = [&](Polarization photon, Polarization cat_pol, const CatSpec& cat) {
        return kron(single_photon_ket(space, dv, photon), polarized_cat(space, cv, cat_pol, cat.amplitudes));
    };
    Vector ket;
    switch (variant) {
        case 1: ket = cp * term(H, H, plus) + cm * term(V, V, minus); break;
        case 2: ket = cp * term(H, V, plus) + cm * term(V, H, minus); break;
        case 3: ket = cm * term(H, H, minus) - cp * term(V, V, plus); break;
        case 4: ket = cp * term(H, V, plus) - cm * term(V, H, minus); break;
    }
    const auto modes = joint_modes(dv, cv);
    return place(space, modes, ket).normalized();
}

GenerationReport generate_hybrid(double alpha, double r, int variant, BsmModel model, double eta,
                                 const GenerationOptions& options) {
    check_variant(variant);
    if (!(r > 0.0 && r < 1.0)) throw BadReflectivity("tap reflectivity r = " + std::to_string(r) + " outside (0, 1)");
    if (!(eta > 0.0 && eta <= 1.0)) throw BadEta("detector efficiency eta = " + std::to_string(eta) + " outside (0, 1]");
    const int cutoff = resolve_cutoff(alpha, options.cutoff);

    const auto H = Polarization::H;
    const auto V = Polarization::V;
    const HilbertSpace ab = build_space({{"a", H, kSinglePhotonCutoff},
                                         {"a", V, kSinglePhotonCutoff},
                                         {"b", H, kDetectedModeCutoff},
                                         {"b", V, kDetectedModeCutoff}});
    const HilbertSpace cd = build_space({{"c", H, cutoff}, {"c", V, cutoff}, {"d", H, kDetectedModeCutoff}, {"d", V, kDetectedModeCutoff}});
    StateVector state = tensor(bell_pair(ab, "a", "b"), polarization_coupled_cat(cd, "c", alpha, +1));
    const auto& space = state.space();

    if (variant == 3 || variant == 4) state = apply(half_wave_plate(space, "c", kHwpFlip), state);  // psi'_B
    if (variant == 2 || variant == 4) state = apply(half_wave_plate(space, "b", kHwpSwap), state);
    state = weak_tap(state, "c", "d", r, options.tap).state;

    const HeraldCalibration cal = options.calibration.value_or(calibration_for(variant));
    HeraldedResult herald;
    if (model == BsmModel::ProjectorBSM) {
        herald = bsm_project(state, "b", "d", cal.outcome);
    } else {
        StationSettings settings = station_settings_for(cal.outcome);
        settings.detectors = options.detectors;
        herald = central_station(state, "b", "d", Coincidence::C13, eta, settings);
    }
    if (cal.swap_c) herald.state = apply_unitary(herald.state, "c", kHwpSwap);

    GenerationReport report;
    report.variant = variant;
    report.model = model;
    report.alpha = alpha;
    report.r = r;
    report.eta = eta;
    report.cutoff = cutoff;
    report.herald_probability = herald.probability;
    report.conditional_state = herald.state;
    const CatSpec plus = make_cat(alpha, CatParity::Plus, cutoff);
    const CatSpec minus = make_cat(alpha, CatParity::Minus, cutoff);
    report.gamma_plus = r * alpha * plus.normalization / minus.normalization;
    report.gamma_minus = r * alpha * minus.normalization / plus.normalization;
    if (!herald.has_state()) return report;

    const auto side_a = spatial_modes("a");
    const HilbertSpace& out_space = herald.is_pure() ? herald.pure().space() : herald.mixed().space();
    const StateVector literal = generation_target(out_space, "a", "c", variant, alpha, TargetConvention::Literal);
    const StateVector ladder = generation_target(out_space, "a", "c", variant, alpha, TargetConvention::ExactLadder);
    if (herald.is_pure()) {
        report.fidelity_vs_target = fidelity(literal, herald.pure());
        report.fidelity_vs_exact_ladder = fidelity(ladder, herald.pure());
        report.negativity = negativity(herald.pure(), side_a);
    } else {
        report.fidelity_vs_target = fidelity(literal, herald.mixed());
        report.fidelity_vs_exact_ladder = fidelity(ladder, herald.mixed());
        report.negativity = negativity(herald.mixed(), side_a);
    }
    return report;
}

StateVector hybrid_resource(const std::string& dv, const std::string& cv, double alpha, const ResourceQuality& quality,
                            std::optional<int> cutoff) {
    const int k = resolve_cutoff(alpha, cutoff);
    const HilbertSpace space = dv_cv_space(dv, cv, k);
    if (quality.kind == ResourceQuality::Kind::Ideal) {
        const auto cat = cat_qubit_kets(space, cv, alpha);
        const Vector ket = (kron(single_photon_ket(space, dv, Polarization::H), cat[0]) +
                            kron(single_photon_ket(space, dv, Polarization::V), cat[1])) /
                           std::sqrt(2.0);
        const auto modes = joint_modes(dv, cv);
        return place(space, modes, ket);
    }
    GenerationOptions options;
    options.cutoff = k;
    const auto report = generate_hybrid(alpha, quality.r, 1, BsmModel::ProjectorBSM, 1.0, options);
    const auto& generated = std::get<StateVector>(report.conditional_state);
    const std::pair<std::string, std::string> renames[] = {{"a", dv}, {"c", cv}};
    return {rename_spatial(generated.space(), renames), generated.amplitudes()};
}

Eigen::Matrix2cd pauli_correction(BellOutcome outcome) {
    Eigen::Matrix2cd z, x;
    z << 1, 0, 0, -1;
    x << 0, 1, 1, 0;
    switch (outcome) {
        case BellOutcome::OmegaPlus: return Eigen::Matrix2cd::Identity();
        case BellOutcome::OmegaMinus: return z;
        case BellOutcome::ThetaPlus: return x;
        case BellOutcome::ThetaMinus: return z * x;
    }
    return Eigen::Matrix2cd::Identity();
}

StateVector apply_cat_qubit_gate(const StateVector& state, const std::string& spatial, Complex alpha,
                                 const Eigen::Matrix2cd& gate) {
    const auto modes = spatial_modes(spatial);
    ModeSplit split(state.space(), modes);
    const auto cat = cat_qubit_kets(split.local_space(), spatial, alpha);
    Matrix basis(static_cast<Eigen::Index>(split.local_dim()), 2);
    basis.col(0) = cat[0];
    basis.col(1) = cat[1];

    const auto ld = static_cast<Eigen::Index>(split.local_dim());
    const auto rd = static_cast<Eigen::Index>(split.rest_dim());
    Matrix psi(ld, rd);
    for (Eigen::Index r = 0; r < rd; ++r)
        for (Eigen::Index l = 0; l < ld; ++l)
            psi(l, r) = state[split.full_index(static_cast<std::size_t>(l), static_cast<std::size_t>(r))];
    const Matrix delta = gate - Eigen::Matrix2cd::Identity();
    psi += basis * (delta * (basis.adjoint() * psi));

    Vector out(static_cast<Eigen::Index>(state.dim()));
    for (Eigen::Index r = 0; r < rd; ++r)
        for (Eigen::Index l = 0; l < ld; ++l)
            out[static_cast<Eigen::Index>(split.full_index(static_cast<std::size_t>(l), static_cast<std::size_t>(r)))] =
                psi(l, r);
    return {state.space(), std::move(out)};
}

namespace {

StateVector conditional_or_zero(const HeraldedResult& h, const HilbertSpace& rest) {
    if (h.has_state()) return h.pure();
    return {rest, Vector::Zero(static_cast<Eigen::Index>(rest.total_dim()))};
}

StateVector apply_plates_for(BellOutcome outcome, StateVector state, const std::string& spatial) {
    // Physical Pauli gates on a polarization qubit: Z = HWP at 0, X = HWP at 45.
    const auto& space = state.space();
    switch (outcome) {
        case BellOutcome::OmegaPlus: break;
        case BellOutcome::OmegaMinus: state = apply(half_wave_plate(space, spatial, kHwpFlip), state); break;
        case BellOutcome::ThetaPlus: state = apply(half_wave_plate(space, spatial, kHwpSwap), state); break;
        case BellOutcome::ThetaMinus:
            state = apply(half_wave_plate(space, spatial, kHwpSwap), state);
            state = apply(half_wave_plate(space, spatial, kHwpFlip), state);
            break;
    }
    return state;
}

}  // namespace

SwapReport swap_dv_dvbsm_cv(double alpha, const ResourceQuality& quality, std::optional<int> cutoff) {
    const int k = resolve_cutoff(alpha, cutoff);
    const StateVector pair = bell_pair(build_space({{"A1", Polarization::H, kSinglePhotonCutoff},
                                                    {"A1", Polarization::V, kSinglePhotonCutoff},
                                                    {"A2", Polarization::H, kSinglePhotonCutoff},
                                                    {"A2", Polarization::V, kSinglePhotonCutoff}}),
                                       "A1", "A2");
    const StateVector state = tensor(pair, hybrid_resource("B1", "B2", alpha, quality, k));
    const StateVector target = hybrid_resource("A1", "B2", alpha, ResourceQuality::ideal(), k);
    const auto side_a = spatial_modes("A1");

    SwapReport report{"swap-dv", alpha, quality, k, state.dim(), {}, 0.0};
    for (auto o : kBellOutcomes) {
        const auto h = bsm_project(state, "A2", "B1", o);
        StateVector corrected = apply_plates_for(o, conditional_or_zero(h, target.space()), "A1");
        const bool ok = h.probability > 0.0;
        report.outcomes.push_back({o, h.probability, corrected, ok ? fidelity(target, corrected) : 0.0,
                                   ok ? negativity(corrected, side_a) : 0.0});
    }
    report.complement_probability = bsm_complement_probability(state, "A2", "B1");
    return report;
}

std::size_t swap_cv_dimension(int cv_cutoff) {
    const auto cv = static_cast<std::size_t>(cv_cutoff) + 1;
    const std::size_t dv = 2 * 2;  // (H, V) with cutoff 1
    return dv * dv * cv * cv * cv * cv;
}

SwapReport swap_cv_dvbsm_cv(double alpha, const ResourceQuality& quality, std::optional<int> cutoff,
                            std::size_t max_dim) {
    const int k = resolve_cutoff(alpha, cutoff);
    const std::size_t dim = swap_cv_dimension(k);
    if (dim > max_dim) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "swap-cv at cutoff %d needs %zu amplitudes (%.3g GiB per state vector), above the limit of %zu",
                      k, dim, static_cast<double>(dim) * sizeof(Complex) / (1024.0 * 1024.0 * 1024.0), max_dim);
        throw DimensionLimitExceeded(buf, dim, max_dim);
    }
    // Resource A has its CV end A1 and DV half A2; B has DV half B1 and CV end B2.
    const StateVector state =
        tensor(hybrid_resource("A2", "A1", alpha, quality, k), hybrid_resource("B1", "B2", alpha, quality, k));

    SwapReport report{"swap-cv", alpha, quality, k, state.dim(), {}, 0.0};
    const HilbertSpace ends = build_space({{"A1", Polarization::H, k}, {"A1", Polarization::V, k},
                                           {"B2", Polarization::H, k}, {"B2", Polarization::V, k}});
    const auto a = cat_qubit_kets(ends, "A1", alpha);
    const auto b = cat_qubit_kets(ends, "B2", alpha);
    const auto end_modes = joint_modes("A1", "B2");
    const StateVector target = place(ends, end_modes, (kron(a[0], b[0]) + kron(a[1], b[1])) / std::sqrt(2.0));
    const auto side_a = spatial_modes("A1");
    for (auto o : kBellOutcomes) {
        const auto h = bsm_project(state, "A2", "B1", o);
        if (!h.has_state()) {
            report.outcomes.push_back({o, 0.0, conditional_or_zero(h, ends), 0.0, 0.0});
            continue;
        }
        StateVector corrected = apply_cat_qubit_gate(h.pure(), "B2", alpha, pauli_correction(o)).normalized();
        report.outcomes.push_back(
            {o, h.probability, corrected, fidelity(target, corrected), negativity(corrected, side_a)});
    }
    report.complement_probability = bsm_complement_probability(state, "A2", "B1");
    return report;
}

TeleportReport teleport(Complex c_h, Complex c_v, double alpha, const ResourceQuality& quality,
                        std::optional<int> cutoff) {
    const int k = resolve_cutoff(alpha, cutoff);
    const StateVector input = polarization_qubit(dv_space("A"), "A", c_h, c_v);
    const StateVector state = tensor(input, hybrid_resource("C", "B", alpha, quality, k));

    const HilbertSpace bob = build_space({{"B", Polarization::H, k}, {"B", Polarization::V, k}});
    const auto cat = cat_qubit_kets(bob, "B", alpha);
    const auto b_modes = spatial_modes("B");
    const StateVector target = place(bob, b_modes, c_h * cat[0] + c_v * cat[1]);

    TeleportReport report{c_h, c_v, alpha, quality, k, {}, {}, {}, 0.0};
    for (auto o : kBellOutcomes) {
        const auto h = bsm_project(state, "A", "C", o);
        report.outcome_probabilities[o] = h.probability;
        if (!h.has_state()) {
            report.corrected_fidelities[o] = 0.0;
            report.corrected_states.emplace(o, conditional_or_zero(h, bob));
            continue;
        }
        StateVector corrected = apply_cat_qubit_gate(h.pure(), "B", alpha, pauli_correction(o)).normalized();
        report.corrected_fidelities[o] = fidelity(target, corrected);
        report.corrected_states.emplace(o, std::move(corrected));
    }
    report.complement_probability = bsm_complement_probability(state, "A", "C");
    return report;
}

}  // namespace hybridcat
