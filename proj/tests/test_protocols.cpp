#include <doctest.h>

#include "hybridcat/protocols.hpp"
#include "support.hpp"

using namespace hybridcat;
using namespace test_support;

namespace {

const std::vector<ModeLabel> kHybridModes = {{"a", Polarization::H}, {"a", Polarization::V}, {"c", Polarization::H}, {"c", Polarization::V}};

// Literal coefficient pairing from the numeric cat normalizations.
std::pair<double, double> literal_weights(double alpha, int cutoff) {
    const double np = make_cat(alpha, CatParity::Plus, cutoff).normalization;
    const double nm = make_cat(alpha, CatParity::Minus, cutoff).normalization;
    return {alpha * np / nm, alpha * nm / np};
}

// Independent construction of the four hybrid targets on (a, c).
StateVector target_oracle(const HilbertSpace& space, int variant, double alpha, int cutoff, bool swap_weights) {
    auto [cp, cm] = literal_weights(alpha, cutoff);
    if (swap_weights) std::swap(cp, cm);
    const Vector plus = make_cat(alpha, CatParity::Plus, cutoff).amplitudes;
    const Vector minus = make_cat(alpha, CatParity::Minus, cutoff).amplitudes;
    Vector vac = Vector::Zero(cutoff + 1);
    vac[0] = 1.0;
    Vector h = Vector::Zero(4), v = Vector::Zero(4);
    h[2] = 1.0;  // |1_H 0_V>
    v[1] = 1.0;  // |0_H 1_V>
    const Vector plus_h = kron(plus, vac), plus_v = kron(vac, plus);
    const Vector minus_h = kron(minus, vac), minus_v = kron(vac, minus);
    Vector ket;
    switch (variant) {
        case 1: ket = cp * kron(h, plus_h) + cm * kron(v, minus_v); break;
        case 2: ket = cp * kron(h, plus_v) + cm * kron(v, minus_h); break;
        case 3: ket = cm * kron(h, minus_h) - cp * kron(v, plus_v); break;
        default: ket = cp * kron(h, plus_v) - cm * kron(v, minus_h); break;
    }
    return place(space, kHybridModes, ket).normalized();
}

}  // namespace

TEST_CASE("generated state against independently built targets") {
    const double alpha = 1.0, r = 0.05;
    for (int variant = 1; variant <= 4; ++variant) {
        const auto rep = generate_hybrid(alpha, r, variant);
        REQUIRE(std::holds_alternative<StateVector>(rep.conditional_state));
        const auto& state = std::get<StateVector>(rep.conditional_state);
        const auto literal = target_oracle(state.space(), variant, alpha, rep.cutoff, false);
        const auto ladder = target_oracle(state.space(), variant, alpha, rep.cutoff, true);
        CHECK(rep.fidelity_vs_target == doctest::Approx(fidelity(literal, state)).epsilon(1e-12));
        CHECK(rep.fidelity_vs_exact_ladder == doctest::Approx(fidelity(ladder, state)).epsilon(1e-12));
        CHECK(fidelity(generation_target(state.space(), "a", "c", variant, alpha), literal) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rep.fidelity_vs_exact_ladder > 0.9999);
        CHECK(rep.fidelity_vs_target >= 0.0);
        CHECK(rep.fidelity_vs_target <= 1.0);
    }
}

TEST_CASE("gamma ratio follows the cat normalizations") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        const auto rep = generate_hybrid(alpha, 0.05, 1);
        const auto [cp, cm] = literal_weights(alpha, rep.cutoff);
        CHECK(rep.gamma_plus / rep.gamma_minus == doctest::Approx(cp / cm).epsilon(1e-8));
        CHECK(rep.gamma_plus == doctest::Approx(0.05 * cp).epsilon(1e-12));
    }
}

TEST_CASE("frozen calibration is the best of every herald and plate choice") {
    for (int variant = 1; variant <= 4; ++variant) {
        const auto frozen = calibration_for(variant);
        double best = -1.0;
        HeraldCalibration best_cal;
        for (auto outcome : kBellOutcomes)
            for (bool swap_c : {false, true}) {
                GenerationOptions options;
                options.calibration = HeraldCalibration{outcome, swap_c};
                const auto rep = generate_hybrid(1.0, 0.05, variant, BsmModel::ProjectorBSM, 1.0, options);
                if (rep.fidelity_vs_exact_ladder > best) {
                    best = rep.fidelity_vs_exact_ladder;
                    best_cal = *options.calibration;
                }
            }
        CHECK(best_cal.outcome == frozen.outcome);
        CHECK(best_cal.swap_c == frozen.swap_c);
        CHECK(best > 0.9999);
    }
}

TEST_CASE("physical station reproduces the projector herald") {
    for (int variant = 1; variant <= 4; ++variant) {
        const auto proj = generate_hybrid(1.0, 0.05, variant, BsmModel::ProjectorBSM);
        const auto phys = generate_hybrid(1.0, 0.05, variant, BsmModel::PhysicalStation);
        CHECK(phys.herald_probability == doctest::Approx(proj.herald_probability / 2).epsilon(1e-9));
        CHECK(fidelity(std::get<StateVector>(proj.conditional_state), std::get<StateVector>(phys.conditional_state)) >=
              1 - 1e-6);
    }
}

TEST_CASE("hybrid targets are mutually orthogonal at alpha = 2") {
    const int k = default_cv_cutoff(2.0);
    const auto space = test_support::modes({{"a", Polarization::H, 1}, {"a", Polarization::V, 1}, {"c", Polarization::H, k},
                                            {"c", Polarization::V, k}});
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j)
            CHECK(fidelity(generation_target(space, "a", "c", i, 2.0), generation_target(space, "a", "c", j, 2.0)) < 1e-3);
}

TEST_CASE("target negativity approaches one half") {
    double previous = 0.0;
    for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
        const int k = default_cv_cutoff(alpha);
        const auto space = test_support::modes({{"a", Polarization::H, 1}, {"a", Polarization::V, 1}, {"c", Polarization::H, k},
                                                {"c", Polarization::V, k}});
        const auto target = generation_target(space, "a", "c", 1, alpha);
        const double n = negativity(target, spatial_modes("a"));
        // Schmidt oracle: sqrt(p q) for weights p, q of the two orthogonal branches.
        const auto [cp, cm] = literal_weights(alpha, k);
        CHECK(n == doctest::Approx(cp * cm / (cp * cp + cm * cm)).epsilon(1e-10));
        CHECK(n >= previous);
        previous = n;
    }
    CHECK(previous == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("herald probability scales as r^2 with the expected asymptote") {
    const double alpha = 1.0;
    const auto p1 = generate_hybrid(alpha, 0.01, 1, BsmModel::PhysicalStation);
    const auto p2 = generate_hybrid(alpha, 0.02, 1, BsmModel::PhysicalStation);
    const double ratio = p2.herald_probability / p1.herald_probability;
    CHECK(ratio >= 3.8);
    CHECK(ratio <= 4.2);
    const auto [cp, cm] = literal_weights(alpha, p1.cutoff);
    const double r = 0.01;
    const double asymptote = r * r * (cp * cp + cm * cm) / 16;
    CHECK(p1.herald_probability == doctest::Approx(asymptote).epsilon(1e-3));
}

TEST_CASE("detector efficiency enters as eta^2 on the first-order tap") {
    GenerationOptions options;
    options.tap = TapOrder::FirstOrder;
    const auto full = generate_hybrid(1.0, 0.05, 1, BsmModel::PhysicalStation, 1.0, options);
    const auto half = generate_hybrid(1.0, 0.05, 1, BsmModel::PhysicalStation, 0.5, options);
    CHECK(half.herald_probability / full.herald_probability == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("generation argument validation") {
    CHECK_THROWS_AS(generate_hybrid(1.0, 0.05, 5), BadVariant);
    CHECK_THROWS_AS(generate_hybrid(1.0, 0.0, 1), BadReflectivity);
    CHECK_THROWS_AS(generate_hybrid(1.0, 1.0, 1), BadReflectivity);
    CHECK_THROWS_AS(generate_hybrid(1.0, 0.05, 1, BsmModel::PhysicalStation, 0.0), BadEta);
    GenerationOptions options;
    options.cutoff = 5;
    CHECK_THROWS_AS(generate_hybrid(1.0, 0.05, 1, BsmModel::ProjectorBSM, 1.0, options), CutoffTooSmall);
}

TEST_CASE("Pauli correction table") {
    const Eigen::Matrix2cd x{{0, 1}, {1, 0}};
    const Eigen::Matrix2cd z{{1, 0}, {0, -1}};
    CHECK(pauli_correction(BellOutcome::OmegaPlus).isApprox(Eigen::Matrix2cd::Identity()));
    CHECK(pauli_correction(BellOutcome::OmegaMinus).isApprox(z));
    CHECK(pauli_correction(BellOutcome::ThetaPlus).isApprox(x));
    CHECK(pauli_correction(BellOutcome::ThetaMinus).isApprox(z * x));
}

TEST_CASE("cat-qubit gate acts on the logical span only") {
    const double alpha = 1.0;
    const int k = default_cv_cutoff(alpha);
    const auto space = test_support::modes({{"c", Polarization::H, k}, {"c", Polarization::V, k}});
    const auto kets = cat_qubit_kets(space, "c", alpha);
    const Eigen::Matrix2cd x{{0, 1}, {1, 0}};
    const auto flipped = apply_cat_qubit_gate(StateVector(space, kets[0]), "c", alpha, x);
    CHECK((flipped.amplitudes() - kets[1]).norm() < 1e-12);
    // Leakage component |1_H 1_V> is orthogonal to both logical kets and stays put.
    const auto leak = fock_state(space, {{{"c", Polarization::H}, 1}, {{"c", Polarization::V}, 1}});
    CHECK((apply_cat_qubit_gate(leak, "c", alpha, x).amplitudes() - leak.amplitudes()).norm() < 1e-12);
}

TEST_CASE("DV-BSM swap with ideal resources") {
    const auto rep = swap_dv_dvbsm_cv(1.0, ResourceQuality::ideal());
    double total = rep.complement_probability;
    for (const auto& o : rep.outcomes) {
        CHECK(o.probability == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(o.fidelity == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(o.negativity == doctest::Approx(0.5).epsilon(1e-3));
        total += o.probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("generated resources converge to the ideal swap") {
    const auto ideal = swap_dv_dvbsm_cv(2.0, ResourceQuality::ideal());
    const auto gen = swap_dv_dvbsm_cv(2.0, ResourceQuality::generated(0.02));
    double total = gen.complement_probability;
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(ideal.outcomes[i].fidelity - gen.outcomes[i].fidelity < 0.01);
        total += gen.outcomes[i].probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("CV swap with ideal resources") {
    const auto rep = swap_cv_dvbsm_cv(1.0, ResourceQuality::ideal());
    CHECK(rep.total_dim == swap_cv_dimension(rep.cutoff));
    for (const auto& o : rep.outcomes) {
        CHECK(o.probability == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(std::abs(o.fidelity - 1.0) < 1e-7);
    }

    // Ends carry no coherence between even and odd photon-number sectors.
    const auto& end_state = rep.outcomes.front().corrected;
    const auto rho = reduced_density(end_state, spatial_modes("A1"));
    const auto& local = rho.space();
    double coherence = 0.0;
    for (std::size_t i = 0; i < local.total_dim(); ++i)
        for (std::size_t j = 0; j < local.total_dim(); ++j) {
            const auto oi = local.occupations(i), oj = local.occupations(j);
            if ((oi[0] + oi[1]) % 2 != (oj[0] + oj[1]) % 2)
                coherence += std::abs(rho.elements()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
    CHECK(coherence < 1e-12);
}

TEST_CASE("CV swap negativity at alpha = 2") {
    const auto rep = swap_cv_dvbsm_cv(2.0, ResourceQuality::ideal());
    for (const auto& o : rep.outcomes) {
        CHECK(o.negativity >= 0.49);
        CHECK(o.negativity <= 0.5 + 1e-9);
    }
}

TEST_CASE("CV swap memory guard") {
    CHECK(swap_cv_dimension(14) == 16u * 15 * 15 * 15 * 15);
    try {
        swap_cv_dvbsm_cv(3.0, ResourceQuality::ideal(), std::nullopt, 1000);
        FAIL("expected DimensionLimitExceeded");
    } catch (const DimensionLimitExceeded& e) {
        CHECK(std::string(e.what()).find("GiB") != std::string::npos);
    }
}

TEST_CASE("teleportation with ideal resources on random qubits") {
    std::mt19937_64 rng(2024);
    double lo = 1.0, hi = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Vector q = random_vector(rng, 2);
        const auto rep = teleport(q[0], q[1], 1.0, ResourceQuality::ideal());
        double total = rep.complement_probability;
        for (auto o : kBellOutcomes) {
            const double p = rep.outcome_probabilities.at(o);
            CHECK(p == doctest::Approx(0.25).epsilon(1e-9));
            CHECK(std::abs(rep.corrected_fidelities.at(o) - 1.0) < 1e-8);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
            total += p;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(hi - lo < 1e-9);
}

TEST_CASE("teleporting |H> yields Cat+ on every outcome") {
    const double alpha = 1.0;
    const auto rep = teleport(1.0, 0.0, alpha, ResourceQuality::ideal());
    for (auto o : kBellOutcomes) {
        const auto& b = rep.corrected_states.at(o);
        const auto kets = cat_qubit_kets(b.space(), "B", alpha);
        CHECK(fidelity(b, StateVector(b.space(), kets[0])) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(teleport(1.0, 1.0, alpha, ResourceQuality::ideal()), NotNormalized);
}

TEST_CASE("teleportation with a generated resource") {
    const auto rep = teleport(1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1.0, ResourceQuality::generated(0.05));
    double total = rep.complement_probability;
    for (auto o : kBellOutcomes) {
        CHECK(rep.corrected_fidelities.at(o) > 0.98);
        CHECK(rep.corrected_fidelities.at(o) < 1.0);
        total += rep.outcome_probabilities.at(o);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}
