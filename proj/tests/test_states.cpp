#include <doctest.h>

#include "hybridcat/states.hpp"
#include "support.hpp"

using namespace hybridcat;
using namespace test_support;

namespace {

double poisson_tail(double a, int cutoff) {
    double head = 0.0;
    for (int n = 0; n <= cutoff; ++n) head += std::exp(-a * a) * std::pow(a * a, n) / factorial(n);
    return 1.0 - head;
}

double cat_norm_oracle(double a, int sign) { return 1.0 / std::sqrt(2.0 * (1.0 + sign * std::exp(-2.0 * a * a))); }

}  // namespace

TEST_CASE("default cutoff rule") {
    CHECK(default_cv_cutoff(1.0) == 14);
    CHECK(default_cv_cutoff(2.0) == 25);
    CHECK(default_cv_cutoff(3.0) == 37);
    for (double a : {0.3, 1.0, 1.7, 2.5}) {
        const int k = default_cv_cutoff(a);
        CHECK(k >= static_cast<int>(std::ceil(a * a + 6 * a + 6)));
        CHECK(coherent_tail_weight(a, k) < kTruncationTolerance);
    }
    CHECK(coherent_tail_weight(1.0, 3) == doctest::Approx(poisson_tail(1.0, 3)).epsilon(1e-10));
}

TEST_CASE("coherent amplitudes match the Poisson expansion") {
    const Complex a(0.7, -0.4);
    const auto v = coherent_amplitudes(a, 20);
    for (int n = 0; n <= 20; ++n) {
        const Complex expected = std::exp(-std::norm(a) / 2) * std::pow(a, n) / std::sqrt(factorial(n));
        CHECK(std::abs(v[n] - expected) < 1e-12);
    }
    CHECK_THROWS_AS(coherent_amplitudes(2.0, 5), CutoffTooSmall);
}

TEST_CASE("cat normalization and parity") {
    for (double a : {0.5, 1.0, 2.0}) {
        const int k = default_cv_cutoff(a);
        const auto plus = make_cat(a, CatParity::Plus, k);
        const auto minus = make_cat(a, CatParity::Minus, k);
        CHECK(plus.normalization == doctest::Approx(cat_norm_oracle(a, +1)).epsilon(1e-10));
        CHECK(minus.normalization == doctest::Approx(cat_norm_oracle(a, -1)).epsilon(1e-10));
        CHECK(plus.amplitudes.norm() == doctest::Approx(1.0));
        for (int n = 1; n <= k; n += 2) CHECK(std::abs(plus.amplitudes[n]) < 1e-14);
        for (int n = 0; n <= k; n += 2) CHECK(std::abs(minus.amplitudes[n]) < 1e-14);
        CHECK(std::abs(plus.amplitudes.dot(minus.amplitudes)) < 1e-14);
    }
    CHECK_THROWS_AS(make_cat(0.0, CatParity::Minus, 5), DegenerateAmplitude);
    CHECK(make_cat(0.0, CatParity::Plus, 5).amplitudes[0] == Complex(1.0));
}

TEST_CASE("annihilation maps Cat+ to alpha N+/N- Cat-") {
    for (double a : {0.5, 1.0, 1.5}) {
        const int k = default_cv_cutoff(a);
        const auto space = test_support::modes({{"c", Polarization::H, k}});
        const ModeLabel c{"c", Polarization::H};
        const auto plus = cat_state(space, c, a, CatParity::Plus);
        const auto minus = cat_state(space, c, a, CatParity::Minus);
        const double ratio = cat_norm_oracle(a, +1) / cat_norm_oracle(a, -1);
        // Exact below the cutoff; the top component is lost by truncation.
        const Vector lowered = apply(annihilation(space, c), plus).amplitudes();
        const Vector lowered_minus = apply(annihilation(space, c), minus).amplitudes();
        CHECK((lowered - a * ratio * minus.amplitudes()).head(k).norm() < 1e-12);
        CHECK((lowered_minus - a / ratio * plus.amplitudes()).head(k).norm() < 1e-12);
        CHECK((lowered - a * ratio * minus.amplitudes()).norm() < 2 * a * std::sqrt(coherent_tail_weight(a, k - 1)));
    }
}

TEST_CASE("polarization qubit and Bell pair") {
    const auto space = test_support::modes({{"a", Polarization::H, 1}, {"a", Polarization::V, 1}, {"b", Polarization::H, 1}, {"b", Polarization::V, 1}});
    const auto q = polarization_qubit(space, "a", 0.6, Complex(0, 0.8));
    CHECK(q.norm() == doctest::Approx(1.0));
    CHECK(q[8] == Complex(0.6));             // |1_H 0_V> on a, b empty
    CHECK(q[4] == Complex(0, 0.8));          // |0_H 1_V>
    CHECK_THROWS_AS(polarization_qubit(space, "a", 1.0, 1.0), NotNormalized);

    const auto bell = bell_pair(space, "a", "b");
    CHECK(std::abs(bell[10] - 1 / std::sqrt(2.0)) < 1e-15);  // a_H b_H
    CHECK(std::abs(bell[5] - 1 / std::sqrt(2.0)) < 1e-15);   // a_V b_V
    CHECK(bell.norm() == doctest::Approx(1.0));
}

TEST_CASE("cat-qubit kets and the coupled cat") {
    const double a = 1.0;
    const int k = default_cv_cutoff(a);
    const auto space = test_support::modes({{"c", Polarization::H, k}, {"c", Polarization::V, k}});
    const auto kets = cat_qubit_kets(space, "c", a);
    CHECK(kets[0].norm() == doctest::Approx(1.0));
    CHECK(kets[1].norm() == doctest::Approx(1.0));
    CHECK(std::abs(kets[0].dot(kets[1])) < 1e-14);

    const ModeLabel ch{"c", Polarization::H};
    const auto expected0 = tensor(cat_state(test_support::modes({{"c", Polarization::H, k}}), ch, a, CatParity::Plus),
                                  StateVector::vacuum(test_support::modes({{"c", Polarization::V, k}})));
    CHECK((expected0.amplitudes() - kets[0]).norm() < 1e-14);

    for (int s : {+1, -1}) {
        const auto coupled = polarization_coupled_cat(space, "c", a, s);
        const Vector expected = (kets[0] + double(s) * kets[1]) / std::sqrt(2.0);
        CHECK((coupled.amplitudes() - expected).norm() < 1e-12);
    }
}

TEST_CASE("fock_state and place validation") {
    const auto space = test_support::modes({{"a", Polarization::H, 2}, {"b", Polarization::H, 1}});
    CHECK_THROWS_AS(fock_state(space, {{{"b", Polarization::H}, 2}}), CutoffExceeded);
    CHECK_THROWS_AS(fock_state(space, {{{"z", Polarization::H}, 1}}), UnknownMode);
    const auto s = fock_state(space, {{{"a", Polarization::H}, 2}, {{"b", Polarization::H}, 1}});
    CHECK(s[5] == Complex(1.0));
    const ModeLabel b[] = {{"b", Polarization::H}};
    Vector ket(2);
    ket << 0.6, 0.8;
    const auto placed = place(space, b, ket);
    CHECK(placed[0] == Complex(0.6));
    CHECK(placed[1] == Complex(0.8));
}
