#include <doctest.h>

#include "hybridcat/optics.hpp"
#include "hybridcat/states.hpp"
#include "support.hpp"

using namespace hybridcat;
using namespace test_support;

namespace {

const ModeLabel kAH{"a", Polarization::H};
const ModeLabel kAV{"a", Polarization::V};
const ModeLabel kBH{"b", Polarization::H};
const ModeLabel kBV{"b", Polarization::V};

HilbertSpace two_spatial(int cutoff) {
    return test_support::modes({{"a", Polarization::H, cutoff}, {"a", Polarization::V, cutoff}, {"b", Polarization::H, cutoff},
                  {"b", Polarization::V, cutoff}});
}

Matrix dense(const SparseOperator& op) { return Matrix(op.entries()); }

}  // namespace

TEST_CASE("beam splitter agrees with the exponential of its generator") {
    const auto space = test_support::modes({{"a", Polarization::H, 4}, {"b", Polarization::H, 4}});
    for (double r : {0.05, 0.3, std::sqrt(0.5), 0.9}) {
        const double theta = std::asin(r);
        const Matrix a1 = dense(annihilation(space, kAH));
        const Matrix a2 = dense(annihilation(space, kBH));
        const Matrix oracle = expm_taylor(theta * (a1.adjoint() * a2 - a2.adjoint() * a1));
        const auto bs = two_mode_transform(space, kAH, kBH, beam_splitter_matrix(r));
        CHECK((dense(bs) - oracle).norm() < 1e-10);
        CHECK(bs.is_unitary());
    }
}

TEST_CASE("zero reflectivity is the identity") {
    const auto space = two_spatial(2);
    const Matrix id = Matrix::Identity(space.total_dim(), space.total_dim());
    CHECK((dense(beam_splitter(space, "a", "b", 0.0)) - id).norm() < 1e-12);
}

TEST_CASE("beam splitter action on low photon numbers") {
    const auto space = test_support::modes({{"a", Polarization::H, 2}, {"b", Polarization::H, 2}});
    const double r = 0.3;
    const double t = std::sqrt(1 - r * r);
    const auto bs = two_mode_transform(space, kAH, kBH, beam_splitter_matrix(r));
    const auto out1 = apply(bs, fock_state(space, {{kAH, 1}}));
    CHECK(std::abs(out1[3] - t) < 1e-12);   // |1,0>
    CHECK(std::abs(out1[1] + r) < 1e-12);   // |0,1>
    const auto out2 = apply(bs, fock_state(space, {{kAH, 2}}));
    CHECK(std::abs(out2[6] - t * t) < 1e-12);
    CHECK(std::abs(out2[4] + std::sqrt(2.0) * t * r) < 1e-12);
    CHECK(std::abs(out2[2] - r * r) < 1e-12);
}

TEST_CASE("Hong-Ou-Mandel interference") {
    const auto space = test_support::modes({{"a", Polarization::H, 2}, {"b", Polarization::H, 2}});
    const auto bs = two_mode_transform(space, kAH, kBH, beam_splitter_matrix(std::sqrt(0.5)));
    const auto out = apply(bs, fock_state(space, {{kAH, 1}, {kBH, 1}}));
    CHECK(std::abs(out[4]) < 1e-12);  // no coincidence
    CHECK(std::norm(out[6]) == doctest::Approx(0.5));
    CHECK(std::norm(out[2]) == doctest::Approx(0.5));
}

TEST_CASE("random passive transforms are unitary and conserve photon number") {
    std::mt19937_64 rng(23);
    const auto space = test_support::modes({{"a", Polarization::H, 3}, {"b", Polarization::H, 3}});
    const Matrix n_total = dense(number_operator(space, kAH) + number_operator(space, kBH));
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::Matrix2cd u = random_unitary(rng, 2);
        const auto op = two_mode_transform(space, kAH, kBH, u);
        CHECK(op.is_unitary());
        CHECK((dense(op) * n_total - n_total * dense(op)).norm() < 1e-10);
        const auto out = apply(op, fock_state(space, {{kAH, 1}}));
        CHECK(std::abs(out[4] - u(0, 0)) < 1e-10);
        CHECK(std::abs(out[1] - u(1, 0)) < 1e-10);
    }
    CHECK_THROWS_AS(beam_splitter_matrix(1.5), BadReflectivity);
}

TEST_CASE("polarization-independent beam splitter") {
    const auto space = two_spatial(1);
    const auto bs = beam_splitter(space, "a", "b", 0.4);
    CHECK(bs.is_unitary());
    const auto out = apply(bs, fock_state(space, {{kAV, 1}}));
    CHECK(std::abs(out[4] - std::sqrt(1 - 0.16)) < 1e-12);
    CHECK(std::abs(out[1] + 0.4) < 1e-12);
}

TEST_CASE("half-wave plate conventions") {
    const auto space = two_spatial(1);
    const auto swap = half_wave_plate(space, "a", kHwpSwap);
    const auto h = fock_state(space, {{kAH, 1}});
    const auto v = fock_state(space, {{kAV, 1}});
    CHECK((apply(swap, h).amplitudes() - v.amplitudes()).norm() < 1e-12);
    CHECK((apply(swap, v).amplitudes() - h.amplitudes()).norm() < 1e-12);
    const auto flip = half_wave_plate(space, "a", kHwpFlip);
    CHECK((apply(flip, h).amplitudes() - h.amplitudes()).norm() < 1e-12);
    CHECK((apply(flip, v).amplitudes() + v.amplitudes()).norm() < 1e-12);
    const auto diag = apply(half_wave_plate(space, "a", std::numbers::pi / 8), h);
    CHECK(std::abs(diag[8] - std::sqrt(0.5)) < 1e-12);
    CHECK(std::abs(diag[4] - std::sqrt(0.5)) < 1e-12);
    CHECK(half_wave_plate_matrix(0.3).isApprox(half_wave_plate_matrix(0.3).adjoint()));
}

TEST_CASE("polarizing beam splitter routing") {
    const auto space = two_spatial(1);
    const auto routed = apply_pbs(fock_state(space, {{kAH, 1}, {kAV, 1}}), "a", "a", "b");
    CHECK(std::abs(routed[space.basis_index(std::vector<int>{1, 0, 0, 1})] - 1.0) < 1e-12);
    CHECK(pbs(space, "a", "a", "b").is_unitary());
    CHECK_THROWS_AS(apply_pbs(fock_state(space, {{kAH, 1}, {kBV, 1}}), "a", "a", "b"), OutputNotVacuum);
}

TEST_CASE("first-order tap operator") {
    const auto space = two_spatial(2);
    const double r = 0.1;
    const Matrix expected = Matrix::Identity(space.total_dim(), space.total_dim()) +
                            r * (dense(annihilation(space, kAH)) * dense(creation(space, kBH)) +
                                 dense(annihilation(space, kAV)) * dense(creation(space, kBV)));
    CHECK((dense(first_order_tap_operator(space, "a", "b", r)) - expected).norm() < 1e-12);
}

TEST_CASE("exact tap agrees with the first-order tap up to O(r^2)") {
    const double a = 1.0;
    const int k = default_cv_cutoff(a);
    const auto space = test_support::modes({{"c", Polarization::H, k}, {"c", Polarization::V, k}, {"d", Polarization::H, 2},
                             {"d", Polarization::V, 2}});
    const auto input = polarization_coupled_cat(space, "c", a);
    auto gap = [&](double r) {
        const auto exact = weak_tap(input, "c", "d", r, TapOrder::ExactBS).state;
        const auto first = weak_tap(input, "c", "d", r, TapOrder::FirstOrder).state;
        return (exact.normalized().amplitudes() - first.normalized().amplitudes()).norm();
    };
    const double g1 = gap(0.04);
    const double g2 = gap(0.02);
    CHECK(g1 < 0.01);
    CHECK(g1 / g2 == doctest::Approx(4.0).epsilon(0.05));
    CHECK_THROWS_AS(weak_tap(input, "c", "d", -0.1, TapOrder::ExactBS), BadReflectivity);
    const auto occupied = weak_tap(input, "c", "d", 0.3, TapOrder::ExactBS).state;
    CHECK_THROWS_AS(weak_tap(occupied, "c", "d", 0.1, TapOrder::ExactBS), TapNotVacuum);
}

TEST_CASE("loss channel on a coherent state gives the attenuated coherent state") {
    const Complex beta(1.2, 0.5);
    // Headroom above the default cutoff so no input weight feeds down from beyond it.
    const int k = default_cv_cutoff(std::abs(beta)) + 15;
    const auto space = test_support::modes({{"c", Polarization::H, k}});
    const ModeLabel c{"c", Polarization::H};
    for (double eta : {1.0, 0.8, 0.3}) {
        const auto rho = loss_channel(DensityMatrix::from_pure(coherent_state(space, c, beta)), c, eta);
        const auto expected = coherent_state(space, c, std::sqrt(eta) * beta);
        const Matrix pure = expected.amplitudes() * expected.amplitudes().adjoint();
        CHECK((rho.elements() - pure).norm() < 1e-9);
    }
}

TEST_CASE("loss channel matches beam splitter plus traced-out ancilla") {
    std::mt19937_64 rng(31);
    const int k = 4;
    const auto single = test_support::modes({{"c", Polarization::H, k}});
    const auto pair = test_support::modes({{"c", Polarization::H, k}, {"e", Polarization::H, k}});
    const ModeLabel c{"c", Polarization::H};
    const ModeLabel e{"e", Polarization::H};
    const double eta = 0.65;
    const auto bs = two_mode_transform(pair, c, e, beam_splitter_matrix(std::sqrt(1 - eta)));
    const Matrix u = dense(bs);
    const ModeLabel keep[] = {c};
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix rho = random_density(rng, k + 1, 1 + trial % 4);
        Matrix anc = Matrix::Zero(k + 1, k + 1);
        anc(0, 0) = 1.0;
        const DensityMatrix joint(pair, u * kron(rho, anc) * u.adjoint());
        const auto oracle = partial_trace(joint, keep);
        const auto out = loss_channel(DensityMatrix(single, rho), c, eta);
        CHECK((out.elements() - oracle.elements()).norm() < 1e-10);
        CHECK(std::abs(out.trace() - 1.0) < 1e-10);
        CHECK(out.is_hermitian());
        Eigen::SelfAdjointEigenSolver<Matrix> eig(out.elements());
        CHECK(eig.eigenvalues().minCoeff() > -1e-10);
    }
    CHECK_THROWS_AS(loss_channel(DensityMatrix(single, random_density(rng, k + 1, 1)), c, 1.5), BadEta);
}

TEST_CASE("single photon through loss") {
    const auto space = test_support::modes({{"c", Polarization::H, 3}});
    const ModeLabel c{"c", Polarization::H};
    const auto rho = loss_channel(DensityMatrix::from_pure(fock_state(space, {{c, 1}})), c, 0.7);
    CHECK(rho.elements()(0, 0).real() == doctest::Approx(0.3));
    CHECK(rho.elements()(1, 1).real() == doctest::Approx(0.7));
    Matrix sum = Matrix::Zero(4, 4);
    for (const auto& kraus : loss_kraus(3, 0.7)) sum += kraus.adjoint() * kraus;
    CHECK((sum - Matrix::Identity(4, 4)).norm() < 1e-12);
}
