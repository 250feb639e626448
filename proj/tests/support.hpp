#pragma once

#include <cmath>
#include <random>

#include "hybridcat/fock.hpp"

namespace test_support {

using namespace hybridcat;

inline HilbertSpace modes(std::initializer_list<ModeDescriptor> specs) { return build_space(specs); }

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> g;
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(g(rng), g(rng));
    return v.normalized();
}

inline StateVector random_state(std::mt19937_64& rng, const HilbertSpace& space) {
    return {space, random_vector(rng, static_cast<Eigen::Index>(space.total_dim()))};
}

/// Haar-ish unitary from the QR decomposition of a complex Gaussian matrix.
inline Matrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) m(i, k) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<Matrix> qr(m);
    return qr.householderQ();
}

/// Random density matrix of the given rank: sum of weighted random projectors.
inline Matrix random_density(std::mt19937_64& rng, Eigen::Index n, int rank) {
    std::uniform_real_distribution<double> u(0.1, 1.0);
    Matrix rho = Matrix::Zero(n, n);
    double total = 0.0;
    for (int k = 0; k < rank; ++k) {
        const double w = u(rng);
        const Vector v = random_vector(rng, n);
        rho += w * v * v.adjoint();
        total += w;
    }
    return rho / total;
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

/// exp(M) by Taylor series with scaling and squaring; independent of Eigen's eigensolvers.
inline Matrix expm_taylor(const Matrix& m) {
    int squarings = 0;
    double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5) {
        norm /= 2;
        ++squarings;
    }
    const Matrix a = m / std::pow(2.0, squarings);
    Matrix term = Matrix::Identity(m.rows(), m.cols());
    Matrix sum = term;
    for (int k = 1; k < 40; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

}  // namespace test_support
