#pragma once

// State metrics. Quadrature convention: x = (a + a^dag)/sqrt2,
// p = (a - a^dag)/(i sqrt2), vacuum variance 1/2, Wigner normalized to 1.

#include <vector>

#include "hybridcat/fock.hpp"

namespace hybridcat {

/// |<a|b>|^2 for unit vectors (inputs are normalized first).
double fidelity(const StateVector& a, const StateVector& b);
/// <a|rho|a> / tr(rho).
double fidelity(const StateVector& a, const DensityMatrix& rho);
double fidelity(const DensityMatrix& rho, const StateVector& a);

/// Partial transpose over `side_a`, in the reordered (A, B) basis with B the
/// remaining modes in their original order.
Matrix partial_transpose(const DensityMatrix& rho, std::span<const ModeLabel> side_a);

/// (||rho^{T_A}||_1 - 1) / 2 on the normalized state. Throws BadPartition
/// when side_a is empty, covers every mode, or names an unknown mode.
double negativity(const DensityMatrix& rho, std::span<const ModeLabel> side_a);
/// Pure-state route through the Schmidt coefficients: ((sum s_i)^2 - 1) / 2.
double negativity(const StateVector& state, std::span<const ModeLabel> side_a);

struct GridSpec {
    double x_min = -4.0, x_max = 4.0;
    double p_min = -4.0, p_max = 4.0;
    int nx = 201, np = 201;

    /// [-(|alpha| + 4), |alpha| + 4] on both axes.
    static GridSpec default_for(double abs_alpha, int points = 201);
};

struct WignerGrid {
    std::vector<double> x_axis;
    std::vector<double> p_axis;
    Eigen::MatrixXd values;  // values(ip, ix)
};

/// Displaced-parity Wigner function W(x, p) = (1/pi) Tr[rho D(beta) P D(beta)^dag]
/// with beta = (x + ip)/sqrt2, evaluated by the Laguerre-function recursion.
/// Throws MultiModeInput.
WignerGrid wigner(const DensityMatrix& rho_mode, const GridSpec& grid);
double wigner_at(const DensityMatrix& rho_mode, double x, double p);

/// Trapezoidal integral of W over the grid.
double wigner_integral(const WignerGrid& grid);
/// Trapezoidal integral of max(-W, 0).
double wigner_negative_volume(const WignerGrid& grid);

/// Homodyne distribution p(x | theta) = <x_theta| rho |x_theta> with
/// x_theta = (a e^{-i theta} + a^dag e^{i theta}) / sqrt2. Throws MultiModeInput.
std::vector<double> quadrature_distribution(const DensityMatrix& rho_mode, double theta, std::span<const double> x);

/// <(-1)^n> on one mode, relative to the state's norm.
double parity_expectation(const StateVector& state, const ModeLabel& mode);
double parity_expectation(const DensityMatrix& rho, const ModeLabel& mode);

struct HybridQubitDensity {
    // Ordered basis {|1_H>|Cat+_H>, |1_H>|Cat-_V>, |1_V>|Cat+_H>, |1_V>|Cat-_V>}.
    Eigen::Matrix4cd matrix;
    double leakage = 0.0;
};

/// Projection onto the DV polarization x CV cat-qubit basis. Modes other
/// than the DV and CV pairs are traced out.
HybridQubitDensity hybrid_qubit_density(const DensityMatrix& rho, const std::string& dv_spatial,
                                        const std::string& cv_spatial, Complex alpha);
HybridQubitDensity hybrid_qubit_density(const StateVector& state, const std::string& dv_spatial,
                                        const std::string& cv_spatial, Complex alpha);

/// Negativity of a two-qubit block (first qubit transposed), relative to its
/// trace: (||m^{T_A}||_1 - tr m) / 2.
double qubit_pair_negativity(const Eigen::Matrix4cd& m);

}  // namespace hybridcat
