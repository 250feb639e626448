#include "hybridcat/analysis.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hybridcat/states.hpp"

namespace hybridcat {

double fidelity(const StateVector& a, const StateVector& b) {
    const Complex overlap = inner(a, b);
    return std::norm(overlap) / (a.squared_norm() * b.squared_norm());
}

double fidelity(const StateVector& a, const DensityMatrix& rho) {
    if (!(a.space() == rho.space())) throw SpaceMismatch("fidelity between different spaces");
    const auto& v = a.amplitudes();
    const Complex value = v.dot(rho.elements() * v);
    return value.real() / (a.squared_norm() * rho.trace().real());
}

double fidelity(const DensityMatrix& rho, const StateVector& a) { return fidelity(a, rho); }

namespace {

void check_partition(const HilbertSpace& space, std::span<const ModeLabel> side_a) {
    if (side_a.empty()) throw BadPartition("partition side A is empty");
    std::set<ModeLabel> seen;
    for (const auto& m : side_a) {
        if (!space.contains(m)) throw BadPartition("partition names unknown mode " + to_string(m));
        if (!seen.insert(m).second) throw BadPartition("partition lists " + to_string(m) + " twice");
    }
    if (side_a.size() == space.num_modes()) throw BadPartition("partition side B is empty");
}

void check_single_mode(const DensityMatrix& rho) {
    if (rho.space().num_modes() != 1)
        throw MultiModeInput("expected a single-mode state, got " + std::to_string(rho.space().num_modes()) + " modes");
}

}  // namespace

Matrix partial_transpose(const DensityMatrix& rho, std::span<const ModeLabel> side_a) {
    check_partition(rho.space(), side_a);
    ModeSplit split(rho.space(), side_a);
    const auto da = split.local_dim();
    const auto db = split.rest_dim();
    const auto& m = rho.elements();
    Matrix pt(static_cast<Eigen::Index>(da * db), static_cast<Eigen::Index>(da * db));
    for (std::size_t a = 0; a < da; ++a)
        for (std::size_t b = 0; b < db; ++b)
            for (std::size_t a2 = 0; a2 < da; ++a2)
                for (std::size_t b2 = 0; b2 < db; ++b2)
                    pt(static_cast<Eigen::Index>(a * db + b), static_cast<Eigen::Index>(a2 * db + b2)) =
                        m(static_cast<Eigen::Index>(split.full_index(a2, b)),
                          static_cast<Eigen::Index>(split.full_index(a, b2)));
    return pt;
}

double negativity(const DensityMatrix& rho, std::span<const ModeLabel> side_a) {
    const Matrix pt = partial_transpose(rho, side_a) / rho.trace().real();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(pt, Eigen::EigenvaluesOnly);
    return 0.5 * (eig.eigenvalues().cwiseAbs().sum() - 1.0);
}

double negativity(const StateVector& state, std::span<const ModeLabel> side_a) {
    check_partition(state.space(), side_a);
    ModeSplit split(state.space(), side_a);
    Matrix reshaped(static_cast<Eigen::Index>(split.local_dim()), static_cast<Eigen::Index>(split.rest_dim()));
    for (std::size_t b = 0; b < split.rest_dim(); ++b)
        for (std::size_t a = 0; a < split.local_dim(); ++a)
            reshaped(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = state[split.full_index(a, b)];
    reshaped /= state.norm();
    Eigen::BDCSVD<Matrix> svd(reshaped);
    const double s = svd.singularValues().sum();
    return 0.5 * (s * s - 1.0);
}

GridSpec GridSpec::default_for(double abs_alpha, int points) {
    const double half = abs_alpha + 4.0;
    return {-half, half, -half, half, points, points};
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return out;
}

// Iterative evaluation of the Wigner functions of |m><n| (Laguerre
// recursion), summed against rho. beta = (x + ip)/sqrt2.
double wigner_point(const Matrix& rho, double x, double p, std::vector<Complex>& work) {
    const auto dim = static_cast<std::size_t>(rho.rows());
    const Complex beta = Complex(x, p) / std::numbers::sqrt2;
    work.assign(dim, Complex(0.0));
    work[0] = std::exp(-2.0 * std::norm(beta)) / std::numbers::pi;
    double w = rho(0, 0).real() * work[0].real();
    for (std::size_t n = 1; n < dim; ++n) {
        work[n] = 2.0 * beta * work[n - 1] / std::sqrt(static_cast<double>(n));
        w += 2.0 * (rho(0, static_cast<Eigen::Index>(n)) * work[n]).real();
    }
    for (std::size_t m = 1; m < dim; ++m) {
        const double sm = std::sqrt(static_cast<double>(m));
        Complex temp = work[m];
        work[m] = (2.0 * std::conj(beta) * temp - sm * work[m - 1]) / sm;
        w += (rho(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) * work[m]).real();
        for (std::size_t n = m + 1; n < dim; ++n) {
            const Complex next = (2.0 * beta * work[n - 1] - sm * temp) / std::sqrt(static_cast<double>(n));
            temp = work[n];
            work[n] = next;
            w += 2.0 * (rho(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) * work[n]).real();
        }
    }
    return w;
}

double trapezoid_2d(const WignerGrid& grid, auto&& integrand) {
    const auto nx = grid.x_axis.size();
    const auto np = grid.p_axis.size();
    if (nx < 2 || np < 2) return 0.0;
    const double dx = (grid.x_axis.back() - grid.x_axis.front()) / static_cast<double>(nx - 1);
    const double dp = (grid.p_axis.back() - grid.p_axis.front()) / static_cast<double>(np - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        const double wi = (i == 0 || i == np - 1) ? 0.5 : 1.0;
        for (std::size_t j = 0; j < nx; ++j) {
            const double wj = (j == 0 || j == nx - 1) ? 0.5 : 1.0;
            sum += wi * wj * integrand(grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
    }
    return sum * dx * dp;
}

}  // namespace

WignerGrid wigner(const DensityMatrix& rho_mode, const GridSpec& spec) {
    check_single_mode(rho_mode);
    const Matrix rho = rho_mode.elements() / rho_mode.trace().real();
    WignerGrid grid{linspace(spec.x_min, spec.x_max, spec.nx), linspace(spec.p_min, spec.p_max, spec.np),
                    Eigen::MatrixXd(spec.np, spec.nx)};
    std::vector<Complex> work;
    for (int i = 0; i < spec.np; ++i)
        for (int j = 0; j < spec.nx; ++j)
            grid.values(i, j) = wigner_point(rho, grid.x_axis[static_cast<std::size_t>(j)],
                                             grid.p_axis[static_cast<std::size_t>(i)], work);
    return grid;
}

double wigner_at(const DensityMatrix& rho_mode, double x, double p) {
    check_single_mode(rho_mode);
    std::vector<Complex> work;
    return wigner_point(rho_mode.elements() / rho_mode.trace().real(), x, p, work);
}

double wigner_integral(const WignerGrid& grid) {
    return trapezoid_2d(grid, [](double w) { return w; });
}

double wigner_negative_volume(const WignerGrid& grid) {
    return trapezoid_2d(grid, [](double w) { return w < 0.0 ? -w : 0.0; });
}

std::vector<double> quadrature_distribution(const DensityMatrix& rho_mode, double theta, std::span<const double> x) {
    check_single_mode(rho_mode);
    const Matrix rho = rho_mode.elements() / rho_mode.trace().real();
    const auto dim = rho.rows();
    std::vector<double> out;
    out.reserve(x.size());
    Vector f(dim);
    for (double xv : x) {
        // Hermite functions psi_n(x), then f_n = e^{-i n theta} psi_n(x) = <x_theta|n>.
        double prev = 0.0;
        double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xv * xv);
        for (Eigen::Index n = 0; n < dim; ++n) {
            f[n] = std::polar(cur, -static_cast<double>(n) * theta);
            const double next = std::sqrt(2.0 / (n + 1.0)) * xv * cur - std::sqrt(n / (n + 1.0)) * prev;
            prev = cur;
            cur = next;
        }
        out.push_back((f.transpose() * rho * f.conjugate())(0, 0).real());
    }
    return out;
}

double parity_expectation(const StateVector& state, const ModeLabel& mode) {
    const auto m = state.space().index_of(mode);
    double sum = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i)
        sum += (state.space().occupation(i, m) % 2 == 0 ? 1.0 : -1.0) * std::norm(state[i]);
    return sum / state.squared_norm();
}

double parity_expectation(const DensityMatrix& rho, const ModeLabel& mode) {
    const auto m = rho.space().index_of(mode);
    double sum = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        sum += (rho.space().occupation(i, m) % 2 == 0 ? 1.0 : -1.0) * rho.elements()(k, k).real();
    }
    return sum / rho.trace().real();
}

namespace {

std::vector<ModeLabel> hybrid_modes(const std::string& dv, const std::string& cv) {
    auto modes = spatial_modes(dv);
    const auto c = spatial_modes(cv);
    modes.insert(modes.end(), c.begin(), c.end());
    return modes;
}

// Columns: the four hybrid basis kets in the local basis of hybrid_modes().
Matrix hybrid_basis(const HilbertSpace& local, const std::string& dv, const std::string& cv, Complex alpha) {
    const auto cat = cat_qubit_kets(local, cv, alpha);
    const Vector h = single_photon_ket(local, dv, Polarization::H);
    const Vector v = single_photon_ket(local, dv, Polarization::V);
    const Vector kets[4] = {kron(h, cat[0]), kron(h, cat[1]), kron(v, cat[0]), kron(v, cat[1])};
    Matrix basis(kets[0].size(), 4);
    for (int i = 0; i < 4; ++i) basis.col(i) = kets[i];
    return basis;
}

}  // namespace

HybridQubitDensity hybrid_qubit_density(const DensityMatrix& rho, const std::string& dv_spatial,
                                        const std::string& cv_spatial, Complex alpha) {
    const auto modes = hybrid_modes(dv_spatial, cv_spatial);
    const DensityMatrix reduced = partial_trace(rho, modes).normalized();
    const Matrix basis = hybrid_basis(reduced.space(), dv_spatial, cv_spatial, alpha);
    HybridQubitDensity out;
    out.matrix = basis.adjoint() * reduced.elements() * basis;
    out.leakage = 1.0 - out.matrix.trace().real();
    return out;
}

HybridQubitDensity hybrid_qubit_density(const StateVector& state, const std::string& dv_spatial,
                                        const std::string& cv_spatial, Complex alpha) {
    const auto modes = hybrid_modes(dv_spatial, cv_spatial);
    ModeSplit split(state.space(), modes);
    Matrix reshaped(static_cast<Eigen::Index>(split.local_dim()), static_cast<Eigen::Index>(split.rest_dim()));
    for (std::size_t r = 0; r < split.rest_dim(); ++r)
        for (std::size_t l = 0; l < split.local_dim(); ++l)
            reshaped(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(r)) = state[split.full_index(l, r)];
    reshaped /= state.norm();
    const Matrix basis = hybrid_basis(split.local_space(), dv_spatial, cv_spatial, alpha);
    const Matrix coords = basis.adjoint() * reshaped;
    HybridQubitDensity out;
    out.matrix = coords * coords.adjoint();
    out.leakage = 1.0 - out.matrix.trace().real();
    return out;
}

double qubit_pair_negativity(const Eigen::Matrix4cd& m) {
    Eigen::Matrix4cd pt;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) pt(a * 2 + b, a2 * 2 + b2) = m(a2 * 2 + b, a * 2 + b2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(pt, Eigen::EigenvaluesOnly);
    return 0.5 * (eig.eigenvalues().cwiseAbs().sum() - m.trace().real());
}

}  // namespace hybridcat
