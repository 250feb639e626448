#pragma once

// Truncated multimode Fock space: mode registry, dense states, density
// matrices and sparse operators.
//
// Basis ordering is row-major over the mode sequence with the last mode
// varying fastest, so the amplitude of |n_0, n_1, ..., n_{k-1}> lives at
// sum_i n_i * stride_i with stride_{k-1} = 1.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hybridcat/errors.hpp"

namespace hybridcat {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

enum class Polarization { H, V };

std::string_view to_string(Polarization p);
Polarization orthogonal(Polarization p);

struct ModeLabel {
    std::string spatial;
    Polarization polarization = Polarization::H;

    auto operator<=>(const ModeLabel&) const = default;
};

std::string to_string(const ModeLabel& label);

struct ModeDescriptor {
    std::string spatial;
    Polarization polarization = Polarization::H;
    int cutoff = 1;

    ModeLabel label() const { return {spatial, polarization}; }
    std::size_t dim() const { return static_cast<std::size_t>(cutoff) + 1; }
    bool operator==(const ModeDescriptor&) const = default;
};

class HilbertSpace {
public:
    /// Validates labels and cutoffs; throws DuplicateMode or ZeroCutoff.
    explicit HilbertSpace(std::vector<ModeDescriptor> modes);

    const std::vector<ModeDescriptor>& modes() const { return modes_; }
    std::size_t num_modes() const { return modes_.size(); }
    std::size_t total_dim() const { return total_dim_; }
    const ModeDescriptor& mode(std::size_t i) const { return modes_.at(i); }
    const ModeDescriptor& mode(const ModeLabel& label) const { return modes_[index_of(label)]; }

    std::optional<std::size_t> find(const ModeLabel& label) const;
    /// Throws UnknownMode.
    std::size_t index_of(const ModeLabel& label) const;
    bool contains(const ModeLabel& label) const { return find(label).has_value(); }
    bool has_spatial(std::string_view spatial) const;

    std::size_t stride(std::size_t mode) const { return strides_[mode]; }
    int occupation(std::size_t basis_index, std::size_t mode) const {
        return static_cast<int>((basis_index / strides_[mode]) % modes_[mode].dim());
    }
    std::vector<int> occupations(std::size_t basis_index) const;
    /// Throws CutoffExceeded when an entry is above its mode cutoff.
    std::size_t basis_index(std::span<const int> occupations) const;

    /// Modes at the given positions, in the given order.
    HilbertSpace select(std::span<const std::size_t> mode_indices) const;
    /// Same space with one mode's cutoff replaced.
    HilbertSpace with_cutoff(const ModeLabel& label, int cutoff) const;

    bool operator==(const HilbertSpace& other) const { return modes_ == other.modes_; }

private:
    std::vector<ModeDescriptor> modes_;
    std::vector<std::size_t> strides_;
    std::size_t total_dim_ = 1;
};

HilbertSpace build_space(std::vector<ModeDescriptor> mode_specs);

/// Modes of `first` followed by modes of `second`; throws OverlappingModes.
HilbertSpace concat(const HilbertSpace& first, const HilbertSpace& second);

std::vector<std::size_t> mode_indices(const HilbertSpace& space, std::span<const ModeLabel> labels);

/// H and V labels of a polarized spatial location.
std::vector<ModeLabel> spatial_modes(std::string_view spatial);

// Factorizes the basis of a space into (selected modes) x (remaining modes).
// full_index = local_offset(l) + rest_offset(r); both factors are row-major
// in their own mode order.
class ModeSplit {
public:
    ModeSplit(const HilbertSpace& space, std::vector<std::size_t> selected);
    ModeSplit(const HilbertSpace& space, std::span<const ModeLabel> selected);

    const HilbertSpace& local_space() const { return local_space_; }
    const std::optional<HilbertSpace>& rest_space() const { return rest_space_; }
    std::size_t local_dim() const { return local_offset_.size(); }
    std::size_t rest_dim() const { return rest_offset_.size(); }
    std::size_t full_index(std::size_t local, std::size_t rest) const {
        return local_offset_[local] + rest_offset_[rest];
    }
    const std::vector<std::size_t>& selected() const { return selected_; }

private:
    std::vector<std::size_t> selected_;
    HilbertSpace local_space_;
    std::optional<HilbertSpace> rest_space_;
    std::vector<std::size_t> local_offset_;
    std::vector<std::size_t> rest_offset_;
};

class StateVector {
public:
    StateVector(HilbertSpace space, Vector amplitudes);
    /// All modes in vacuum.
    static StateVector vacuum(HilbertSpace space);

    const HilbertSpace& space() const { return space_; }
    const Vector& amplitudes() const { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }
    std::size_t dim() const { return space_.total_dim(); }

    double norm() const { return amps_.norm(); }
    double squared_norm() const { return amps_.squaredNorm(); }
    /// Throws DegenerateAmplitude for the zero vector.
    StateVector normalized() const;
    StateVector scaled(Complex factor) const { return {space_, amps_ * factor}; }

    StateVector operator+(const StateVector& other) const;
    StateVector operator-(const StateVector& other) const;

private:
    HilbertSpace space_;
    Vector amps_;
};

class DensityMatrix {
public:
    DensityMatrix(HilbertSpace space, Matrix elements);
    static DensityMatrix from_pure(const StateVector& state);

    const HilbertSpace& space() const { return space_; }
    const Matrix& elements() const { return elements_; }
    std::size_t dim() const { return space_.total_dim(); }

    Complex trace() const { return elements_.trace(); }
    DensityMatrix normalized() const;
    bool is_hermitian(double tol = 1e-10) const;

private:
    HilbertSpace space_;
    Matrix elements_;
};

class SparseOperator {
public:
    SparseOperator(HilbertSpace space, SparseMatrix entries);
    static SparseOperator identity(HilbertSpace space);

    const HilbertSpace& space() const { return space_; }
    const SparseMatrix& entries() const { return entries_; }

    SparseOperator adjoint() const;
    SparseOperator operator*(const SparseOperator& rhs) const;
    SparseOperator operator+(const SparseOperator& rhs) const;
    SparseOperator operator-(const SparseOperator& rhs) const;
    SparseOperator scaled(Complex factor) const;

    /// ||U^dagger U - 1||_max below tol.
    bool is_unitary(double tol = 1e-10) const;

private:
    HilbertSpace space_;
    SparseMatrix entries_;
};

Vector kron(const Vector& a, const Vector& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// Lifts an operator on the listed modes (dense, in the local row-major
/// basis of those modes) to the full space.
SparseOperator embed(const HilbertSpace& space, std::span<const ModeLabel> modes, const Matrix& local);

SparseOperator annihilation(const HilbertSpace& space, const ModeLabel& mode);
SparseOperator creation(const HilbertSpace& space, const ModeLabel& mode);
SparseOperator number_operator(const HilbertSpace& space, const ModeLabel& mode);

/// Matrix-vector product, no renormalization. Throws SpaceMismatch.
StateVector apply(const SparseOperator& op, const StateVector& state);

/// <a|b>, conjugate-linear in a.
Complex inner(const StateVector& a, const StateVector& b);

/// Throws OverlappingModes.
StateVector tensor(const StateVector& first, const StateVector& second);

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const ModeLabel> keep);
/// Reduced state of a pure vector without forming the full density matrix.
DensityMatrix reduced_density(const StateVector& state, std::span<const ModeLabel> keep);

/// Contracts the listed modes against a local ket: returns sum_l conj(k_l) <l|psi>,
/// a (generally unnormalized) vector on the remaining modes. Throws
/// SpaceMismatch when no modes would remain.
StateVector contract(const StateVector& state, std::span<const ModeLabel> modes, const Vector& local_ket);

/// Copies a state into another space with the same modes in the same order
/// but possibly different cutoffs or spatial names. Amplitudes outside the
/// target's cutoffs must carry weight below `tol`, else CutoffExceeded.
StateVector recast(const StateVector& state, const HilbertSpace& target, double tol = 1e-12);

/// Like recast, but the target may list the same mode labels in any order.
/// Throws SpaceMismatch when the label sets differ.
StateVector reorder_modes(const StateVector& state, const HilbertSpace& target, double tol = 1e-12);

/// Renames spatial labels; unspecified labels are kept.
HilbertSpace rename_spatial(const HilbertSpace& space,
                            std::span<const std::pair<std::string, std::string>> renames);

}  // namespace hybridcat
