#pragma once

#include <numbers>

#include "hybridcat/fock.hpp"

namespace hybridcat {

/// Passive two-mode transform: a_k^dagger -> sum_j T(j, k) a_j^dagger for the
/// pair (first, second). T must be unitary. The Fock-space operator is the
/// exponential of the truncated number-conserving generator, so it is
/// unitary on the truncated space and exact on blocks whose total photon
/// number fits both cutoffs.
SparseOperator two_mode_transform(const HilbertSpace& space, const ModeLabel& first, const ModeLabel& second,
                                  const Eigen::Matrix2cd& transform);

/// Creation-operator map of the beam splitter: b1^dag -> t b1^dag - r b2^dag,
/// b2^dag -> r b1^dag + t b2^dag (equivalently b1' = t b1 + r b2,
/// b2' = -r b1 + t b2 for the output operators).
Eigen::Matrix2cd beam_splitter_matrix(double r);

/// Jones matrix of a half-wave plate at angle theta (radians), acting on
/// (H, V) creation operators: diag(1, -1) at theta = 0, rotated by 2 theta.
Eigen::Matrix2cd half_wave_plate_matrix(double theta);

/// Polarization-independent beam splitter between two spatial locations,
/// acting on the H pair and the V pair. Throws UnknownMode or BadReflectivity.
SparseOperator beam_splitter(const HilbertSpace& space, const std::string& spatial1, const std::string& spatial2,
                             double r);

enum class TapOrder { FirstOrder, ExactBS };

std::string_view to_string(TapOrder order);

struct TapResult {
    StateVector state;  // unnormalized for FirstOrder
    std::string kept_spatial;
    std::string tap_spatial;
    TapOrder order = TapOrder::ExactBS;
};

/// Diverts a fraction of `spatial_in` into the vacuum location `spatial_tap`.
/// FirstOrder applies (1 + r sum_pol c_pol d_pol^dagger); ExactBS applies the
/// beam splitter with the tap port as first input so that both agree to
/// first order in r. Throws TapNotVacuum or BadReflectivity.
TapResult weak_tap(const StateVector& state, const std::string& spatial_in, const std::string& spatial_tap, double r,
                   TapOrder order);

/// The operator 1 + r sum_pol c_pol d_pol^dagger.
SparseOperator first_order_tap_operator(const HilbertSpace& space, const std::string& spatial_in,
                                        const std::string& spatial_tap, double r);

/// Polarizing beam splitter: H of `spatial_in` is routed to the H mode of
/// `spatial_out_h`, V to the V mode of `spatial_out_v`. Permutation unitary;
/// either output may equal the input. Routed modes must share cutoffs.
SparseOperator pbs(const HilbertSpace& space, const std::string& spatial_in, const std::string& spatial_out_h,
                   const std::string& spatial_out_v);

/// pbs applied to a state; throws OutputNotVacuum when an output path that
/// differs from the input is occupied.
StateVector apply_pbs(const StateVector& state, const std::string& spatial_in, const std::string& spatial_out_h,
                      const std::string& spatial_out_v);

/// Throws UnknownMode, or CutoffExceeded when H and V cutoffs differ.
SparseOperator half_wave_plate(const HilbertSpace& space, const std::string& spatial, double theta);

inline constexpr double kHwpSwap = std::numbers::pi / 4;  // 45 degrees: H <-> V
inline constexpr double kHwpFlip = 0.0;                   // 0 degrees: V -> -V

/// Pure-loss channel of transmission eta on one mode: beam splitter with a
/// vacuum ancilla traced out, applied through its Kraus operators.
/// Throws BadEta.
DensityMatrix loss_channel(const DensityMatrix& rho, const ModeLabel& mode, double eta);

/// Kraus operators of the loss channel on a single mode of given cutoff.
std::vector<Matrix> loss_kraus(int cutoff, double eta);

}  // namespace hybridcat
