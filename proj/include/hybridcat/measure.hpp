#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <random>
#include <variant>

#include "hybridcat/fock.hpp"

namespace hybridcat {

using ConditionalState = std::variant<std::monostate, StateVector, DensityMatrix>;

struct HeraldedResult {
    std::string outcome;
    double probability = 0.0;
    ConditionalState state;  // normalized; empty when probability is 0 or no modes survive

    bool has_state() const { return !std::holds_alternative<std::monostate>(state); }
    bool is_pure() const { return std::holds_alternative<StateVector>(state); }
    const StateVector& pure() const { return std::get<StateVector>(state); }
    const DensityMatrix& mixed() const { return std::get<DensityMatrix>(state); }
    /// Density matrix of the conditional state whether pure or mixed.
    DensityMatrix density() const;
};

enum class BellOutcome { OmegaPlus, OmegaMinus, ThetaPlus, ThetaMinus };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {BellOutcome::OmegaPlus, BellOutcome::OmegaMinus,
                                                             BellOutcome::ThetaPlus, BellOutcome::ThetaMinus};

std::string_view to_string(BellOutcome outcome);
std::optional<BellOutcome> parse_bell_outcome(std::string_view text);

/// Bell ket in the local basis of (A_H, A_V, B_H, B_V):
/// Omega± = (|HH> ± |VV>)/sqrt2, Theta± = (|HV> ± |VH>)/sqrt2, A listed first.
Vector bell_ket(const HilbertSpace& space, const std::string& spatial_a, const std::string& spatial_b,
                BellOutcome outcome);

/// Ideal photon-number projection. Probability is relative to the input
/// norm, so unnormalized inputs are accepted. Throws CutoffExceeded.
HeraldedResult project_fock(const StateVector& state, const ModeLabel& mode, int n);

/// On/off detector with efficiency eta: no-click element (1-eta)^n,
/// click = 1 - no-click. Returns {click, no_click}. Throws BadEta.
std::pair<HeraldedResult, HeraldedResult> click_detector(const DensityMatrix& rho, const ModeLabel& mode, double eta);

/// Projects the two polarization qubits onto a Bell ket; the conditional
/// state lives on the remaining modes.
HeraldedResult bsm_project(const StateVector& state, const std::string& spatial_a, const std::string& spatial_b,
                           BellOutcome outcome);

/// Weight of the input outside the four Bell kets of (A, B).
double bsm_complement_probability(const StateVector& state, const std::string& spatial_a, const std::string& spatial_b);

enum class Coincidence { C13, C24 };
enum class DetectorModel { NumberResolving, OnOff };

std::string_view to_string(Coincidence c);

// Center-station layout: optional half-wave plates on the two inputs, a
// balanced beam splitter (outputs: arm 1 continues spatial_b, arm 2 continues
// spatial_d), optional plates on each output arm, then a PBS per arm.
// D1 = arm 1 H, D2 = arm 1 V, D3 = arm 2 H, D4 = arm 2 V.
struct StationSettings {
    std::optional<double> hwp_input_b;
    std::optional<double> hwp_input_d;
    std::optional<double> hwp_arm1;
    std::optional<double> hwp_arm2 = kArm2Plate;
    DetectorModel detectors = DetectorModel::NumberResolving;

    // With a 45 degree plate in arm 2, D1 & D3 see opposite input polarizations
    // and a cross-arm coincidence heralds Theta- of (b, d).
    static constexpr double kArm2Plate = std::numbers::pi / 4;
};

/// Input plates that make C13 (and C24) herald `outcome` on (b, d).
StationSettings station_settings_for(BellOutcome outcome);

/// Runs the center station on modes spatial_b, spatial_d (each with H and V)
/// and conditions on the coincidence. Number-resolving detectors require
/// exactly one photon at each firing detector and none at the other two;
/// eta < 1 scales each detector by its binomial detection kernel and returns
/// a DensityMatrix. Throws UnknownMode or BadEta.
HeraldedResult central_station(const StateVector& state, const std::string& spatial_b, const std::string& spatial_d,
                               Coincidence coincidence, double eta, const StationSettings& settings = {});

/// Draws an index with probability proportional to each result's probability.
std::size_t sample_outcome(std::span<const HeraldedResult> results, std::mt19937_64& rng);

}  // namespace hybridcat
