#pragma once

// End-to-end drivers: heralded hybrid generation, the two swapping schemes
// and hybrid teleportation.
//
// Mode names. Generation: Bell pair (a, b), cat source c tapped into d, the
// station reads (b, d) and the hybrid state lives on (a, c). Swapping: pairs
// (A1, A2) and (B1, B2), Bell measurement on (A2, B1). Teleportation: input
// A, resource (C, B), Bell measurement on (A, C).

#include <map>
#include <optional>

#include "hybridcat/analysis.hpp"
#include "hybridcat/measure.hpp"
#include "hybridcat/optics.hpp"
#include "hybridcat/states.hpp"

namespace hybridcat {

enum class BsmModel { ProjectorBSM, PhysicalStation };
std::string_view to_string(BsmModel model);

/// Ideal = the balanced hybrid state (|1_H>|Cat+_H> + |1_V>|Cat-_V>)/sqrt2;
/// Generated = the heralded output of generate_hybrid (variant 1,
/// projector herald, exact tap) with reflectivity r.
struct ResourceQuality {
    enum class Kind { Ideal, Generated } kind = Kind::Ideal;
    double r = 0.0;

    static ResourceQuality ideal() { return {}; }
    static ResourceQuality generated(double r) { return {Kind::Generated, r}; }
};
std::string to_string(const ResourceQuality& q);

/// Which Bell state the herald selects and whether c gets a 45 degree plate
/// afterwards. The frozen table is calibration_for(variant).
struct HeraldCalibration {
    BellOutcome outcome = BellOutcome::OmegaPlus;
    bool swap_c = false;
};
HeraldCalibration calibration_for(int variant);

/// Which coefficient pairing the target uses. Literal attaches
/// g+ = r a N+/N- to the Cat+ term and g- = r a N-/N+ to the Cat- term;
/// ExactLadder swaps them, which is what photon subtraction actually yields.
enum class TargetConvention { Literal, ExactLadder };

struct GenerationOptions {
    TapOrder tap = TapOrder::ExactBS;
    DetectorModel detectors = DetectorModel::NumberResolving;
    std::optional<int> cutoff;  // CV cutoff; default_cv_cutoff(alpha) otherwise
    std::optional<HeraldCalibration> calibration;
};

struct GenerationReport {
    int variant = 1;
    BsmModel model = BsmModel::ProjectorBSM;
    double alpha = 0.0, r = 0.0, eta = 1.0;
    int cutoff = 0;
    double herald_probability = 0.0;
    ConditionalState conditional_state;  // on (a, c)
    double fidelity_vs_target = 0.0;     // literal target
    double fidelity_vs_exact_ladder = 0.0;
    double gamma_plus = 0.0, gamma_minus = 0.0;
    double negativity = 0.0;             // a | c
};

/// Normalized hybrid Bell target of `variant` on the DV/CV pairs of `space`.
StateVector generation_target(const HilbertSpace& space, const std::string& dv, const std::string& cv, int variant,
                              double alpha, TargetConvention convention = TargetConvention::Literal);

/// Throws BadVariant, BadReflectivity (r outside (0, 1)), BadEta, CutoffTooSmall.
GenerationReport generate_hybrid(double alpha, double r, int variant, BsmModel model = BsmModel::ProjectorBSM,
                                 double eta = 1.0, const GenerationOptions& options = {});

/// Hybrid resource (|1_H>|Cat+_H> + |1_V>|Cat-_V>)/sqrt2-like state on
/// (dv, cv) with DV cutoff 1.
StateVector hybrid_resource(const std::string& dv, const std::string& cv, double alpha, const ResourceQuality& quality,
                            std::optional<int> cutoff = std::nullopt);

/// Correction for a Bell outcome: identity, Z, X, or X then Z.
Eigen::Matrix2cd pauli_correction(BellOutcome outcome);

/// Applies a 2x2 gate on span{|Cat+_H, 0_V>, |0_H, Cat-_V>} of `spatial`,
/// identity on the orthogonal complement.
StateVector apply_cat_qubit_gate(const StateVector& state, const std::string& spatial, Complex alpha,
                                 const Eigen::Matrix2cd& gate);

struct SwapOutcome {
    BellOutcome outcome;
    double probability = 0.0;
    StateVector corrected;  // normalized, on the two end nodes
    double fidelity = 0.0;
    double negativity = 0.0;
};

struct SwapReport {
    std::string scheme;  // "swap-dv" or "swap-cv"
    double alpha = 0.0;
    ResourceQuality resource;
    int cutoff = 0;
    std::size_t total_dim = 0;
    std::vector<SwapOutcome> outcomes;  // in kBellOutcomes order
    double complement_probability = 0.0;
};

/// DV-(DV-BSM-DV)-CV: Bell pair (A1, A2) and resource (B1, B2); ends A1 (DV), B2 (CV).
SwapReport swap_dv_dvbsm_cv(double alpha, const ResourceQuality& quality, std::optional<int> cutoff = std::nullopt);

/// Default bound on amplitudes held by a single state in swap_cv.
inline constexpr std::size_t kDefaultMaxDim = std::size_t{1} << 24;

/// Total amplitude count for the swap-cv product space at this cutoff.
std::size_t swap_cv_dimension(int cv_cutoff);

/// CV-(DV-BSM-DV)-CV: two resources with CV ends A1 and B2; the target is
/// (|Cat+_H>|Cat+_H> + |Cat-_V>|Cat-_V>)/sqrt2. Throws DimensionLimitExceeded
/// before allocating when the product space exceeds max_dim.
SwapReport swap_cv_dvbsm_cv(double alpha, const ResourceQuality& quality, std::optional<int> cutoff = std::nullopt,
                            std::size_t max_dim = kDefaultMaxDim);

struct TeleportReport {
    Complex c_h, c_v;
    double alpha = 0.0;
    ResourceQuality resource;
    int cutoff = 0;
    std::map<BellOutcome, double> outcome_probabilities;
    std::map<BellOutcome, double> corrected_fidelities;
    std::map<BellOutcome, StateVector> corrected_states;  // on B
    double complement_probability = 0.0;
};

/// Throws NotNormalized when |cH|^2 + |cV|^2 != 1.
TeleportReport teleport(Complex c_h, Complex c_v, double alpha, const ResourceQuality& quality,
                        std::optional<int> cutoff = std::nullopt);

}  // namespace hybridcat
