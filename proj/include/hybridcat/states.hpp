#pragma once

#include <array>
#include <map>

#include "hybridcat/fock.hpp"

namespace hybridcat {

enum class CatParity { Plus, Minus };

std::string_view to_string(CatParity p);
CatParity flipped(CatParity p);

/// Largest allowed probability weight of a coherent state above the cutoff.
inline constexpr double kTruncationTolerance = 1e-12;

/// Poisson weight sum_{n > cutoff} e^{-|a|^2} |a|^{2n} / n!.
double coherent_tail_weight(double abs_alpha, int cutoff);

/// Smallest cutoff >= ceil(|a|^2 + 6|a| + 6) whose coherent tail weight is
/// below kTruncationTolerance.
int default_cv_cutoff(double abs_alpha);

/// Single-photon carrying modes; two keeps coincidence events representable.
inline constexpr int kDetectedModeCutoff = 2;
inline constexpr int kSinglePhotonCutoff = 1;

struct CatSpec {
    Complex alpha;
    CatParity sign = CatParity::Plus;
    /// N = 1 / || |a> +- |-a> ||, measured on the truncated vectors.
    double normalization = 0.0;
    int cutoff = 0;
    Vector amplitudes;  // single-mode Fock amplitudes, unit norm
};

/// Truncated coherent state on a single mode; throws CutoffTooSmall when the
/// dropped Poisson weight exceeds kTruncationTolerance.
Vector coherent_amplitudes(Complex alpha, int cutoff);

/// Throws CutoffTooSmall, or DegenerateAmplitude for the odd cat at a = 0.
CatSpec make_cat(Complex alpha, CatParity sign, int cutoff);

/// Places `local_ket` on the listed modes with every other mode in vacuum.
StateVector place(const HilbertSpace& space, std::span<const ModeLabel> modes, const Vector& local_ket);

/// Throws CutoffExceeded or UnknownMode.
StateVector fock_state(const HilbertSpace& space, const std::map<ModeLabel, int>& occupation);

StateVector coherent_state(const HilbertSpace& space, const ModeLabel& mode, Complex alpha);
StateVector cat_state(const HilbertSpace& space, const ModeLabel& mode, Complex alpha, CatParity sign);

/// c_H |1_H> + c_V |1_V> on `spatial`; throws NotNormalized.
StateVector polarization_qubit(const HilbertSpace& space, const std::string& spatial, Complex c_h, Complex c_v);

/// (|1_H>_A |1_H>_B + |1_V>_A |1_V>_B) / sqrt(2).
StateVector bell_pair(const HilbertSpace& space, const std::string& spatial_a, const std::string& spatial_b);

/// (|Cat+_H> + s |Cat-_V>) / sqrt(2) with s = relative_sign (+1 or -1).
StateVector polarization_coupled_cat(const HilbertSpace& space, const std::string& spatial, Complex alpha,
                                     int relative_sign = +1);

/// Cat-qubit logical kets on the (H, V) modes of `spatial`, in the local
/// basis of those two modes: |0_L> = |Cat+>_H |0>_V, |1_L> = |0>_H |Cat->_V.
std::array<Vector, 2> cat_qubit_kets(const HilbertSpace& space, const std::string& spatial, Complex alpha);

/// Local ket on (H, V) of `spatial` holding one photon with polarization p.
Vector single_photon_ket(const HilbertSpace& space, const std::string& spatial, Polarization p);

}  // namespace hybridcat
