#pragma once

#include <string>

#include <json.hpp>

#include "hybridcat/analysis.hpp"
#include "hybridcat/fock.hpp"

namespace hybridcat::cli {

using nlohmann::json;

/// 12 significant digits, the CSV float format.
std::string format_real(double value);

// {"modes": [{"spatial", "polarization", "cutoff"}...], then
//  "amplitudes": [[re, im]...]            for states,
//  "elements": [[[re, im]...]...]          for density matrices (row-major rows),
//  "entries": [[row, col, re, im]...]      for sparse operators.
json space_to_json(const HilbertSpace& space);
HilbertSpace space_from_json(const json& j);
json to_json(const StateVector& state);
json to_json(const DensityMatrix& rho);
json to_json(const SparseOperator& op);
StateVector state_from_json(const json& j);
DensityMatrix density_from_json(const json& j);
SparseOperator operator_from_json(const json& j);

/// First row "p\x" then the x axis; each following row is p then W(x, p).
std::string wigner_csv(const WignerGrid& grid);

}  // namespace hybridcat::cli
