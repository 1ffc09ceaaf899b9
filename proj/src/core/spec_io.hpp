#pragma once

#include <string>

#include "sampling.hpp"

namespace rgg {

// JSON document form of an EnsembleSpec:
// {
//   "geometry": {"kind": "cube"|"torus", "dimension": 1},
//   "n": 3,
//   "distribution": {"kind": "uniform"} |
//                   {"kind": "truncated_gaussian"} |
//                   {"kind": "bernoulli", "p": 0.5} |
//                   {"kind": "tabulated", "csv": "path"} |
//                   {"kind": "tabulated", "density": [...]},
//   "connection": {"kind": "hard", "r0": 0.25} |
//                 {"kind": "rayleigh", "r0": 0.3, "eta": 2.0}
// }
// Parse errors throw std::invalid_argument.
EnsembleSpec spec_from_json(const std::string& text);
std::string spec_to_json(const EnsembleSpec& spec);

GeometryKind geometry_kind_from_name(const std::string& name);
const char* geometry_kind_name(GeometryKind kind);

CoordinateDistribution distribution_from_json(const std::string& text);

}  // namespace rgg
