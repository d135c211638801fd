#pragma once

// Loading immersion specs from JSON files.
//
//   {
//     "ambient":   {"kind": "sphere", "dim": 4, "index": 0, "radius": 1},
//     "immersion": {"params": ["u1", ...], "components": ["...", ...], "domain": [[lo, hi], ...]},
//     "check":     {"samples": 25, "seed": 7, "step": 1e-3, "tol_res": 1e-6, "tol_h": 1e-3}
//   }
//
// kind is one of flat, sphere, hyperbolic, chart; a chart ambient gives
// "coords" and a symmetric "metric" matrix of expression strings. Domain
// bounds may be numbers or constant expressions such as "pi/4".

#include <cstdint>
#include <optional>
#include <string>

#include "biharm/immersion.hpp"

namespace biharm {

struct CheckSettings {
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> step;
  std::optional<double> tol_res;
  std::optional<double> tol_h;
};

struct SpecFile {
  Immersion immersion;
  CheckSettings check;
};

// Throws SpecFileError with the offending key path in the message.
SpecFile parse_spec(const std::string& text, const std::string& origin = "<spec>");
SpecFile load_spec(const std::string& path);

}  // namespace biharm
