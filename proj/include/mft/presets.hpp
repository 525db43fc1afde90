#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mft/params.hpp"

namespace mft {

// A named parameter scenario. The sweep variable is the parameter the
// scenario was designed to vary; the bound value is its default when a
// single solve or simulation is requested instead of a sweep.
struct ScenarioPreset {
  std::string name;
  ModelParams params;
  std::string sweep_variable;  // "theta" or "beta"
  double sweep_lo;
  double sweep_hi;
};

// Public good scheme (eps = 0), theta varies over (0, 1); theta defaults
// to 0.5 for point solves.
inline ModelParams example1_params(double theta = 0.5) {
  return ModelParams(20.0 / 3.0, 2.0, 0.0, 0.4, theta, 1.0, 2.0, 1.0, 4.0);
}

// Budget scheme (eps = 1), beta varies over [0, 0.8); beta defaults to 0.6
// for point solves.
inline ModelParams example2_params(double beta = 0.6) {
  return ModelParams(20.0 / 3.0, 2.0, 1.0, beta, 0.5, 1.0, 2.0, 1.0, 4.0);
}

inline std::optional<ScenarioPreset> find_preset(std::string_view name) {
  if (name == "example1")
    return ScenarioPreset{"example1", example1_params(), "theta", 0.0, 1.0};
  if (name == "example2")
    return ScenarioPreset{"example2", example2_params(), "beta", 0.0, 0.8};
  return std::nullopt;
}

}  // namespace mft
