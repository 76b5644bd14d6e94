#pragma once

#include <string>
#include <vector>

#include "turinglab/model.hpp"

namespace turinglab {

/// On-disk description of a built-in model. JSON, e.g.
///
///   { "model": "keller-segel",
///     "params": { "chi": 0.5, "D": [1, 10] },
///     "mu_convention": "eps^2",
///     "phi_hat": [[0, 1, 0], [1, 0.6, 0], [4, 0, 0]] }
///
/// mu = eps^2 is the only supported parameterisation; anything else is
/// rejected.
struct ModelConfig {
  std::string model;
  Params params;
  std::vector<PhiSample> phi_hat;  // empty: model default
  bool has_phi_hat = false;
};

/// Throws ConfigError carrying 1-based line/column for syntax errors.
ModelConfig parse_model_config(const std::string& text);
ModelConfig load_model_config(const std::string& path);

ModelSpec build_model(const ModelConfig& config);

}  // namespace turinglab
