#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tdrd/lyapunov.hpp"
#include "tdrd/reaction.hpp"
#include "tdrd/regions.hpp"
#include "tdrd/simulate.hpp"
#include "tdrd/spectral.hpp"

namespace tdrd {

struct LyapunovOptions {
  int p_m = 2;
  std::vector<int> p_ks;              // default: zeros
  std::optional<std::vector<double>> theta;  // nullopt = search
  int max_level = 8;
};

struct CheckOptions {
  double box = 50.0;
  int samples_per_face = 1000;
  std::optional<Eigen::VectorXd> D;
};

/// Everything a command may need. Missing sections keep their defaults;
/// `reaction` stays empty when absent.
struct RunConfig {
  ToeplitzParams params;
  std::optional<QuadraticReactionSystem> reaction;
  std::string reaction_label;  // preset name, or "inline"
  std::optional<RegionSignature> signature;  // nullopt = all positive
  SimulationConfig simulation;
  LyapunovOptions lyapunov;
  CheckOptions checks;

  RegionSignature resolved_signature() const;
};

/// Parses the document. Errors are ConfigError with a JSON-path prefix,
/// e.g. "$.diffusion.alpha1: expected a number".
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Built-in example config ("paper-ex5"): 0D, T = 10, printed region.
nlohmann::json example_config_json(const std::string& name);
RunConfig example_config(const std::string& name);

nlohmann::json to_json(const ToeplitzParams& p);
nlohmann::json to_json(const QuadraticReactionSystem& sys);
nlohmann::json to_json(const Eigen::MatrixXd& M);
nlohmann::json to_json(const Eigen::VectorXd& v);

}  // namespace tdrd
