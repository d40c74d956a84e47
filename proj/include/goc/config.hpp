#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goc/environment.hpp"
#include "goc/envelope.hpp"
#include "goc/lipschitz.hpp"
#include "goc/noise.hpp"
#include "goc/utility.hpp"

namespace goc {

// Raised for any problem in a configuration file; what() starts with the
// offending key path, e.g. "scenario.delta: ...".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& reason);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class Algo { Etc, Elim };
std::string to_string(Algo algo);
Algo parse_algo(const std::string& text);

struct LipschitzOverrides {
  std::optional<double> ell;
  std::optional<double> big_l;
  std::optional<double> d;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::create(0.1, 1e4, NoiseKind::UniformSymmetric);
  EnvelopeOptions envelope;
  UtilitySpec utility{LinearDc{1.0}, ProductAd{1.0}};
  LipschitzOverrides lipschitz;
  std::size_t lipschitz_resolution = 401;

  double a = 2.0;
  double b = 6.0;
  double delta = 0.05;
  double lambda = 0.1;
  double budget_scale = 1.0;

  EnvMode env = BernoulliMode{};

  std::size_t trials = 200;
  std::uint64_t base_seed = 42;
  std::vector<Algo> algos{Algo::Etc, Algo::Elim};
  std::size_t curve_points = 401;
};

/// Parses the documented config format: `[section]` headers and
/// `key = value` lines, values are numbers, booleans or "strings", `#` starts
/// a comment. Keys are addressed as section.key (e.g. utility.dc.gamma).
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Every effective setting as sorted `key = value` lines.
std::string canonical_config(const ExperimentConfig& config);

/// FNV-1a 64 of canonical_config, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);
std::string fnv1a_hex(const std::string& text);

}  // namespace goc
