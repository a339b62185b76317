#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "gcpoly/metrics.hpp"

namespace gcpoly::cli {

enum class Algorithm { gcp, douglas_peucker };

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

/// Effective settings of one CLI run. Defaults < config file < flags.
struct RunConfig {
  double lambda = 2.0;
  std::size_t k_max = 64;
  double step = 4.0;
  std::size_t window = 64;
  std::size_t l_max = 512;
  Algorithm algorithm = Algorithm::gcp;
  double dp_tolerance = 1.0;
  std::uint64_t seed = 42;
  /// width/height 0 means "fit the inputs".
  EvalCanvas canvas{0, 0, 1};

  void validate() const;
};

nlohmann::ordered_json to_json(const RunConfig& cfg);

/// Overrides fields present in `j`; unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Rounds to 9 significant digits so serialised numbers are platform stable.
double round_sig(double v);

/// Worker count: hardware concurrency capped by GCPOLY_THREADS when set.
std::size_t worker_count();

}  // namespace gcpoly::cli
