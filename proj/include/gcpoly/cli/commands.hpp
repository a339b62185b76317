#pragma once

#include <cstddef>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "gcpoly/cli/config.hpp"
#include "gcpoly/contour.hpp"
#include "gcpoly/simplify.hpp"

namespace gcpoly::cli {

/// Exit codes shared by every verb.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitInputError = 2;

/// Simplifies one polyline with the configured algorithm. The selection is
/// scored with cfg.lambda. A closed ring that would collapse below three
/// distinct vertices keeps all of its points.
Selection simplify_line(const Polyline& line, const RunConfig& cfg);

struct PolygonizeResult {
  Polygon polygon;
  double distance_sum = 0.0;
  std::size_t vertex_count = 0;  // distinct vertices over all rings
};

/// largest_component -> trace_contours -> per ring: resample_uniform(step),
/// downsample_to(l_max), simplify. Rings too short to resample at `step`
/// are simplified as traced.
PolygonizeResult polygonize_mask(const RasterMask& mask, const RunConfig& cfg);

int cmd_polygonize(const std::vector<std::string>& masks, const RunConfig& cfg, std::ostream& out,
                   std::ostream& log);

int cmd_simplify(const std::string& input, const RunConfig& cfg, std::ostream& out,
                 std::ostream& log);

/// Writes the JSON report to `out` and a human-readable table to `table`.
int cmd_evaluate(const std::string& pred, const std::string& gt, const RunConfig& cfg,
                 bool allow_missing, std::ostream& out, std::ostream& table, std::ostream& log);

struct OracleOptions {
  std::size_t trials = 1000;
  std::size_t max_len = 14;
  std::vector<double> lambdas{0.0, 0.5, 1.0, 2.0, 4.0};
  /// Deliberately corrupts the DP weighting so the check must fail.
  bool perturb_dp = false;
};

int cmd_oracle_check(const OracleOptions& opts, const RunConfig& cfg, std::ostream& out,
                     std::ostream& log);

struct BenchOptions {
  std::vector<std::size_t> sizes{128, 256, 512, 1024};
  std::vector<std::size_t> k_max{64};
  std::size_t repetitions = 5;
};

struct BenchRow {
  std::size_t size = 0;
  std::size_t k_max = 0;
  double median_ms = 0.0;
  std::size_t vertex_count = 0;
  bool unbounded_equal = false;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<std::pair<std::size_t, double>> slopes;  // (k_max, log-log slope over sizes)
};

BenchResult run_bench(const BenchOptions& opts, const RunConfig& cfg);
int cmd_bench(const BenchOptions& opts, const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Random polyline families used by oracle-check: 0 uniform in [0,100]^2,
/// 1 rectilinear lattice walk, 2 collinear.
Polyline random_polyline(std::size_t family, std::size_t size, std::mt19937_64& rng);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gcpoly::cli
