#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcpoly/cli/commands.hpp"
#include "gcpoly/cli/config.hpp"

using namespace gcpoly::cli;

namespace {

struct ConfigFlags {
  std::optional<double> lambda;
  std::optional<std::size_t> k_max;
  std::optional<double> step;
  std::optional<std::size_t> window;
  std::optional<std::size_t> l_max;
  std::optional<std::string> algorithm;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> config;
  std::string out;

  void add_to(CLI::App* app, bool with_kmax = true) {
    app->add_option("--lambda", lambda, "per-vertex penalty");
    if (with_kmax) app->add_option("--kmax", k_max, "maximum index span of one edge");
    app->add_option("--step", step, "resampling step in pixels");
    app->add_option("--window", window, "window size K");
    app->add_option("--lmax", l_max, "maximum contour length after downsampling");
    app->add_option("--algorithm", algorithm, "gcp or douglas_peucker");
    app->add_option("--tolerance", tolerance, "Douglas-Peucker tolerance");
    app->add_option("--seed", seed, "random seed");
    app->add_option("--config", config, "JSON config file");
    app->add_option("--out", out, "output file (default stdout)");
  }

  RunConfig resolve() const {
    RunConfig cfg = config ? load_config_file(*config) : RunConfig{};
    if (lambda) cfg.lambda = *lambda;
    if (k_max) cfg.k_max = *k_max;
    if (step) cfg.step = *step;
    if (window) cfg.window = *window;
    if (l_max) cfg.l_max = *l_max;
    if (algorithm) cfg.algorithm = parse_algorithm(*algorithm);
    if (tolerance) cfg.dp_tolerance = *tolerance;
    if (seed) cfg.seed = *seed;
    cfg.validate();
    return cfg;
  }
};

// Buffers the whole output so a failed run never leaves a partial file.
int emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    std::cerr << "cannot write " << path << '\n';
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collinearity-aware polygon simplification"};
  app.require_subcommand(1);

  ConfigFlags poly_flags, simp_flags, eval_flags, oracle_flags, bench_flags;

  auto* polygonize = app.add_subcommand("polygonize", "PGM masks to simplified polygons");
  std::vector<std::string> masks;
  polygonize->add_option("masks", masks, "PGM mask files")->required();
  poly_flags.add_to(polygonize);

  auto* simplify = app.add_subcommand("simplify", "simplify GeoJSON lines and polygons");
  std::string simplify_input;
  simplify->add_option("input", simplify_input, "GeoJSON file")->required();
  simp_flags.add_to(simplify);

  auto* evaluate = app.add_subcommand("evaluate", "compare predicted and reference polygons");
  std::string pred, gt;
  bool allow_missing = false;
  evaluate->add_option("pred", pred, "predicted GeoJSON")->required();
  evaluate->add_option("gt", gt, "reference GeoJSON")->required();
  evaluate->add_flag("--allow-missing", allow_missing, "skip ids present in only one file");
  std::optional<std::size_t> canvas_w, canvas_h, supersample;
  evaluate->add_option("--width", canvas_w, "canvas width (0 fits the inputs)");
  evaluate->add_option("--height", canvas_h, "canvas height (0 fits the inputs)");
  evaluate->add_option("--supersample", supersample, "samples per pixel side");
  eval_flags.add_to(evaluate);

  auto* oracle = app.add_subcommand("oracle-check", "compare the DP against brute force");
  OracleOptions oracle_opts;
  oracle->add_option("--trials", oracle_opts.trials, "number of random polylines");
  oracle->add_option("--max-len", oracle_opts.max_len, "maximum polyline length");
  oracle->add_option("--lambdas", oracle_opts.lambdas, "lambda values")->delimiter(',');
  oracle->add_flag("--perturb-dp", oracle_opts.perturb_dp, "corrupt the DP weighting");
  oracle_flags.add_to(oracle, false);

  auto* bench = app.add_subcommand("bench", "time the DP across polyline sizes");
  BenchOptions bench_opts;
  bench->add_option("--sizes", bench_opts.sizes, "polyline sizes, ascending")->delimiter(',');
  bench->add_option("--kmax", bench_opts.k_max, "k_max values")->delimiter(',');
  bench->add_option("--reps", bench_opts.repetitions, "repetitions per cell");
  bench_flags.add_to(bench, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  std::ostringstream out;
  std::ostringstream table;
  int status = kExitOk;
  std::string out_path;
  try {
    if (*polygonize) {
      out_path = poly_flags.out;
      status = cmd_polygonize(masks, poly_flags.resolve(), out, std::cerr);
    } else if (*simplify) {
      out_path = simp_flags.out;
      status = cmd_simplify(simplify_input, simp_flags.resolve(), out, std::cerr);
    } else if (*evaluate) {
      out_path = eval_flags.out;
      RunConfig cfg = eval_flags.resolve();
      if (canvas_w) cfg.canvas.width = *canvas_w;
      if (canvas_h) cfg.canvas.height = *canvas_h;
      if (supersample) cfg.canvas.supersample = *supersample;
      cfg.validate();
      status = cmd_evaluate(pred, gt, cfg, allow_missing, out, table, std::cerr);
    } else if (*oracle) {
      out_path = oracle_flags.out;
      status = cmd_oracle_check(oracle_opts, oracle_flags.resolve(), out, std::cerr);
    } else if (*bench) {
      out_path = bench_flags.out;
      status = cmd_bench(bench_opts, bench_flags.resolve(), out, std::cerr);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  if (!out.str().empty()) {
    const int written = emit(out_path, out.str());
    if (written != kExitOk) return written;
  }
  if (!table.str().empty()) {
    (out_path.empty() || out_path == "-" ? std::cerr : std::cout) << table.str();
  }
  return status;
}
