#include "gcpoly/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>

namespace gcpoly::cli {

std::string algorithm_name(Algorithm a) {
  return a == Algorithm::gcp ? "gcp" : "douglas_peucker";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "gcp") return Algorithm::gcp;
  if (name == "douglas_peucker" || name == "dp") return Algorithm::douglas_peucker;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

void RunConfig::validate() const {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  if (k_max < 2) throw std::invalid_argument("k_max must be >= 2");
  if (!(step > 0.0)) throw std::invalid_argument("step must be > 0");
  if (window < 2) throw std::invalid_argument("window must be >= 2");
  if (l_max < 3) throw std::invalid_argument("l_max must be >= 3");
  if (!(dp_tolerance >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  if (canvas.supersample == 0) throw std::invalid_argument("supersample must be >= 1");
}

double round_sig(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v == 0.0 ? 0.0 : v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["lambda"] = round_sig(cfg.lambda);
  j["k_max"] = cfg.k_max;
  j["step"] = round_sig(cfg.step);
  j["window"] = cfg.window;
  j["l_max"] = cfg.l_max;
  j["algorithm"] = algorithm_name(cfg.algorithm);
  j["dp_tolerance"] = round_sig(cfg.dp_tolerance);
  j["seed"] = cfg.seed;
  j["canvas"] = {{"width", cfg.canvas.width},
                 {"height", cfg.canvas.height},
                 {"supersample", cfg.canvas.supersample}};
  return j;
}

namespace {

void apply_fields(RunConfig& cfg, const nlohmann::json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key == "lambda") cfg.lambda = value.get<double>();
    else if (key == "k_max") cfg.k_max = value.get<std::size_t>();
    else if (key == "step") cfg.step = value.get<double>();
    else if (key == "window") cfg.window = value.get<std::size_t>();
    else if (key == "l_max") cfg.l_max = value.get<std::size_t>();
    else if (key == "algorithm") cfg.algorithm = parse_algorithm(value.get<std::string>());
    else if (key == "dp_tolerance") cfg.dp_tolerance = value.get<double>();
    else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
    else if (key == "canvas") {
      if (!value.is_object()) throw std::invalid_argument("config 'canvas' must be an object");
      for (const auto& [ck, cv] : value.items()) {
        if (ck == "width") cfg.canvas.width = cv.get<std::size_t>();
        else if (ck == "height") cfg.canvas.height = cv.get<std::size_t>();
        else if (ck == "supersample") cfg.canvas.supersample = cv.get<std::size_t>();
        else throw std::invalid_argument("unknown canvas key '" + ck + "'");
      }
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

}  // namespace

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  RunConfig next = cfg;
  try {
    apply_fields(next, j);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config value has the wrong type: ") + e.what());
  }
  cfg = next;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config file " + path + ": " + e.what());
  }
  try {
    apply_json(base, j);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("config file " + path + ": " + e.what());
  }
  return base;
}

std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GCPOLY_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

}  // namespace gcpoly::cli
