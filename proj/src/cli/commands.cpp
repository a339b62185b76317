#include "gcpoly/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gcpoly/cli/geojson_io.hpp"
#include "gcpoly/cli/pgm.hpp"
#include "gcpoly/metrics.hpp"

namespace gcpoly::cli {

using nlohmann::ordered_json;

namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  std::atomic<std::size_t> cursor{0};
  const auto worker = [&] {
    for (std::size_t i = cursor++; i < n; i = cursor++) fn(i);
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < std::min(workers, n); ++t) pool.emplace_back(worker);
  worker();
}

Selection full_selection(const Polyline& line, double lambda) {
  Selection sel;
  for (std::size_t i = 0; i < line.size(); ++i) sel.indices.push_back(i);
  sel.total_cost = lambda * static_cast<double>(line.size());
  return sel;
}

Polyline rebuild(const Polyline& line, const Selection& sel) {
  std::vector<Point> pts = selected_points(line, sel);
  return line.closed() ? Polyline::ring(std::move(pts)) : Polyline(std::move(pts), false);
}

ordered_json rounded(double v) { return round_sig(v); }

}  // namespace

Selection simplify_line(const Polyline& line, const RunConfig& cfg) {
  Selection sel = cfg.algorithm == Algorithm::gcp
                      ? gcp_simplify(line, {cfg.lambda, cfg.k_max})
                      : douglas_peucker(line, cfg.dp_tolerance, cfg.lambda);
  if (line.closed() && sel.indices.size() < 4 && line.size() >= 4) {
    sel = full_selection(line, cfg.lambda);
  }
  return sel;
}

PolygonizeResult polygonize_mask(const RasterMask& mask, const RunConfig& cfg) {
  cfg.validate();
  const Polygon traced = trace_contours(largest_component(mask));
  double distance_sum = 0.0;
  std::size_t vertex_count = 0;
  const auto process = [&](const Polyline& ring) {
    Polyline dense = ring;
    try {
      Polyline sampled = resample_uniform(ring, cfg.step);
      if (sampled.size() >= 5) dense = std::move(sampled);
    } catch (const std::invalid_argument&) {
      // ring shorter than a couple of steps: keep the traced corners
    }
    dense = downsample_to(dense, cfg.l_max);
    const Selection sel = simplify_line(dense, cfg);
    distance_sum += sel.distance_sum;
    Polyline simplified = rebuild(dense, sel);
    vertex_count += distinct_vertex_count(simplified);
    return simplified;
  };
  Polygon polygon{process(traced.exterior), {}};
  for (const auto& hole : traced.interiors) polygon.interiors.push_back(process(hole));
  return {std::move(polygon), distance_sum, vertex_count};
}

int cmd_polygonize(const std::vector<std::string>& masks, const RunConfig& cfg, std::ostream& out,
                   std::ostream& log) {
  cfg.validate();
  std::vector<ordered_json> features(masks.size());
  std::vector<std::string> errors(masks.size());
  parallel_for(masks.size(), worker_count(), [&](std::size_t i) {
    ordered_json props;
    props["source"] = masks[i];
    props["image_id"] = std::filesystem::path(masks[i]).stem().string();
    try {
      const PolygonizeResult r = polygonize_mask(read_pgm_file(masks[i]), cfg);
      props["algorithm"] = algorithm_name(cfg.algorithm);
      props["lambda"] = rounded(cfg.lambda);
      props["k_max"] = cfg.k_max;
      if (cfg.algorithm == Algorithm::douglas_peucker) props["tolerance"] = rounded(cfg.dp_tolerance);
      props["distance_sum"] = rounded(r.distance_sum);
      props["vertex_count"] = r.vertex_count;
      features[i] = {{"type", "Feature"}, {"properties", props},
                     {"geometry", polygon_to_json(r.polygon)}};
    } catch (const std::exception& e) {
      errors[i] = e.what();
      props["error"] = e.what();
      features[i] = {{"type", "Feature"}, {"properties", props}, {"geometry", nullptr}};
    }
  });

  int status = kExitOk;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (!errors[i].empty()) {
      log << "polygonize: " << masks[i] << ": " << errors[i] << '\n';
      status = kExitInputError;
    }
  }
  ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["config"] = to_json(cfg);
  doc["features"] = features;
  out << doc.dump(1) << '\n';
  return status;
}

int cmd_simplify(const std::string& input, const RunConfig& cfg, std::ostream& out,
                 std::ostream& log) {
  cfg.validate();
  std::vector<Feature> features;
  try {
    features = read_features_file(input);
  } catch (const std::invalid_argument& e) {
    log << "simplify: " << e.what() << '\n';
    return kExitInputError;
  }

  ordered_json out_features = ordered_json::array();
  for (const Feature& f : features) {
    ordered_json props = f.properties;
    ordered_json geometry = nullptr;
    if (f.geometry) {
      Geometry simplified{f.geometry->kind, {}};
      ordered_json indices = ordered_json::array();
      double distance_sum = 0.0;
      double objective = 0.0;
      std::size_t vertices = 0;
      for (const auto& part : f.geometry->parts) {
        std::vector<Polyline> rings;
        for (const Polyline& line : part) {
          const Selection sel = simplify_line(line, cfg);
          rings.push_back(rebuild(line, sel));
          distance_sum += sel.distance_sum;
          objective += sel.total_cost;
          vertices += distinct_vertex_count(rings.back());
          indices.push_back(sel.indices);
        }
        simplified.parts.push_back(std::move(rings));
      }
      geometry = geometry_to_json(simplified);
      props["algorithm"] = algorithm_name(cfg.algorithm);
      props["lambda"] = rounded(cfg.lambda);
      if (cfg.algorithm == Algorithm::gcp) {
        props["k_max"] = cfg.k_max;
      } else {
        props["tolerance"] = rounded(cfg.dp_tolerance);
      }
      props["vertex_count"] = vertices;
      props["distance_sum"] = rounded(distance_sum);
      props["objective"] = rounded(objective);
      props["indices"] = indices;
    }
    out_features.push_back({{"type", "Feature"}, {"properties", props}, {"geometry", geometry}});
  }
  ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["config"] = to_json(cfg);
  doc["features"] = out_features;
  out << doc.dump(1) << '\n';
  return kExitOk;
}

namespace {

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(round_sig(*v)) : ordered_json(nullptr);
}

ordered_json report_json(const MetricReport& r) {
  ordered_json j;
  j["iou"] = round_sig(r.iou);
  j["c_iou"] = optional_number(r.c_iou);
  j["n_ratio"] = optional_number(r.n_ratio);
  j["mta"] = optional_number(r.mta);
  j["pred_vertices"] = r.pred_vertices;
  j["gt_vertices"] = r.gt_vertices;
  j["matched_pairs"] = r.matched_pairs;
  return j;
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << *v;
  return s.str();
}

EvalCanvas fit_canvas(const RunConfig& cfg, const std::vector<std::vector<Polygon>>& a,
                      const std::vector<std::vector<Polygon>>& b) {
  EvalCanvas canvas = cfg.canvas;
  if (canvas.width > 0 && canvas.height > 0) return canvas;
  double max_x = 1.0, max_y = 1.0;
  for (const auto* sets : {&a, &b}) {
    for (const auto& polys : *sets) {
      for (const auto& poly : polys) {
        for (const Point& p : poly.exterior.points()) {
          max_x = std::max(max_x, p.x);
          max_y = std::max(max_y, p.y);
        }
      }
    }
  }
  if (canvas.width == 0) canvas.width = static_cast<std::size_t>(std::ceil(max_x));
  if (canvas.height == 0) canvas.height = static_cast<std::size_t>(std::ceil(max_y));
  return canvas;
}

}  // namespace

int cmd_evaluate(const std::string& pred, const std::string& gt, const RunConfig& cfg,
                 bool allow_missing, std::ostream& out, std::ostream& table, std::ostream& log) {
  cfg.validate();
  std::vector<Feature> pred_features, gt_features;
  try {
    pred_features = read_features_file(pred);
    gt_features = read_features_file(gt);
  } catch (const std::invalid_argument& e) {
    log << "evaluate: " << e.what() << '\n';
    return kExitInputError;
  }

  // Images in order of first appearance, gt first.
  std::vector<std::string> ids;
  std::map<std::string, std::size_t> slot;
  std::vector<std::vector<Polygon>> preds, gts;
  std::vector<bool> in_pred, in_gt;
  const auto add = [&](const std::vector<Feature>& features, bool is_gt) {
    for (const Feature& f : features) {
      const std::string id = feature_id(f);
      auto [it, inserted] = slot.try_emplace(id, ids.size());
      if (inserted) {
        ids.push_back(id);
        preds.emplace_back();
        gts.emplace_back();
        in_pred.push_back(false);
        in_gt.push_back(false);
      }
      const std::size_t k = it->second;
      (is_gt ? in_gt : in_pred)[k] = true;
      if (f.geometry) {
        auto polys = polygons_of(*f.geometry);
        auto& dst = is_gt ? gts[k] : preds[k];
        dst.insert(dst.end(), polys.begin(), polys.end());
      }
    }
  };
  add(gt_features, true);
  add(pred_features, false);

  std::vector<std::string> missing;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (!in_pred[k] || !in_gt[k]) missing.push_back(ids[k]);
  }
  if (!missing.empty() && !allow_missing) {
    for (const auto& id : missing) {
      log << "evaluate: image '" << id << "' is missing from one of the inputs\n";
    }
    return kExitInputError;
  }

  const EvalCanvas canvas = fit_canvas(cfg, preds, gts);
  DatasetReport report;
  try {
    report = evaluate_set(preds, gts, ids, canvas, worker_count());
  } catch (const std::invalid_argument& e) {
    log << "evaluate: " << e.what() << '\n';
    return kExitInputError;
  }

  ordered_json doc;
  doc["config"] = to_json(cfg);
  doc["canvas"] = {{"width", canvas.width},
                   {"height", canvas.height},
                   {"supersample", canvas.supersample}};
  ordered_json images = ordered_json::array();
  for (const auto& img : report.images) {
    ordered_json j;
    j["image_id"] = img.id;
    const ordered_json fields = report_json(img.report);
    for (auto& [k, v] : fields.items()) j[k] = v;
    images.push_back(j);
  }
  doc["images"] = images;
  doc["mean"] = report_json(report.mean);
  doc["skipped"] = report.skipped;
  doc["missing"] = missing;
  out << doc.dump(1) << '\n';

  table << std::left << std::setw(24) << "image" << std::right << std::setw(10) << "IoU"
        << std::setw(10) << "C-IoU" << std::setw(10) << "N-ratio" << std::setw(10) << "MTA"
        << '\n';
  const auto row = [&](const std::string& name, const MetricReport& r) {
    table << std::left << std::setw(24) << name << std::right << std::setw(10)
          << cell(r.iou) << std::setw(10) << cell(r.c_iou) << std::setw(10) << cell(r.n_ratio)
          << std::setw(10) << cell(r.mta) << '\n';
  };
  for (const auto& img : report.images) row(img.id, img.report);
  row("mean", report.mean);
  return kExitOk;
}

Polyline random_polyline(std::size_t family, std::size_t size, std::mt19937_64& rng) {
  std::vector<Point> pts;
  switch (family % 3) {
    case 0: {
      std::uniform_real_distribution<double> coord(0.0, 100.0);
      while (pts.size() < size) {
        const Point p{coord(rng), coord(rng)};
        if (pts.empty() || pts.back() != p) pts.push_back(p);
      }
      break;
    }
    case 1: {
      std::uniform_int_distribution<int> axis(0, 1), sign(0, 1), len(1, 5);
      Point p{0.0, 0.0};
      pts.push_back(p);
      while (pts.size() < size) {
        const double d = (sign(rng) ? 1.0 : -1.0) * len(rng);
        p = axis(rng) ? Point{p.x + d, p.y} : Point{p.x, p.y + d};
        pts.push_back(p);
      }
      break;
    }
    default: {
      std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
      std::uniform_real_distribution<double> base(0.0, 100.0), gap(0.5, 3.0);
      const double a = angle(rng);
      const Point dir{std::cos(a), std::sin(a)};
      const Point origin{base(rng), base(rng)};
      double t = 0.0;
      while (pts.size() < size) {
        pts.push_back(origin + t * dir);
        t += gap(rng);
      }
      break;
    }
  }
  return Polyline::open(std::move(pts));
}

int cmd_oracle_check(const OracleOptions& opts, const RunConfig& cfg, std::ostream& out,
                     std::ostream& log) {
  if (opts.max_len < 2 || opts.max_len > 20) {
    log << "oracle-check: max_len must be within [2, 20]\n";
    return kExitInputError;
  }
  constexpr double tolerance = 1e-9;
  std::mt19937_64 rng(cfg.seed);
  const std::size_t min_len = std::min<std::size_t>(3, opts.max_len);
  std::uniform_int_distribution<std::size_t> length(min_len, opts.max_len);

  std::size_t checks = 0, mismatches = 0;
  double max_deviation = 0.0;
  ordered_json failures = ordered_json::array();
  for (std::size_t trial = 0; trial < opts.trials; ++trial) {
    const std::size_t n = length(rng);
    const Polyline p = random_polyline(trial, n, rng);
    for (double lambda : opts.lambdas) {
      for (std::size_t k_max : {std::size_t{3}, n}) {
        if (k_max < 2) continue;
        SimplifyParams params{lambda, k_max};
        SimplifyParams dp_params = params;
        if (opts.perturb_dp) dp_params.lambda = 1.5 * lambda + 0.25;
        const Selection dp = gcp_simplify(p, dp_params);
        const double dp_total = objective_value(p, dp, lambda).total;
        const Selection oracle = brute_force_simplify(p, params);
        const double deviation = std::abs(dp_total - oracle.total_cost);
        max_deviation = std::max(max_deviation, deviation);
        ++checks;
        if (deviation > tolerance || dp.indices != oracle.indices) {
          ++mismatches;
          if (failures.size() < 5) {
            ordered_json props;
            props["trial"] = trial;
            props["lambda"] = round_sig(lambda);
            props["k_max"] = k_max;
            props["dp_indices"] = dp.indices;
            props["oracle_indices"] = oracle.indices;
            props["dp_total"] = round_sig(dp_total);
            props["oracle_total"] = round_sig(oracle.total_cost);
            failures.push_back(
                {{"type", "Feature"}, {"properties", props}, {"geometry", line_to_json(p)}});
          }
        }
      }
    }
  }

  ordered_json doc;
  doc["config"] = to_json(cfg);
  doc["trials"] = opts.trials;
  doc["max_len"] = opts.max_len;
  ordered_json lambdas = ordered_json::array();
  for (double l : opts.lambdas) lambdas.push_back(round_sig(l));
  doc["lambdas"] = lambdas;
  doc["perturb_dp"] = opts.perturb_dp;
  doc["checks"] = checks;
  doc["mismatches"] = mismatches;
  doc["max_deviation"] = round_sig(max_deviation);
  doc["tolerance"] = tolerance;
  doc["status"] = mismatches == 0 ? "pass" : "fail";
  doc["failures"] = {{"type", "FeatureCollection"}, {"features", failures}};
  out << doc.dump(1) << '\n';
  if (mismatches > 0) {
    log << "oracle-check: " << mismatches << " of " << checks << " checks disagree\n";
    return kExitPropertyFailure;
  }
  return kExitOk;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs at least two points");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

BenchResult run_bench(const BenchOptions& opts, const RunConfig& cfg) {
  if (opts.sizes.empty() || opts.k_max.empty() || opts.repetitions == 0) {
    throw std::invalid_argument("bench needs sizes, k_max values and repetitions >= 1");
  }
  if (!std::is_sorted(opts.sizes.begin(), opts.sizes.end())) {
    throw std::invalid_argument("bench sizes must be sorted ascending");
  }
  BenchResult result;
  std::mt19937_64 rng(cfg.seed);
  std::vector<Polyline> inputs;
  for (std::size_t n : opts.sizes) inputs.push_back(random_polyline(0, n, rng));

  for (std::size_t k : opts.k_max) {
    std::vector<double> xs, ys;
    for (std::size_t s = 0; s < opts.sizes.size(); ++s) {
      const Polyline& p = inputs[s];
      const SimplifyParams params{cfg.lambda, k};
      std::vector<double> times;
      Selection sel;
      for (std::size_t r = 0; r < opts.repetitions; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        sel = gcp_simplify(p, params);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      }
      std::sort(times.begin(), times.end());
      const std::size_t mid = times.size() / 2;
      const double median =
          times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
      const Selection at_t = gcp_simplify(p, {cfg.lambda, p.size()});
      const Selection unbounded = gcp_simplify(p, {cfg.lambda, SimplifyParams::unbounded});
      result.rows.push_back({p.size(), k, median, sel.vertex_count(),
                             at_t.indices == unbounded.indices});
      xs.push_back(static_cast<double>(p.size()));
      ys.push_back(median);
    }
    if (xs.size() >= 2) result.slopes.emplace_back(k, loglog_slope(xs, ys));
  }
  return result;
}

int cmd_bench(const BenchOptions& opts, const RunConfig& cfg, std::ostream& out,
              std::ostream& log) {
  BenchResult result;
  try {
    result = run_bench(opts, cfg);
  } catch (const std::invalid_argument& e) {
    log << "bench: " << e.what() << '\n';
    return kExitInputError;
  }
  out << "# config: " << to_json(cfg).dump() << '\n';
  out << "size,k_max,repetitions,median_ms,vertex_count,unbounded_equal\n";
  bool neutral = true;
  for (const BenchRow& row : result.rows) {
    out << row.size << ',' << row.k_max << ',' << opts.repetitions << ','
        << round_sig(row.median_ms) << ',' << row.vertex_count << ','
        << (row.unbounded_equal ? "true" : "false") << '\n';
    neutral = neutral && row.unbounded_equal;
  }
  for (const auto& [k, slope] : result.slopes) {
    out << "# loglog_slope k_max=" << k << ": " << round_sig(slope) << '\n';
  }
  if (!neutral) {
    log << "bench: k_max = T disagrees with the unbounded run\n";
    return kExitPropertyFailure;
  }
  return kExitOk;
}

}  // namespace gcpoly::cli
