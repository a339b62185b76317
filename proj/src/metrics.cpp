#include "gcpoly/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace gcpoly {

void EvalCanvas::validate() const {
  if (width == 0 || height == 0 || supersample == 0) {
    throw std::invalid_argument("canvas dimensions and supersample must be positive");
  }
  const double samples = static_cast<double>(width) * static_cast<double>(height) *
                         static_cast<double>(supersample) * static_cast<double>(supersample);
  if (samples > static_cast<double>(max_samples)) {
    throw std::invalid_argument("canvas exceeds the configured sample cap");
  }
}

namespace {

struct Edge {
  Point a, b;
};

void collect_edges(const Polyline& ring, std::vector<Edge>& edges) {
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) edges.push_back({ring[i], ring[i + 1]});
  if (!ring.closed()) edges.push_back({ring.back(), ring.front()});
}

}  // namespace

RasterMask rasterize(std::span<const Polygon> polys, const EvalCanvas& canvas) {
  canvas.validate();
  const std::size_t s = canvas.supersample;
  const std::size_t sub_w = canvas.width * s;
  const std::size_t sub_h = canvas.height * s;
  const double scale = static_cast<double>(s);

  std::vector<std::vector<Edge>> edge_sets;
  for (const Polygon& poly : polys) {
    std::vector<Edge> edges;
    collect_edges(poly.exterior, edges);
    for (const auto& hole : poly.interiors) collect_edges(hole, edges);
    edge_sets.push_back(std::move(edges));
  }

  std::vector<std::uint32_t> counts(canvas.width * canvas.height, 0);
  std::vector<std::uint8_t> row(sub_w);
  std::vector<double> xs;
  for (std::size_t sy = 0; sy < sub_h; ++sy) {
    const double y = (static_cast<double>(sy) + 0.5) / scale;
    std::fill(row.begin(), row.end(), std::uint8_t{0});
    for (const auto& edges : edge_sets) {
      xs.clear();
      for (const Edge& e : edges) {
        if ((e.a.y > y) != (e.b.y > y)) {
          xs.push_back(e.a.x + (y - e.a.y) * (e.b.x - e.a.x) / (e.b.y - e.a.y));
        }
      }
      std::sort(xs.begin(), xs.end());
      for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
        // Sub-sample centres (k + 0.5) / s inside [x0, x1).
        const double lo = std::ceil(xs[k] * scale - 0.5);
        const double hi = std::ceil(xs[k + 1] * scale - 0.5);
        const auto begin = static_cast<std::size_t>(std::clamp(lo, 0.0, static_cast<double>(sub_w)));
        const auto end = static_cast<std::size_t>(std::clamp(hi, 0.0, static_cast<double>(sub_w)));
        for (std::size_t sx = begin; sx < end; ++sx) row[sx] = 1;
      }
    }
    const std::size_t py = sy / s;
    for (std::size_t sx = 0; sx < sub_w; ++sx) {
      if (row[sx]) ++counts[py * canvas.width + sx / s];
    }
  }

  std::vector<std::uint8_t> values(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) values[i] = 2 * counts[i] > s * s ? 1 : 0;
  return {canvas.width, canvas.height, std::move(values)};
}

namespace {

double mask_iou(const RasterMask& a, const RasterMask& b) {
  std::size_t inter = 0;
  std::size_t uni = 0;
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) {
    inter += va[i] & vb[i];
    uni += va[i] | vb[i];
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

double iou(std::span<const Polygon> pred, std::span<const Polygon> gt, const EvalCanvas& canvas) {
  return mask_iou(rasterize(pred, canvas), rasterize(gt, canvas));
}

std::size_t vertex_count(std::span<const Polygon> polys) {
  std::size_t n = 0;
  for (const Polygon& p : polys) n += distinct_vertex_count(p);
  return n;
}

double n_ratio(std::span<const Polygon> pred, std::span<const Polygon> gt) {
  const std::size_t gt_n = vertex_count(gt);
  if (gt_n == 0) {
    throw std::invalid_argument("n_ratio needs ground truth vertices");
  }
  return static_cast<double>(vertex_count(pred)) / static_cast<double>(gt_n);
}

double c_iou(double iou_value, std::size_t pred_vertices, std::size_t gt_vertices) {
  const std::size_t total = pred_vertices + gt_vertices;
  if (total == 0) return 0.0;
  const double gap = pred_vertices > gt_vertices ? pred_vertices - gt_vertices
                                                 : gt_vertices - pred_vertices;
  return iou_value * (1.0 - gap / static_cast<double>(total));
}

double c_iou(std::span<const Polygon> pred, std::span<const Polygon> gt, const EvalCanvas& canvas) {
  return c_iou(iou(pred, gt, canvas), vertex_count(pred), vertex_count(gt));
}

double mta(const Polygon& pred, const Polygon& gt, double spacing) {
  if (arc_length(pred.exterior) == 0.0 || arc_length(gt.exterior) == 0.0) {
    throw std::invalid_argument("mta needs non-degenerate exteriors");
  }
  const Polyline samples = resample_uniform(pred.exterior, spacing);
  const Polyline& ring = gt.exterior;

  std::vector<Point> projected;
  projected.reserve(samples.size());
  for (const Point& q : samples.points()) {
    double best = std::numeric_limits<double>::infinity();
    Point closest = ring.front();
    for (std::size_t k = 0; k + 1 < ring.size(); ++k) {
      const Point a = ring[k];
      const Point ab = ring[k + 1] - a;
      const double t = std::clamp(dot(q - a, ab) / dot(ab, ab), 0.0, 1.0);
      const Point c = a + t * ab;
      const Point off = q - c;
      const double d2 = dot(off, off);
      if (d2 < best) {
        best = d2;
        closest = c;
      }
    }
    projected.push_back(closest);
  }

  double worst = 0.0;
  const double min_step = 1e-9 * spacing;
  for (std::size_t i = 0; i + 1 < projected.size(); ++i) {
    const Point along = samples[i + 1] - samples[i];
    const Point mapped = projected[i + 1] - projected[i];
    if (norm(mapped) <= min_step) continue;
    worst = std::max(worst, std::atan2(std::abs(cross(along, mapped)), dot(along, mapped)));
  }
  return worst * 180.0 / std::numbers::pi;
}

std::vector<std::pair<std::size_t, std::size_t>> match_polygons(std::span<const Polygon> pred,
                                                                std::span<const Polygon> gt,
                                                                const EvalCanvas& canvas) {
  std::vector<RasterMask> pred_masks, gt_masks;
  for (const Polygon& p : pred) pred_masks.push_back(rasterize(std::span(&p, 1), canvas));
  for (const Polygon& g : gt) gt_masks.push_back(rasterize(std::span(&g, 1), canvas));

  struct Candidate {
    double iou;
    std::size_t pred, gt;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < gt.size(); ++j) {
      const double v = mask_iou(pred_masks[i], gt_masks[j]);
      if (v > 0.5 && (pred_masks[i].count() > 0 || gt_masks[j].count() > 0)) {
        candidates.push_back({v, i, j});
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.iou > b.iou; });
  std::vector<bool> pred_used(pred.size(), false), gt_used(gt.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const Candidate& c : candidates) {
    if (pred_used[c.pred] || gt_used[c.gt]) continue;
    pred_used[c.pred] = gt_used[c.gt] = true;
    out.emplace_back(c.pred, c.gt);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct ImageAccumulator {
  MetricReport report;
  double mta_sum = 0.0;
};

ImageAccumulator evaluate_one(std::span<const Polygon> pred, std::span<const Polygon> gt,
                              const EvalCanvas& canvas) {
  ImageAccumulator acc;
  MetricReport& r = acc.report;
  r.iou = iou(pred, gt, canvas);
  r.pred_vertices = vertex_count(pred);
  r.gt_vertices = vertex_count(gt);
  if (r.gt_vertices > 0) {
    r.n_ratio = static_cast<double>(r.pred_vertices) / static_cast<double>(r.gt_vertices);
    r.c_iou = c_iou(r.iou, r.pred_vertices, r.gt_vertices);
  }
  const auto pairs = match_polygons(pred, gt, canvas);
  r.matched_pairs = pairs.size();
  for (const auto& [i, j] : pairs) acc.mta_sum += mta(pred[i], gt[j]);
  if (!pairs.empty()) r.mta = acc.mta_sum / static_cast<double>(pairs.size());
  return acc;
}

}  // namespace

MetricReport evaluate_image(std::span<const Polygon> pred, std::span<const Polygon> gt,
                            const EvalCanvas& canvas) {
  return evaluate_one(pred, gt, canvas).report;
}

DatasetReport evaluate_set(std::span<const std::vector<Polygon>> preds,
                           std::span<const std::vector<Polygon>> gts,
                           std::span<const std::string> ids, const EvalCanvas& canvas,
                           std::size_t threads) {
  if (preds.size() != gts.size() || preds.size() != ids.size()) {
    throw std::invalid_argument("evaluate_set needs parallel pred/gt/id lists");
  }
  canvas.validate();
  const std::size_t n = preds.size();
  std::vector<ImageAccumulator> results(n);
  {
    std::atomic<std::size_t> cursor{0};
    const auto worker = [&] {
      for (std::size_t i = cursor++; i < n; i = cursor++) {
        results[i] = evaluate_one(preds[i], gts[i], canvas);
      }
    };
    std::vector<std::jthread> pool;
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
  }

  DatasetReport out;
  double iou_sum = 0.0, c_iou_sum = 0.0, ratio_sum = 0.0, mta_sum = 0.0;
  std::size_t with_gt = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const MetricReport& r = results[i].report;
    out.images.push_back({ids[i], r});
    iou_sum += r.iou;
    if (r.n_ratio) {
      ++with_gt;
      ratio_sum += *r.n_ratio;
      c_iou_sum += *r.c_iou;
    } else {
      out.skipped.push_back(ids[i]);
    }
    mta_sum += results[i].mta_sum;
    out.mean.pred_vertices += r.pred_vertices;
    out.mean.gt_vertices += r.gt_vertices;
    out.mean.matched_pairs += r.matched_pairs;
  }
  if (n > 0) out.mean.iou = iou_sum / static_cast<double>(n);
  if (with_gt > 0) {
    out.mean.n_ratio = ratio_sum / static_cast<double>(with_gt);
    out.mean.c_iou = c_iou_sum / static_cast<double>(with_gt);
  }
  if (out.mean.matched_pairs > 0) {
    out.mean.mta = mta_sum / static_cast<double>(out.mean.matched_pairs);
  }
  return out;
}

}  // namespace gcpoly
