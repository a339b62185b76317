#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcpoly/contour.hpp"
#include "gcpoly/geometry.hpp"

namespace gcpoly {

/// Rasterisation target for IoU.
struct EvalCanvas {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t supersample = 1;
  /// Upper bound on width * height * supersample^2 samples.
  std::size_t max_samples = std::size_t{1} << 28;

  void validate() const;
};

/// Even-odd fill of each polygon (holes subtract), unioned across polygons.
/// Samples pixel centres of the supersampled grid, then keeps a pixel when
/// more than half of its sub-samples are inside.
RasterMask rasterize(std::span<const Polygon> polys, const EvalCanvas& canvas);

/// Raster IoU; 1 when both masks are empty.
double iou(std::span<const Polygon> pred, std::span<const Polygon> gt, const EvalCanvas& canvas);

/// Total distinct vertices over every ring of every polygon.
std::size_t vertex_count(std::span<const Polygon> polys);

/// Predicted over ground-truth vertex count. Throws if gt has no vertices.
double n_ratio(std::span<const Polygon> pred, std::span<const Polygon> gt);

/// IoU scaled by 1 - |N_pred - N_gt| / (N_pred + N_gt).
double c_iou(double iou_value, std::size_t pred_vertices, std::size_t gt_vertices);
double c_iou(std::span<const Polygon> pred, std::span<const Polygon> gt, const EvalCanvas& canvas);

/// Max tangent angle error in degrees between the exteriors. The predicted
/// ring is sampled every `spacing` pixels of arc length and each sample is
/// projected onto the nearest point of the ground-truth ring; the result is
/// the largest angle between a step of the sampled sequence and the matching
/// step of the projected sequence. Steps whose projections coincide have no
/// tangent and are skipped.
double mta(const Polygon& pred, const Polygon& gt, double spacing = 0.1);

struct MetricReport {
  double iou = 0.0;
  std::optional<double> c_iou;    // absent when the image has no gt vertices
  std::optional<double> n_ratio;  // absent when the image has no gt vertices
  std::optional<double> mta;      // mean over matched pairs; absent with no pairs
  std::size_t pred_vertices = 0;
  std::size_t gt_vertices = 0;
  std::size_t matched_pairs = 0;
};

struct ImageMetrics {
  std::string id;
  MetricReport report;
};

struct DatasetReport {
  std::vector<ImageMetrics> images;
  MetricReport mean;
  std::vector<std::string> skipped;  // images without gt vertices
};

/// Pairs pred and gt polygons one-to-one by descending IoU, keeping pairs
/// with IoU > 0.5. Returned as (pred index, gt index), sorted by pred index.
std::vector<std::pair<std::size_t, std::size_t>> match_polygons(std::span<const Polygon> pred,
                                                                std::span<const Polygon> gt,
                                                                const EvalCanvas& canvas);

MetricReport evaluate_image(std::span<const Polygon> pred, std::span<const Polygon> gt,
                            const EvalCanvas& canvas);

/// Per-image metrics plus dataset means. IoU is averaged over all images,
/// C-IoU and N-ratio over images with gt vertices, MTA over all matched pairs.
DatasetReport evaluate_set(std::span<const std::vector<Polygon>> preds,
                           std::span<const std::vector<Polygon>> gts,
                           std::span<const std::string> ids, const EvalCanvas& canvas,
                           std::size_t threads = 1);

}  // namespace gcpoly
