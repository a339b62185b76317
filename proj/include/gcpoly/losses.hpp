#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gcpoly/geometry.hpp"
#include "gcpoly/simplify.hpp"

namespace gcpoly {

struct MatchPair {
  std::size_t pred = 0;
  std::size_t gt = 0;
  friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

struct Matching {
  std::vector<MatchPair> pairs;  // sorted by pred index
  double threshold = 15.0;
};

/// Minimum total Euclidean cost assignment between the two point sets, then
/// drops pairs at distance >= threshold.
Matching hungarian_match(std::span<const Point> pred, std::span<const Point> gt,
                         double threshold = 15.0);

/// Splits a matching into aligned (pred, gt) point sequences.
std::pair<std::vector<Point>, std::vector<Point>> matched_points(std::span<const Point> pred,
                                                                 std::span<const Point> gt,
                                                                 const Matching& matching);

/// Mean smooth-L1 over every matched coordinate component. 0 for no pairs.
double vertex_loss(std::span<const Point> pred, std::span<const Point> gt, double beta = 1.0);

/// Largest difference, in radians within [0, pi], between the angles formed by
/// consecutive matched triples in pred and in gt. 0 with fewer than 3 points.
double angular_loss(std::span<const Point> pred, std::span<const Point> gt);

/// Collinearity distance of `p` under a fixed selection.
double collinearity_loss(const Polyline& p, const Selection& sel);

/// Analytic gradient of collinearity_loss with respect to every point of `p`
/// (x and y stored in a Point). Summands with distance <= 1e-9 contribute 0.
std::vector<Point> collinearity_loss_grad(const Polyline& p, const Selection& sel);

}  // namespace gcpoly
