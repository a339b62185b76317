#include "gcpoly/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gcpoly/assignment.hpp"

namespace gcpoly {

Matching hungarian_match(std::span<const Point> pred, std::span<const Point> gt,
                         double threshold) {
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("match threshold must be positive");
  }
  std::vector<double> cost(pred.size() * gt.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < gt.size(); ++j) cost[i * gt.size() + j] = distance(pred[i], gt[j]);
  }
  const auto assignment = solve_assignment(cost, pred.size(), gt.size());
  Matching m;
  m.threshold = threshold;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (assignment[i] && distance(pred[i], gt[*assignment[i]]) < threshold) {
      m.pairs.push_back({i, *assignment[i]});
    }
  }
  return m;
}

std::pair<std::vector<Point>, std::vector<Point>> matched_points(std::span<const Point> pred,
                                                                 std::span<const Point> gt,
                                                                 const Matching& matching) {
  std::pair<std::vector<Point>, std::vector<Point>> out;
  for (const MatchPair& pair : matching.pairs) {
    out.first.push_back(pred[pair.pred]);
    out.second.push_back(gt[pair.gt]);
  }
  return out;
}

double vertex_loss(std::span<const Point> pred, std::span<const Point> gt, double beta) {
  if (pred.size() != gt.size()) {
    throw std::invalid_argument("vertex_loss needs equally long matched sequences");
  }
  if (!(beta > 0.0)) {
    throw std::invalid_argument("smooth-L1 beta must be positive");
  }
  if (pred.empty()) return 0.0;
  const auto smooth_l1 = [beta](double d) {
    const double a = std::abs(d);
    return a < beta ? 0.5 * a * a / beta : a - 0.5 * beta;
  };
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    sum += smooth_l1(pred[i].x - gt[i].x) + smooth_l1(pred[i].y - gt[i].y);
  }
  return sum / static_cast<double>(2 * pred.size());
}

namespace {

// Signed turn from edge (u -> v) to edge (v -> w), in (-pi, pi].
double turn_angle(Point u, Point v, Point w) {
  const Point a = v - u;
  const Point b = w - v;
  return std::atan2(cross(a, b), dot(a, b));
}

double wrapped_difference(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * std::numbers::pi);
  return d > std::numbers::pi ? 2.0 * std::numbers::pi - d : d;
}

}  // namespace

double angular_loss(std::span<const Point> pred, std::span<const Point> gt) {
  if (pred.size() != gt.size()) {
    throw std::invalid_argument("angular_loss needs equally long matched sequences");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i + 2 < pred.size(); ++i) {
    const double a = turn_angle(pred[i], pred[i + 1], pred[i + 2]);
    const double b = turn_angle(gt[i], gt[i + 1], gt[i + 2]);
    worst = std::max(worst, wrapped_difference(a, b));
  }
  return worst;
}

double collinearity_loss(const Polyline& p, const Selection& sel) {
  return objective_value(p, sel, 0.0).distance_sum;
}

std::vector<Point> collinearity_loss_grad(const Polyline& p, const Selection& sel) {
  // Validates the selection.
  (void)objective_value(p, sel, 0.0);
  std::vector<Point> grad(p.size());
  constexpr double inactive = 1e-9;
  for (std::size_t k = 0; k + 1 < sel.indices.size(); ++k) {
    const std::size_t ia = sel.indices[k];
    const std::size_t ib = sel.indices[k + 1];
    const Point a = p[ia];
    const Point b = p[ib];
    const Point u = b - a;
    const double len = norm(u);
    for (std::size_t l = ia + 1; l < ib; ++l) {
      const Point w = p[l] - a;
      if (len == 0.0) {
        // Degenerate chord: the distance is |q - a|.
        const double d = norm(w);
        if (d <= inactive) continue;
        const Point g = (1.0 / d) * w;
        grad[l] = grad[l] + g;
        grad[ia] = grad[ia] - g;
        continue;
      }
      const double c = cross(u, w);
      const double d = std::abs(c) / len;
      if (d <= inactive) continue;
      const double s = c > 0.0 ? 1.0 : -1.0;
      // d = |u x w| / |u| with u = b - a, w = q - a.
      const Point dq = (s / len) * Point{-u.y, u.x};
      const Point db = (s / len) * Point{w.y, -w.x} - (d / (len * len)) * u;
      grad[l] = grad[l] + dq;
      grad[ib] = grad[ib] + db;
      grad[ia] = grad[ia] - dq - db;
    }
  }
  return grad;
}

}  // namespace gcpoly
