#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "gcpoly/geometry.hpp"

namespace gcpoly {

struct SimplifyParams {
  /// Cost charged per selected vertex, in pixels.
  double lambda = 2.0;
  /// Largest index gap one simplified edge may span.
  std::size_t k_max = 64;

  static constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

  /// Throws std::invalid_argument unless lambda >= 0 and k_max >= 2.
  void validate() const;
};

/// Strictly increasing indices into the source polyline, first and last included.
struct Selection {
  std::vector<std::size_t> indices;
  double distance_sum = 0.0;
  /// distance_sum + lambda * vertex_count() for the lambda it was scored with.
  double total_cost = 0.0;

  std::size_t vertex_count() const { return indices.size(); }
};

struct ObjectiveValue {
  double distance_sum = 0.0;
  std::size_t vertex_count = 0;
  double total = 0.0;
};

/// Dense T x T matrix; entries outside the populated band stay zero.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// D(i, j) = sum over i < l < j of point_to_line(p_l, p_i, p_j), for
/// 0 < j - i <= k_max. D(i, i+1) = 0.
SquareMatrix build_distance_matrix(const Polyline& p, std::size_t k_max);

/// Tables of one simplification run.
///
/// `best(i, e)` is the optimal value of the sub-problem on points i..e under
/// the per-transition accounting (distance + lambda per selected edge),
/// `next(i, e)` the successor of i in that plan and `count(i, e)` the number
/// of vertices it keeps. The layout of the L/F tables is internal: they are
/// stored by end index so the inner minimisation reads contiguous memory.
class DpWorkspace {
 public:
  DpWorkspace(SquareMatrix distance, double lambda, std::size_t k_max);

  std::size_t size() const { return n_; }
  std::size_t k_max() const { return k_max_; }
  double lambda() const { return lambda_; }
  const SquareMatrix& distance() const { return distance_; }
  double cost(std::size_t i, std::size_t j) const { return cost_(i, j); }
  double best(std::size_t i, std::size_t e) const { return best_[e * n_ + i]; }
  std::size_t next(std::size_t i, std::size_t e) const { return next_[e * n_ + i]; }
  std::size_t count(std::size_t i, std::size_t e) const { return count_[e * n_ + i]; }
  bool in_band(std::size_t i, std::size_t j) const { return i < j && j - i <= k_max_; }

  /// Fills best/next/count for every sub-problem. `tie_tol` is the cost
  /// difference under which two plans count as equal.
  void solve(double tie_tol);

 private:
  std::size_t n_;
  std::size_t k_max_;
  double lambda_;
  SquareMatrix distance_;
  SquareMatrix cost_;
  std::vector<double> best_;
  std::vector<std::uint32_t> next_;
  std::vector<std::uint32_t> count_;
};

/// Cost difference below which two candidate plans are treated as tied.
/// Scales with the polyline's extent and lambda so decisions survive rigid
/// motions and uniform scaling of (p, lambda).
double tie_tolerance(const Polyline& p, double lambda);

/// Globally optimal selection minimising distance_sum + lambda * m subject
/// to every gap t_{i+1} - t_i <= k_max. Ties go to fewer vertices, then to
/// the lexicographically smallest index sequence. Closed inputs are solved
/// on their stored point array, so the start vertex and its closing duplicate
/// are both kept.
Selection gcp_simplify(const Polyline& p, const SimplifyParams& params);

/// The two halves of gcp_simplify: build and solve the tables, then walk the
/// successor links of the full problem.
DpWorkspace solve_workspace(const Polyline& p, const SimplifyParams& params);
Selection backtrack(const DpWorkspace& workspace);

/// Exhaustive search over all 2^(T-2) endpoint-containing subsequences. T <= 20.
Selection brute_force_simplify(const Polyline& p, const SimplifyParams& params);

/// Classic recursive-split simplifier; deviation measured to the chord segment.
/// The result is scored with `lambda` (0 leaves total_cost == distance_sum).
Selection douglas_peucker(const Polyline& p, double tolerance, double lambda = 0.0);

/// Recomputes the collinearity objective of `indices` from scratch.
ObjectiveValue objective_value(const Polyline& p, std::span<const std::size_t> indices,
                               double lambda);
ObjectiveValue objective_value(const Polyline& p, const Selection& sel, double lambda);

/// The selected points in order. For a closed source the closing duplicate
/// is included; the result may be degenerate (e.g. two copies of one point).
std::vector<Point> selected_points(const Polyline& p, const Selection& sel);

}  // namespace gcpoly
