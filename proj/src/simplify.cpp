#include "gcpoly/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gcpoly {

void SimplifyParams::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be finite and non-negative");
  }
  if (k_max < 2) {
    throw std::invalid_argument("k_max must be >= 2");
  }
}

SquareMatrix build_distance_matrix(const Polyline& p, std::size_t k_max) {
  const std::size_t n = p.size();
  SquareMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t last = k_max >= n - 1 - i ? n - 1 : i + k_max;
    for (std::size_t j = i + 2; j <= last; ++j) {
      double sum = 0.0;
      for (std::size_t l = i + 1; l < j; ++l) sum += point_to_line(p[l], p[i], p[j]);
      d(i, j) = sum;
    }
  }
  return d;
}

DpWorkspace::DpWorkspace(SquareMatrix distance, double lambda, std::size_t k_max)
    : n_(distance.size()),
      k_max_(std::min(k_max, n_ > 0 ? n_ - 1 : 0)),
      lambda_(lambda),
      distance_(std::move(distance)),
      cost_(n_) {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_ && j - i <= k_max_; ++j) {
      cost_(i, j) = distance_(i, j) + lambda_;
    }
  }
}

void DpWorkspace::solve(double tie_tol) {
  const std::size_t n = n_;
  best_.assign(n * n, 0.0);
  next_.assign(n * n, 0);
  count_.assign(n * n, 1);
  for (std::size_t e = 0; e < n; ++e) next_[e * n + e] = static_cast<std::uint32_t>(e);

  // Sub-problems by increasing span; the minimisation over the successor j
  // reads column e of best/count and row i of the cost matrix.
  for (std::size_t len = 1; len < n; ++len) {
    const std::size_t reach = std::min(len, k_max_);
    for (std::size_t i = 0; i + len < n; ++i) {
      const std::size_t e = i + len;
      const double* tail = best_.data() + e * n;
      const std::uint32_t* tail_count = count_.data() + e * n;
      const auto cost_row = cost_.row(i);
      double value = std::numeric_limits<double>::infinity();
      std::uint32_t vertices = 0;
      std::size_t succ = i + 1;
      for (std::size_t j = i + 1; j <= i + reach; ++j) {
        const double cand = tail[j] + cost_row[j];
        const std::uint32_t cand_count = tail_count[j] + 1;
        // j ascends, so an exact tie keeps the incumbent: the smaller successor.
        if (cand < value - tie_tol || (cand <= value + tie_tol && cand_count < vertices)) {
          value = cand;
          vertices = cand_count;
          succ = j;
        }
      }
      best_[e * n + i] = value;
      count_[e * n + i] = vertices;
      next_[e * n + i] = static_cast<std::uint32_t>(succ);
    }
  }
}

double tie_tolerance(const Polyline& p, double lambda) {
  double extent = 0.0;
  for (const Point& q : p.points()) extent = std::max(extent, distance(p.front(), q));
  return 1e-13 * static_cast<double>(p.size()) * (extent + lambda);
}

DpWorkspace solve_workspace(const Polyline& p, const SimplifyParams& params) {
  params.validate();
  DpWorkspace ws(build_distance_matrix(p, params.k_max), params.lambda, params.k_max);
  ws.solve(tie_tolerance(p, params.lambda));
  return ws;
}

Selection backtrack(const DpWorkspace& ws) {
  const std::size_t last = ws.size() - 1;
  Selection sel;
  sel.indices.push_back(0);
  for (std::size_t j = 0; j < last;) {
    const std::size_t next = ws.next(j, last);
    sel.distance_sum += ws.distance()(j, next);
    sel.indices.push_back(next);
    j = next;
  }
  // The tables charge lambda per edge; the objective charges it per vertex.
  sel.total_cost = sel.distance_sum + ws.lambda() * static_cast<double>(sel.vertex_count());
  return sel;
}

Selection gcp_simplify(const Polyline& p, const SimplifyParams& params) {
  return backtrack(solve_workspace(p, params));
}

namespace {

double segment_deviation(const Polyline& p, std::size_t a, std::size_t b) {
  double sum = 0.0;
  for (std::size_t l = a + 1; l < b; ++l) sum += point_to_line(p[l], p[a], p[b]);
  return sum;
}

}  // namespace

Selection brute_force_simplify(const Polyline& p, const SimplifyParams& params) {
  params.validate();
  const std::size_t n = p.size();
  if (n > 20) {
    throw std::invalid_argument("brute force simplification is limited to 20 points, got " +
                                std::to_string(n));
  }
  const double tol = tie_tolerance(p, params.lambda);
  const std::size_t interior = n - 2;
  Selection best;
  bool have = false;
  std::vector<std::size_t> idx;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << interior); ++mask) {
    idx.assign(1, 0);
    for (std::size_t b = 0; b < interior; ++b) {
      if (mask & (std::uint32_t{1} << b)) idx.push_back(b + 1);
    }
    idx.push_back(n - 1);
    bool feasible = true;
    double dist = 0.0;
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
      if (idx[k + 1] - idx[k] > params.k_max) {
        feasible = false;
        break;
      }
      dist += segment_deviation(p, idx[k], idx[k + 1]);
    }
    if (!feasible) continue;
    const double total = dist + params.lambda * static_cast<double>(idx.size());
    bool better = !have || total < best.total_cost - tol;
    if (!better && total <= best.total_cost + tol) {
      better = idx.size() < best.indices.size() ||
               (idx.size() == best.indices.size() &&
                std::lexicographical_compare(idx.begin(), idx.end(), best.indices.begin(),
                                             best.indices.end()));
    }
    if (better) {
      best.indices = idx;
      best.distance_sum = dist;
      best.total_cost = total;
      have = true;
    }
  }
  return best;
}

Selection douglas_peucker(const Polyline& p, double tolerance, double lambda) {
  if (!(tolerance >= 0.0)) {
    throw std::invalid_argument("Douglas-Peucker tolerance must be non-negative");
  }
  const std::size_t n = p.size();
  std::vector<bool> keep(n, false);
  keep.front() = keep.back() = true;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n - 1}};
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    double worst = -1.0;
    std::size_t split = a;
    for (std::size_t l = a + 1; l < b; ++l) {
      const double d = point_to_segment(p[l], p[a], p[b]);
      if (d > worst) {
        worst = d;
        split = l;
      }
    }
    if (split != a && worst > tolerance) {
      keep[split] = true;
      stack.emplace_back(a, split);
      stack.emplace_back(split, b);
    }
  }
  Selection sel;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) sel.indices.push_back(i);
  }
  const ObjectiveValue v = objective_value(p, sel.indices, lambda);
  sel.distance_sum = v.distance_sum;
  sel.total_cost = v.total;
  return sel;
}

ObjectiveValue objective_value(const Polyline& p, std::span<const std::size_t> indices,
                               double lambda) {
  if (indices.size() < 2 || indices.front() != 0 || indices.back() != p.size() - 1) {
    throw std::invalid_argument("selection must start at 0 and end at the last point");
  }
  ObjectiveValue v;
  for (std::size_t k = 0; k + 1 < indices.size(); ++k) {
    if (indices[k + 1] <= indices[k] || indices[k + 1] >= p.size()) {
      throw std::invalid_argument("selection indices must be strictly increasing and in range");
    }
    v.distance_sum += segment_deviation(p, indices[k], indices[k + 1]);
  }
  v.vertex_count = indices.size();
  v.total = v.distance_sum + lambda * static_cast<double>(v.vertex_count);
  return v;
}

ObjectiveValue objective_value(const Polyline& p, const Selection& sel, double lambda) {
  return objective_value(p, sel.indices, lambda);
}

std::vector<Point> selected_points(const Polyline& p, const Selection& sel) {
  std::vector<Point> out;
  out.reserve(sel.indices.size());
  for (std::size_t i : sel.indices) out.push_back(p[i]);
  return out;
}

}  // namespace gcpoly
