#include "gcpoly/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace gcpoly {

namespace {

// Shortest augmenting path Hungarian method with row/column potentials,
// O(rows^2 * cols). Requires rows <= cols. Arrays are 1-based; column 0 is
// the virtual source of each augmentation.
std::vector<std::size_t> assign_rows(std::span<const double> cost, std::size_t rows,
                                     std::size_t cols) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(rows + 1, 0.0), v(cols + 1, 0.0);
  std::vector<std::size_t> owner(cols + 1, 0), way(cols + 1, 0);
  for (std::size_t r = 1; r <= rows; ++r) {
    owner[0] = r;
    std::size_t col = 0;
    std::vector<double> min_slack(cols + 1, inf);
    std::vector<bool> visited(cols + 1, false);
    do {
      visited[col] = true;
      const std::size_t row = owner[col];
      double delta = inf;
      std::size_t next = 0;
      for (std::size_t c = 1; c <= cols; ++c) {
        if (visited[c]) continue;
        const double slack = cost[(row - 1) * cols + (c - 1)] - u[row] - v[c];
        if (slack < min_slack[c]) {
          min_slack[c] = slack;
          way[c] = col;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          next = c;
        }
      }
      for (std::size_t c = 0; c <= cols; ++c) {
        if (visited[c]) {
          u[owner[c]] += delta;
          v[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      col = next;
    } while (owner[col] != 0);
    do {
      const std::size_t prev = way[col];
      owner[col] = owner[prev];
      col = prev;
    } while (col != 0);
  }
  std::vector<std::size_t> row_to_col(rows, 0);
  for (std::size_t c = 1; c <= cols; ++c) {
    if (owner[c] != 0) row_to_col[owner[c] - 1] = c - 1;
  }
  return row_to_col;
}

}  // namespace

std::vector<std::optional<std::size_t>> solve_assignment(std::span<const double> cost,
                                                         std::size_t rows, std::size_t cols) {
  if (cost.size() != rows * cols) {
    throw std::invalid_argument("cost matrix size does not match its dimensions");
  }
  std::vector<std::optional<std::size_t>> out(rows);
  if (rows == 0 || cols == 0) return out;
  if (rows <= cols) {
    const auto r2c = assign_rows(cost, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) out[r] = r2c[r];
    return out;
  }
  std::vector<double> transposed(cost.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) transposed[c * rows + r] = cost[r * cols + c];
  }
  const auto c2r = assign_rows(transposed, cols, rows);
  for (std::size_t c = 0; c < cols; ++c) out[c2r[c]] = c;
  return out;
}

}  // namespace gcpoly
