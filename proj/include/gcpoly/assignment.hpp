#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gcpoly {

/// Minimum-cost one-to-one assignment for a rows x cols cost matrix
/// (row-major). Every row is assigned when rows <= cols, every column
/// otherwise; the surplus side is left unassigned. Returns, per row, the
/// chosen column.
std::vector<std::optional<std::size_t>> solve_assignment(std::span<const double> cost,
                                                         std::size_t rows, std::size_t cols);

}  // namespace gcpoly
