#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "resmote/dataset.hpp"

namespace resmote {

double euclidean_distance(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
double manhattan_distance(std::span<const double> a, std::span<const double> b);

/// Sentinel for "no index to exclude".
inline constexpr std::size_t no_exclusion = static_cast<std::size_t>(-1);

/// Indices of the k rows of `points` closest to `query` in Euclidean
/// distance, nearest first, skipping row `exclude`. Ties go to the lower
/// index. Returns fewer than k when the set is smaller.
std::vector<std::size_t> nearest_neighbors(const Dataset& points, std::span<const double> query,
                                           std::size_t k, std::size_t exclude = no_exclusion);

/// Minimum Euclidean distance from `query` to any row of `points`.
double min_distance(const Dataset& points, std::span<const double> query);

}  // namespace resmote
