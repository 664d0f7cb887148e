#include "resmote/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace resmote {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

double manhattan_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::abs(a[j] - b[j]);
  return s;
}

std::vector<std::size_t> nearest_neighbors(const Dataset& points, std::span<const double> query,
                                           std::size_t k, std::size_t exclude) {
  std::vector<std::pair<double, std::size_t>> cand;
  cand.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    if (i != exclude) cand.emplace_back(squared_distance(points.row(i), query), i);
  const std::size_t take = std::min(k, cand.size());
  std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take), cand.end());
  std::vector<std::size_t> out(take);
  for (std::size_t i = 0; i < take; ++i) out[i] = cand[i].second;
  return out;
}

double min_distance(const Dataset& points, std::span<const double> query) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    best = std::min(best, squared_distance(points.row(i), query));
  return std::sqrt(best);
}

}  // namespace resmote
