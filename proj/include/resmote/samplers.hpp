#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "resmote/dataset.hpp"
#include "resmote/random.hpp"

namespace resmote {

enum class SamplerMethod { smote, borderline_smote, adasyn, tomek_links, random_under };

std::string_view to_string(SamplerMethod m);
SamplerMethod parse_sampler_method(std::string_view name);

struct SamplerSpec {
  SamplerMethod method = SamplerMethod::smote;
  std::size_t k_neighbors = 5;
  /// Post-resampling |majority| / |minority| the sampler aims for.
  double target_ratio = 1.0;
  std::uint64_t seed = 0;
};

/// Plain SMOTE: n_new synthetics from uniformly chosen seeds and neighbors.
/// Returns minority followed by the synthetics.
Dataset smote(const ClassPartition& partition, std::size_t n_new, std::size_t k_neighbors, RandomSource& rng);

/// Neighborhood category of a minority sample among its k nearest
/// neighbors in the full set.
enum class BorderlineKind { safe, danger, noise };

/// m = majority neighbors out of k: noise if m == k, danger if k/2 <= m < k,
/// safe otherwise.
std::vector<BorderlineKind> borderline_kinds(const ClassPartition& partition, std::size_t k_neighbors);

/// Borderline-SMOTE (variant 1): seeds drawn only from danger samples, or from
/// the whole minority when none are in danger.
Dataset borderline_smote(const ClassPartition& partition, std::size_t n_new, std::size_t k_neighbors,
                         RandomSource& rng);

/// Per-seed synthetic counts: round(n_new * r_i / sum r), with r_i the share
/// of majority samples among the k nearest neighbors; uniform when sum r = 0.
std::vector<std::size_t> adasyn_allocation(const ClassPartition& partition, std::size_t n_new,
                                           std::size_t k_neighbors);
Dataset adasyn(const ClassPartition& partition, std::size_t n_new, std::size_t k_neighbors, RandomSource& rng);

/// Mutually nearest (majority index, minority index) pairs.
std::vector<std::pair<std::size_t, std::size_t>> find_tomek_links(const ClassPartition& partition);
/// Drops the majority member of every Tomek link in one pass. Returns
/// remaining majority followed by the minority.
Dataset tomek_links(const ClassPartition& partition);

/// Ascending indices kept after removing n_remove of 0..n-1 uniformly.
std::vector<std::size_t> random_keep_indices(std::size_t n, std::size_t n_remove, RandomSource& rng);

/// Majority with n_remove samples removed uniformly at random, order kept.
Dataset random_under(const ClassPartition& partition, std::size_t n_remove, RandomSource& rng);

/// Runs the configured sampler and returns the full resampled set
/// (majority followed by minority).
Dataset apply_sampler(const SamplerSpec& spec, const ClassPartition& partition, RandomSource& rng);

}  // namespace resmote
