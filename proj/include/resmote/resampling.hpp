#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "resmote/dataset.hpp"
#include "resmote/entropy.hpp"
#include "resmote/random.hpp"

namespace resmote {

/// Distance behind the roulette fitness 1 / M_i.
enum class FitnessMetric { manhattan, euclidean };

struct PruningConfig {
  /// Majority samples removed and synthetic minority samples kept per call.
  std::size_t k = 1;
  std::size_t k_neighbors = 5;
  /// Accepted candidates gathered before the noise filter, as a multiple of k.
  double candidate_multiplier = 2.0;
  /// Maximum roulette spins per call; 0 means 50 * k.
  std::size_t spin_cap = 0;
  double epsilon = 1e-12;
  FitnessMetric metric = FitnessMetric::manhattan;
  /// Relative variance smoothing of the entropy model.
  double var_smoothing = default_var_smoothing;

  std::size_t effective_spin_cap() const { return spin_cap == 0 ? 50 * k : spin_cap; }
  void validate() const;
};

// Majority side ----------------------------------------------------------------

struct MajorityPruning {
  Dataset retained;
  /// Indices into the input majority set, ascending.
  std::vector<std::size_t> retained_indices;
  /// Indices removed, in removal order (lowest entropy first).
  std::vector<std::size_t> removed_indices;
  /// Entropy of every input majority sample.
  std::vector<double> entropy;
};

/// Indices of the k smallest values, ascending by (value, index).
std::vector<std::size_t> lowest_k(std::span<const double> values, std::size_t k);

/// Fits the entropy model on `pool`, scores every majority sample and drops
/// the k with the lowest entropy.
MajorityPruning prune_majority(const Dataset& majority, const Dataset& pool, std::size_t k,
                               double var_smoothing = default_var_smoothing);
Dataset majority_class_pruning(const Dataset& majority, const Dataset& pool, std::size_t k);

// Roulette wheel ---------------------------------------------------------------

struct RouletteWheel {
  std::vector<std::size_t> seed_indices;
  std::vector<double> distances;
  std::vector<double> fitness;
  std::vector<double> probabilities;
  std::vector<double> cumulative;

  std::size_t size() const { return seed_indices.size(); }
};

/// M_i = sum over the majority of the distance from minority sample i;
/// fitness 1 / max(M_i, epsilon), normalized and accumulated in index order.
RouletteWheel build_roulette(const Dataset& minority, const Dataset& majority, double epsilon = 1e-12,
                             FitnessMetric metric = FitnessMetric::manhattan);
/// Wheel from raw fitness values (seed indices 0..n-1).
RouletteWheel wheel_from_fitness(std::span<const double> fitness);

/// Bucket i with q_{i-1} <= r < q_i, q_0 = 0. Values past the last bucket
/// (possible through rounding of q_n) land in the last bucket.
std::size_t select_bucket(const RouletteWheel& wheel, double r);
/// n_draws independent spins, repeats allowed. Returns seed indices.
std::vector<std::size_t> spin(const RouletteWheel& wheel, std::size_t n_draws, RandomSource& rng);

// Synthetic generation ---------------------------------------------------------

struct SyntheticSample {
  FeatureVector x;
  std::size_t seed_index = 0;
  std::size_t neighbor_index = 0;
  FeatureVector seed;
  FeatureVector neighbor;
  double alpha = 0.0;
  double dist_min = 0.0;
  double dist_maj = 0.0;
  double entropy = 0.0;
};

/// seed + alpha * (neighbor - seed), componentwise.
FeatureVector interpolate(std::span<const double> seed, std::span<const double> neighbor, double alpha);

/// Interpolates between minority[seed_index] and a uniformly chosen member of
/// its min(k_neighbors, |minority| - 1) nearest minority neighbors. Draws the
/// neighbor first, then alpha in [0, 1).
SyntheticSample smote_interpolate(const Dataset& minority, std::size_t seed_index, std::size_t k_neighbors,
                                  RandomSource& rng);

/// Stores dist_min (to the candidate's own seed) and dist_maj (to the nearest
/// majority sample) on the candidate and returns dist_min <= dist_maj.
bool regularization_accept(SyntheticSample& candidate, const Dataset& majority);

/// Scores candidates with an entropy model fit on `pool` and keeps the
/// min(k, n) highest-entropy ones, sorted by entropy descending (ties: lower
/// candidate index first).
std::vector<SyntheticSample> noise_filter(std::vector<SyntheticSample> candidates, const Dataset& pool,
                                          std::size_t k, double var_smoothing = default_var_smoothing);

struct MinorityPruning {
  /// Input minority followed by the kept synthetics (labelled positive).
  Dataset minority;
  std::vector<SyntheticSample> synthetics;
  std::size_t spins = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t filtered_out = 0;
};

MinorityPruning prune_minority(const Dataset& majority, const Dataset& minority, const PruningConfig& cfg,
                               RandomSource& rng);
Dataset minority_class_pruning(const Dataset& majority, const Dataset& minority, const PruningConfig& cfg,
                               RandomSource& rng);

struct DoublePruningResult {
  MajorityPruning majority;
  MinorityPruning minority;

  /// New majority followed by new minority.
  Dataset balanced() const { return concat(majority.retained, minority.minority); }
};

/// Majority pruning against the pool majority + minority, then minority
/// pruning against the untouched majority. Inputs are not modified.
DoublePruningResult double_pruning(const Dataset& majority, const Dataset& minority, const PruningConfig& cfg,
                                   RandomSource& rng);

}  // namespace resmote
