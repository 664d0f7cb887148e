#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "resmote/dataset.hpp"
#include "resmote/learners.hpp"
#include "resmote/random.hpp"
#include "resmote/resampling.hpp"

namespace resmote {

/// Per-iteration rebalancing applied before each weak learner is fit.
enum class Rebalancer { none, double_pruning, smote, random_under };

std::string_view to_string(Rebalancer r);
Rebalancer parse_rebalancer(std::string_view name);

/// What happens when a round produces a useless learner.
struct EarlyStopPolicy {
  /// Error floor used for alpha when a learner is perfect on the training set.
  double zero_error_floor = 1e-10;
  /// Consecutive rounds with error >= 0.5 that end training. A rejected
  /// learner resets the sample weights to uniform before the retry.
  std::size_t max_consecutive_failures = 2;
};

struct BoostConfig {
  std::size_t t_max = 10;
  /// Samples removed from the majority and synthesized for the minority per round.
  std::size_t k = 1;
  double learning_rate = 1.0;
  Rebalancer rebalancer = Rebalancer::none;
  /// Pruning parameters for double_pruning (its k is overridden by `k`);
  /// k_neighbors is also used by the smote rebalancer.
  PruningConfig pruning;
  /// Rebalance the original pools every round instead of carrying the
  /// pruned pools forward.
  bool fresh_pools = false;
  EarlyStopPolicy early_stop;

  void validate() const;
};

/// Rounds needed to close the class gap at 2k per round, at least 1.
std::size_t heuristic_tmax(std::size_t n_majority, std::size_t n_minority, std::size_t k);

/// max(1, round((n_majority - n_minority) / 20)), aiming at about ten rounds.
std::size_t default_k(std::size_t n_majority, std::size_t n_minority);

/// alpha = learning_rate * 0.5 * ln((1 - e) / e), with e floored at `floor`.
double learner_weight(double error, double learning_rate = 1.0, double floor = 1e-10);

struct IterationRecord {
  std::size_t round = 0;
  double error = 0.0;
  double alpha = 0.0;
  bool discarded = false;
  std::size_t n_majority = 0;
  std::size_t n_minority = 0;
  std::size_t removed = 0;
  std::size_t added = 0;
  std::size_t spins = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t filtered_out = 0;
};

class BoostedEnsemble {
 public:
  BoostedEnsemble() = default;
  explicit BoostedEnsemble(std::size_t dimension) : dimension_(dimension) {}

  void add(std::shared_ptr<const BaseLearner> learner, double alpha);

  /// Sum over learners of alpha_t * h_t(x), h_t in {-1, +1}.
  double decision_function(std::span<const double> x) const;
  /// Sign of the decision function; an exact zero goes to the negative class.
  Label predict(std::span<const double> x) const { return decode_sign(decision_function(x)); }

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return learners_.size(); }
  bool empty() const { return learners_.empty(); }
  const std::vector<double>& alphas() const { return alphas_; }
  const BaseLearner& learner(std::size_t t) const { return *learners_[t]; }

  std::vector<IterationRecord>& training_log() { return log_; }
  const std::vector<IterationRecord>& training_log() const { return log_; }

 private:
  std::size_t dimension_ = 0;
  std::vector<std::shared_ptr<const BaseLearner>> learners_;
  std::vector<double> alphas_;
  std::vector<IterationRecord> log_;
};

/// Optional by-products of fit_boosted for auditing and tests.
struct BoostTrace {
  /// Sample weights over the original training set after every accepted round.
  std::vector<std::vector<double>> weights;
  /// Per accepted round, whether each original sample was misclassified.
  std::vector<std::vector<bool>> misclassified;
  /// Training set the last accepted learner was fit on.
  Dataset final_balanced;
  /// Provenance of the synthetic rows at the end of final_balanced
  /// (double_pruning only).
  std::vector<SyntheticSample> synthetics;
  /// Carried pool sizes after the last accepted round.
  std::size_t carried_majority = 0;
  std::size_t carried_minority = 0;
};

/// AdaBoost over the original training samples with a rebalancing step
/// before each weak learner. Negative samples form the majority pool and
/// positive samples the minority pool.
BoostedEnsemble fit_boosted(const Dataset& train, const BoostConfig& cfg, const LearnerFactory& factory,
                            RandomSource& rng, BoostTrace* trace = nullptr);

nlohmann::json ensemble_to_json(const BoostedEnsemble& ensemble);
BoostedEnsemble ensemble_from_json(const nlohmann::json& j);

}  // namespace resmote
