#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "resmote/boosting.hpp"
#include "resmote/dataset.hpp"
#include "resmote/learners.hpp"
#include "resmote/metrics.hpp"
#include "resmote/resampling.hpp"

namespace resmote {

enum class Method {
  none,
  smote,
  borderline_smote,
  adasyn,
  tomek_links,
  random_under,
  smoteboost,
  rusboost,
  re_smoteboost,
};

std::string_view to_string(Method m);
Method parse_method(std::string_view name);
bool is_boosting(Method m);

struct ExperimentConfig {
  Method method = Method::re_smoteboost;
  LearnerKind base = LearnerKind::stump;
  LearnerOptions learner;
  /// Per-round pruning count; when unset, k_fraction or default_k applies.
  std::optional<std::size_t> k;
  /// k as a fraction of the training majority size.
  std::optional<double> k_fraction;
  std::size_t k_neighbors = 5;
  /// Boosting rounds; unset means heuristic_tmax.
  std::optional<std::size_t> t_max;
  double learning_rate = 1.0;
  bool fresh_pools = false;
  double candidate_multiplier = 2.0;
  std::size_t spin_cap = 0;
  double test_fraction = 0.2;
  bool stratified = true;
  std::size_t replications = 100;
  /// When set, run stratified k-fold instead of repeated random splits.
  std::optional<std::size_t> cv_folds;
  std::uint64_t seed = 0;
  /// Worker threads; 0 reads REBALANCE_THREADS, falling back to 1.
  std::size_t threads = 0;
  /// Keep replication 0's resampled training set for export.
  bool keep_first_resampled = false;

  void validate() const;
  nlohmann::json to_json() const;
};

struct PhaseTimes {
  double split = 0.0;
  double resample = 0.0;
  double fit = 0.0;
  double evaluate = 0.0;
};

struct ReplicationResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  MetricReport metrics;
  std::vector<std::size_t> train_indices;
  /// Recorded right after the split, before any resampling.
  std::vector<std::size_t> test_indices;
  std::size_t train_majority = 0;
  std::size_t train_minority = 0;
  std::size_t resampled_majority = 0;
  std::size_t resampled_minority = 0;
  std::size_t k = 0;
  std::size_t t_max = 0;
  std::size_t rounds = 0;
  std::vector<IterationRecord> log;
  PhaseTimes times;
  std::optional<Dataset> resampled;
  std::vector<SyntheticSample> synthetics;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string data_tag;
  bool labels_swapped = false;
  std::vector<ReplicationResult> replications;
  std::vector<ReplicationSummary> summaries;
  double total_seconds = 0.0;

  const ReplicationSummary& summary(std::string_view name) const;
};

/// Seed of replication i: mix_seed(base_seed, i).
std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t i);

/// One replication: split, resample or boost on the training part, evaluate on
/// the untouched test part.
ReplicationResult run_replication(const Dataset& data, const ExperimentConfig& cfg, std::size_t index,
                                  const std::vector<std::size_t>* fold_assignment = nullptr);

ExperimentReport run_experiment(const Dataset& data, const ExperimentConfig& cfg);

/// Summary names are "<variant>.<metric>" (variant positive or macro) plus "auc".
std::vector<std::string> summary_metric_names();

/// Report without wall-clock fields is deterministic per seed; timings live
/// under the "timing" keys only.
nlohmann::json report_to_json(const ExperimentReport& report);
std::string replications_csv(const ExperimentReport& report);

}  // namespace resmote
