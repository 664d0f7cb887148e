#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "resmote/dataset.hpp"

namespace resmote {

/// Counts with the minority class as positive.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
};

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> truth);

/// One set of classification scores. Ratios with a zero denominator are
/// reported as 0 and flagged in `undefined`.
struct MetricSet {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  /// sqrt(precision * recall).
  double g_means = 0.0;
  /// sqrt(sensitivity * specificity), the conventional G-mean.
  double g_means_spec = 0.0;
};

struct MetricReport {
  ConfusionMatrix confusion;
  /// Positive-class (minority) scores.
  MetricSet positive;
  /// Unweighted average of the per-class scores.
  MetricSet macro;
  double auc = std::numeric_limits<double>::quiet_NaN();
  /// Names of ratios that had a zero denominator.
  std::vector<std::string> undefined;
};

MetricReport binary_metrics(const ConfusionMatrix& cm);

/// Mann-Whitney estimate of the area under the ROC curve; tied
/// positive/negative pairs count one half.
double roc_auc(std::span<const double> scores, std::span<const Label> truth);

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
  double threshold = 0.0;
};

/// One point per distinct score threshold, from the highest threshold down.
/// A sample is predicted positive when its score is >= the threshold.
std::vector<PrPoint> pr_curve(std::span<const double> scores, std::span<const Label> truth);

/// Step-wise area: sum over points of (recall_n - recall_{n-1}) * precision_n.
double average_precision(std::span<const PrPoint> curve);

struct ReplicationSummary {
  std::string metric_name;
  std::vector<double> values;
  double mean = 0.0;
  /// Sample standard deviation (divisor L - 1).
  double std_dev = 0.0;
};

ReplicationSummary replication_stats(std::span<const double> values, std::string metric_name = {});

/// (mu_pos - mu_neg)^2 / (var_pos + var_neg) for one feature, with sample
/// variances. A zero denominator gives +inf when the means differ, else 0.
double fisher_ratio(const Dataset& data, std::size_t feature);

struct OverlapReport {
  std::vector<double> ratios_a;
  std::vector<double> ratios_b;
  std::size_t count_a_smaller = 0;
  std::size_t count_b_smaller = 0;
  std::size_t ties = 0;
};

OverlapReport overlap_feature_count(const Dataset& data_a, const Dataset& data_b);

}  // namespace resmote
