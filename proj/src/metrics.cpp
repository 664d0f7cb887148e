#include "resmote/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "resmote/errors.hpp"

namespace resmote {

ConfusionMatrix confusion(std::span<const Label> predictions, std::span<const Label> truth) {
  if (predictions.size() != truth.size())
    throw Error("confusion: " + std::to_string(predictions.size()) + " predictions for " +
                std::to_string(truth.size()) + " labels");
  if (truth.empty()) throw Error("confusion: no samples");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool pred_pos = predictions[i] == Label::positive;
    const bool true_pos = truth[i] == Label::positive;
    if (pred_pos && true_pos) ++cm.tp;
    else if (pred_pos) ++cm.fp;
    else if (true_pos) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

namespace {

double ratio(std::size_t num, std::size_t den, const char* name, std::vector<std::string>& undefined) {
  if (den == 0) {
    undefined.emplace_back(name);
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

MetricReport binary_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error("binary_metrics: empty confusion matrix");
  MetricReport rep;
  rep.confusion = cm;
  auto& u = rep.undefined;

  const double accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  const double prec_pos = ratio(cm.tp, cm.tp + cm.fp, "precision_positive", u);
  const double rec_pos = ratio(cm.tp, cm.tp + cm.fn, "recall_positive", u);
  const double prec_neg = ratio(cm.tn, cm.tn + cm.fn, "precision_negative", u);
  const double rec_neg = ratio(cm.tn, cm.tn + cm.fp, "recall_negative", u);
  const double g_spec = std::sqrt(rec_pos * rec_neg);

  rep.positive = {accuracy, prec_pos, rec_pos, harmonic(prec_pos, rec_pos), std::sqrt(prec_pos * rec_pos), g_spec};
  rep.macro = {accuracy,
               0.5 * (prec_pos + prec_neg),
               0.5 * (rec_pos + rec_neg),
               0.5 * (harmonic(prec_pos, rec_pos) + harmonic(prec_neg, rec_neg)),
               0.5 * (std::sqrt(prec_pos * rec_pos) + std::sqrt(prec_neg * rec_neg)),
               g_spec};
  return rep;
}

namespace {

void check_scored(std::span<const double> scores, std::span<const Label> truth, const char* who) {
  if (scores.size() != truth.size()) throw Error(std::string(who) + ": score and label counts differ");
  const auto pos = std::count(truth.begin(), truth.end(), Label::positive);
  if (pos == 0 || pos == static_cast<std::ptrdiff_t>(truth.size()))
    throw Error(std::string(who) + ": both classes must be present");
  for (double s : scores)
    if (std::isnan(s)) throw Error(std::string(who) + ": NaN score");
}

std::vector<std::size_t> order_by_score(std::span<const double> scores, bool descending) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? scores[a] > scores[b] : scores[a] < scores[b];
  });
  return order;
}

}  // namespace

double roc_auc(std::span<const double> scores, std::span<const Label> truth) {
  check_scored(scores, truth, "roc_auc");
  const auto order = order_by_score(scores, false);
  double rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start;
    while (end < order.size() && scores[order[end]] == scores[order[start]]) ++end;
    // Ranks start..end-1 (1-based: start+1..end) share their mean.
    const double mid_rank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t r = start; r < end; ++r)
      if (truth[order[r]] == Label::positive) {
        rank_sum += mid_rank;
        ++n_pos;
      }
    start = end;
  }
  const double np = static_cast<double>(n_pos);
  const double nn = static_cast<double>(truth.size() - n_pos);
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

std::vector<PrPoint> pr_curve(std::span<const double> scores, std::span<const Label> truth) {
  check_scored(scores, truth, "pr_curve");
  const auto order = order_by_score(scores, true);
  const auto total_pos = static_cast<double>(std::count(truth.begin(), truth.end(), Label::positive));
  std::vector<PrPoint> curve;
  std::size_t tp = 0;
  std::size_t seen = 0;
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start;
    const double threshold = scores[order[start]];
    while (end < order.size() && scores[order[end]] == threshold) {
      if (truth[order[end]] == Label::positive) ++tp;
      ++end;
    }
    seen = end;
    curve.push_back({static_cast<double>(tp) / total_pos, static_cast<double>(tp) / static_cast<double>(seen),
                     threshold});
    start = end;
  }
  return curve;
}

double average_precision(std::span<const PrPoint> curve) {
  double ap = 0.0;
  double prev_recall = 0.0;
  for (const auto& p : curve) {
    ap += (p.recall - prev_recall) * p.precision;
    prev_recall = p.recall;
  }
  return ap;
}

ReplicationSummary replication_stats(std::span<const double> values, std::string metric_name) {
  if (values.size() < 2) throw Error("replication_stats: need at least 2 replications");
  ReplicationSummary s;
  s.metric_name = std::move(metric_name);
  s.values.assign(values.begin(), values.end());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std_dev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return s;
}

double fisher_ratio(const Dataset& data, std::size_t feature) {
  if (feature >= data.dimension()) throw Error("fisher_ratio: feature index out of range");
  double mean[2] = {0.0, 0.0};
  double count[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int c = data.label(i) == Label::positive ? 1 : 0;
    mean[c] += data.row(i)[feature];
    count[c] += 1.0;
  }
  if (count[0] < 2.0 || count[1] < 2.0) throw Error("fisher_ratio: each class needs at least 2 samples");
  mean[0] /= count[0];
  mean[1] /= count[1];
  double var[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int c = data.label(i) == Label::positive ? 1 : 0;
    const double dev = data.row(i)[feature] - mean[c];
    var[c] += dev * dev;
  }
  var[0] /= count[0] - 1.0;
  var[1] /= count[1] - 1.0;
  const double num = (mean[1] - mean[0]) * (mean[1] - mean[0]);
  const double den = var[0] + var[1];
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

OverlapReport overlap_feature_count(const Dataset& data_a, const Dataset& data_b) {
  if (data_a.dimension() != data_b.dimension())
    throw Error("overlap: dimension mismatch (" + std::to_string(data_a.dimension()) + " vs " +
                std::to_string(data_b.dimension()) + ")");
  OverlapReport rep;
  for (std::size_t j = 0; j < data_a.dimension(); ++j) {
    const double a = fisher_ratio(data_a, j);
    const double b = fisher_ratio(data_b, j);
    rep.ratios_a.push_back(a);
    rep.ratios_b.push_back(b);
    if (a < b) ++rep.count_a_smaller;
    else if (b < a) ++rep.count_b_smaller;
    else ++rep.ties;
  }
  return rep;
}

}  // namespace resmote
