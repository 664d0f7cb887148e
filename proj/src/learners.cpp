#include "resmote/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "resmote/errors.hpp"
#include "resmote/neighbors.hpp"
#include "resmote/serialization.hpp"

namespace resmote {

Label DecisionStump::predict(std::span<const double> x) const {
  return polarity * (x[feature_index] - threshold) > 0.0 ? Label::positive : Label::negative;
}

namespace {

void check_weights(const Dataset& data, std::span<const double> weights, const char* who) {
  if (weights.size() != data.size()) throw Error(std::string(who) + ": weight count does not match sample count");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(std::string(who) + ": weights must be finite and non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw Error(std::string(who) + ": weights must have a positive sum");
}

}  // namespace

DecisionStump fit_stump(const Dataset& data, std::span<const double> weights) {
  if (data.empty()) throw Error("fit_stump: empty dataset");
  check_weights(data, weights, "fit_stump");
  if (data.count(Label::positive) == 0 || data.count(Label::negative) == 0)
    throw Error("fit_stump: data contains a single class");

  double w_pos = 0.0;
  double w_neg = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i)
    (data.label(i) == Label::positive ? w_pos : w_neg) += weights[i];

  constexpr double inf = std::numeric_limits<double>::infinity();
  DecisionStump best;
  best.weighted_error = inf;
  auto consider = [&](std::size_t feature, double threshold, double left_pos, double left_neg) {
    // Samples with x <= threshold are "left"; polarity +1 predicts right as positive.
    const double err_up = left_pos + (w_neg - left_neg);
    const double err_down = (w_pos - left_pos) + left_neg;
    if (err_up < best.weighted_error) best = {feature, threshold, 1, err_up};
    if (err_down < best.weighted_error) best = {feature, threshold, -1, err_down};
  };

  std::vector<std::size_t> order(data.size());
  for (std::size_t f = 0; f < data.dimension(); ++f) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return data.row(a)[f] < data.row(b)[f]; });
    double left_pos = 0.0;
    double left_neg = 0.0;
    consider(f, -inf, 0.0, 0.0);
    for (std::size_t r = 0; r < order.size(); ++r) {
      const std::size_t i = order[r];
      (data.label(i) == Label::positive ? left_pos : left_neg) += weights[i];
      const double v = data.row(i)[f];
      if (r + 1 < order.size()) {
        const double next = data.row(order[r + 1])[f];
        if (next == v) continue;
        double mid = v + (next - v) / 2.0;
        if (!(mid < next)) mid = v;
        consider(f, mid, left_pos, left_neg);
      }
    }
    consider(f, inf, w_pos, w_neg);
  }
  best.weighted_error /= (w_pos + w_neg);
  return best;
}

nlohmann::json StumpLearner::to_json() const {
  return {{"type", "stump"},
          {"feature", stump_.feature_index},
          {"threshold", encode_real(stump_.threshold)},
          {"polarity", stump_.polarity}};
}

void GnbLearner::fit(const Dataset& data, std::span<const double> weights) {
  check_weights(data, weights, "gnb");
  model_ = fit_gnb(data, weights, var_smoothing_);
}

double GnbLearner::score(std::span<const double> x) const {
  const auto lj = log_joint(model_, x);
  return lj[1] - lj[0];
}

nlohmann::json GnbLearner::to_json() const {
  return {{"type", "gnb"}, {"var_smoothing", var_smoothing_}, {"model", gnb_to_json(model_)}};
}

void KnnLearner::fit(const Dataset& data, std::span<const double> weights) {
  check_weights(data, weights, "knn");
  if (k_ == 0) throw Error("knn: k must be >= 1");
  train_ = data;
  weights_.assign(weights.begin(), weights.end());
}

double KnnLearner::score(std::span<const double> x) const {
  if (train_.empty()) throw Error("knn: model is not fitted");
  if (x.size() != train_.dimension()) throw Error("knn: dimension mismatch");
  double margin = 0.0;
  for (std::size_t j : nearest_neighbors(train_, x, k_))
    margin += train_.label(j) == Label::positive ? weights_[j] : -weights_[j];
  return margin;
}

nlohmann::json KnnLearner::to_json() const {
  return {{"type", "knn"}, {"k", k_}, {"train", dataset_to_json(train_)}, {"weights", weights_}};
}

std::string_view to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::stump: return "stump";
    case LearnerKind::gnb: return "gnb";
    case LearnerKind::knn: return "knn";
  }
  return "?";
}

LearnerKind parse_learner_kind(std::string_view name) {
  for (auto k : {LearnerKind::stump, LearnerKind::gnb, LearnerKind::knn})
    if (to_string(k) == name) return k;
  throw Error("unknown base learner \"" + std::string(name) + "\"");
}

LearnerFactory make_learner_factory(LearnerKind kind, LearnerOptions options) {
  switch (kind) {
    case LearnerKind::stump:
      return [] { return std::make_unique<StumpLearner>(); };
    case LearnerKind::gnb:
      return [s = options.gnb_var_smoothing] { return std::make_unique<GnbLearner>(s); };
    case LearnerKind::knn:
      return [k = options.knn_neighbors] { return std::make_unique<KnnLearner>(k); };
  }
  throw Error("unhandled learner kind");
}

std::unique_ptr<BaseLearner> learner_from_json(const nlohmann::json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "stump") {
    DecisionStump s;
    s.feature_index = j.at("feature").get<std::size_t>();
    s.threshold = decode_real(j.at("threshold"));
    s.polarity = j.at("polarity").get<int>();
    return std::make_unique<StumpLearner>(s);
  }
  if (type == "gnb")
    return std::make_unique<GnbLearner>(gnb_from_json(j.at("model")), j.at("var_smoothing").get<double>());
  if (type == "knn") {
    auto learner = std::make_unique<KnnLearner>(j.at("k").get<std::size_t>());
    const auto weights = j.at("weights").get<std::vector<double>>();
    learner->fit(dataset_from_json(j.at("train")), weights);
    return learner;
  }
  throw ParseError("unknown learner type \"" + type + "\"");
}

}  // namespace resmote
