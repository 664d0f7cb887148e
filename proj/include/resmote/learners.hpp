#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "resmote/dataset.hpp"
#include "resmote/entropy.hpp"

namespace resmote {

/// Weak learner contract used by the boosting loop.
class BaseLearner {
 public:
  virtual ~BaseLearner() = default;

  /// Trains on `data` with non-negative per-sample weights (positive sum).
  virtual void fit(const Dataset& data, std::span<const double> weights) = 0;
  /// Real-valued margin; positive means the positive class.
  virtual double score(std::span<const double> x) const = 0;
  Label predict(std::span<const double> x) const { return decode_sign(score(x)); }

  virtual std::string_view kind() const = 0;
  virtual nlohmann::json to_json() const = 0;
};

using LearnerFactory = std::function<std::unique_ptr<BaseLearner>()>;

// Decision stump --------------------------------------------------------------

struct DecisionStump {
  std::size_t feature_index = 0;
  /// May be -inf or +inf for constant stumps.
  double threshold = -std::numeric_limits<double>::infinity();
  int polarity = 1;
  double weighted_error = 0.0;

  /// Positive iff polarity * (x[feature] - threshold) > 0.
  Label predict(std::span<const double> x) const;
};

/// Exhaustive search over every feature, every midpoint between consecutive
/// distinct values plus the +/-inf sentinels, and both polarities. Minimizes
/// weighted 0-1 error; ties go to lower feature, then lower threshold, then
/// positive polarity.
DecisionStump fit_stump(const Dataset& data, std::span<const double> weights);

class StumpLearner final : public BaseLearner {
 public:
  StumpLearner() = default;
  explicit StumpLearner(DecisionStump stump) : stump_(stump) {}

  void fit(const Dataset& data, std::span<const double> weights) override { stump_ = fit_stump(data, weights); }
  double score(std::span<const double> x) const override {
    return stump_.predict(x) == Label::positive ? 1.0 : -1.0;
  }
  std::string_view kind() const override { return "stump"; }
  nlohmann::json to_json() const override;

  const DecisionStump& stump() const { return stump_; }

 private:
  DecisionStump stump_;
};

// Gaussian naive Bayes ----------------------------------------------------------

class GnbLearner final : public BaseLearner {
 public:
  explicit GnbLearner(double var_smoothing = 1.0) : var_smoothing_(var_smoothing) {}
  GnbLearner(GaussianNBModel model, double var_smoothing) : model_(std::move(model)), var_smoothing_(var_smoothing) {}

  void fit(const Dataset& data, std::span<const double> weights) override;
  /// Log posterior odds log P(pos|x) - log P(neg|x).
  double score(std::span<const double> x) const override;
  std::string_view kind() const override { return "gnb"; }
  nlohmann::json to_json() const override;

  const GaussianNBModel& model() const { return model_; }

 private:
  GaussianNBModel model_;
  double var_smoothing_;
};

// k nearest neighbors ------------------------------------------------------------

/// Weighted k-NN: the margin is the summed training weight of positive
/// neighbors minus that of negative neighbors.
class KnnLearner final : public BaseLearner {
 public:
  explicit KnnLearner(std::size_t k = 10) : k_(k) {}

  void fit(const Dataset& data, std::span<const double> weights) override;
  double score(std::span<const double> x) const override;
  std::string_view kind() const override { return "knn"; }
  nlohmann::json to_json() const override;

 private:
  std::size_t k_;
  Dataset train_;
  std::vector<double> weights_;
};

enum class LearnerKind { stump, gnb, knn };

std::string_view to_string(LearnerKind kind);
LearnerKind parse_learner_kind(std::string_view name);

struct LearnerOptions {
  double gnb_var_smoothing = 1.0;
  std::size_t knn_neighbors = 10;
};

LearnerFactory make_learner_factory(LearnerKind kind, LearnerOptions options = {});

/// Rebuilds a trained learner from its to_json() record.
std::unique_ptr<BaseLearner> learner_from_json(const nlohmann::json& j);

}  // namespace resmote
