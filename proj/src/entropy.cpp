#include "resmote/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "resmote/errors.hpp"

namespace resmote {

namespace {

std::size_t class_slot(Label y) { return y == Label::positive ? 1 : 0; }

}  // namespace

GaussianNBModel fit_gnb(const Dataset& data, std::optional<std::span<const double>> weights,
                        double var_smoothing) {
  if (data.empty()) throw Error("fit_gnb: empty dataset");
  if (weights && weights->size() != data.size())
    throw Error("fit_gnb: weight count does not match sample count");
  if (!(var_smoothing >= 0.0)) throw Error("fit_gnb: var_smoothing must be non-negative");

  const std::size_t d = data.dimension();
  GaussianNBModel model;
  std::array<double, 2> total{0.0, 0.0};
  for (auto& m : model.means) m.assign(d, 0.0);
  for (auto& v : model.variances) v.assign(d, 0.0);

  auto weight = [&](std::size_t i) { return weights ? (*weights)[i] : 1.0; };

  for (std::size_t i = 0; i < data.size(); ++i) {
    const double w = weight(i);
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error("fit_gnb: weights must be finite and non-negative");
    const std::size_t c = class_slot(data.label(i));
    total[c] += w;
    auto x = data.row(i);
    for (std::size_t j = 0; j < d; ++j) model.means[c][j] += w * x[j];
  }
  if (data.count(Label::negative) == 0 || data.count(Label::positive) == 0)
    throw Error("fit_gnb: data contains a single class");
  if (!(total[0] > 0.0) || !(total[1] > 0.0)) throw Error("fit_gnb: zero total weight in a class");

  for (std::size_t c = 0; c < 2; ++c)
    for (auto& m : model.means[c]) m /= total[c];

  for (std::size_t i = 0; i < data.size(); ++i) {
    const double w = weight(i);
    const std::size_t c = class_slot(data.label(i));
    auto x = data.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double dev = x[j] - model.means[c][j];
      model.variances[c][j] += w * dev * dev;
    }
  }
  for (std::size_t c = 0; c < 2; ++c)
    for (auto& v : model.variances[c]) v /= total[c];

  // Largest per-feature variance over the whole (unweighted) pool sets the
  // scale of the smoothing term.
  double max_var = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) mean += data.row(i)[j];
    mean /= static_cast<double>(data.size());
    double var = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double dev = data.row(i)[j] - mean;
      var += dev * dev;
    }
    max_var = std::max(max_var, var / static_cast<double>(data.size()));
  }
  model.smoothing = var_smoothing * max_var;
  // All-constant pool: fall back to the factor itself as an absolute floor.
  if (!(model.smoothing > 0.0))
    model.smoothing = var_smoothing > 0.0 ? var_smoothing : std::numeric_limits<double>::min();
  for (std::size_t c = 0; c < 2; ++c)
    for (auto& v : model.variances[c]) v += model.smoothing;

  const double sum = total[0] + total[1];
  model.priors = {total[0] / sum, total[1] / sum};
  return model;
}

std::array<double, 2> log_joint(const GaussianNBModel& model, std::span<const double> x) {
  if (x.size() != model.dimension())
    throw Error("posterior: sample dimension " + std::to_string(x.size()) + " does not match model dimension " +
                std::to_string(model.dimension()));
  std::array<double, 2> lj{};
  for (std::size_t c = 0; c < 2; ++c) {
    double acc = std::log(model.priors[c]);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double var = model.variances[c][j];
      const double dev = x[j] - model.means[c][j];
      acc -= 0.5 * std::log(2.0 * std::numbers::pi * var) + dev * dev / (2.0 * var);
    }
    lj[c] = acc;
  }
  return lj;
}

Posterior posterior(const GaussianNBModel& model, std::span<const double> x) {
  const auto lj = log_joint(model, x);
  const double top = std::max(lj[0], lj[1]);
  const double e0 = std::exp(lj[0] - top);
  const double e1 = std::exp(lj[1] - top);
  const double z = e0 + e1;
  return {e0 / z, e1 / z};
}

double shannon_entropy(const Posterior& p) {
  for (double v : p)
    if (!(v >= 0.0 && v <= 1.0)) throw Error("shannon_entropy: probability outside [0, 1]");
  if (std::abs(p[0] + p[1] - 1.0) > 1e-9) throw Error("shannon_entropy: probabilities do not sum to 1");
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return std::clamp(h, 0.0, 1.0);
}

std::vector<EntropyScore> score_entropy(const GaussianNBModel& model, const Dataset& data) {
  std::vector<EntropyScore> scores;
  scores.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = posterior(model, data.row(i));
    scores.push_back({i, p, shannon_entropy(p)});
  }
  return scores;
}

}  // namespace resmote
