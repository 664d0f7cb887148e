#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "resmote/dataset.hpp"

namespace resmote {

/// Posterior pair ordered (P(negative | x), P(positive | x)).
using Posterior = std::array<double, 2>;

/// Per-class Gaussian naive Bayes parameters. Index 0 is the negative class,
/// index 1 the positive class.
struct GaussianNBModel {
  std::array<double, 2> priors{};
  std::array<std::vector<double>, 2> means;
  std::array<std::vector<double>, 2> variances;
  double smoothing = 0.0;

  std::size_t dimension() const { return means[0].size(); }
};

/// Default relative smoothing for entropy scoring; the absolute smoothing is
/// this factor times the largest per-feature variance of the fitted data.
inline constexpr double default_var_smoothing = 1e-9;

/// Fits class priors and per-class population moments, optionally weighted.
/// Every variance gets the same additive smoothing so none is zero.
GaussianNBModel fit_gnb(const Dataset& data, std::optional<std::span<const double>> weights = std::nullopt,
                        double var_smoothing = default_var_smoothing);

/// Log joint log P(y) + sum_j log N(x_j; mu_yj, var_yj) for both classes.
std::array<double, 2> log_joint(const GaussianNBModel& model, std::span<const double> x);

/// Normalized class posterior, computed in log space.
Posterior posterior(const GaussianNBModel& model, std::span<const double> x);

/// Two-class Shannon entropy in bits, with 0 log 0 = 0.
double shannon_entropy(const Posterior& p);

struct EntropyScore {
  std::size_t sample_index = 0;
  Posterior posterior{};
  double entropy = 0.0;
};

/// One score per sample of `data`, index-aligned.
std::vector<EntropyScore> score_entropy(const GaussianNBModel& model, const Dataset& data);

}  // namespace resmote
