#include "resmote/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "resmote/errors.hpp"
#include "resmote/samplers.hpp"

namespace resmote {

std::string_view to_string(Rebalancer r) {
  switch (r) {
    case Rebalancer::none: return "none";
    case Rebalancer::double_pruning: return "double_pruning";
    case Rebalancer::smote: return "smote";
    case Rebalancer::random_under: return "random_under";
  }
  return "?";
}

Rebalancer parse_rebalancer(std::string_view name) {
  for (auto r : {Rebalancer::none, Rebalancer::double_pruning, Rebalancer::smote, Rebalancer::random_under})
    if (to_string(r) == name) return r;
  throw Error("unknown rebalancer \"" + std::string(name) + "\"");
}

void BoostConfig::validate() const {
  if (t_max == 0) throw Error("boosting: t_max must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw Error("boosting: learning_rate must be positive");
  if (rebalancer != Rebalancer::none && k == 0) throw Error("boosting: k must be >= 1");
  if (!(early_stop.zero_error_floor > 0.0 && early_stop.zero_error_floor < 0.5))
    throw Error("boosting: zero_error_floor must lie in (0, 0.5)");
  if (early_stop.max_consecutive_failures == 0) throw Error("boosting: max_consecutive_failures must be >= 1");
  auto p = pruning;
  p.k = k;
  p.validate();
}

std::size_t heuristic_tmax(std::size_t n_majority, std::size_t n_minority, std::size_t k) {
  if (k == 0) throw Error("heuristic_tmax: k must be >= 1");
  if (n_majority <= n_minority) return 1;
  const std::size_t gap = n_majority - n_minority;
  return std::max<std::size_t>(1, (gap + 2 * k - 1) / (2 * k));
}

std::size_t default_k(std::size_t n_majority, std::size_t n_minority) {
  if (n_majority <= n_minority) return 1;
  const double gap = static_cast<double>(n_majority - n_minority);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(gap / 20.0 + 0.5)));
}

double learner_weight(double error, double learning_rate, double floor) {
  const double e = std::clamp(error, floor, 1.0 - floor);
  return learning_rate * 0.5 * std::log((1.0 - e) / e);
}

void BoostedEnsemble::add(std::shared_ptr<const BaseLearner> learner, double alpha) {
  if (!std::isfinite(alpha)) throw Error("ensemble: learner weight must be finite");
  learners_.push_back(std::move(learner));
  alphas_.push_back(alpha);
}

double BoostedEnsemble::decision_function(std::span<const double> x) const {
  if (learners_.empty()) throw Error("ensemble: no learners");
  if (dimension_ != 0 && x.size() != dimension_)
    throw Error("ensemble: sample dimension " + std::to_string(x.size()) + " does not match " +
                std::to_string(dimension_));
  double margin = 0.0;
  for (std::size_t t = 0; t < learners_.size(); ++t)
    margin += alphas_[t] * signed_value(learners_[t]->predict(x));
  return margin;
}

namespace {

constexpr std::size_t synthetic_origin = static_cast<std::size_t>(-1);

/// Majority and minority pools as seen by the rebalancer. Minority rows keep
/// their original index, or synthetic_origin for generated rows.
struct Pools {
  std::vector<std::size_t> majority;
  Dataset minority;
  std::vector<std::size_t> minority_origin;
  std::vector<SyntheticSample> synthetics;
};

Pools initial_pools(const Dataset& train) {
  Pools p;
  p.minority = Dataset(train.dimension(), train.feature_names(), train.source_tag());
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (train.label(i) == Label::negative) {
      p.majority.push_back(i);
    } else {
      p.minority.add(train.row(i), Label::positive);
      p.minority_origin.push_back(i);
    }
  }
  return p;
}

struct RoundOutcome {
  Pools pools;
  IterationRecord record;
};

RoundOutcome rebalance(const Dataset& train, const Pools& in, const BoostConfig& cfg, RandomSource& rng) {
  RoundOutcome out{in, {}};
  Pools& p = out.pools;
  const std::size_t k_majority = std::min(cfg.k, p.majority.empty() ? 0 : p.majority.size() - 1);
  switch (cfg.rebalancer) {
    case Rebalancer::none:
      break;
    case Rebalancer::double_pruning: {
      const Dataset majority = train.subset(p.majority);
      PruningConfig pc = cfg.pruning;
      pc.k = cfg.k;
      const Dataset pool = concat(majority, p.minority);
      if (k_majority > 0) {
        const auto pruned = prune_majority(majority, pool, k_majority, pc.var_smoothing);
        std::vector<std::size_t> kept;
        kept.reserve(pruned.retained_indices.size());
        for (std::size_t i : pruned.retained_indices) kept.push_back(p.majority[i]);
        p.majority = std::move(kept);
        out.record.removed = pruned.removed_indices.size();
      }
      if (p.minority.size() >= 2) {
        const auto grown = prune_minority(majority, p.minority, pc, rng);
        out.record.added = grown.synthetics.size();
        out.record.spins = grown.spins;
        out.record.accepted = grown.accepted;
        out.record.rejected = grown.rejected;
        out.record.filtered_out = grown.filtered_out;
        p.minority = grown.minority;
        p.minority_origin.insert(p.minority_origin.end(), grown.synthetics.size(), synthetic_origin);
        p.synthetics.insert(p.synthetics.end(), grown.synthetics.begin(), grown.synthetics.end());
      }
      break;
    }
    case Rebalancer::smote: {
      if (p.minority.size() >= 2) {
        ClassPartition part{train.subset(p.majority), p.minority, false};
        const std::size_t before = p.minority.size();
        p.minority = smote(part, cfg.k, cfg.pruning.k_neighbors, rng);
        out.record.added = p.minority.size() - before;
        p.minority_origin.insert(p.minority_origin.end(), out.record.added, synthetic_origin);
      }
      break;
    }
    case Rebalancer::random_under: {
      if (k_majority > 0) {
        std::vector<std::size_t> kept;
        for (std::size_t i : random_keep_indices(p.majority.size(), k_majority, rng)) kept.push_back(p.majority[i]);
        p.majority = std::move(kept);
        out.record.removed = k_majority;
      }
      break;
    }
  }
  out.record.n_majority = p.majority.size();
  out.record.n_minority = p.minority.size();
  return out;
}

}  // namespace

BoostedEnsemble fit_boosted(const Dataset& train, const BoostConfig& cfg, const LearnerFactory& factory,
                            RandomSource& rng, BoostTrace* trace) {
  cfg.validate();
  if (train.count(Label::positive) == 0 || train.count(Label::negative) == 0)
    throw Error("fit_boosted: training data contains a single class");

  const std::size_t n = train.size();
  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> w(n, uniform);
  const Pools original = initial_pools(train);
  Pools carried = original;

  BoostedEnsemble ensemble(train.dimension());
  std::size_t failures = 0;
  std::size_t round = 0;
  while (ensemble.size() < cfg.t_max) {
    ++round;
    auto outcome = rebalance(train, cfg.fresh_pools ? original : carried, cfg, rng);
    const Pools& pools = outcome.pools;

    // Fitting set: carried majority, then carried minority. Original rows
    // carry their boosting weight, synthetic rows 1/N.
    Dataset fit_set = train.subset(pools.majority);
    fit_set.append(pools.minority);
    std::vector<double> fit_w;
    fit_w.reserve(fit_set.size());
    for (std::size_t i : pools.majority) fit_w.push_back(w[i]);
    for (std::size_t origin : pools.minority_origin) fit_w.push_back(origin == synthetic_origin ? uniform : w[origin]);
    const double fit_total = std::accumulate(fit_w.begin(), fit_w.end(), 0.0);
    for (auto& v : fit_w) v /= fit_total;

    std::shared_ptr<BaseLearner> learner = factory();
    learner->fit(fit_set, fit_w);

    std::vector<bool> miss(n);
    double error = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      miss[i] = learner->predict(train.row(i)) != train.label(i);
      if (miss[i]) error += w[i];
    }

    IterationRecord& rec = outcome.record;
    rec.round = round;
    rec.error = error;
    if (error >= 0.5) {
      rec.discarded = true;
      ensemble.training_log().push_back(rec);
      if (++failures >= cfg.early_stop.max_consecutive_failures) break;
      std::fill(w.begin(), w.end(), uniform);
      continue;
    }
    failures = 0;
    rec.alpha = learner_weight(error, cfg.learning_rate, cfg.early_stop.zero_error_floor);
    ensemble.add(std::move(learner), rec.alpha);
    ensemble.training_log().push_back(rec);

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double yh = miss[i] ? -1.0 : 1.0;
      w[i] *= std::exp(-rec.alpha * yh);
      total += w[i];
    }
    for (auto& v : w) v /= total;

    if (!cfg.fresh_pools) carried = outcome.pools;
    if (trace) {
      trace->weights.push_back(w);
      trace->misclassified.push_back(miss);
      trace->final_balanced = std::move(fit_set);
      trace->synthetics = outcome.pools.synthetics;
      trace->carried_majority = outcome.pools.majority.size();
      trace->carried_minority = outcome.pools.minority.size();
    }
  }
  if (ensemble.empty()) throw Error("fit_boosted: every learner was rejected (weighted error >= 0.5)");
  return ensemble;
}

nlohmann::json ensemble_to_json(const BoostedEnsemble& ensemble) {
  nlohmann::json learners = nlohmann::json::array();
  for (std::size_t t = 0; t < ensemble.size(); ++t) learners.push_back(ensemble.learner(t).to_json());
  nlohmann::json log = nlohmann::json::array();
  for (const auto& r : ensemble.training_log())
    log.push_back({{"round", r.round},
                   {"error", r.error},
                   {"alpha", r.alpha},
                   {"discarded", r.discarded},
                   {"n_majority", r.n_majority},
                   {"n_minority", r.n_minority},
                   {"removed", r.removed},
                   {"added", r.added},
                   {"spins", r.spins},
                   {"accepted", r.accepted},
                   {"rejected", r.rejected},
                   {"filtered_out", r.filtered_out}});
  return {{"dimension", ensemble.dimension()},
          {"alphas", ensemble.alphas()},
          {"learners", learners},
          {"label_codec", {{"positive", 1}, {"negative", -1}}},
          {"training_log", log}};
}

BoostedEnsemble ensemble_from_json(const nlohmann::json& j) {
  BoostedEnsemble ensemble(j.at("dimension").get<std::size_t>());
  const auto alphas = j.at("alphas").get<std::vector<double>>();
  const auto& learners = j.at("learners");
  if (learners.size() != alphas.size()) throw ParseError("ensemble: learner and alpha counts differ");
  for (std::size_t t = 0; t < alphas.size(); ++t) ensemble.add(learner_from_json(learners[t]), alphas[t]);
  if (j.contains("training_log")) {
    for (const auto& r : j.at("training_log")) {
      IterationRecord rec;
      rec.round = r.at("round").get<std::size_t>();
      rec.error = r.at("error").get<double>();
      rec.alpha = r.at("alpha").get<double>();
      rec.discarded = r.at("discarded").get<bool>();
      rec.n_majority = r.at("n_majority").get<std::size_t>();
      rec.n_minority = r.at("n_minority").get<std::size_t>();
      rec.removed = r.at("removed").get<std::size_t>();
      rec.added = r.at("added").get<std::size_t>();
      rec.spins = r.at("spins").get<std::size_t>();
      rec.accepted = r.at("accepted").get<std::size_t>();
      rec.rejected = r.at("rejected").get<std::size_t>();
      rec.filtered_out = r.at("filtered_out").get<std::size_t>();
      ensemble.training_log().push_back(rec);
    }
  }
  return ensemble;
}

}  // namespace resmote
