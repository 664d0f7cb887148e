#include "resmote/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "resmote/errors.hpp"
#include "resmote/neighbors.hpp"

namespace resmote {

void PruningConfig::validate() const {
  if (k_neighbors == 0) throw Error("pruning: k_neighbors must be >= 1");
  if (!(candidate_multiplier >= 1.0)) throw Error("pruning: candidate_multiplier must be >= 1");
  if (spin_cap != 0 && spin_cap < k) throw Error("pruning: spin_cap must be >= k");
  if (!(epsilon > 0.0)) throw Error("pruning: epsilon must be positive");
}

std::vector<std::size_t> lowest_k(std::span<const double> values, std::size_t k) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t take = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return values[a] < values[b] || (values[a] == values[b] && a < b);
                    });
  order.resize(take);
  return order;
}

MajorityPruning prune_majority(const Dataset& majority, const Dataset& pool, std::size_t k,
                               double var_smoothing) {
  MajorityPruning out;
  if (k == 0) {
    out.retained = majority;
    out.retained_indices.resize(majority.size());
    std::iota(out.retained_indices.begin(), out.retained_indices.end(), 0);
    return out;
  }
  if (k >= majority.size())
    throw Error("majority_class_pruning: k = " + std::to_string(k) + " must be smaller than the majority size " +
                std::to_string(majority.size()));

  const auto model = fit_gnb(pool, std::nullopt, var_smoothing);
  const auto scores = score_entropy(model, majority);
  out.entropy.reserve(scores.size());
  for (const auto& s : scores) out.entropy.push_back(s.entropy);

  out.removed_indices = lowest_k(out.entropy, k);
  std::vector<bool> removed(majority.size(), false);
  for (std::size_t i : out.removed_indices) removed[i] = true;
  for (std::size_t i = 0; i < majority.size(); ++i)
    if (!removed[i]) out.retained_indices.push_back(i);
  out.retained = majority.subset(out.retained_indices);
  return out;
}

Dataset majority_class_pruning(const Dataset& majority, const Dataset& pool, std::size_t k) {
  return prune_majority(majority, pool, k).retained;
}

RouletteWheel wheel_from_fitness(std::span<const double> fitness) {
  if (fitness.empty()) throw Error("roulette: no candidates");
  RouletteWheel wheel;
  wheel.seed_indices.resize(fitness.size());
  std::iota(wheel.seed_indices.begin(), wheel.seed_indices.end(), 0);
  wheel.fitness.assign(fitness.begin(), fitness.end());
  const double total = std::accumulate(fitness.begin(), fitness.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) throw Error("roulette: fitness must sum to a positive finite value");
  wheel.probabilities.reserve(fitness.size());
  wheel.cumulative.reserve(fitness.size());
  double running = 0.0;
  for (double f : fitness) {
    if (!(f >= 0.0)) throw Error("roulette: negative fitness");
    const double p = f / total;
    running += p;
    wheel.probabilities.push_back(p);
    wheel.cumulative.push_back(running);
  }
  return wheel;
}

RouletteWheel build_roulette(const Dataset& minority, const Dataset& majority, double epsilon,
                             FitnessMetric metric) {
  if (minority.empty() || majority.empty()) throw Error("build_roulette: empty class");
  std::vector<double> distances(minority.size(), 0.0);
  std::vector<double> fitness(minority.size(), 0.0);
  for (std::size_t i = 0; i < minority.size(); ++i) {
    double m = 0.0;
    for (std::size_t j = 0; j < majority.size(); ++j)
      m += metric == FitnessMetric::manhattan ? manhattan_distance(minority.row(i), majority.row(j))
                                              : euclidean_distance(minority.row(i), majority.row(j));
    distances[i] = m;
    fitness[i] = 1.0 / std::max(m, epsilon);
  }
  auto wheel = wheel_from_fitness(fitness);
  wheel.distances = std::move(distances);
  return wheel;
}

std::size_t select_bucket(const RouletteWheel& wheel, double r) {
  const auto it = std::upper_bound(wheel.cumulative.begin(), wheel.cumulative.end(), r);
  if (it == wheel.cumulative.end()) return wheel.seed_indices.back();
  return wheel.seed_indices[static_cast<std::size_t>(it - wheel.cumulative.begin())];
}

std::vector<std::size_t> spin(const RouletteWheel& wheel, std::size_t n_draws, RandomSource& rng) {
  std::vector<std::size_t> out;
  out.reserve(n_draws);
  for (std::size_t i = 0; i < n_draws; ++i) out.push_back(select_bucket(wheel, rng.uniform()));
  return out;
}

FeatureVector interpolate(std::span<const double> seed, std::span<const double> neighbor, double alpha) {
  FeatureVector x(seed.size());
  for (std::size_t j = 0; j < seed.size(); ++j) x[j] = seed[j] + alpha * (neighbor[j] - seed[j]);
  return x;
}

namespace {

SyntheticSample make_synthetic(const Dataset& minority, std::size_t seed_index,
                               std::span<const std::size_t> neighbors, RandomSource& rng) {
  SyntheticSample s;
  s.seed_index = seed_index;
  s.neighbor_index = neighbors[rng.uniform_index(neighbors.size())];
  s.alpha = rng.uniform();
  const auto seed = minority.row(seed_index);
  const auto nb = minority.row(s.neighbor_index);
  s.seed.assign(seed.begin(), seed.end());
  s.neighbor.assign(nb.begin(), nb.end());
  s.x = interpolate(seed, nb, s.alpha);
  return s;
}

}  // namespace

SyntheticSample smote_interpolate(const Dataset& minority, std::size_t seed_index, std::size_t k_neighbors,
                                  RandomSource& rng) {
  if (minority.size() < 2) throw Error("smote_interpolate: need at least 2 minority samples");
  if (k_neighbors == 0) throw Error("smote_interpolate: k_neighbors must be >= 1");
  if (seed_index >= minority.size()) throw Error("smote_interpolate: seed index out of range");
  const auto neighbors = nearest_neighbors(minority, minority.row(seed_index), k_neighbors, seed_index);
  return make_synthetic(minority, seed_index, neighbors, rng);
}

bool regularization_accept(SyntheticSample& candidate, const Dataset& majority) {
  candidate.dist_maj = min_distance(majority, candidate.x);
  candidate.dist_min = euclidean_distance(candidate.x, candidate.seed);
  return candidate.dist_min <= candidate.dist_maj;
}

std::vector<SyntheticSample> noise_filter(std::vector<SyntheticSample> candidates, const Dataset& pool,
                                          std::size_t k, double var_smoothing) {
  if (candidates.empty()) throw Error("noise_filter: empty candidate list");
  const auto model = fit_gnb(pool, std::nullopt, var_smoothing);
  for (auto& c : candidates) c.entropy = shannon_entropy(posterior(model, c.x));

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].entropy > candidates[b].entropy;
  });
  order.resize(std::min(k, order.size()));

  std::vector<SyntheticSample> kept;
  kept.reserve(order.size());
  for (std::size_t i : order) kept.push_back(std::move(candidates[i]));
  return kept;
}

MinorityPruning prune_minority(const Dataset& majority, const Dataset& minority, const PruningConfig& cfg,
                               RandomSource& rng) {
  cfg.validate();
  if (minority.size() < 2) throw Error("minority_class_pruning: need at least 2 minority samples");
  if (majority.empty()) throw Error("minority_class_pruning: empty majority class");

  MinorityPruning out;
  out.minority = minority;
  if (cfg.k == 0) return out;

  const auto wheel = build_roulette(minority, majority, cfg.epsilon, cfg.metric);
  const auto target = static_cast<std::size_t>(std::ceil(cfg.candidate_multiplier * static_cast<double>(cfg.k)));
  const std::size_t cap = cfg.effective_spin_cap();

  std::vector<std::vector<std::size_t>> neighbor_cache(minority.size());
  std::vector<SyntheticSample> accepted;
  accepted.reserve(target);
  while (accepted.size() < target && out.spins < cap) {
    const std::size_t seed = select_bucket(wheel, rng.uniform());
    ++out.spins;
    auto& neighbors = neighbor_cache[seed];
    if (neighbors.empty()) neighbors = nearest_neighbors(minority, minority.row(seed), cfg.k_neighbors, seed);
    auto candidate = make_synthetic(minority, seed, neighbors, rng);
    if (regularization_accept(candidate, majority))
      accepted.push_back(std::move(candidate));
    else
      ++out.rejected;
  }
  out.accepted = accepted.size();
  if (accepted.empty()) return out;

  const Dataset pool = concat(majority.relabeled(Label::negative), minority.relabeled(Label::positive));
  out.synthetics = noise_filter(std::move(accepted), pool, cfg.k, cfg.var_smoothing);
  out.filtered_out = out.accepted - out.synthetics.size();
  out.minority.reserve(minority.size() + out.synthetics.size());
  for (const auto& s : out.synthetics) out.minority.add(s.x, Label::positive);
  return out;
}

Dataset minority_class_pruning(const Dataset& majority, const Dataset& minority, const PruningConfig& cfg,
                               RandomSource& rng) {
  return prune_minority(majority, minority, cfg, rng).minority;
}

DoublePruningResult double_pruning(const Dataset& majority, const Dataset& minority, const PruningConfig& cfg,
                                   RandomSource& rng) {
  cfg.validate();
  if (cfg.k >= majority.size())
    throw Error("double_pruning: k = " + std::to_string(cfg.k) + " must be smaller than the majority size " +
                std::to_string(majority.size()));
  if (minority.size() < 2) throw Error("double_pruning: need at least 2 minority samples");
  DoublePruningResult out;
  out.majority = prune_majority(majority, concat(majority.relabeled(Label::negative), minority.relabeled(Label::positive)),
                                cfg.k, cfg.var_smoothing);
  out.minority = prune_minority(majority, minority, cfg, rng);
  return out;
}

}  // namespace resmote
