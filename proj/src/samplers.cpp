#include "resmote/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "resmote/errors.hpp"
#include "resmote/neighbors.hpp"
#include "resmote/resampling.hpp"

namespace resmote {

std::string_view to_string(SamplerMethod m) {
  switch (m) {
    case SamplerMethod::smote: return "smote";
    case SamplerMethod::borderline_smote: return "borderline_smote";
    case SamplerMethod::adasyn: return "adasyn";
    case SamplerMethod::tomek_links: return "tomek_links";
    case SamplerMethod::random_under: return "random_under";
  }
  return "?";
}

SamplerMethod parse_sampler_method(std::string_view name) {
  for (auto m : {SamplerMethod::smote, SamplerMethod::borderline_smote, SamplerMethod::adasyn,
                 SamplerMethod::tomek_links, SamplerMethod::random_under})
    if (to_string(m) == name) return m;
  throw Error("unknown sampler \"" + std::string(name) + "\"");
}

namespace {

void require_minority(const ClassPartition& p, const char* who) {
  if (p.minority.size() < 2) throw Error(std::string(who) + ": need at least 2 minority samples");
}

/// Interpolates one synthetic per entry of `seeds` with neighbors drawn from
/// each seed's k nearest minority samples.
Dataset oversample_from_seeds(const Dataset& minority, std::span<const std::size_t> seeds,
                              std::size_t k_neighbors, RandomSource& rng) {
  Dataset out = minority;
  out.reserve(minority.size() + seeds.size());
  std::vector<std::vector<std::size_t>> cache(minority.size());
  for (std::size_t seed : seeds) {
    auto& nb = cache[seed];
    if (nb.empty()) nb = nearest_neighbors(minority, minority.row(seed), k_neighbors, seed);
    const std::size_t neighbor = nb[rng.uniform_index(nb.size())];
    const double alpha = rng.uniform();
    out.add(interpolate(minority.row(seed), minority.row(neighbor), alpha), Label::positive);
  }
  return out;
}

/// Count of majority samples among the k nearest neighbors of each minority
/// sample in the combined set.
std::vector<std::size_t> majority_neighbor_counts(const ClassPartition& p, std::size_t k) {
  const Dataset full = concat(p.majority.relabeled(Label::negative), p.minority.relabeled(Label::positive));
  const std::size_t offset = p.majority.size();
  std::vector<std::size_t> counts(p.minority.size(), 0);
  for (std::size_t i = 0; i < p.minority.size(); ++i) {
    for (std::size_t j : nearest_neighbors(full, p.minority.row(i), k, offset + i))
      if (j < offset) ++counts[i];
  }
  return counts;
}

}  // namespace

Dataset smote(const ClassPartition& partition, std::size_t n_new, std::size_t k_neighbors, RandomSource& rng) {
  if (n_new == 0) return partition.minority;
  require_minority(partition, "smote");
  if (k_neighbors == 0) throw Error("smote: k_neighbors must be >= 1");
  std::vector<std::size_t> seeds(n_new);
  for (auto& s : seeds) s = rng.uniform_index(partition.minority.size());
  return oversample_from_seeds(partition.minority, seeds, k_neighbors, rng);
}

std::vector<BorderlineKind> borderline_kinds(const ClassPartition& partition, std::size_t k_neighbors) {
  if (k_neighbors == 0) throw Error("borderline_smote: k_neighbors must be >= 1");
  const auto counts = majority_neighbor_counts(partition, k_neighbors);
  const std::size_t available = partition.majority.size() + partition.minority.size() - 1;
  const std::size_t k = std::min(k_neighbors, available);
  std::vector<BorderlineKind> kinds(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == k)
      kinds[i] = BorderlineKind::noise;
    else if (2 * counts[i] >= k)
      kinds[i] = BorderlineKind::danger;
    else
      kinds[i] = BorderlineKind::safe;
  }
  return kinds;
}

Dataset borderline_smote(const ClassPartition& partition, std::size_t n_new, std::size_t k_neighbors,
                         RandomSource& rng) {
  if (n_new == 0) return partition.minority;
  require_minority(partition, "borderline_smote");
  const auto kinds = borderline_kinds(partition, k_neighbors);
  std::vector<std::size_t> danger;
  for (std::size_t i = 0; i < kinds.size(); ++i)
    if (kinds[i] == BorderlineKind::danger) danger.push_back(i);
  if (danger.empty()) {
    danger.resize(partition.minority.size());
    std::iota(danger.begin(), danger.end(), 0);
  }
  std::vector<std::size_t> seeds(n_new);
  for (auto& s : seeds) s = danger[rng.uniform_index(danger.size())];
  return oversample_from_seeds(partition.minority, seeds, k_neighbors, rng);
}

std::vector<std::size_t> adasyn_allocation(const ClassPartition& partition, std::size_t n_new,
                                           std::size_t k_neighbors) {
  if (k_neighbors == 0) throw Error("adasyn: k_neighbors must be >= 1");
  const auto counts = majority_neighbor_counts(partition, k_neighbors);
  const std::size_t m = counts.size();
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  std::vector<std::size_t> alloc(m, 0);
  if (total == 0.0) {
    for (std::size_t i = 0; i < m; ++i) alloc[i] = n_new / m + (i < n_new % m ? 1 : 0);
    return alloc;
  }
  // r_i = counts_i / k; the common 1/k cancels in the ratio.
  for (std::size_t i = 0; i < m; ++i)
    alloc[i] = static_cast<std::size_t>(std::floor(static_cast<double>(n_new) * counts[i] / total + 0.5));
  return alloc;
}

Dataset adasyn(const ClassPartition& partition, std::size_t n_new, std::size_t k_neighbors, RandomSource& rng) {
  if (n_new == 0) return partition.minority;
  require_minority(partition, "adasyn");
  const auto alloc = adasyn_allocation(partition, n_new, k_neighbors);
  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < alloc.size(); ++i) seeds.insert(seeds.end(), alloc[i], i);
  return oversample_from_seeds(partition.minority, seeds, k_neighbors, rng);
}

std::vector<std::pair<std::size_t, std::size_t>> find_tomek_links(const ClassPartition& partition) {
  if (partition.majority.empty() || partition.minority.empty()) throw Error("tomek_links: empty class");
  const Dataset full = concat(partition.majority.relabeled(Label::negative),
                              partition.minority.relabeled(Label::positive));
  const std::size_t offset = partition.majority.size();
  if (full.size() < 2) return {};
  std::vector<std::size_t> nn(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) nn[i] = nearest_neighbors(full, full.row(i), 1, i).front();
  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (std::size_t a = 0; a < offset; ++a) {
    const std::size_t b = nn[a];
    if (b >= offset && nn[b] == a) links.emplace_back(a, b - offset);
  }
  return links;
}

Dataset tomek_links(const ClassPartition& partition) {
  const auto links = find_tomek_links(partition);
  std::vector<bool> drop(partition.majority.size(), false);
  for (const auto& [a, b] : links) drop[a] = true;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < drop.size(); ++i)
    if (!drop[i]) keep.push_back(i);
  return concat(partition.majority.subset(keep), partition.minority);
}

std::vector<std::size_t> random_keep_indices(std::size_t n, std::size_t n_remove, RandomSource& rng) {
  if (n_remove > n) throw Error("random_under: cannot remove more samples than exist");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < n_remove; ++i) std::swap(idx[i], idx[i + rng.uniform_index(n - i)]);
  std::vector<std::size_t> keep(idx.begin() + static_cast<std::ptrdiff_t>(n_remove), idx.end());
  std::sort(keep.begin(), keep.end());
  return keep;
}

Dataset random_under(const ClassPartition& partition, std::size_t n_remove, RandomSource& rng) {
  const std::size_t n = partition.majority.size();
  if (n_remove >= n && n_remove > 0)
    throw Error("random_under: n_remove = " + std::to_string(n_remove) + " must be smaller than the majority size " +
                std::to_string(n));
  return partition.majority.subset(random_keep_indices(n, n_remove, rng));
}

Dataset apply_sampler(const SamplerSpec& spec, const ClassPartition& partition, RandomSource& rng) {
  if (!(spec.target_ratio >= 1.0)) throw Error("sampler: target_ratio must be >= 1");
  const double n_maj = static_cast<double>(partition.majority.size());
  const double n_min = static_cast<double>(partition.minority.size());
  const auto grow = static_cast<std::size_t>(std::max(0.0, std::ceil(n_maj / spec.target_ratio - 1e-9) - n_min));
  switch (spec.method) {
    case SamplerMethod::smote:
      return concat(partition.majority, smote(partition, grow, spec.k_neighbors, rng));
    case SamplerMethod::borderline_smote:
      return concat(partition.majority, borderline_smote(partition, grow, spec.k_neighbors, rng));
    case SamplerMethod::adasyn:
      return concat(partition.majority, adasyn(partition, grow, spec.k_neighbors, rng));
    case SamplerMethod::tomek_links:
      return tomek_links(partition);
    case SamplerMethod::random_under: {
      const double keep = std::ceil(spec.target_ratio * n_min - 1e-9);
      auto remove = static_cast<std::size_t>(std::max(0.0, n_maj - keep));
      remove = std::min(remove, partition.majority.size() - 1);
      return concat(random_under(partition, remove, rng), partition.minority);
    }
  }
  throw Error("sampler: unhandled method");
}

}  // namespace resmote
