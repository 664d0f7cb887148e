#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "resmote/errors.hpp"
#include "resmote/neighbors.hpp"
#include "resmote/resampling.hpp"
#include "support.hpp"

using namespace resmote;

namespace {

ClassPartition blobs(std::size_t n_maj, std::size_t n_min, double sep, std::uint64_t seed, std::size_t d = 2) {
  return partition_by_class(make_gaussian_blobs(n_maj, n_min, d, sep, seed));
}

SyntheticSample candidate_at(std::vector<double> x, std::vector<double> seed) {
  SyntheticSample s;
  s.x = std::move(x);
  s.seed = std::move(seed);
  return s;
}

}  // namespace

TEST_SUITE("resampling") {

TEST_CASE("distances") {
  const std::vector<double> a{0, 0}, b{3, 4};
  CHECK(euclidean_distance(a, b) == 5.0);
  CHECK(squared_distance(a, b) == 25.0);
  CHECK(manhattan_distance(a, b) == 7.0);
}

TEST_CASE("nearest neighbors order, exclusion and ties") {
  const auto d = testing::line({0, 1, 3, -1, 10}, {});
  const auto nn = nearest_neighbors(d, std::vector<double>{0.0}, 3, 0);
  CHECK(nn == std::vector<std::size_t>{1, 3, 2});
  CHECK(nearest_neighbors(d, std::vector<double>{0.0}, 10).size() == 5);
  CHECK(min_distance(d, std::vector<double>{9.0}) == 1.0);
}

TEST_CASE("lowest_k ranks by value then index") {
  const std::vector<double> e{0.1, 0.9, 0.5};
  CHECK(lowest_k(e, 1) == std::vector<std::size_t>{0});
  const std::vector<double> ties{0.3, 0.1, 0.3, 0.1};
  CHECK(lowest_k(ties, 3) == std::vector<std::size_t>{1, 3, 0});
}

TEST_CASE("majority pruning drops the lowest-entropy samples") {
  const auto p = blobs(60, 20, 1.0, 5);
  const auto pool = p.combined();
  const auto r = prune_majority(p.majority, pool, 7);
  CHECK(r.retained.size() == 53);
  CHECK(r.removed_indices.size() == 7);
  const auto model = fit_gnb(pool);
  std::vector<std::pair<double, std::size_t>> oracle;
  for (std::size_t i = 0; i < p.majority.size(); ++i)
    oracle.emplace_back(shannon_entropy(posterior(model, p.majority.row(i))), i);
  std::sort(oracle.begin(), oracle.end());
  for (std::size_t j = 0; j < 7; ++j) CHECK(r.removed_indices[j] == oracle[j].second);
  CHECK(std::is_sorted(r.retained_indices.begin(), r.retained_indices.end()));
}

TEST_CASE("majority pruning identity and bounds") {
  const auto p = blobs(10, 5, 1.0, 1);
  CHECK(majority_class_pruning(p.majority, p.combined(), 0) == p.majority);
  CHECK_THROWS_AS(prune_majority(p.majority, p.combined(), 10), Error);
  CHECK(prune_majority(p.majority, p.combined(), 9).retained.size() == 1);
}

TEST_CASE("roulette from raw L1 sums") {
  Dataset minority(2), majority(2);
  minority.add(std::vector<double>{0, 0}, Label::positive);
  majority.add(std::vector<double>{1, 2}, Label::negative);
  majority.add(std::vector<double>{4, 6}, Label::negative);
  const auto w = build_roulette(minority, majority);
  CHECK(w.distances[0] == 13.0);
  CHECK(w.fitness[0] == doctest::Approx(1.0 / 13.0));
  CHECK(w.probabilities[0] == 1.0);
  const auto e = build_roulette(minority, majority, 1e-12, FitnessMetric::euclidean);
  CHECK(e.distances[0] == doctest::Approx(std::sqrt(5.0) + std::sqrt(52.0)));
}

TEST_CASE("roulette epsilon guards coincident points") {
  Dataset minority(1), majority(1);
  minority.add(std::vector<double>{0}, Label::positive);
  minority.add(std::vector<double>{5}, Label::positive);
  majority.add(std::vector<double>{0}, Label::negative);
  const auto w = build_roulette(minority, majority, 1e-6);
  CHECK(w.fitness[0] == doctest::Approx(1e6));
  CHECK(std::isfinite(w.cumulative.back()));
}

TEST_CASE("wheel normalization and bucket rule") {
  const std::vector<double> f{1, 3};
  const auto w = wheel_from_fitness(f);
  CHECK(w.probabilities[0] == 0.25);
  CHECK(w.probabilities[1] == 0.75);
  CHECK(w.cumulative[0] == 0.25);
  CHECK(w.cumulative[1] == 1.0);
  CHECK(select_bucket(w, 0.1) == 0);
  CHECK(select_bucket(w, 0.25) == 1);
  CHECK(select_bucket(w, 0.999) == 1);
  CHECK(select_bucket(w, 0.0) == 0);
  CHECK(select_bucket(w, 1.0) == 1);

  const std::vector<double> one{2.5};
  const auto single = wheel_from_fitness(one);
  RandomSource rng(3);
  for (auto i : spin(single, 100, rng)) CHECK(i == 0);
  CHECK_THROWS_AS(wheel_from_fitness(std::vector<double>{}), Error);
  CHECK_THROWS_AS(wheel_from_fitness(std::vector<double>{0, 0}), Error);
}

TEST_CASE("cumulative array is monotone and ends at one") {
  RandomSource rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> f(1 + rng.uniform_index(40));
    for (auto& v : f) v = rng.uniform() + 1e-3;
    const auto w = wheel_from_fitness(f);
    CHECK(std::is_sorted(w.cumulative.begin(), w.cumulative.end()));
    CHECK(std::abs(w.cumulative.back() - 1.0) <= 1e-9);
  }
}

TEST_CASE("spin frequencies") {
  const auto w = wheel_from_fitness(std::vector<double>{1, 3});
  RandomSource rng(2024);
  const auto draws = spin(w, 10000, rng);
  const double freq = static_cast<double>(std::count(draws.begin(), draws.end(), 1u)) / 10000.0;
  CHECK(freq >= 0.737);
  CHECK(freq <= 0.763);

  const std::vector<double> f4{1, 2, 3, 4};
  const auto w4 = wheel_from_fitness(f4);
  const auto d4 = spin(w4, 10000, rng);
  double chi2 = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double expected = 10000.0 * w4.probabilities[i];
    const double observed = static_cast<double>(std::count(d4.begin(), d4.end(), i));
    chi2 += (observed - expected) * (observed - expected) / expected;
  }
  // 16.266 is the 0.999 quantile of chi-square with 3 degrees of freedom.
  CHECK(chi2 < 16.266);
}

TEST_CASE("interpolation endpoints and midpoint") {
  const std::vector<double> s{0, 0}, n{2, 4};
  CHECK(interpolate(s, n, 0.5) == std::vector<double>{1, 2});
  CHECK(interpolate(s, n, 0.0) == s);
}

TEST_CASE("smote_interpolate lies on a minority segment") {
  const auto p = blobs(30, 12, 1.0, 6, 3);
  RandomSource rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto s = smote_interpolate(p.minority, rng.uniform_index(12), 5, rng);
    CHECK(s.neighbor_index != s.seed_index);
    CHECK(s.alpha >= 0.0);
    CHECK(s.alpha < 1.0);
    const auto nb = nearest_neighbors(p.minority, p.minority.row(s.seed_index), 5, s.seed_index);
    CHECK(std::find(nb.begin(), nb.end(), s.neighbor_index) != nb.end());
    double residual = 0.0;
    for (std::size_t j = 0; j < 3; ++j)
      residual = std::max(residual, std::abs(s.x[j] - (s.seed[j] + s.alpha * (s.neighbor[j] - s.seed[j]))));
    CHECK(residual <= 1e-9);
  }
  Dataset one(1);
  one.add(std::vector<double>{0}, Label::positive);
  CHECK_THROWS_AS(smote_interpolate(one, 0, 5, rng), Error);
}

TEST_CASE("regularization accept rule") {
  Dataset maj(2);
  maj.add(std::vector<double>{3, 0}, Label::negative);
  auto a = candidate_at({0, 0}, {1, 0});
  CHECK(regularization_accept(a, maj));
  CHECK(a.dist_min == 1.0);
  CHECK(a.dist_maj == 3.0);

  Dataset maj2(2);
  maj2.add(std::vector<double>{1, 0}, Label::negative);
  auto b = candidate_at({0, 0}, {4, 0});
  CHECK_FALSE(regularization_accept(b, maj2));

  auto c = candidate_at({1, 0}, {1, 0});
  CHECK(regularization_accept(c, maj2));
  CHECK(c.dist_min == 0.0);
}

TEST_CASE("noise filter keeps the top-k by entropy") {
  const auto p = blobs(40, 15, 1.0, 12);
  const auto pool = p.combined();
  RandomSource rng(9);
  std::vector<SyntheticSample> cands;
  for (int i = 0; i < 12; ++i) cands.push_back(smote_interpolate(p.minority, rng.uniform_index(15), 5, rng));
  const auto kept = noise_filter(cands, pool, 4);
  REQUIRE(kept.size() == 4);
  const auto model = fit_gnb(pool);
  std::vector<double> ent;
  for (const auto& c : cands) ent.push_back(shannon_entropy(posterior(model, c.x)));
  std::vector<double> sorted = ent;
  std::sort(sorted.rbegin(), sorted.rend());
  for (std::size_t i = 0; i < 4; ++i) CHECK(kept[i].entropy == sorted[i]);

  const auto all = noise_filter(cands, pool, 50);
  CHECK(all.size() == 12);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].entropy >= all[i].entropy);
}

TEST_CASE("minority pruning with k = 0 is the identity") {
  const auto p = blobs(20, 6, 1.0, 2);
  PruningConfig cfg;
  cfg.k = 0;
  RandomSource rng(1);
  CHECK(minority_class_pruning(p.majority, p.minority, cfg, rng) == p.minority);
}

TEST_CASE("minority pruning accounting") {
  const auto p = blobs(80, 20, 1.0, 3);
  PruningConfig cfg;
  cfg.k = 10;
  RandomSource rng(5);
  const auto r = prune_minority(p.majority, p.minority, cfg, rng);
  CHECK(r.spins == r.accepted + r.rejected);
  CHECK(r.accepted <= 20);
  CHECK(r.synthetics.size() == std::min<std::size_t>(10, r.accepted));
  CHECK(r.filtered_out == r.accepted - r.synthetics.size());
  CHECK(r.minority.size() == 20 + r.synthetics.size());
  for (std::size_t i = 0; i < 20; ++i) CHECK(r.minority.row(i)[0] == p.minority.row(i)[0]);
}

TEST_CASE("spin cap bounds the search") {
  // Minority points sit inside the majority cloud, so most candidates fail.
  Dataset maj(1), min(1);
  for (int i = 0; i < 50; ++i) maj.add(std::vector<double>{i * 0.1}, Label::negative);
  min.add(std::vector<double>{0.05}, Label::positive);
  min.add(std::vector<double>{4.85}, Label::positive);
  PruningConfig cfg;
  cfg.k = 5;
  cfg.spin_cap = 20;
  RandomSource rng(3);
  const auto r = prune_minority(maj, min, cfg, rng);
  CHECK(r.spins <= 20);
}

TEST_CASE("double pruning reproduces the worked class counts") {
  const auto p = blobs(366, 193, 12.0, 21);
  PruningConfig cfg;
  cfg.k = 90;
  RandomSource rng(77);
  const auto r = double_pruning(p.majority, p.minority, cfg, rng);
  CHECK(r.majority.retained.size() == 276);
  CHECK(r.minority.minority.size() == 283);
  CHECK(r.balanced().size() == 559);
}

TEST_CASE("double pruning on a tiny partition") {
  Dataset maj(1), min(1);
  for (double v : {0.0, 0.5, 1.0}) maj.add(std::vector<double>{v}, Label::negative);
  for (double v : {10.0, 11.0}) min.add(std::vector<double>{v}, Label::positive);
  PruningConfig cfg;
  cfg.k = 1;
  RandomSource rng(2);
  const auto r = double_pruning(maj, min, cfg, rng);
  CHECK(r.majority.retained.size() == 2);
  CHECK(r.minority.minority.size() == 3);
}

TEST_CASE("double pruning is pure and reproducible") {
  const auto p = blobs(100, 30, 1.5, 8);
  const auto maj = p.majority, min = p.minority;
  PruningConfig cfg;
  cfg.k = 8;
  RandomSource a(4), b(4);
  const auto ra = double_pruning(p.majority, p.minority, cfg, a);
  const auto rb = double_pruning(p.majority, p.minority, cfg, b);
  CHECK(ra.balanced() == rb.balanced());
  CHECK(p.majority == maj);
  CHECK(p.minority == min);
  CHECK(ra.majority.retained.size() == 92);
  CHECK(ra.minority.minority.size() <= 38);
}

TEST_CASE("double pruning preconditions") {
  const auto p = blobs(10, 5, 1.0, 1);
  PruningConfig cfg;
  cfg.k = 10;
  RandomSource rng(1);
  CHECK_THROWS_AS(double_pruning(p.majority, p.minority, cfg, rng), Error);
  cfg.k = 2;
  CHECK_THROWS_AS(double_pruning(p.majority, p.minority.subset(std::vector<std::size_t>{0}), cfg, rng), Error);
  cfg.k_neighbors = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("randomized pruning invariants") {
  RandomSource meta(99);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n_maj = 20 + meta.uniform_index(100);
    const std::size_t n_min = 3 + meta.uniform_index(30);
    const auto p = blobs(n_maj, n_min, meta.uniform() * 3.0, meta.next_u64(), 1 + meta.uniform_index(4));
    PruningConfig cfg;
    cfg.k = 1 + meta.uniform_index(n_maj / 2);
    RandomSource rng(meta.next_u64());
    const auto r = double_pruning(p.majority, p.minority, cfg, rng);
    for (const auto& s : r.minority.synthetics) {
      CHECK(euclidean_distance(s.x, s.seed) <= min_distance(p.majority, s.x));
      CHECK(s.dist_min <= s.dist_maj);
    }
  }
}

}  // TEST_SUITE
