#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "resmote/errors.hpp"
#include "resmote/neighbors.hpp"
#include "resmote/samplers.hpp"
#include "support.hpp"

using namespace resmote;

namespace {

ClassPartition blobs(std::size_t n_maj, std::size_t n_min, double sep, std::uint64_t seed) {
  return partition_by_class(make_gaussian_blobs(n_maj, n_min, 2, sep, seed));
}

ClassPartition make_partition(Dataset majority, Dataset minority) {
  ClassPartition p;
  p.majority = std::move(majority);
  p.minority = std::move(minority);
  return p;
}

}  // namespace

TEST_SUITE("samplers") {

TEST_CASE("method names round trip") {
  for (auto m : {SamplerMethod::smote, SamplerMethod::borderline_smote, SamplerMethod::adasyn,
                 SamplerMethod::tomek_links, SamplerMethod::random_under})
    CHECK(parse_sampler_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_sampler_method("enn"), Error);
}

TEST_CASE("smote identity and segment geometry") {
  const auto p = blobs(20, 8, 1.0, 1);
  RandomSource rng(1);
  CHECK(smote(p, 0, 5, rng) == p.minority);

  const auto two = make_partition(p.majority, testing::rows({{0, 0}, {2, 4}}, Label::positive));
  const auto out = smote(two, 50, 5, rng);
  REQUIRE(out.size() == 52);
  for (std::size_t i = 2; i < out.size(); ++i) {
    const auto x = out.row(i);
    // On the segment (0,0)-(2,4): y = 2x with 0 <= x <= 2.
    CHECK(std::abs(x[1] - 2.0 * x[0]) <= 1e-12);
    CHECK(x[0] >= 0.0);
    CHECK(x[0] <= 2.0);
    CHECK(out.label(i) == Label::positive);
  }
}

TEST_CASE("borderline categories") {
  // 0.15 sits inside the majority, 20.0 and 20.1 form an isolated pair,
  // 5.1 and 5.4 border two majority points.
  Dataset maj(1), min(1);
  for (double v : {0.0, 0.1, 0.2, 0.3, 5.0, 5.2}) maj.add(std::vector<double>{v}, Label::negative);
  for (double v : {0.15, 20.0, 20.1, 5.1, 5.4}) min.add(std::vector<double>{v}, Label::positive);
  const auto p = make_partition(maj, min);
  const auto kinds = borderline_kinds(p, 3);
  CHECK(kinds[0] == BorderlineKind::noise);
  CHECK(kinds[1] == BorderlineKind::safe);
  CHECK(kinds[2] == BorderlineKind::safe);
  CHECK(kinds[3] == BorderlineKind::danger);
  CHECK(kinds[4] == BorderlineKind::danger);

  RandomSource rng(4);
  const auto out = borderline_smote(p, 200, 3, rng);
  REQUIRE(out.size() == 205);
  // Seeds 20.1 or 0.15 would put points in (20.0, 20.1] or [0.15, 0.2).
  for (std::size_t i = 5; i < out.size(); ++i) {
    const double v = out.row(i)[0];
    CHECK(v > 0.15);
    CHECK(v <= 20.0);
  }
}

TEST_CASE("adasyn allocation") {
  const auto p = blobs(60, 10, 1.0, 2);
  const auto alloc = adasyn_allocation(p, 40, 5);
  CHECK(alloc.size() == 10);
  const auto sum = std::accumulate(alloc.begin(), alloc.end(), std::size_t{0});
  CHECK(sum >= 40 - 5);
  CHECK(sum <= 40 + 5);

  // All-minority neighborhoods: r_i = 0 everywhere, uniform fallback.
  Dataset maj(1), min(1);
  for (double v : {100.0, 101.0}) maj.add(std::vector<double>{v}, Label::negative);
  for (double v : {0.0, 1.0, 2.0, 3.0}) min.add(std::vector<double>{v}, Label::positive);
  const auto uniform = adasyn_allocation(make_partition(maj, min), 10, 2);
  CHECK(uniform == std::vector<std::size_t>{3, 3, 2, 2});

  RandomSource rng(3);
  const auto out = adasyn(p, 40, 5, rng);
  CHECK(out.size() == 10 + sum);
}

TEST_CASE("adasyn with equal difficulty is uniform") {
  // Symmetric layout: each minority point has the same share of majority
  // neighbors.
  Dataset maj(1), min(1);
  for (double v : {-1.0, 11.0}) maj.add(std::vector<double>{v}, Label::negative);
  for (double v : {0.0, 10.0}) min.add(std::vector<double>{v}, Label::positive);
  const auto alloc = adasyn_allocation(make_partition(maj, min), 6, 1);
  CHECK(alloc == std::vector<std::size_t>{3, 3});
}

TEST_CASE("tomek links") {
  Dataset maj(2), min(2);
  maj.add(std::vector<double>{0, 0}, Label::negative);
  maj.add(std::vector<double>{50, 50}, Label::negative);
  maj.add(std::vector<double>{51, 50}, Label::negative);
  min.add(std::vector<double>{1, 0}, Label::positive);
  min.add(std::vector<double>{-50, -50}, Label::positive);
  min.add(std::vector<double>{-51, -50}, Label::positive);
  const auto p = make_partition(maj, min);
  const auto links = find_tomek_links(p);
  REQUIRE(links.size() == 1);
  CHECK(links[0] == std::pair<std::size_t, std::size_t>{0, 0});
  const auto out = tomek_links(p);
  CHECK(out.size() == 5);
  CHECK(out.count(Label::negative) == 2);

  const auto sep = blobs(50, 20, 10.0, 3);
  CHECK(find_tomek_links(sep).empty());
  CHECK(tomek_links(sep) == sep.combined());
}

TEST_CASE("random undersampling") {
  const auto p = blobs(30, 10, 1.0, 4);
  RandomSource rng(5);
  CHECK(random_under(p, 0, rng) == p.majority);
  const auto parity = random_under(p, 20, rng);
  CHECK(parity.size() == 10);
  CHECK_THROWS_AS(random_under(p, 30, rng), Error);
  const auto keep = random_keep_indices(10, 4, rng);
  CHECK(keep.size() == 6);
  CHECK(std::is_sorted(keep.begin(), keep.end()));
}

TEST_CASE("apply_sampler reaches the target ratio") {
  const auto p = blobs(80, 20, 1.0, 6);
  RandomSource rng(7);
  SamplerSpec spec;
  for (auto m : {SamplerMethod::smote, SamplerMethod::borderline_smote}) {
    spec.method = m;
    const auto out = apply_sampler(spec, p, rng);
    CHECK(out.count(Label::negative) == 80);
    CHECK(out.count(Label::positive) == 80);
  }
  spec.method = SamplerMethod::random_under;
  auto out = apply_sampler(spec, p, rng);
  CHECK(out.count(Label::negative) == 20);
  CHECK(out.count(Label::positive) == 20);
  spec.target_ratio = 2.0;
  spec.method = SamplerMethod::smote;
  out = apply_sampler(spec, p, rng);
  CHECK(out.count(Label::positive) == 40);
  spec.target_ratio = 0.5;
  CHECK_THROWS_AS(apply_sampler(spec, p, rng), Error);
}

}  // TEST_SUITE
