#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <set>

#include "resmote/errors.hpp"
#include "resmote/experiment.hpp"

using namespace resmote;

namespace {

nlohmann::json without_timing(nlohmann::json j) {
  j.erase("timing");
  return j;
}

ExperimentConfig small_config(Method m) {
  ExperimentConfig cfg;
  cfg.method = m;
  cfg.replications = 4;
  cfg.seed = 11;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("method names") {
  for (auto m : {Method::none, Method::smote, Method::borderline_smote, Method::adasyn, Method::tomek_links,
                 Method::random_under, Method::smoteboost, Method::rusboost, Method::re_smoteboost})
    CHECK(parse_method(to_string(m)) == m);
  CHECK(is_boosting(Method::none));
  CHECK_FALSE(is_boosting(Method::adasyn));
  CHECK_THROWS_AS(parse_method("easyensemble"), Error);
}

TEST_CASE("replication seeds are mixed per index") {
  CHECK(replication_seed(1, 0) == mix_seed(1, 0));
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < 100; ++i) seen.insert(replication_seed(5, i));
  CHECK(seen.size() == 100);
}

TEST_CASE("config validation") {
  auto cfg = small_config(Method::re_smoteboost);
  cfg.replications = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small_config(Method::re_smoteboost);
  cfg.test_fraction = 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small_config(Method::re_smoteboost);
  cfg.k = 3;
  cfg.k_fraction = 0.1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = small_config(Method::re_smoteboost);
  cfg.t_max = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("every method runs and reports L replications") {
  const auto data = make_gaussian_blobs(120, 30, 2, 2.0, 5);
  for (auto m : {Method::none, Method::smote, Method::borderline_smote, Method::adasyn, Method::tomek_links,
                 Method::random_under, Method::smoteboost, Method::rusboost, Method::re_smoteboost}) {
    CAPTURE(to_string(m));
    const auto report = run_experiment(data, small_config(m));
    CHECK(report.replications.size() == 4);
    CHECK(report.summary("positive.recall").values.size() == 4);
    for (const auto& r : report.replications) {
      CHECK(r.test_indices.size() == 30);
      CHECK(r.train_majority == 96);
      CHECK(r.train_minority == 24);
    }
  }
}

TEST_CASE("train and test indices are disjoint") {
  const auto data = make_gaussian_blobs(80, 20, 2, 2.0, 5);
  const auto r = run_replication(data, small_config(Method::re_smoteboost), 0);
  std::vector<std::size_t> both;
  std::set_intersection(r.train_indices.begin(), r.train_indices.end(), r.test_indices.begin(), r.test_indices.end(),
                        std::back_inserter(both));
  CHECK(both.empty());
  CHECK(r.train_indices.size() + r.test_indices.size() == 100);
}

TEST_CASE("heuristic rounds and default k") {
  const auto data = make_gaussian_blobs(500, 100, 2, 3.0, 5);
  const auto r = run_replication(data, small_config(Method::re_smoteboost), 0);
  CHECK(r.k == default_k(400, 80));
  CHECK(r.t_max == heuristic_tmax(400, 80, r.k));
  auto cfg = small_config(Method::re_smoteboost);
  cfg.k_fraction = 0.05;
  CHECK(run_replication(data, cfg, 0).k == 20);
  cfg.k_fraction.reset();
  cfg.t_max = 3;
  CHECK(run_replication(data, cfg, 0).t_max == 3);
}

TEST_CASE("separable blobs are easy for plain boosting") {
  const auto data = make_gaussian_blobs(200, 50, 2, 6.0, 9);
  auto cfg = small_config(Method::none);
  cfg.replications = 10;
  const auto report = run_experiment(data, cfg);
  CHECK(report.summary("positive.accuracy").mean > 0.95);
  CHECK(report.summary("auc").mean > 0.99);
}

TEST_CASE("report is deterministic apart from timing and independent of threads") {
  const auto data = make_gaussian_blobs(100, 25, 2, 1.5, 3);
  auto cfg = small_config(Method::re_smoteboost);
  const auto a = without_timing(report_to_json(run_experiment(data, cfg)));
  cfg.threads = 3;
  const auto b = without_timing(report_to_json(run_experiment(data, cfg)));
  CHECK(a.dump() == b.dump());
  CHECK(a.at("replication_count") == 4);
  CHECK(a.at("summary").contains("macro.f1"));
  CHECK(a.at("replications")[0].at("audit").contains("test_indices"));
}

TEST_CASE("cross-validation folds cover every sample once") {
  const auto data = make_gaussian_blobs(50, 20, 2, 2.0, 3);
  auto cfg = small_config(Method::smoteboost);
  cfg.cv_folds = 5;
  const auto report = run_experiment(data, cfg);
  REQUIRE(report.replications.size() == 5);
  std::vector<std::size_t> all;
  for (const auto& r : report.replications) all.insert(all.end(), r.test_indices.begin(), r.test_indices.end());
  std::sort(all.begin(), all.end());
  CHECK(all.size() == 70);
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("majority-positive input is canonicalized") {
  auto data = make_gaussian_blobs(30, 90, 2, 3.0, 2);
  const auto report = run_experiment(data, small_config(Method::re_smoteboost));
  CHECK(report.labels_swapped);
  CHECK(report.replications[0].train_minority == 24);
}

TEST_CASE("replication csv has one row per replication") {
  const auto data = make_gaussian_blobs(60, 20, 2, 2.0, 1);
  const auto csv = replications_csv(run_experiment(data, small_config(Method::smote)));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(csv.rfind("replication,seed,tp,fp,fn,tn,positive.accuracy", 0) == 0);
}

TEST_CASE("first resampled set is kept on request") {
  const auto data = make_gaussian_blobs(100, 20, 2, 1.0, 1);
  auto cfg = small_config(Method::re_smoteboost);
  cfg.keep_first_resampled = true;
  const auto report = run_experiment(data, cfg);
  REQUIRE(report.replications[0].resampled.has_value());
  CHECK_FALSE(report.replications[1].resampled.has_value());
  CHECK(report.replications[0].resampled->count(Label::positive) ==
        16 + report.replications[0].synthetics.size());
}

}  // TEST_SUITE
