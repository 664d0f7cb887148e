#include "resmote/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "resmote/errors.hpp"
#include "resmote/samplers.hpp"
#include "resmote/serialization.hpp"

namespace resmote {

namespace {

constexpr Method all_methods[] = {Method::none,         Method::smote,      Method::borderline_smote,
                                  Method::adasyn,       Method::tomek_links, Method::random_under,
                                  Method::smoteboost,   Method::rusboost,   Method::re_smoteboost};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::none: return "none";
    case Method::smote: return "smote";
    case Method::borderline_smote: return "borderline_smote";
    case Method::adasyn: return "adasyn";
    case Method::tomek_links: return "tomek_links";
    case Method::random_under: return "random_under";
    case Method::smoteboost: return "smoteboost";
    case Method::rusboost: return "rusboost";
    case Method::re_smoteboost: return "re_smoteboost";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (auto m : all_methods)
    if (to_string(m) == name) return m;
  throw Error("unknown method \"" + std::string(name) + "\"");
}

bool is_boosting(Method m) {
  return m == Method::none || m == Method::smoteboost || m == Method::rusboost || m == Method::re_smoteboost;
}

void ExperimentConfig::validate() const {
  if (k && *k == 0) throw Error("config: k must be >= 1");
  if (k && k_fraction) throw Error("config: give either k or k_fraction, not both");
  if (k_fraction && !(*k_fraction > 0.0 && *k_fraction < 1.0)) throw Error("config: k_fraction must lie in (0, 1)");
  if (k_neighbors == 0) throw Error("config: k_neighbors must be >= 1");
  if (t_max && *t_max == 0) throw Error("config: t_max must be >= 1");
  if (!(learning_rate > 0.0)) throw Error("config: learning_rate must be positive");
  if (!(candidate_multiplier >= 1.0)) throw Error("config: candidate_multiplier must be >= 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw Error("config: test_fraction must lie in (0, 1)");
  if (cv_folds) {
    if (*cv_folds < 2) throw Error("config: cv folds must be >= 2");
  } else if (replications < 2) {
    throw Error("config: replications must be >= 2");
  }
  if (learner.knn_neighbors == 0) throw Error("config: knn neighbors must be >= 1");
  if (!(learner.gnb_var_smoothing >= 0.0)) throw Error("config: var_smoothing must be non-negative");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j{{"method", to_string(method)},
                   {"base", to_string(base)},
                   {"knn_neighbors", learner.knn_neighbors},
                   {"gnb_var_smoothing", learner.gnb_var_smoothing},
                   {"k_neighbors", k_neighbors},
                   {"learning_rate", learning_rate},
                   {"fresh_pools", fresh_pools},
                   {"candidate_multiplier", candidate_multiplier},
                   {"spin_cap", spin_cap},
                   {"test_fraction", test_fraction},
                   {"stratified", stratified},
                   {"replications", cv_folds ? *cv_folds : replications},
                   {"seed", seed}};
  j["k"] = k ? nlohmann::json(*k) : nlohmann::json(nullptr);
  j["k_fraction"] = k_fraction ? nlohmann::json(*k_fraction) : nlohmann::json(nullptr);
  j["t_max"] = t_max ? nlohmann::json(*t_max) : nlohmann::json("heuristic");
  j["cv_folds"] = cv_folds ? nlohmann::json(*cv_folds) : nlohmann::json(nullptr);
  return j;
}

const ReplicationSummary& ExperimentReport::summary(std::string_view name) const {
  for (const auto& s : summaries)
    if (s.metric_name == name) return s;
  throw Error("report: no summary named \"" + std::string(name) + "\"");
}

std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t i) { return mix_seed(base_seed, i); }

namespace {

std::size_t resolve_k(const ExperimentConfig& cfg, std::size_t n_maj, std::size_t n_min) {
  if (cfg.k) return *cfg.k;
  if (cfg.k_fraction)
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(*cfg.k_fraction * n_maj + 0.5)));
  return default_k(n_maj, n_min);
}

Rebalancer rebalancer_for(Method m) {
  switch (m) {
    case Method::smoteboost: return Rebalancer::smote;
    case Method::rusboost: return Rebalancer::random_under;
    case Method::re_smoteboost: return Rebalancer::double_pruning;
    default: return Rebalancer::none;
  }
}

SamplerMethod sampler_for(Method m) {
  switch (m) {
    case Method::smote: return SamplerMethod::smote;
    case Method::borderline_smote: return SamplerMethod::borderline_smote;
    case Method::adasyn: return SamplerMethod::adasyn;
    case Method::tomek_links: return SamplerMethod::tomek_links;
    case Method::random_under: return SamplerMethod::random_under;
    default: throw Error("method is not a data-level sampler");
  }
}

}  // namespace

ReplicationResult run_replication(const Dataset& data, const ExperimentConfig& cfg, std::size_t index,
                                  const std::vector<std::size_t>* fold_assignment) {
  ReplicationResult res;
  res.index = index;
  res.seed = replication_seed(cfg.seed, index);
  RandomSource rng(res.seed);

  auto t0 = Clock::now();
  Split split;
  if (fold_assignment) {
    for (std::size_t i = 0; i < data.size(); ++i)
      ((*fold_assignment)[i] == index ? split.test_indices : split.train_indices).push_back(i);
    split.train = data.subset(split.train_indices);
    split.test = data.subset(split.test_indices);
  } else {
    split = stratified_split(data, {1.0 - cfg.test_fraction, cfg.stratified, res.seed}, rng);
  }
  res.train_indices = split.train_indices;
  res.test_indices = split.test_indices;
  res.times.split = seconds_since(t0);

  const Dataset& train = split.train;
  res.train_majority = train.count(Label::negative);
  res.train_minority = train.count(Label::positive);
  if (res.train_majority == 0 || res.train_minority == 0)
    throw Error("replication " + std::to_string(index) + ": training split contains a single class");
  res.k = resolve_k(cfg, res.train_majority, res.train_minority);

  const auto factory = make_learner_factory(cfg.base, cfg.learner);
  std::function<double(std::span<const double>)> score;
  std::function<Label(std::span<const double>)> predict;
  std::shared_ptr<BaseLearner> single;
  std::shared_ptr<BoostedEnsemble> ensemble;

  if (is_boosting(cfg.method)) {
    BoostConfig bc;
    bc.k = res.k;
    bc.t_max = cfg.t_max ? *cfg.t_max : heuristic_tmax(res.train_majority, res.train_minority, res.k);
    bc.learning_rate = cfg.learning_rate;
    bc.rebalancer = rebalancer_for(cfg.method);
    bc.fresh_pools = cfg.fresh_pools;
    bc.pruning.k_neighbors = cfg.k_neighbors;
    bc.pruning.candidate_multiplier = cfg.candidate_multiplier;
    bc.pruning.spin_cap = cfg.spin_cap;
    res.t_max = bc.t_max;
    BoostTrace trace;
    t0 = Clock::now();
    ensemble = std::make_shared<BoostedEnsemble>(fit_boosted(train, bc, factory, rng, &trace));
    res.times.fit = seconds_since(t0);
    res.rounds = ensemble->size();
    res.log = ensemble->training_log();
    res.resampled_majority = trace.carried_majority;
    res.resampled_minority = trace.carried_minority;
    if (cfg.keep_first_resampled && index == 0) {
      res.resampled = trace.final_balanced;
      res.synthetics = trace.synthetics;
    }
    score = [ensemble](std::span<const double> x) { return ensemble->decision_function(x); };
    predict = [ensemble](std::span<const double> x) { return ensemble->predict(x); };
  } else {
    t0 = Clock::now();
    SamplerSpec spec;
    spec.method = sampler_for(cfg.method);
    spec.k_neighbors = cfg.k_neighbors;
    const Dataset resampled = apply_sampler(spec, partition_by_class(train), rng);
    res.times.resample = seconds_since(t0);
    res.resampled_majority = resampled.count(Label::negative);
    res.resampled_minority = resampled.count(Label::positive);
    if (cfg.keep_first_resampled && index == 0) res.resampled = resampled;

    t0 = Clock::now();
    single = factory();
    const std::vector<double> w(resampled.size(), 1.0 / static_cast<double>(resampled.size()));
    single->fit(resampled, w);
    res.times.fit = seconds_since(t0);
    score = [single](std::span<const double> x) { return single->score(x); };
    predict = [single](std::span<const double> x) { return single->predict(x); };
  }

  t0 = Clock::now();
  const Dataset& test = split.test;
  std::vector<Label> predicted(test.size());
  std::vector<double> scores(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) {
    predicted[i] = predict(test.row(i));
    scores[i] = score(test.row(i));
  }
  res.metrics = binary_metrics(confusion(predicted, test.labels()));
  if (test.count(Label::positive) > 0 && test.count(Label::negative) > 0)
    res.metrics.auc = roc_auc(scores, test.labels());
  res.times.evaluate = seconds_since(t0);
  return res;
}

std::vector<std::string> summary_metric_names() {
  std::vector<std::string> names;
  for (const char* variant : {"positive", "macro"})
    for (const char* metric : {"accuracy", "precision", "recall", "f1", "g_means", "g_means_spec"})
      names.push_back(std::string(variant) + "." + metric);
  names.emplace_back("auc");
  return names;
}

namespace {

double metric_value(const MetricReport& r, const std::string& name) {
  if (name == "auc") return r.auc;
  const auto dot = name.find('.');
  const MetricSet& s = name.substr(0, dot) == "positive" ? r.positive : r.macro;
  const auto metric = name.substr(dot + 1);
  if (metric == "accuracy") return s.accuracy;
  if (metric == "precision") return s.precision;
  if (metric == "recall") return s.recall;
  if (metric == "f1") return s.f1;
  if (metric == "g_means") return s.g_means;
  return s.g_means_spec;
}

std::size_t worker_count(const ExperimentConfig& cfg, std::size_t jobs) {
  std::size_t n = cfg.threads;
  if (n == 0) {
    if (const char* env = std::getenv("REBALANCE_THREADS")) n = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
    if (n == 0) n = 1;
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

}  // namespace

ExperimentReport run_experiment(const Dataset& input, const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  ExperimentReport report;
  report.config = cfg;
  report.data_tag = input.source_tag();
  const Dataset data = with_minority_positive(input, &report.labels_swapped);

  std::vector<std::size_t> folds;
  const std::size_t jobs = cfg.cv_folds ? *cfg.cv_folds : cfg.replications;
  if (cfg.cv_folds) {
    RandomSource fold_rng(cfg.seed);
    folds = stratified_folds(data, *cfg.cv_folds, fold_rng);
  }

  report.replications.resize(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs; i = next++) {
      try {
        report.replications[i] = run_replication(data, cfg, i, cfg.cv_folds ? &folds : nullptr);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs;
      }
    }
  };
  const std::size_t n_workers = worker_count(cfg, jobs);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& name : summary_metric_names()) {
    std::vector<double> values;
    for (const auto& r : report.replications) {
      const double v = metric_value(r.metrics, name);
      if (!std::isnan(v)) values.push_back(v);
    }
    if (values.size() >= 2) report.summaries.push_back(replication_stats(values, name));
  }
  report.total_seconds = seconds_since(start);
  return report;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  using nlohmann::json;
  json reps = json::array();
  json timing = json::array();
  for (const auto& r : report.replications) {
    json log = json::array();
    for (const auto& it : r.log)
      log.push_back({{"round", it.round},         {"error", it.error},       {"alpha", it.alpha},
                     {"discarded", it.discarded}, {"n_majority", it.n_majority}, {"n_minority", it.n_minority},
                     {"removed", it.removed},     {"added", it.added},       {"spins", it.spins},
                     {"accepted", it.accepted},   {"rejected", it.rejected}, {"filtered_out", it.filtered_out}});
    std::size_t accepted = 0, spins = 0, filtered = 0;
    for (const auto& it : r.log) {
      accepted += it.accepted;
      spins += it.spins;
      filtered += it.filtered_out;
    }
    reps.push_back({{"index", r.index},
                    {"seed", r.seed},
                    {"metrics", metric_report_to_json(r.metrics)},
                    {"audit",
                     {{"test_indices", r.test_indices},
                      {"train_size", r.train_indices.size()},
                      {"train_majority", r.train_majority},
                      {"train_minority", r.train_minority},
                      {"resampled_majority", r.resampled_majority},
                      {"resampled_minority", r.resampled_minority},
                      {"k", r.k},
                      {"t_max", r.t_max},
                      {"rounds", r.rounds},
                      {"acceptance_rate", spins ? static_cast<double>(accepted) / static_cast<double>(spins) : 0.0},
                      {"noise_filter_discarded", filtered},
                      {"iterations", log}}}});
    timing.push_back({{"index", r.index},
                      {"split", r.times.split},
                      {"resample", r.times.resample},
                      {"fit", r.times.fit},
                      {"evaluate", r.times.evaluate}});
  }
  json summaries = json::object();
  for (const auto& s : report.summaries) summaries[s.metric_name] = replication_summary_to_json(s);
  return {{"config", report.config.to_json()},
          {"data", {{"source", report.data_tag}, {"labels_swapped", report.labels_swapped}}},
          {"replication_count", report.replications.size()},
          {"summary", summaries},
          {"replications", reps},
          {"timing", {{"total_seconds", report.total_seconds}, {"replications", timing}}}};
}

std::string replications_csv(const ExperimentReport& report) {
  const auto names = summary_metric_names();
  std::string out = "replication,seed,tp,fp,fn,tn";
  for (const auto& n : names) out += "," + n;
  out += "\n";
  char buf[64];
  for (const auto& r : report.replications) {
    out += std::to_string(r.index) + "," + std::to_string(r.seed) + "," + std::to_string(r.metrics.confusion.tp) + "," +
           std::to_string(r.metrics.confusion.fp) + "," + std::to_string(r.metrics.confusion.fn) + "," +
           std::to_string(r.metrics.confusion.tn);
    for (const auto& n : names) {
      std::snprintf(buf, sizeof buf, "%.17g", metric_value(r.metrics, n));
      out += ",";
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace resmote
