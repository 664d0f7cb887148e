// resmote: data generation, replicated experiments and overlap comparison.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "resmote/dataset.hpp"
#include "resmote/errors.hpp"
#include "resmote/experiment.hpp"
#include "resmote/metrics.hpp"
#include "resmote/serialization.hpp"

namespace {

using resmote::Error;

struct LabelArgs {
  std::string column = "label";
  std::string positive = "1";
};

void add_label_options(CLI::App* cmd, LabelArgs& args) {
  cmd->add_option("--label-column", args.column, "Label column: header name or zero-based index")
      ->capture_default_str();
  cmd->add_option("--positive-label", args.positive, "Label value of the positive class")->capture_default_str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open \"" + path + "\" for writing");
  out << text;
  if (!out.flush()) throw Error("write to \"" + path + "\" failed");
}

struct GenArgs {
  std::size_t n_majority = 0;
  std::size_t n_minority = 0;
  std::size_t dimension = 2;
  double separation = 2.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  const auto data = resmote::make_gaussian_blobs(a.n_majority, a.n_minority, a.dimension, a.separation, a.seed);
  write_text(a.out, resmote::to_csv(data));
  const double ir = resmote::imbalance_ratio(resmote::partition_by_class(data));
  std::printf("wrote %zu rows to %s, IR %.4f\n", data.size(), a.out.c_str(), ir);
  return 0;
}

struct RunArgs {
  std::string data;
  LabelArgs labels;
  std::string method = "re_smoteboost";
  std::string base = "stump";
  std::optional<std::size_t> k;
  std::optional<double> k_fraction;
  std::size_t k_neighbors = 5;
  std::string t_max = "heuristic";
  double test_fraction = 0.2;
  std::size_t replications = 100;
  std::optional<std::size_t> cv;
  std::uint64_t seed = 0;
  std::string out;
  std::string csv;
  bool fresh_pools = false;
  double learning_rate = 1.0;
  bool no_stratify = false;
  std::string dump_resampled;
  std::size_t threads = 0;
  std::size_t knn_neighbors = 10;
  double gnb_var_smoothing = 1.0;
  double candidate_multiplier = 2.0;
  std::size_t spin_cap = 0;
};

resmote::ExperimentConfig to_config(const RunArgs& a) {
  resmote::ExperimentConfig cfg;
  cfg.method = resmote::parse_method(a.method);
  cfg.base = resmote::parse_learner_kind(a.base);
  cfg.learner.knn_neighbors = a.knn_neighbors;
  cfg.learner.gnb_var_smoothing = a.gnb_var_smoothing;
  cfg.k = a.k;
  cfg.k_fraction = a.k_fraction;
  cfg.k_neighbors = a.k_neighbors;
  if (a.t_max != "heuristic") {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(a.t_max, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != a.t_max.size() || a.t_max.empty() || a.t_max[0] == '-')
      throw Error("--t-max expects a positive integer or \"heuristic\", got \"" + a.t_max + "\"");
    cfg.t_max = static_cast<std::size_t>(v);
  }
  cfg.learning_rate = a.learning_rate;
  cfg.fresh_pools = a.fresh_pools;
  cfg.candidate_multiplier = a.candidate_multiplier;
  cfg.spin_cap = a.spin_cap;
  cfg.test_fraction = a.test_fraction;
  cfg.stratified = !a.no_stratify;
  cfg.replications = a.replications;
  cfg.cv_folds = a.cv;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  cfg.keep_first_resampled = !a.dump_resampled.empty();
  cfg.validate();
  return cfg;
}

int cmd_run(const RunArgs& a) {
  const auto cfg = to_config(a);
  const auto data = resmote::load_csv(a.data, a.labels.column, a.labels.positive);
  const auto report = resmote::run_experiment(data, cfg);

  write_text(a.out, report_to_json(report).dump(2) + "\n");
  if (!a.csv.empty()) write_text(a.csv, resmote::replications_csv(report));
  if (!a.dump_resampled.empty()) {
    const auto& first = report.replications.front();
    if (first.resampled) write_text(a.dump_resampled, resmote::to_csv(*first.resampled));
    nlohmann::json sidecar{{"replication", first.index}, {"seed", first.seed}};
    nlohmann::json synth = nlohmann::json::array();
    for (const auto& s : first.synthetics) synth.push_back(resmote::synthetic_to_json(s));
    sidecar["synthetics"] = synth;
    write_text(a.dump_resampled + ".provenance.json", sidecar.dump(2) + "\n");
  }

  for (const auto& r : report.replications)
    std::printf("replication %zu: accuracy %.4f recall %.4f precision %.4f f1 %.4f\n", r.index,
                r.metrics.positive.accuracy, r.metrics.positive.recall, r.metrics.positive.precision,
                r.metrics.positive.f1);
  for (const char* name : {"positive.accuracy", "positive.precision", "positive.recall", "positive.f1",
                           "positive.g_means", "auc"}) {
    for (const auto& s : report.summaries)
      if (s.metric_name == name) std::printf("%-20s mean %.4f std %.4f\n", name, s.mean, s.std_dev);
  }
  return 0;
}

struct OverlapArgs {
  std::string a;
  std::string b;
  std::string out;
  LabelArgs labels;
};

int cmd_compare_overlap(const OverlapArgs& a) {
  const auto da = resmote::load_csv(a.a, a.labels.column, a.labels.positive);
  const auto db = resmote::load_csv(a.b, a.labels.column, a.labels.positive);
  const auto rep = resmote::overlap_feature_count(da, db);
  const std::string text = resmote::overlap_report_to_json(rep).dump(2) + "\n";
  if (a.out.empty())
    std::cout << text;
  else
    write_text(a.out, text);
  return 0;
}

std::string one_line(std::string s) {
  for (auto& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-guided double pruning for imbalanced binary classification"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write a two-blob Gaussian dataset as CSV");
  g->add_option("--n-maj", gen.n_majority, "Majority (negative) sample count")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  g->add_option("--n-min", gen.n_minority, "Minority (positive) sample count")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  g->add_option("--dim", gen.dimension, "Feature count")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  g->add_option("--sep", gen.separation, "Shift of the minority mean along feature 0")->capture_default_str();
  g->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  g->add_option("--out", gen.out, "Output CSV path")->required();

  RunArgs run;
  auto* r = app.add_subcommand("run", "Replicated train/test experiment");
  r->add_option("--data", run.data, "Input CSV")->required();
  add_label_options(r, run.labels);
  r->add_option("--method", run.method,
                "none|smote|borderline_smote|adasyn|tomek_links|random_under|smoteboost|rusboost|re_smoteboost")
      ->capture_default_str();
  r->add_option("--base", run.base, "Base learner: stump|gnb|knn")->capture_default_str();
  auto* k_opt = r->add_option("--k", run.k, "Samples pruned per round (count)");
  r->add_option("--k-fraction", run.k_fraction, "k as a fraction of the training majority size")->excludes(k_opt);
  r->add_option("--k-neighbors", run.k_neighbors, "SMOTE neighborhood size")->capture_default_str();
  r->add_option("--t-max", run.t_max, "Boosting rounds, or \"heuristic\"")->capture_default_str();
  r->add_option("--learning-rate", run.learning_rate, "Shrinkage on learner weights")->capture_default_str();
  r->add_flag("--fresh-pools", run.fresh_pools, "Rebalance the original pools every round instead of carrying them");
  r->add_option("--candidate-multiplier", run.candidate_multiplier, "Accepted candidates per synthetic slot")
      ->capture_default_str();
  r->add_option("--spin-cap", run.spin_cap, "Roulette spin limit per round (0 = 50 * k)")->capture_default_str();
  r->add_option("--knn-neighbors", run.knn_neighbors, "k of the knn base learner")->capture_default_str();
  r->add_option("--gnb-var-smoothing", run.gnb_var_smoothing, "Variance smoothing of the gnb base learner")
      ->capture_default_str();
  r->add_option("--test-fraction", run.test_fraction, "Held-out share per replication")->capture_default_str();
  auto* reps = r->add_option("--replications", run.replications, "Random-split replications")->capture_default_str();
  r->add_option("--cv", run.cv, "Stratified k-fold instead of random splits")->excludes(reps);
  r->add_flag("--no-stratify", run.no_stratify, "Plain random split");
  r->add_option("--seed", run.seed, "Base seed")->capture_default_str();
  r->add_option("--threads", run.threads, "Worker threads (0 = REBALANCE_THREADS or 1)")->capture_default_str();
  r->add_option("--out", run.out, "Report JSON path")->required();
  r->add_option("--csv", run.csv, "Per-replication metrics CSV path");
  r->add_option("--dump-resampled", run.dump_resampled,
                "Write replication 0's resampled training set here, plus <path>.provenance.json");

  OverlapArgs overlap;
  auto* o = app.add_subcommand("compare-overlap", "Per-feature Fisher ratios of two datasets");
  o->add_option("--a", overlap.a, "First CSV")->required();
  o->add_option("--b", overlap.b, "Second CSV")->required();
  o->add_option("--out", overlap.out, "Report JSON path (stdout when omitted)");
  add_label_options(o, overlap.labels);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << one_line(e.what()) << "\n";
    return 2;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*r) return cmd_run(run);
    return cmd_compare_overlap(overlap);
  } catch (const std::exception& e) {
    std::cerr << "error: " << one_line(e.what()) << "\n";
    return 1;
  }
}
