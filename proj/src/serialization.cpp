#include "resmote/serialization.hpp"

#include <cmath>
#include <limits>

#include "resmote/errors.hpp"

namespace resmote {

using nlohmann::json;

json encode_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double decode_real(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ParseError("expected a number or \"inf\", got \"" + s + "\"");
  }
  return j.get<double>();
}

json dataset_to_json(const Dataset& data) {
  json samples = json::array();
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto r = data.row(i);
    samples.push_back({{"x", std::vector<double>(r.begin(), r.end())},
                       {"y", data.label(i) == Label::positive ? "pos" : "neg"}});
  }
  return {{"dimension", data.dimension()}, {"feature_names", data.feature_names()}, {"samples", samples}};
}

Dataset dataset_from_json(const json& j) {
  try {
    Dataset data(j.at("dimension").get<std::size_t>(),
                 j.contains("feature_names") ? j.at("feature_names").get<std::vector<std::string>>()
                                             : std::vector<std::string>{});
    for (const auto& s : j.at("samples")) {
      const auto y = s.at("y").get<std::string>();
      if (y != "pos" && y != "neg") throw ParseError("dataset json: label must be \"pos\" or \"neg\"");
      data.add(s.at("x").get<std::vector<double>>(), y == "pos" ? Label::positive : Label::negative);
    }
    return data;
  } catch (const json::exception& e) {
    throw ParseError(std::string("dataset json: ") + e.what());
  }
}

json gnb_to_json(const GaussianNBModel& m) {
  return {{"priors", m.priors},
          {"means", {m.means[0], m.means[1]}},
          {"variances", {m.variances[0], m.variances[1]}},
          {"smoothing", m.smoothing}};
}

GaussianNBModel gnb_from_json(const json& j) {
  GaussianNBModel m;
  m.priors = j.at("priors").get<std::array<double, 2>>();
  for (std::size_t c = 0; c < 2; ++c) {
    m.means[c] = j.at("means").at(c).get<std::vector<double>>();
    m.variances[c] = j.at("variances").at(c).get<std::vector<double>>();
  }
  m.smoothing = j.at("smoothing").get<double>();
  return m;
}

json synthetic_to_json(const SyntheticSample& s) {
  return {{"x", s.x},
          {"seed_index", s.seed_index},
          {"neighbor_index", s.neighbor_index},
          {"seed", s.seed},
          {"neighbor", s.neighbor},
          {"alpha", s.alpha},
          {"dist_min", s.dist_min},
          {"dist_maj", s.dist_maj},
          {"entropy", s.entropy}};
}

json metric_set_to_json(const MetricSet& m) {
  return {{"accuracy", m.accuracy}, {"precision", m.precision},   {"recall", m.recall},
          {"f1", m.f1},             {"g_means", m.g_means},       {"g_means_spec", m.g_means_spec}};
}

json metric_report_to_json(const MetricReport& r) {
  json j{{"confusion", {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"fn", r.confusion.fn}, {"tn", r.confusion.tn}}},
         {"positive", metric_set_to_json(r.positive)},
         {"macro", metric_set_to_json(r.macro)},
         {"undefined", r.undefined}};
  j["auc"] = std::isnan(r.auc) ? json(nullptr) : json(r.auc);
  return j;
}

json replication_summary_to_json(const ReplicationSummary& s) {
  return {{"metric", s.metric_name}, {"mean", s.mean}, {"std_dev", s.std_dev}, {"values", s.values}};
}

json overlap_report_to_json(const OverlapReport& r) {
  json a = json::array();
  json b = json::array();
  for (double v : r.ratios_a) a.push_back(encode_real(v));
  for (double v : r.ratios_b) b.push_back(encode_real(v));
  return {{"ratios_a", a},
          {"ratios_b", b},
          {"count_a_smaller", r.count_a_smaller},
          {"count_b_smaller", r.count_b_smaller},
          {"ties", r.ties}};
}

OverlapReport overlap_report_from_json(const json& j) {
  OverlapReport r;
  for (const auto& v : j.at("ratios_a")) r.ratios_a.push_back(decode_real(v));
  for (const auto& v : j.at("ratios_b")) r.ratios_b.push_back(decode_real(v));
  r.count_a_smaller = j.at("count_a_smaller").get<std::size_t>();
  r.count_b_smaller = j.at("count_b_smaller").get<std::size_t>();
  r.ties = j.at("ties").get<std::size_t>();
  return r;
}

}  // namespace resmote
