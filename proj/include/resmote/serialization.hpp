#pragma once

#include <json.hpp>

#include "resmote/dataset.hpp"
#include "resmote/entropy.hpp"
#include "resmote/metrics.hpp"
#include "resmote/resampling.hpp"

namespace resmote {

/// Finite values as numbers; infinities as the strings "inf" / "-inf".
nlohmann::json encode_real(double v);
double decode_real(const nlohmann::json& j);

/// {"dimension", "feature_names", "samples": [{"x": [...], "y": "pos"|"neg"}]}
nlohmann::json dataset_to_json(const Dataset& data);
Dataset dataset_from_json(const nlohmann::json& j);

nlohmann::json gnb_to_json(const GaussianNBModel& model);
GaussianNBModel gnb_from_json(const nlohmann::json& j);

nlohmann::json synthetic_to_json(const SyntheticSample& s);

nlohmann::json metric_set_to_json(const MetricSet& m);
nlohmann::json metric_report_to_json(const MetricReport& r);
nlohmann::json replication_summary_to_json(const ReplicationSummary& s);
nlohmann::json overlap_report_to_json(const OverlapReport& r);
OverlapReport overlap_report_from_json(const nlohmann::json& j);

}  // namespace resmote
