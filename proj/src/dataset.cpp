#include "resmote/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "resmote/errors.hpp"

namespace resmote {

Dataset::Dataset(std::size_t dimension, std::vector<std::string> feature_names,
                 std::string source_tag)
    : dimension_(dimension),
      feature_names_(std::move(feature_names)),
      source_tag_(std::move(source_tag)) {
  if (dimension_ == 0) throw Error("dataset dimension must be at least 1");
  if (!feature_names_.empty() && feature_names_.size() != dimension_)
    throw Error("feature name count " + std::to_string(feature_names_.size()) +
                " does not match dimension " + std::to_string(dimension_));
}

void Dataset::add(std::span<const double> x, Label y) {
  if (x.size() != dimension_)
    throw Error("sample dimension " + std::to_string(x.size()) + " does not match dataset dimension " +
                std::to_string(dimension_));
  for (double v : x)
    if (!std::isfinite(v)) throw Error("sample contains a non-finite value");
  values_.insert(values_.end(), x.begin(), x.end());
  labels_.push_back(y);
}

void Dataset::append(const Dataset& other) {
  if (other.empty()) return;
  if (other.dimension_ != dimension_)
    throw Error("cannot append dataset of dimension " + std::to_string(other.dimension_) +
                " to dimension " + std::to_string(dimension_));
  values_.insert(values_.end(), other.values_.begin(), other.values_.end());
  labels_.insert(labels_.end(), other.labels_.begin(), other.labels_.end());
}

void Dataset::reserve(std::size_t n) {
  values_.reserve(n * dimension_);
  labels_.reserve(n);
}

std::size_t Dataset::count(Label y) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), y));
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out = *this;
  out.values_.clear();
  out.labels_.clear();
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= size()) throw Error("subset index " + std::to_string(i) + " out of range");
    auto r = row(i);
    out.values_.insert(out.values_.end(), r.begin(), r.end());
    out.labels_.push_back(labels_[i]);
  }
  return out;
}

Dataset Dataset::filter(Label y) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < size(); ++i)
    if (labels_[i] == y) idx.push_back(i);
  return subset(idx);
}

Dataset Dataset::relabeled(Label y) const {
  Dataset out = *this;
  std::fill(out.labels_.begin(), out.labels_.end(), y);
  return out;
}

Dataset concat(const Dataset& a, const Dataset& b) {
  Dataset out = a;
  out.append(b);
  return out;
}

Dataset with_minority_positive(const Dataset& data, bool* swapped) {
  const bool swap = data.count(Label::positive) > data.count(Label::negative);
  if (swapped) *swapped = swap;
  if (!swap) return data;
  Dataset out(data.dimension(), data.feature_names(), data.source_tag() + " [labels swapped]");
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out.add(data.row(i), flipped(data.label(i)));
  return out;
}

ClassPartition partition_by_class(const Dataset& data) {
  const std::size_t pos = data.count(Label::positive);
  const std::size_t neg = data.count(Label::negative);
  if (pos == 0 || neg == 0) throw Error("partition_by_class: dataset contains a single class");
  ClassPartition part;
  if (pos > neg) {
    part.swapped = true;
    part.majority = data.filter(Label::positive).relabeled(Label::negative);
    part.minority = data.filter(Label::negative).relabeled(Label::positive);
    part.majority.set_source_tag(data.source_tag() + " [labels swapped]");
    part.minority.set_source_tag(data.source_tag() + " [labels swapped]");
  } else {
    part.majority = data.filter(Label::negative);
    part.minority = data.filter(Label::positive);
  }
  return part;
}

double imbalance_ratio(const ClassPartition& partition) {
  if (partition.minority.empty()) throw Error("imbalance_ratio: empty minority class");
  return static_cast<double>(partition.majority.size()) /
         static_cast<double>(partition.minority.size());
}

namespace {

std::vector<std::size_t> indices_of(const Dataset& data, Label y) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (data.label(i) == y) idx.push_back(i);
  return idx;
}

void shuffle(std::vector<std::size_t>& v, RandomSource& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.uniform_index(i)]);
}

std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

}  // namespace

Split stratified_split(const Dataset& data, const SplitSpec& spec, RandomSource& rng) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw Error("train_fraction must lie in (0, 1)");
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  if (spec.stratified) {
    for (Label y : {Label::negative, Label::positive}) {
      auto idx = indices_of(data, y);
      if (idx.size() < 2)
        throw Error("stratified_split: class " + std::string(y == Label::positive ? "positive" : "negative") +
                    " has fewer than 2 samples");
      shuffle(idx, rng);
      const std::size_t n_train = std::min(idx.size(), round_half_up(spec.train_fraction * idx.size()));
      train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + n_train);
      test_idx.insert(test_idx.end(), idx.begin() + n_train, idx.end());
    }
  } else {
    if (data.size() < 2) throw Error("split: need at least 2 samples");
    std::vector<std::size_t> idx(data.size());
    std::iota(idx.begin(), idx.end(), 0);
    shuffle(idx, rng);
    const std::size_t n_train = std::min(idx.size(), round_half_up(spec.train_fraction * idx.size()));
    train_idx.assign(idx.begin(), idx.begin() + n_train);
    test_idx.assign(idx.begin() + n_train, idx.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  Split out{data.subset(train_idx), data.subset(test_idx), std::move(train_idx), std::move(test_idx)};
  return out;
}

std::vector<std::size_t> stratified_folds(const Dataset& data, std::size_t folds, RandomSource& rng) {
  if (folds < 2) throw Error("stratified_folds: need at least 2 folds");
  std::vector<std::size_t> assignment(data.size(), 0);
  for (Label y : {Label::negative, Label::positive}) {
    auto idx = indices_of(data, y);
    if (idx.size() < folds)
      throw Error("stratified_folds: a class has fewer samples than folds");
    shuffle(idx, rng);
    for (std::size_t j = 0; j < idx.size(); ++j) assignment[idx[j]] = j % folds;
  }
  return assignment;
}

Dataset make_gaussian_blobs(std::size_t n_majority, std::size_t n_minority, std::size_t dimension,
                            double separation, std::uint64_t seed) {
  if (n_majority == 0 || n_minority == 0) throw Error("make_gaussian_blobs: class counts must be >= 1");
  if (dimension == 0) throw Error("make_gaussian_blobs: dimension must be >= 1");
  if (!(separation >= 0.0) || !std::isfinite(separation))
    throw Error("make_gaussian_blobs: separation must be a finite value >= 0");
  RandomSource rng(seed);
  Dataset out(dimension, {}, "gaussian_blobs(seed=" + std::to_string(seed) + ")");
  out.reserve(n_majority + n_minority);
  FeatureVector x(dimension);
  for (std::size_t i = 0; i < n_majority; ++i) {
    for (auto& v : x) v = rng.normal();
    out.add(x, Label::negative);
  }
  for (std::size_t i = 0; i < n_minority; ++i) {
    for (auto& v : x) v = rng.normal();
    x[0] += separation;
    out.add(x, Label::positive);
  }
  return out;
}

}  // namespace resmote
