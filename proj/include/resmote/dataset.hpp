#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "resmote/random.hpp"

namespace resmote {

using FeatureVector = std::vector<double>;

/// Binary class tag. The positive class is the minority class.
enum class Label : int { negative = -1, positive = 1 };

constexpr int signed_value(Label y) { return static_cast<int>(y); }
constexpr Label flipped(Label y) {
  return y == Label::positive ? Label::negative : Label::positive;
}
/// Strictly positive margins decode to positive; zero goes to negative.
constexpr Label decode_sign(double margin) {
  return margin > 0.0 ? Label::positive : Label::negative;
}

/// Row-major collection of feature vectors with binary labels.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::size_t dimension, std::vector<std::string> feature_names = {},
                   std::string source_tag = {});

  /// Appends one sample. Throws if the dimension differs or a value is not finite.
  void add(std::span<const double> x, Label y);
  void append(const Dataset& other);
  void reserve(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t dimension() const { return dimension_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dimension_, dimension_};
  }
  Label label(std::size_t i) const { return labels_[i]; }
  const std::vector<Label>& labels() const { return labels_; }
  const std::vector<double>& values() const { return values_; }

  std::size_t count(Label y) const;

  /// Samples at the given indices, in the given order.
  Dataset subset(std::span<const std::size_t> indices) const;
  /// All samples carrying label y, in original order.
  Dataset filter(Label y) const;
  /// Copy with every label replaced by y.
  Dataset relabeled(Label y) const;

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::string& source_tag() const { return source_tag_; }
  void set_source_tag(std::string tag) { source_tag_ = std::move(tag); }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.dimension_ == b.dimension_ && a.values_ == b.values_ && a.labels_ == b.labels_;
  }

 private:
  std::size_t dimension_ = 0;
  std::vector<double> values_;
  std::vector<Label> labels_;
  std::vector<std::string> feature_names_;
  std::string source_tag_;
};

/// Concatenation of two datasets with equal dimension.
Dataset concat(const Dataset& a, const Dataset& b);

/// Majority (negative) and minority (positive) halves of a dataset.
struct ClassPartition {
  Dataset majority;
  Dataset minority;
  bool swapped = false;

  /// Majority samples followed by minority samples.
  Dataset combined() const { return concat(majority, minority); }
};

/// Splits by label. When positives outnumber negatives the labels are flipped
/// so the minority is always positive; the flip is noted in source_tag.
ClassPartition partition_by_class(const Dataset& data);

/// The dataset with labels flipped if positives outnumber negatives.
Dataset with_minority_positive(const Dataset& data, bool* swapped = nullptr);

/// |majority| / |minority|.
double imbalance_ratio(const ClassPartition& partition);

struct SplitSpec {
  double train_fraction = 0.8;
  bool stratified = true;
  std::uint64_t seed = 0;
};

struct Split {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
};

/// Random train/test split. Stratified mode keeps
/// floor(train_fraction * n_c + 0.5) samples of each class c for training.
/// Both parts keep the source order.
Split stratified_split(const Dataset& data, const SplitSpec& spec, RandomSource& rng);

/// Stratified assignment of every sample to one of `folds` folds.
/// Returns the fold id for each sample.
std::vector<std::size_t> stratified_folds(const Dataset& data, std::size_t folds,
                                          RandomSource& rng);

/// Isotropic unit-variance Gaussian blobs: majority centred at the origin,
/// minority at (separation, 0, ..., 0). Majority rows come first.
Dataset make_gaussian_blobs(std::size_t n_majority, std::size_t n_minority, std::size_t dimension,
                            double separation, std::uint64_t seed);

// CSV ingestion and export ---------------------------------------------------

/// Reads a headered, comma-separated file. `label_column` is a header name or,
/// if no header matches, a zero-based column index. Cells equal to
/// `positive_label` become positive, all other label values negative.
Dataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                 const std::string& positive_label);
Dataset parse_csv(const std::string& text, const std::string& label_column,
                  const std::string& positive_label, const std::string& source_tag = {});

/// Writes features at 17 significant digits followed by a `label` column.
void save_csv(const Dataset& data, const std::filesystem::path& path,
              const std::string& positive_label = "1", const std::string& negative_label = "0");
std::string to_csv(const Dataset& data, const std::string& positive_label = "1",
                   const std::string& negative_label = "0");

}  // namespace resmote
