#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lpc {

// Feature matrix plus contiguous integer labels. label_names keeps the
// original label values so CSV round-trips are possible.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(std::vector<double> features, int num_features,
                 std::vector<int> labels, std::vector<std::string> label_names);

  std::size_t size() const { return labels_.empty() ? num_rows_ : labels_.size(); }
  int num_features() const { return num_features_; }
  int num_labels() const { return static_cast<int>(label_names_.size()); }
  bool has_labels() const { return !labels_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * static_cast<std::size_t>(num_features_),
            static_cast<std::size_t>(num_features_)};
  }
  int label(std::size_t i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& features() const { return features_; }
  const std::vector<std::string>& label_names() const { return label_names_; }

  std::vector<std::size_t> class_counts() const;

  // Subset with the given row indices, preserving label mapping.
  LabeledDataset subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<double> features_;
  int num_features_ = 0;
  std::size_t num_rows_ = 0;
  std::vector<int> labels_;
  std::vector<std::string> label_names_;
};

// Gaussian-mixture model: every class is a 0.5/0.5 mixture of two spherical
// Gaussians with common variance. Defaults reproduce the three-class,
// 4-dimensional benchmark configuration.
struct SyntheticSpec {
  std::vector<std::vector<std::vector<double>>> means;  // [class][component][dim]
  double variance = 0.49;                               // sigma = 0.7
  std::vector<double> priors;                           // uniform when empty

  static SyntheticSpec benchmark();
  int num_classes() const { return static_cast<int>(means.size()); }
  int dim() const { return static_cast<int>(means[0][0].size()); }
};

LabeledDataset synth_generate(const SyntheticSpec& spec, std::size_t n, std::uint64_t seed);
LabeledDataset synth_generate(std::size_t n, std::uint64_t seed);  // benchmark spec

struct BayesRiskEstimate {
  double risk = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo error of the exact posterior-argmax rule under `spec`.
BayesRiskEstimate bayes_risk_mc(const SyntheticSpec& spec, std::size_t num_samples,
                                std::uint64_t seed);

// Column selector: by header name or 0-based index.
struct ColumnRef {
  std::optional<std::string> name;
  std::optional<int> index;

  static ColumnRef by_name(std::string n) { return {std::move(n), std::nullopt}; }
  static ColumnRef by_index(int i) { return {std::nullopt, i}; }
};

// Strict numeric CSV: comma-separated, '.' decimal, no quoting, no missing
// values. Labels are remapped to 0..|Y|-1 in first-occurrence order. Pass an
// empty optional as label column to load unlabeled feature rows.
LabeledDataset load_csv(const std::string& path, const std::optional<ColumnRef>& label_column,
                        bool has_header);

struct FoldAssignment {
  std::vector<std::vector<std::size_t>> folds;
  int k_used = 0;
  bool clamped = false;  // k was reduced to the smallest class count
};

// Stratified k folds: per class, samples are canonically ordered, shuffled
// with the seed, and dealt round-robin, so per-fold class counts differ by at
// most one and the assignment does not depend on within-class input order.
FoldAssignment stratified_kfold(const LabeledDataset& data, int k, std::uint64_t seed);

}  // namespace lpc
