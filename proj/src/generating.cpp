#include "lpc/generating.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lpc/errors.hpp"

namespace lpc {

std::int64_t tuple_index(std::span<const int> tuple, int num_labels) {
  if (num_labels < 1) throw UsageError("tuple_index: num_labels must be >= 1");
  std::int64_t idx = 0;
  for (int component : tuple) {
    if (component < 0 || component >= num_labels)
      throw UsageError("tuple_index: component out of range");
    idx = idx * num_labels + component;
  }
  return idx;
}

std::vector<int> index_tuple(std::int64_t index, int num_labels, int length) {
  if (index < 0) throw UsageError("index_tuple: negative index");
  std::vector<int> tuple(static_cast<std::size_t>(length));
  for (int j = length - 1; j >= 0; --j) {
    tuple[static_cast<std::size_t>(j)] = static_cast<int>(index % num_labels);
    index /= num_labels;
  }
  if (index != 0) throw UsageError("index_tuple: index out of range");
  return tuple;
}

std::int64_t phi_dimension(int num_labels, int k) {
  if (num_labels < 1) throw UsageError("phi_dimension: num_labels must be >= 1");
  if (k < 0) throw UsageError("phi_dimension: k must be >= 0");
  std::int64_t m = 1;
  for (int i = 0; i <= k; ++i) {
    m *= num_labels;
    if (m > (std::int64_t{1} << 40))
      throw UsageError("phi_dimension: |Y|^(k+1) too large; reduce k or the label count");
  }
  return m;
}

PatternTable::PatternTable(int num_labels, int k, std::vector<std::vector<int>> patterns)
    : num_labels_(num_labels), k_(k), patterns_(std::move(patterns)) {
  m_ = phi_dimension(num_labels, k);
  if (patterns_.empty()) throw UsageError("pattern table: at least one pattern required");
  std::map<std::vector<int>, std::size_t> seen;
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    const auto& p = patterns_[i];
    if (static_cast<int>(p.size()) != k) throw UsageError("pattern table: pattern length != k");
    for (int y : p)
      if (y < 0 || y >= num_labels) throw UsageError("pattern table: component out of range");
    if (!seen.emplace(p, i).second) throw UsageError("pattern table: duplicate pattern");
  }
}

PatternTable PatternTable::full_enumeration(int num_labels, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= num_labels;
  std::vector<std::vector<int>> patterns;
  patterns.reserve(static_cast<std::size_t>(r));
  for (std::int64_t idx = 0; idx < r; ++idx)
    patterns.push_back(index_tuple(idx, num_labels, k));
  return PatternTable(num_labels, k, std::move(patterns));
}

PatternTable PatternTable::from_patterns(int num_labels, int k,
                                         std::vector<std::vector<int>> patterns) {
  return PatternTable(num_labels, k, std::move(patterns));
}

std::int64_t PatternTable::column(std::size_t pattern_idx, int label) const {
  const auto& p = patterns_[pattern_idx];
  std::int64_t idx = label;
  for (int component : p) idx = idx * num_labels_ + component;
  return idx;
}

std::vector<std::vector<double>> PatternTable::pattern_matrix(std::size_t pattern_idx) const {
  std::vector<std::vector<double>> mat(static_cast<std::size_t>(num_labels_),
                                       std::vector<double>(static_cast<std::size_t>(m_), 0.0));
  for (int y = 0; y < num_labels_; ++y)
    mat[static_cast<std::size_t>(y)][static_cast<std::size_t>(column(pattern_idx, y))] = 1.0;
  return mat;
}

std::optional<std::size_t> PatternTable::find(std::span<const int> pattern) const {
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    const auto& p = patterns_[i];
    if (std::equal(p.begin(), p.end(), pattern.begin(), pattern.end())) return i;
  }
  return std::nullopt;
}

GeneratingFunction::GeneratingFunction(int num_labels, std::vector<BaseClassifier> classifiers)
    : num_labels_(num_labels), classifiers_(std::move(classifiers)) {
  if (num_labels_ < 2) throw UsageError("generating function: need at least 2 labels");
  for (const auto& c : classifiers_)
    if (c.num_labels() > num_labels_)
      throw UsageError("generating function: classifier label space exceeds |Y|");
  m_ = phi_dimension(num_labels_, k());
}

std::vector<int> GeneratingFunction::pattern_of(std::span<const double> x) const {
  std::vector<int> pattern;
  pattern.reserve(classifiers_.size());
  for (const auto& c : classifiers_) pattern.push_back(c.predict(x));
  return pattern;
}

std::int64_t GeneratingFunction::phi_index(std::span<const double> x, int y) const {
  if (y < 0 || y >= num_labels_) throw UsageError("phi: label out of range");
  std::int64_t idx = y;
  for (const auto& c : classifiers_) idx = idx * num_labels_ + c.predict(x);
  return idx;
}

std::vector<double> GeneratingFunction::phi_dense(std::span<const double> x, int y) const {
  std::vector<double> v(static_cast<std::size_t>(m_), 0.0);
  v[static_cast<std::size_t>(phi_index(x, y))] = 1.0;
  return v;
}

double GeneratingFunction::range_norm2() const {
  return std::sqrt(static_cast<double>(m_));
}

PatternTable GeneratingFunction::observed_patterns(const LabeledDataset& data) const {
  std::vector<std::vector<int>> patterns;
  std::map<std::vector<int>, bool> seen;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto p = pattern_of(data.row(i));
    if (seen.emplace(p, true).second) patterns.push_back(std::move(p));
  }
  return PatternTable::from_patterns(num_labels_, k(), std::move(patterns));
}

PatternTable GeneratingFunction::enumerated_patterns() const {
  return PatternTable::full_enumeration(num_labels_, k());
}

PatternTable GeneratingFunction::default_patterns(const LabeledDataset& data) const {
  std::int64_t r = 1;
  bool small = true;
  for (int i = 0; i < k(); ++i) {
    r *= num_labels_;
    if (r > kEnumerationCap) {
      small = false;
      break;
    }
  }
  return small ? enumerated_patterns() : observed_patterns(data);
}

}  // namespace lpc
