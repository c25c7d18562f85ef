#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lpc/classifiers.hpp"
#include "lpc/dataset.hpp"

namespace lpc {

// Zero-based lexicographic index of a tuple with components in
// {0,...,num_labels-1}: sum of component_j * num_labels^(len-1-j).
std::int64_t tuple_index(std::span<const int> tuple, int num_labels);
std::vector<int> index_tuple(std::int64_t index, int num_labels, int length);

// Distinct base-classifier output tuples together with their index matrices.
// The matrix for pattern i is |Y| x m with row y carrying a single 1 at
// column tuple_index((y, pattern_i)); only that column index is stored.
class PatternTable {
 public:
  static PatternTable full_enumeration(int num_labels, int k);
  static PatternTable from_patterns(int num_labels, int k, std::vector<std::vector<int>> patterns);

  int num_labels() const { return num_labels_; }
  int k() const { return k_; }
  std::int64_t m() const { return m_; }
  std::size_t size() const { return patterns_.size(); }  // r
  const std::vector<std::vector<int>>& patterns() const { return patterns_; }

  // column of the single 1 in row `label` of pattern i's matrix
  std::int64_t column(std::size_t pattern_idx, int label) const;

  // dense |Y| x m matrix, for small cases and tests
  std::vector<std::vector<double>> pattern_matrix(std::size_t pattern_idx) const;

  std::optional<std::size_t> find(std::span<const int> pattern) const;

 private:
  PatternTable(int num_labels, int k, std::vector<std::vector<int>> patterns);
  int num_labels_ = 0;
  int k_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::vector<int>> patterns_;
};

// m = num_labels^(k+1); throws UsageError when this would overflow the
// practical LP budget.
std::int64_t phi_dimension(int num_labels, int k);

// Indicator generating function: maps (x, y) to the one-hot vector marking
// the tuple (y, h_1(x), ..., h_k(x)). Every component has range 1: each can
// attain 0 and 1 somewhere on the full feature space, so the range vector is
// all ones and its L2 norm is sqrt(m).
class GeneratingFunction {
 public:
  GeneratingFunction(int num_labels, std::vector<BaseClassifier> classifiers);

  int num_labels() const { return num_labels_; }
  int k() const { return static_cast<int>(classifiers_.size()); }
  std::int64_t m() const { return m_; }
  const std::vector<BaseClassifier>& classifiers() const { return classifiers_; }

  std::vector<int> pattern_of(std::span<const double> x) const;
  std::int64_t phi_index(std::span<const double> x, int y) const;
  std::vector<double> phi_dense(std::span<const double> x, int y) const;

  double range_component(std::int64_t) const { return 1.0; }
  double range_norm2() const;

  // Deduplicated patterns over the dataset's feature rows, first-occurrence
  // order.
  PatternTable observed_patterns(const LabeledDataset& data) const;
  PatternTable enumerated_patterns() const;

  // Full enumeration while |Y|^k stays small, observed patterns otherwise.
  static constexpr std::int64_t kEnumerationCap = 4096;
  PatternTable default_patterns(const LabeledDataset& data) const;

 private:
  int num_labels_ = 0;
  std::int64_t m_ = 0;
  std::vector<BaseClassifier> classifiers_;
};

}  // namespace lpc
