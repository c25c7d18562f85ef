#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lpc {

// Vector indexed by (group, element) pairs, stored as group_count contiguous
// blocks of group_size entries. The mixed norms below treat the outer index
// as the feature pattern and the inner index as the label.
struct GroupedVector {
  std::vector<double> values;
  std::size_t group_size = 1;
  std::size_t group_count = 0;
};

// Throws UsageError unless values.size() == group_count * group_size.
GroupedVector make_grouped(std::vector<double> values, std::size_t group_size);

std::vector<double> positive_part(std::span<const double> v);

// max over groups of the within-group L1 norm.
double mixed_norm_1_inf(const GroupedVector& v);

// sum over groups of the within-group max absolute value.
double mixed_norm_inf_1(const GroupedVector& v);

// All nonempty subsets of {0,...,num_labels-1} as sorted label lists, ordered
// by ascending bitmask. Requires 1 <= num_labels <= 20: the count is
// 2^num_labels - 1, so larger label spaces must go through the approximate
// constraint-subset path instead.
std::vector<std::vector<int>> nonempty_label_subsets(int num_labels);

}  // namespace lpc
