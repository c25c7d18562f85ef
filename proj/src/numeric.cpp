#include "lpc/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "lpc/errors.hpp"

namespace lpc {

GroupedVector make_grouped(std::vector<double> values, std::size_t group_size) {
  if (group_size < 1) throw UsageError("group_size must be >= 1");
  if (values.size() % group_size != 0)
    throw UsageError("grouped vector length is not a multiple of group_size");
  GroupedVector g;
  g.group_size = group_size;
  g.group_count = values.size() / group_size;
  g.values = std::move(values);
  return g;
}

std::vector<double> positive_part(std::span<const double> v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i], 0.0);
  return out;
}

double mixed_norm_1_inf(const GroupedVector& v) {
  double best = 0.0;
  for (std::size_t g = 0; g < v.group_count; ++g) {
    double sum = 0.0;
    for (std::size_t j = 0; j < v.group_size; ++j)
      sum += std::abs(v.values[g * v.group_size + j]);
    best = std::max(best, sum);
  }
  return best;
}

double mixed_norm_inf_1(const GroupedVector& v) {
  double total = 0.0;
  for (std::size_t g = 0; g < v.group_count; ++g) {
    double gmax = 0.0;
    for (std::size_t j = 0; j < v.group_size; ++j)
      gmax = std::max(gmax, std::abs(v.values[g * v.group_size + j]));
    total += gmax;
  }
  return total;
}

std::vector<std::vector<int>> nonempty_label_subsets(int num_labels) {
  if (num_labels < 1 || num_labels > 20)
    throw UsageError("nonempty_label_subsets: num_labels must be in [1, 20]");
  std::vector<std::vector<int>> subsets;
  subsets.reserve((std::size_t{1} << num_labels) - 1);
  for (unsigned mask = 1; mask < (1u << num_labels); ++mask) {
    std::vector<int> s;
    for (int y = 0; y < num_labels; ++y)
      if (mask & (1u << y)) s.push_back(y);
    subsets.push_back(std::move(s));
  }
  return subsets;
}

}  // namespace lpc
