#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpc/learning.hpp"
#include "lpc/rng.hpp"

namespace lpc {

struct LabelDistribution {
  std::vector<double> probs;
};

// Label probabilities at x: clipped scores (lambda[phi(x,y)] + gamma)^+ with
// the leftover mass spread uniformly. When constraints were enforced for the
// pattern of x the clipped scores sum to <= 1; a never-constrained pattern
// (possible in approx mode only) can exceed 1, in which case the scores are
// renormalized instead.
LabelDistribution rule_probabilities(const LpcModel& model, std::span<const double> x);

// Same rule evaluated on a pattern from the model's table.
LabelDistribution rule_for_pattern(const DualSolution& dual, const PatternTable& table,
                                   std::size_t pattern_idx);

// Full rule as a pattern x label matrix (row-major, r x |Y|).
std::vector<double> rule_matrix(const DualSolution& dual, const PatternTable& table);

int sample_label(const LabelDistribution& dist, Rng& rng);
int predict_label(const LpcModel& model, std::span<const double> x, Rng& rng);
int predict_argmax(const LpcModel& model, std::span<const double> x);

// 1 - sum over (pattern, label) of p * h, for h and p given as r x |Y|
// row-major matrices on the same pattern table.
double expected_loss(std::span<const double> rule, std::span<const double> distribution);

// Mean of 1 - h(x_i, y_i): the sampling-free expected error under the rule.
double empirical_error_exact(const LpcModel& model, const LabeledDataset& data);
double empirical_error_argmax(const LpcModel& model, const LabeledDataset& data);
// Misclassification frequency with labels drawn from the rule; `draws` passes
// over the dataset are averaged.
double empirical_error_randomized(const LpcModel& model, const LabeledDataset& data,
                                  std::uint64_t seed, int draws = 1);

}  // namespace lpc
