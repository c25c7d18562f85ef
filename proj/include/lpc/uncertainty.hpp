#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpc/generating.hpp"

namespace lpc {

// Componentwise expectation interval [a, b] around the estimate tau_n, with
// a = tau_n - s/sqrt(n) and b = tau_n + s/sqrt(n). delta is 0 when the
// half-width did not come from the concentration formula (point or manual-s
// intervals).
struct UncertaintyInterval {
  std::vector<double> tau_n;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> s;
  std::int64_t n = 0;
  double delta = 0.0;

  bool is_point() const;
};

// s_i = c_i * sqrt((log m + log(2/delta)) / 2), the union-bound Hoeffding
// half-width numerator.
UncertaintyInterval hoeffding_interval(std::span<const double> tau, std::int64_t n, double delta,
                                       std::span<const double> c);

// Manual override of s (one shared value for every component).
UncertaintyInterval manual_s_interval(std::span<const double> tau, std::int64_t n, double s_value);

// Degenerate interval a = b = tau.
UncertaintyInterval point_interval(std::span<const double> tau);

struct CvExpectation {
  GeneratingFunction gf;    // classifiers refit on the full dataset
  std::vector<double> tau;  // length m
  int folds_used = 0;
  bool folds_clamped = false;
};

// Stratified cross-fitting: for every fold, base classifiers are fitted on
// the complement and the generating function is evaluated on the held-out
// samples at their true labels; tau is the average of all n one-hot
// evaluations. The returned generating function carries classifiers refit on
// the full dataset for prediction-time use.
CvExpectation estimate_expectation_cv(std::span<const ClassifierConfig> configs,
                                      const LabeledDataset& data, int folds, std::uint64_t seed);

}  // namespace lpc
