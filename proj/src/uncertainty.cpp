#include "lpc/uncertainty.hpp"

#include <cmath>

#include "lpc/errors.hpp"

namespace lpc {

bool UncertaintyInterval::is_point() const {
  return a == tau_n && b == tau_n;
}

namespace {

UncertaintyInterval build_interval(std::span<const double> tau, std::int64_t n, double delta,
                                   std::vector<double> s) {
  UncertaintyInterval iv;
  iv.tau_n.assign(tau.begin(), tau.end());
  iv.s = std::move(s);
  iv.n = n;
  iv.delta = delta;
  const double root_n = std::sqrt(static_cast<double>(n));
  iv.a.resize(tau.size());
  iv.b.resize(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    double half = iv.s[i] / root_n;
    iv.a[i] = tau[i] - half;
    iv.b[i] = tau[i] + half;
  }
  return iv;
}

}  // namespace

UncertaintyInterval hoeffding_interval(std::span<const double> tau, std::int64_t n, double delta,
                                       std::span<const double> c) {
  if (n < 1) throw UsageError("hoeffding_interval: n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw UsageError("hoeffding_interval: delta must be in (0,1)");
  if (c.size() != tau.size()) throw UsageError("hoeffding_interval: range vector size mismatch");
  const double m = static_cast<double>(tau.size());
  const double factor = std::sqrt((std::log(m) + std::log(2.0 / delta)) / 2.0);
  std::vector<double> s(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (c[i] < 0.0) throw UsageError("hoeffding_interval: range component < 0");
    s[i] = c[i] * factor;
  }
  return build_interval(tau, n, delta, std::move(s));
}

UncertaintyInterval manual_s_interval(std::span<const double> tau, std::int64_t n, double s_value) {
  if (n < 1) throw UsageError("manual_s_interval: n must be >= 1");
  if (s_value < 0.0) throw UsageError("manual_s_interval: s must be >= 0");
  return build_interval(tau, n, 0.0, std::vector<double>(tau.size(), s_value));
}

UncertaintyInterval point_interval(std::span<const double> tau) {
  UncertaintyInterval iv;
  iv.tau_n.assign(tau.begin(), tau.end());
  iv.a = iv.tau_n;
  iv.b = iv.tau_n;
  iv.s.assign(tau.size(), 0.0);
  iv.n = 0;
  iv.delta = 0.0;
  return iv;
}

CvExpectation estimate_expectation_cv(std::span<const ClassifierConfig> configs,
                                      const LabeledDataset& data, int folds, std::uint64_t seed) {
  if (configs.empty()) throw UsageError("estimate_expectation_cv: no classifiers configured");
  if (folds < 2) throw UsageError("estimate_expectation_cv: folds must be >= 2");
  auto counts = data.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] < 2)
      throw DataError("estimate_expectation_cv: class " + std::to_string(c) +
                      " has fewer than 2 samples");
  }

  auto assignment = stratified_kfold(data, folds, seed);
  const int num_labels = data.num_labels();
  const std::int64_t m = phi_dimension(num_labels, static_cast<int>(configs.size()));

  std::vector<double> counts_phi(static_cast<std::size_t>(m), 0.0);
  for (std::size_t f = 0; f < assignment.folds.size(); ++f) {
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < assignment.folds.size(); ++g) {
      if (g == f) continue;
      train_idx.insert(train_idx.end(), assignment.folds[g].begin(), assignment.folds[g].end());
    }
    auto train = data.subset(train_idx);
    std::vector<BaseClassifier> fold_classifiers;
    fold_classifiers.reserve(configs.size());
    for (const auto& cfg : configs) fold_classifiers.push_back(BaseClassifier::fit(cfg, train));
    GeneratingFunction fold_gf(num_labels, std::move(fold_classifiers));
    for (std::size_t i : assignment.folds[f])
      counts_phi[static_cast<std::size_t>(fold_gf.phi_index(data.row(i), data.label(i)))] += 1.0;
  }
  for (auto& v : counts_phi) v /= static_cast<double>(data.size());

  std::vector<BaseClassifier> full;
  full.reserve(configs.size());
  for (const auto& cfg : configs) full.push_back(BaseClassifier::fit(cfg, data));
  return CvExpectation{GeneratingFunction(num_labels, std::move(full)), std::move(counts_phi),
                       assignment.k_used, assignment.clamped};
}

}  // namespace lpc
