#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpc/learning.hpp"

namespace lpc {

// kappa(q) = max a.alpha - b.beta + gamma over alpha, beta >= 0 and gamma
// free, subject to one row per (pattern, label): lambda-score + gamma <= q.
// By duality this equals min over the uncertainty set of p.q. q is an
// r x |Y| row-major matrix on the table's patterns. Throws
// EmptyUncertaintySet when the LP is unbounded.
double kappa(const PatternTable& table, const UncertaintyInterval& interval,
             std::span<const double> q);

// L = 1 + kappa(-h) for the model's own rule: the smallest expected loss the
// rule can incur against any distribution in the uncertainty set.
double lower_bound(const LpcModel& model);

struct RiskSandwich {
  double lower = 0.0;
  double upper = 1.0;
};

RiskSandwich risk_sandwich(const LpcModel& model);

struct PrimalOptimum {
  double value = 0.0;
  std::vector<double> distribution;  // r x |Y| row-major, a distribution over (pattern, label)
};

// min over the uncertainty set of p.q, solved on the primal side; the
// returned optimizer is a feasible distribution attaining the value. Throws
// EmptyUncertaintySet on infeasibility.
PrimalOptimum primal_linear_min(const PatternTable& table, const UncertaintyInterval& interval,
                                std::span<const double> q);

enum class LossDirection { MaxLoss, MinLoss };

// Distribution in the uncertainty set attaining 1 - kappa(h) (MaxLoss) or
// 1 + kappa(-h) (MinLoss) for the given rule.
std::vector<double> worst_case_distribution(const PatternTable& table,
                                            const UncertaintyInterval& interval,
                                            std::span<const double> rule, LossDirection direction);

// Same for the model's own rule on its pattern table.
std::vector<double> worst_case_distribution(const LpcModel& model, LossDirection direction);

// min over the uncertainty set of the (inf,1)-mixed norm of p, computed on
// the primal side with auxiliary per-pattern max variables. Equals 1 - R by
// strong duality; kept as an independent route for cross-checks.
double primal_minimax_value(const PatternTable& table, const UncertaintyInterval& interval);

// M * c_norm2 * sqrt((log m + log(2/delta)) / 2n): the finite-sample
// deviation term added to the minimax risk.
double deviation_term(std::int64_t m, std::int64_t n, double delta, double c_norm2,
                      double m_estimate);

// Heuristic lower estimate of the largest dual-coefficient norm over the
// convex hull of realizable generating-function values: samples hull points,
// solves the point-form LP at each, and keeps the running max of |lambda|_2.
// extra_points are additional expectation vectors to include (points whose
// uncertainty set is empty are skipped).
double estimate_m_norm(const PatternTable& table, int num_samples, std::uint64_t seed,
                       std::span<const std::vector<double>> extra_points = {});

}  // namespace lpc
