#include "lpc/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "lpc/errors.hpp"
#include "lpc/prediction.hpp"
#include "lpc/rng.hpp"

namespace lpc {
namespace {

void check_rule_size(const PatternTable& table, std::span<const double> q) {
  if (q.size() != table.size() * static_cast<std::size_t>(table.num_labels()))
    throw UsageError("bounds: rule/q size does not match the pattern table");
}

// reverse map: for each phi component, the (pattern, label) cells hitting it
std::vector<std::vector<std::size_t>> column_members(const PatternTable& table) {
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(table.m()));
  const int labels = table.num_labels();
  for (std::size_t i = 0; i < table.size(); ++i)
    for (int y = 0; y < labels; ++y)
      members[static_cast<std::size_t>(table.column(i, y))].push_back(
          i * static_cast<std::size_t>(labels) + static_cast<std::size_t>(y));
  return members;
}

// Expectation rows a <= Phi p <= b plus total mass 1; cells live on the
// pattern x label grid. Components no cell can reach are checked directly
// and skipped.
void add_uncertainty_rows(LinearProgram& lp, const PatternTable& table,
                          const UncertaintyInterval& interval, std::size_t width,
                          const std::vector<std::vector<std::size_t>>& members) {
  const std::size_t cells = table.size() * static_cast<std::size_t>(table.num_labels());
  {
    std::vector<double> row(width, 0.0);
    for (std::size_t c = 0; c < cells; ++c) row[c] = 1.0;
    lp.rows.push_back(row);
    lp.rhs.push_back(1.0);
    for (std::size_t c = 0; c < cells; ++c) row[c] = -1.0;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(-1.0);
  }
  for (std::size_t j = 0; j < members.size(); ++j) {
    if (members[j].empty()) {
      if (interval.a[j] > 1e-12 || interval.b[j] < -1e-12)
        throw EmptyUncertaintySet("expectation constraint on an unreachable component");
      continue;
    }
    std::vector<double> row(width, 0.0);
    for (std::size_t c : members[j]) row[c] = 1.0;
    lp.rows.push_back(row);
    lp.rhs.push_back(interval.b[j]);
    for (std::size_t c : members[j]) row[c] = -1.0;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(-interval.a[j]);
  }
}

}  // namespace

double kappa(const PatternTable& table, const UncertaintyInterval& interval,
             std::span<const double> q) {
  check_rule_size(table, q);
  const auto m = static_cast<std::size_t>(table.m());
  if (interval.a.size() != m) throw UsageError("kappa: interval dimension mismatch");
  for (double v : q)
    if (!std::isfinite(v)) throw UsageError("kappa: non-finite q");

  LinearProgram lp;
  lp.objective.resize(2 * m + 1);
  for (std::size_t j = 0; j < m; ++j) {
    lp.objective[j] = interval.a[j];
    lp.objective[m + j] = -interval.b[j];
  }
  lp.objective[2 * m] = 1.0;
  lp.nonneg.assign(2 * m + 1, true);
  lp.nonneg[2 * m] = false;

  const int labels = table.num_labels();
  lp.rows.reserve(table.size() * static_cast<std::size_t>(labels));
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (int y = 0; y < labels; ++y) {
      std::vector<double> row(2 * m + 1, 0.0);
      const auto col = static_cast<std::size_t>(table.column(i, y));
      row[col] = 1.0;
      row[m + col] = -1.0;
      row[2 * m] = 1.0;
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(q[i * static_cast<std::size_t>(labels) + static_cast<std::size_t>(y)]);
    }
  }

  auto sol = solve(lp);
  if (sol.status == LpStatus::Unbounded)
    throw EmptyUncertaintySet("uncertainty set is empty (kappa LP unbounded)");
  if (!sol.optimal()) throw NumericError("kappa LP infeasible (internal)");
  return sol.value;
}

double lower_bound(const LpcModel& model) {
  auto h = rule_matrix(model.dual, model.patterns);
  std::vector<double> neg(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) neg[i] = -h[i];
  return 1.0 + kappa(model.patterns, model.interval, neg);
}

RiskSandwich risk_sandwich(const LpcModel& model) {
  RiskSandwich s;
  s.upper = model.minimax_risk();
  s.lower = lower_bound(model);
  if (s.lower > s.upper + 1e-8)
    throw NumericError("risk sandwich inverted: lower bound exceeds minimax risk");
  s.lower = std::clamp(s.lower, 0.0, 1.0);
  s.upper = std::clamp(s.upper, 0.0, 1.0);
  s.lower = std::min(s.lower, s.upper);
  return s;
}

PrimalOptimum primal_linear_min(const PatternTable& table, const UncertaintyInterval& interval,
                                std::span<const double> q) {
  check_rule_size(table, q);
  if (interval.a.size() != static_cast<std::size_t>(table.m()))
    throw UsageError("primal: interval dimension mismatch");
  const std::size_t cells = table.size() * static_cast<std::size_t>(table.num_labels());

  LinearProgram lp;
  lp.objective.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) lp.objective[c] = -q[c];  // maximize -p.q
  lp.nonneg.assign(cells, true);
  auto members = column_members(table);
  add_uncertainty_rows(lp, table, interval, cells, members);

  auto sol = solve(lp);
  if (sol.status == LpStatus::Infeasible)
    throw EmptyUncertaintySet("uncertainty set is empty (primal infeasible)");
  if (!sol.optimal()) throw NumericError("primal LP unbounded (internal)");
  return PrimalOptimum{-sol.value, std::move(sol.point)};
}

std::vector<double> worst_case_distribution(const PatternTable& table,
                                            const UncertaintyInterval& interval,
                                            std::span<const double> rule, LossDirection direction) {
  check_rule_size(table, rule);
  std::vector<double> q(rule.begin(), rule.end());
  if (direction == LossDirection::MinLoss)
    for (double& v : q) v = -v;
  return primal_linear_min(table, interval, q).distribution;
}

std::vector<double> worst_case_distribution(const LpcModel& model, LossDirection direction) {
  auto h = rule_matrix(model.dual, model.patterns);
  return worst_case_distribution(model.patterns, model.interval, h, direction);
}

double primal_minimax_value(const PatternTable& table, const UncertaintyInterval& interval) {
  if (interval.a.size() != static_cast<std::size_t>(table.m()))
    throw UsageError("primal: interval dimension mismatch");
  const std::size_t labels = static_cast<std::size_t>(table.num_labels());
  const std::size_t cells = table.size() * labels;
  const std::size_t width = cells + table.size();  // p cells + per-pattern max vars

  LinearProgram lp;
  lp.objective.assign(width, 0.0);
  for (std::size_t i = 0; i < table.size(); ++i) lp.objective[cells + i] = -1.0;
  lp.nonneg.assign(width, true);
  for (std::size_t i = 0; i < table.size(); ++i) lp.nonneg[cells + i] = false;

  // p(i, y) <= t_i
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t y = 0; y < labels; ++y) {
      std::vector<double> row(width, 0.0);
      row[i * labels + y] = 1.0;
      row[cells + i] = -1.0;
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(0.0);
    }
  }
  auto members = column_members(table);
  add_uncertainty_rows(lp, table, interval, width, members);

  auto sol = solve(lp);
  if (sol.status == LpStatus::Infeasible)
    throw EmptyUncertaintySet("uncertainty set is empty (primal infeasible)");
  if (!sol.optimal()) throw NumericError("primal minimax LP unbounded (internal)");
  return -sol.value;
}

double deviation_term(std::int64_t m, std::int64_t n, double delta, double c_norm2,
                      double m_estimate) {
  if (m < 1 || n < 1) throw UsageError("deviation_term: m and n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw UsageError("deviation_term: delta must be in (0,1)");
  if (c_norm2 < 0.0 || m_estimate < 0.0)
    throw UsageError("deviation_term: norms must be nonnegative");
  double factor = std::sqrt((std::log(static_cast<double>(m)) + std::log(2.0 / delta)) / 2.0);
  return m_estimate * c_norm2 * factor / std::sqrt(static_cast<double>(n));
}

double estimate_m_norm(const PatternTable& table, int num_samples, std::uint64_t seed,
                       std::span<const std::vector<double>> extra_points) {
  const std::size_t cells = table.size() * static_cast<std::size_t>(table.num_labels());
  const auto m = static_cast<std::size_t>(table.m());
  Rng rng(seed);

  auto lambda_norm_at = [&](std::span<const double> a) -> double {
    auto dual = solve_learning(table, point_interval(a));
    double sq = 0.0;
    for (double v : dual.lambda) sq += v * v;
    return std::sqrt(sq);
  };

  double best = 0.0;
  for (const auto& point : extra_points) {
    if (point.size() != m) throw UsageError("estimate_m_norm: extra point dimension mismatch");
    try {
      best = std::max(best, lambda_norm_at(point));
    } catch (const EmptyUncertaintySet&) {
      // a supplied expectation no distribution matches; skip it
    }
  }
  for (int it = 0; it < num_samples; ++it) {
    auto weights = random_distribution(cells, rng);
    std::vector<double> a(m, 0.0);
    for (std::size_t i = 0; i < table.size(); ++i)
      for (int y = 0; y < table.num_labels(); ++y)
        a[static_cast<std::size_t>(table.column(i, y))] +=
            weights[i * static_cast<std::size_t>(table.num_labels()) + static_cast<std::size_t>(y)];
    best = std::max(best, lambda_norm_at(a));
  }
  return best;
}

}  // namespace lpc
