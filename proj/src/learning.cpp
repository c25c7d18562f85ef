#include "lpc/learning.hpp"

#include <algorithm>
#include <cmath>

#include "lpc/errors.hpp"
#include "lpc/numeric.hpp"

namespace lpc {
namespace {

void check_interval(const PatternTable& table, const UncertaintyInterval& interval) {
  const auto m = static_cast<std::size_t>(table.m());
  if (interval.a.size() != m || interval.b.size() != m)
    throw UsageError("learning: interval dimension does not match the pattern table");
  for (std::size_t i = 0; i < m; ++i)
    if (interval.a[i] > interval.b[i])
      throw UsageError("learning: interval has a > b");
}

// Rows are built from the stored one-hot column indices; each touches only
// 2|S|+1 of the 2m+1 variables.
void add_subset_rows(LinearProgram& lp, const PatternTable& table, bool split_alpha_beta) {
  const auto m = static_cast<std::size_t>(table.m());
  const std::size_t width = split_alpha_beta ? 2 * m + 1 : m + 1;
  const auto subsets = nonempty_label_subsets(table.num_labels());
  lp.rows.reserve(table.size() * subsets.size());
  lp.rhs.reserve(table.size() * subsets.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (const auto& subset : subsets) {
      std::vector<double> row(width, 0.0);
      for (int y : subset) {
        const auto col = static_cast<std::size_t>(table.column(i, y));
        row[col] += 1.0;
        if (split_alpha_beta) row[m + col] -= 1.0;
      }
      row[width - 1] = static_cast<double>(subset.size());  // gamma
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(1.0);
    }
  }
}

}  // namespace

LinearProgram build_learning_lp(const PatternTable& table, const UncertaintyInterval& interval) {
  check_interval(table, interval);
  const auto m = static_cast<std::size_t>(table.m());
  LinearProgram lp;
  lp.objective.resize(2 * m + 1);
  for (std::size_t j = 0; j < m; ++j) {
    lp.objective[j] = interval.a[j];
    lp.objective[m + j] = -interval.b[j];
  }
  lp.objective[2 * m] = 1.0;  // gamma
  lp.nonneg.assign(2 * m + 1, true);
  lp.nonneg[2 * m] = false;
  add_subset_rows(lp, table, true);
  return lp;
}

LinearProgram build_learning_lp_point(const PatternTable& table, std::span<const double> tau) {
  if (tau.size() != static_cast<std::size_t>(table.m()))
    throw UsageError("learning: tau dimension does not match the pattern table");
  const auto m = static_cast<std::size_t>(table.m());
  LinearProgram lp;
  lp.objective.assign(tau.begin(), tau.end());
  lp.objective.push_back(1.0);  // gamma
  lp.nonneg.assign(m + 1, false);
  add_subset_rows(lp, table, false);
  return lp;
}

DualSolution solve_learning(const PatternTable& table, const UncertaintyInterval& interval) {
  check_interval(table, interval);
  const auto m = static_cast<std::size_t>(table.m());
  DualSolution out;

  if (interval.is_point()) {
    auto lp = build_learning_lp_point(table, interval.tau_n);
    auto sol = solve(lp);
    if (sol.status == LpStatus::Unbounded)
      throw EmptyUncertaintySet("no distribution matches the expectation point estimate");
    if (!sol.optimal()) throw NumericError("learning LP infeasible (internal)");
    out.lambda.assign(sol.point.begin(), sol.point.begin() + static_cast<std::ptrdiff_t>(m));
    out.gamma = sol.point[m];
    out.alpha.resize(m);
    out.beta.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      out.alpha[j] = std::max(out.lambda[j], 0.0);
      out.beta[j] = std::max(-out.lambda[j], 0.0);
    }
    out.value = sol.value;
  } else {
    auto lp = build_learning_lp(table, interval);
    auto sol = solve(lp);
    if (sol.status == LpStatus::Unbounded)
      throw EmptyUncertaintySet("no distribution satisfies the expectation interval");
    if (!sol.optimal()) throw NumericError("learning LP infeasible (internal)");
    out.alpha.assign(sol.point.begin(), sol.point.begin() + static_cast<std::ptrdiff_t>(m));
    out.beta.assign(sol.point.begin() + static_cast<std::ptrdiff_t>(m),
                    sol.point.begin() + static_cast<std::ptrdiff_t>(2 * m));
    out.gamma = sol.point[2 * m];
    out.lambda.resize(m);
    for (std::size_t j = 0; j < m; ++j) out.lambda[j] = out.alpha[j] - out.beta[j];
    out.value = sol.value;
  }

  out.minimax_risk = 1.0 - out.value;
  if (out.minimax_risk < -1e-9 || out.minimax_risk > 1.0 + 1e-9)
    throw NumericError("learning: minimax risk outside [0, 1]");
  out.minimax_risk = std::clamp(out.minimax_risk, 0.0, 1.0);

  // constraint residual check: per pattern, the clipped scores must sum <= 1
  for (std::size_t i = 0; i < table.size(); ++i) {
    double total = 0.0;
    for (int y = 0; y < table.num_labels(); ++y) {
      double score = out.lambda[static_cast<std::size_t>(table.column(i, y))] + out.gamma;
      total += std::max(score, 0.0);
    }
    if (total > 1.0 + 1e-8)
      throw NumericError("learning: dual solution violates the norm constraint");
  }
  return out;
}

LpcModel train(GeneratingFunction gf, const UncertaintyInterval& interval, PatternMode mode,
               const LabeledDataset& data) {
  PatternTable table = mode == PatternMode::Exact ? gf.default_patterns(data)
                                                  : gf.observed_patterns(data);
  auto dual = solve_learning(table, interval);
  int dim = data.num_features();
  return LpcModel{std::move(dual), interval,  std::move(gf), std::move(table),
                  mode,            dim,       data.label_names()};
}

}  // namespace lpc
