// Shared test utilities: brute-force oracles and random instance generators.
// Everything here is independent of the solver paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "lpc/generating.hpp"
#include "lpc/linprog.hpp"
#include "lpc/rng.hpp"
#include "lpc/uncertainty.hpp"

namespace lpc::testing {

struct OracleResult {
  double value = 0.0;
  std::vector<double> point;
};

// Solve a d x d linear system by Gaussian elimination with partial pivoting.
// Returns nullopt for (near-)singular systems.
inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a,
                                                       std::vector<double> b) {
  const std::size_t d = b.size();
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-10) return std::nullopt;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < d; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Brute-force LP oracle: every vertex is the intersection of d active
// constraints drawn from the inequality rows and the nonnegativity bounds.
// Assumes the feasible set is pointed (callers add box constraints) and the
// optimum is attained. Returns nullopt when no feasible vertex exists.
inline std::optional<OracleResult> lp_vertex_oracle(const LinearProgram& lp) {
  const std::size_t d = lp.num_vars();
  std::vector<std::vector<double>> all_rows = lp.rows;
  std::vector<double> all_rhs = lp.rhs;
  for (std::size_t i = 0; i < d; ++i) {
    if (!lp.nonneg[i]) continue;
    std::vector<double> row(d, 0.0);
    row[i] = -1.0;  // -z_i <= 0
    all_rows.push_back(std::move(row));
    all_rhs.push_back(0.0);
  }
  const std::size_t total = all_rows.size();
  if (total < d) return std::nullopt;

  std::optional<OracleResult> best;
  auto consider = [&](const std::vector<std::size_t>& subset) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t idx : subset) {
      a.push_back(all_rows[idx]);
      b.push_back(all_rhs[idx]);
    }
    auto x = solve_square(std::move(a), std::move(b));
    if (!x) return;
    for (std::size_t r = 0; r < total; ++r) {
      double lhs = 0.0;
      for (std::size_t c = 0; c < d; ++c) lhs += all_rows[r][c] * (*x)[c];
      if (lhs > all_rhs[r] + 1e-7) return;
    }
    double value = 0.0;
    for (std::size_t c = 0; c < d; ++c) value += lp.objective[c] * (*x)[c];
    if (!best || value > best->value) best = OracleResult{value, *x};
  };
  std::vector<std::size_t> subset;
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (subset.size() == d) {
      consider(subset);
      return;
    }
    for (std::size_t i = start; i + (d - subset.size()) <= total; ++i) {
      subset.push_back(i);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  recurse(recurse, 0);
  return best;
}

// Random feasible bounded LP: b is chosen so a random interior point is
// feasible, and box rows keep the polyhedron bounded and pointed.
inline LinearProgram random_feasible_lp(Rng& rng, int max_dim = 4, int max_rows = 8) {
  const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_dim)));
  const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_rows)));
  LinearProgram lp;
  lp.objective.resize(static_cast<std::size_t>(d));
  for (auto& c : lp.objective) c = rng.uniform(-1.0, 1.0);
  lp.nonneg.resize(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < lp.nonneg.size(); ++i) lp.nonneg[i] = rng.uniform() < 0.7;

  std::vector<double> interior(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < interior.size(); ++i)
    interior[i] = lp.nonneg[i] ? rng.uniform(0.0, 1.0) : rng.uniform(-1.0, 1.0);

  for (int r = 0; r < m; ++r) {
    std::vector<double> row(static_cast<std::size_t>(d));
    double lhs = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      row[c] = rng.uniform(-1.0, 1.0);
      lhs += row[c] * interior[c];
    }
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(lhs + rng.uniform(0.05, 1.0));
  }
  // box: z_i <= 10 and, for free variables, -z_i <= 10
  for (int i = 0; i < d; ++i) {
    std::vector<double> row(static_cast<std::size_t>(d), 0.0);
    row[static_cast<std::size_t>(i)] = 1.0;
    lp.rows.push_back(row);
    lp.rhs.push_back(10.0);
    if (!lp.nonneg[static_cast<std::size_t>(i)]) {
      row[static_cast<std::size_t>(i)] = -1.0;
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(10.0);
    }
  }
  return lp;
}

struct RandomInstance {
  PatternTable table;
  UncertaintyInterval interval;
  std::vector<double> p0;  // the distribution behind tau, r x |Y| row-major
};

// Small pattern table (|Y| <= 3, m <= 9, r <= 6) whose expectation interval
// contains tau = Phi p0 for a genuine distribution p0 on the table's cells.
inline RandomInstance random_pattern_instance(Rng& rng, bool widen) {
  static const std::pair<int, int> shapes[] = {{2, 0}, {2, 1}, {2, 2}, {3, 0}, {3, 1}};
  auto [labels, k] = shapes[rng.below(5)];

  auto all = PatternTable::full_enumeration(labels, k);
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle(order, rng);
  std::size_t r = 1 + rng.below(std::min<std::size_t>(all.size(), 6));
  std::vector<std::vector<int>> chosen;
  for (std::size_t i = 0; i < r; ++i) chosen.push_back(all.patterns()[order[i]]);
  std::sort(chosen.begin(), chosen.end());
  auto table = PatternTable::from_patterns(labels, k, std::move(chosen));

  auto p0 = random_distribution(table.size() * static_cast<std::size_t>(labels), rng);
  std::vector<double> tau(static_cast<std::size_t>(table.m()), 0.0);
  for (std::size_t i = 0; i < table.size(); ++i)
    for (int y = 0; y < labels; ++y)
      tau[static_cast<std::size_t>(table.column(i, y))] +=
          p0[i * static_cast<std::size_t>(labels) + static_cast<std::size_t>(y)];

  auto interval = point_interval(tau);
  if (widen) {
    for (std::size_t j = 0; j < interval.a.size(); ++j) {
      interval.a[j] -= 0.2 * rng.uniform();
      interval.b[j] += 0.2 * rng.uniform();
    }
  }
  return RandomInstance{std::move(table), std::move(interval), std::move(p0)};
}

inline std::vector<double> random_rule(const PatternTable& table, Rng& rng) {
  std::vector<double> h;
  for (std::size_t i = 0; i < table.size(); ++i) {
    auto dist = random_distribution(static_cast<std::size_t>(table.num_labels()), rng);
    h.insert(h.end(), dist.begin(), dist.end());
  }
  return h;
}

}  // namespace lpc::testing
