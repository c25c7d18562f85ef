#include "lpc/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "lpc/errors.hpp"

namespace lpc {
namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-9;
// consecutive non-improving pivots before switching to Bland's rule
constexpr int kStallLimit = 64;
constexpr long kMaxIterations = 200000;

struct Tableau {
  std::size_t ncols = 0;  // structural + slack + artificial
  std::size_t width = 0;  // ncols + 1 (rhs)
  std::vector<std::vector<double>> row;
  std::vector<std::size_t> basis;  // per row, basic column
  std::vector<double> obj;         // reduced costs of the active objective
  double obj_value = 0.0;
  std::vector<bool> banned;          // columns no longer eligible to enter
  std::size_t ban_on_leave = SIZE_MAX;  // columns >= this are banned once they leave

  double& rhs(std::size_t r) { return row[r][ncols]; }

  void pivot(std::size_t prow, std::size_t pcol) {
    double inv = 1.0 / row[prow][pcol];
    for (std::size_t c = 0; c < width; ++c) row[prow][c] *= inv;
    row[prow][pcol] = 1.0;
    for (std::size_t r = 0; r < row.size(); ++r) {
      if (r == prow) continue;
      double factor = row[r][pcol];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) row[r][c] -= factor * row[prow][c];
      row[r][pcol] = 0.0;
    }
    double ofac = obj[pcol];
    if (ofac != 0.0) {
      for (std::size_t c = 0; c < ncols; ++c) obj[c] -= ofac * row[prow][c];
      obj[pcol] = 0.0;
      obj_value += ofac * rhs(prow);
    }
  }
};

// One simplex phase on the active objective. Returns false on unboundedness.
bool run_simplex(Tableau& t, std::vector<double>* shadow_obj, double* shadow_val) {
  bool bland = false;
  int stall = 0;
  double last_value = t.obj_value;
  for (long iter = 0; iter < kMaxIterations; ++iter) {
    // entering column
    std::size_t pcol = t.ncols;
    if (bland) {
      for (std::size_t c = 0; c < t.ncols; ++c) {
        if (!t.banned[c] && t.obj[c] > kReducedCostTol) {
          pcol = c;
          break;
        }
      }
    } else {
      double best = kReducedCostTol;
      for (std::size_t c = 0; c < t.ncols; ++c) {
        if (!t.banned[c] && t.obj[c] > best) {
          best = t.obj[c];
          pcol = c;
        }
      }
    }
    if (pcol == t.ncols) return true;  // optimal

    // ratio test; ties go to the smallest basis label (Bland-compatible)
    std::size_t prow = t.row.size();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.row.size(); ++r) {
      double denom = t.row[r][pcol];
      if (denom <= kPivotTol) continue;
      double num = std::max(t.rhs(r), 0.0);
      double ratio = num / denom;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 &&
           (prow == t.row.size() || t.basis[r] < t.basis[prow]))) {
        best_ratio = ratio;
        prow = r;
      }
    }
    if (prow == t.row.size()) return false;  // unbounded

    std::size_t leaving = t.basis[prow];
    t.pivot(prow, pcol);
    if (shadow_obj) {
      double sfac = (*shadow_obj)[pcol];
      if (sfac != 0.0) {
        for (std::size_t c = 0; c < t.ncols; ++c)
          (*shadow_obj)[c] -= sfac * t.row[prow][c];
        (*shadow_obj)[pcol] = 0.0;
        *shadow_val += sfac * t.rhs(prow);
      }
    }
    t.basis[prow] = pcol;
    if (leaving >= t.ban_on_leave) t.banned[leaving] = true;

    if (!bland) {
      if (t.obj_value <= last_value + 1e-13) {
        if (++stall >= kStallLimit) bland = true;
      } else {
        stall = 0;
      }
      last_value = t.obj_value;
    }
  }
  throw NumericError("simplex iteration limit exceeded");
}

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  const std::size_t d = lp.num_vars();
  const std::size_t m = lp.num_rows();
  if (d < 1) throw UsageError("lp: at least one variable required");
  if (lp.nonneg.size() != d) throw UsageError("lp: nonneg mask size mismatch");
  if (lp.rhs.size() != m) throw UsageError("lp: rhs size mismatch");
  for (double c : lp.objective)
    if (!std::isfinite(c)) throw UsageError("lp: non-finite objective coefficient");
  for (std::size_t r = 0; r < m; ++r) {
    if (lp.rows[r].size() != d) throw UsageError("lp: constraint row size mismatch");
    if (!std::isfinite(lp.rhs[r])) throw UsageError("lp: non-finite rhs");
    for (double c : lp.rows[r])
      if (!std::isfinite(c)) throw UsageError("lp: non-finite constraint coefficient");
  }

  // split free variables: column = sign * variable
  std::vector<std::size_t> col_var;
  std::vector<double> col_sign;
  for (std::size_t i = 0; i < d; ++i) {
    col_var.push_back(i);
    col_sign.push_back(1.0);
    if (!lp.nonneg[i]) {
      col_var.push_back(i);
      col_sign.push_back(-1.0);
    }
  }
  const std::size_t ns = col_var.size();

  std::vector<std::size_t> art_rows;
  for (std::size_t r = 0; r < m; ++r)
    if (lp.rhs[r] < 0.0) art_rows.push_back(r);
  const std::size_t na = art_rows.size();

  Tableau t;
  t.ncols = ns + m + na;
  t.width = t.ncols + 1;
  t.row.assign(m, std::vector<double>(t.width, 0.0));
  t.basis.resize(m);
  t.banned.assign(t.ncols, false);

  std::size_t next_art = 0;
  for (std::size_t r = 0; r < m; ++r) {
    double sign = lp.rhs[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < ns; ++c) {
      double v = lp.rows[r][col_var[c]] * col_sign[c];
      t.row[r][c] = sign * v;
    }
    t.row[r][ns + r] = sign;  // slack
    t.rhs(r) = sign * lp.rhs[r];
    if (sign < 0.0) {
      std::size_t acol = ns + m + next_art++;
      t.row[r][acol] = 1.0;
      t.basis[r] = acol;
    } else {
      t.basis[r] = ns + r;
    }
  }

  // phase-2 reduced costs (basis is slacks/artificials, both cost 0)
  std::vector<double> obj2(t.ncols, 0.0);
  for (std::size_t c = 0; c < ns; ++c)
    obj2[c] = lp.objective[col_var[c]] * col_sign[c];
  double obj2_value = 0.0;

  if (na > 0) {
    // phase 1: maximize -(sum of artificials), priced out over artificial rows
    t.obj.assign(t.ncols, 0.0);
    t.obj_value = 0.0;
    t.ban_on_leave = ns + m;
    for (std::size_t c = ns + m; c < t.ncols; ++c) t.obj[c] = -1.0;
    std::vector<std::size_t> art_tableau_rows;
    for (std::size_t r = 0; r < m; ++r)
      if (t.basis[r] >= ns + m) art_tableau_rows.push_back(r);
    for (std::size_t r : art_tableau_rows) {
      for (std::size_t c = 0; c < t.ncols; ++c) t.obj[c] += t.row[r][c];
      t.obj_value -= t.rhs(r);
    }
    if (!run_simplex(t, &obj2, &obj2_value))
      throw NumericError("phase-1 LP unbounded (internal)");
    if (t.obj_value < -kFeasTol) return {LpStatus::Infeasible, {}, 0.0};

    // drive remaining artificials out of the basis; drop redundant rows
    for (std::size_t r = 0; r < t.row.size();) {
      if (t.basis[r] < ns + m) {
        ++r;
        continue;
      }
      std::size_t pcol = t.ncols;
      for (std::size_t c = 0; c < ns + m; ++c) {
        if (std::abs(t.row[r][c]) > kPivotTol) {
          pcol = c;
          break;
        }
      }
      if (pcol == t.ncols) {
        t.row.erase(t.row.begin() + static_cast<std::ptrdiff_t>(r));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      double sfac = obj2[pcol];
      t.pivot(r, pcol);
      if (sfac != 0.0) {
        for (std::size_t c = 0; c < t.ncols; ++c) obj2[c] -= sfac * t.row[r][c];
        obj2[pcol] = 0.0;
        obj2_value += sfac * t.rhs(r);
      }
      t.basis[r] = pcol;
      ++r;
    }
    for (std::size_t c = ns + m; c < t.ncols; ++c) t.banned[c] = true;
  }

  t.ban_on_leave = SIZE_MAX;
  t.obj = std::move(obj2);
  t.obj_value = obj2_value;
  if (!run_simplex(t, nullptr, nullptr)) return {LpStatus::Unbounded, {}, 0.0};

  std::vector<double> z(d, 0.0);
  for (std::size_t r = 0; r < t.row.size(); ++r) {
    std::size_t c = t.basis[r];
    if (c < ns) z[col_var[c]] += col_sign[c] * t.rhs(r);
  }
  double value = 0.0;
  for (std::size_t i = 0; i < d; ++i) value += lp.objective[i] * z[i];
  return {LpStatus::Optimal, std::move(z), value};
}

}  // namespace lpc
