#include <doctest.h>

#include <cmath>
#include <limits>

#include "lpc/errors.hpp"
#include "lpc/linprog.hpp"
#include "support.hpp"

using namespace lpc;

namespace {

double feasibility_residual(const LinearProgram& lp, const std::vector<double>& z) {
  double worst = 0.0;
  for (std::size_t r = 0; r < lp.num_rows(); ++r) {
    double lhs = 0.0;
    for (std::size_t c = 0; c < lp.num_vars(); ++c) lhs += lp.rows[r][c] * z[c];
    worst = std::max(worst, lhs - lp.rhs[r]);
  }
  for (std::size_t c = 0; c < lp.num_vars(); ++c)
    if (lp.nonneg[c]) worst = std::max(worst, -z[c]);
  return worst;
}

}  // namespace

TEST_SUITE("linprog") {

TEST_CASE("one-variable basics") {
  LinearProgram lp;
  lp.objective = {1.0};
  lp.rows = {{1.0}};
  lp.rhs = {1.0};
  lp.nonneg = {true};
  auto sol = solve(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.point[0] == doctest::Approx(1.0).epsilon(1e-9));

  lp.rhs = {-1.0};
  CHECK(solve(lp).status == LpStatus::Infeasible);

  lp.rows.clear();
  lp.rhs.clear();
  CHECK(solve(lp).status == LpStatus::Unbounded);
}

TEST_CASE("two-variable optimum at a constraint intersection") {
  // maximize x1 + x2 s.t. x1 + 2 x2 <= 4, 3 x1 + x2 <= 6, x >= 0
  LinearProgram lp;
  lp.objective = {1.0, 1.0};
  lp.rows = {{1.0, 2.0}, {3.0, 1.0}};
  lp.rhs = {4.0, 6.0};
  lp.nonneg = {true, true};
  auto sol = solve(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.value == doctest::Approx(14.0 / 5.0).epsilon(1e-9));
  CHECK(sol.point[0] == doctest::Approx(8.0 / 5.0).epsilon(1e-9));
  CHECK(sol.point[1] == doctest::Approx(6.0 / 5.0).epsilon(1e-9));

  auto oracle = testing::lp_vertex_oracle(lp);
  REQUIRE(oracle.has_value());
  CHECK(sol.value == doctest::Approx(oracle->value).epsilon(1e-9));
}

TEST_CASE("free variables can go negative") {
  // maximize x s.t. x <= -3, x free
  LinearProgram lp;
  lp.objective = {1.0};
  lp.rows = {{1.0}};
  lp.rhs = {-3.0};
  lp.nonneg = {false};
  auto sol = solve(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.value == doctest::Approx(-3.0).epsilon(1e-9));
}

TEST_CASE("rejects non-finite coefficients") {
  LinearProgram lp;
  lp.objective = {std::nan("")};
  lp.rows = {{1.0}};
  lp.rhs = {1.0};
  lp.nonneg = {true};
  CHECK_THROWS_AS(solve(lp), UsageError);

  lp.objective = {1.0};
  lp.rhs = {std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(solve(lp), UsageError);
}

TEST_CASE("matches the vertex-enumeration oracle on random feasible bounded LPs") {
  Rng rng(7);
  int solved = 0;
  for (int it = 0; it < 120; ++it) {
    auto lp = testing::random_feasible_lp(rng);
    auto oracle = testing::lp_vertex_oracle(lp);
    REQUIRE(oracle.has_value());  // feasible by construction
    auto sol = solve(lp);
    REQUIRE(sol.optimal());
    CHECK(sol.value ==
          doctest::Approx(oracle->value).epsilon(1e-7).scale(std::max(1.0, std::abs(oracle->value))));
    CHECK(feasibility_residual(lp, sol.point) <= 1e-9);
    ++solved;
  }
  CHECK(solved == 120);
}

TEST_CASE("objective scaling scales the value") {
  Rng rng(19);
  for (int it = 0; it < 20; ++it) {
    auto lp = testing::random_feasible_lp(rng);
    auto base = solve(lp);
    REQUIRE(base.optimal());
    auto scaled = lp;
    for (auto& c : scaled.objective) c *= 3.5;
    auto sol = solve(scaled);
    REQUIRE(sol.optimal());
    CHECK(sol.value == doctest::Approx(3.5 * base.value).epsilon(1e-7));
  }
}

TEST_CASE("deterministic output for a fixed input") {
  Rng rng(23);
  auto lp = testing::random_feasible_lp(rng);
  auto a = solve(lp);
  auto b = solve(lp);
  REQUIRE(a.optimal());
  REQUIRE(b.optimal());
  CHECK(a.value == b.value);
  CHECK(a.point == b.point);
}

TEST_CASE("degenerate equality-like rows still terminate") {
  // x1 + x2 <= 1 paired with -(x1 + x2) <= -1 forces the simplex through
  // degenerate pivots
  LinearProgram lp;
  lp.objective = {1.0, -1.0};
  lp.rows = {{1.0, 1.0}, {-1.0, -1.0}, {1.0, 0.0}};
  lp.rhs = {1.0, -1.0, 0.75};
  lp.nonneg = {true, true};
  auto sol = solve(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.value == doctest::Approx(0.5).epsilon(1e-9));  // x1=0.75, x2=0.25
}

}  // TEST_SUITE
