#include <doctest.h>

#include <array>
#include <optional>

#include "autarky/simplex.hpp"
#include "support.hpp"

using namespace autarky;
using namespace autarky::lp;

namespace {

const PivotRule rules[] = {PivotRule::bland, PivotRule::dantzig_with_bland_fallback};

// Optimum of min c.x over {x >= 0, a_r . x <= b_r} in two variables by
// enumerating every pairwise intersection of the boundary lines.
std::optional<Rational> brute_force_2d(const std::vector<std::array<Rational, 3>>& rows, const Rational& c0,
                                       const Rational& c1) {
  std::vector<std::array<Rational, 3>> lines = rows;
  lines.push_back({Rational(-1), Rational(0), Rational(0)});
  lines.push_back({Rational(0), Rational(-1), Rational(0)});
  std::optional<Rational> best;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& p = lines[i];
      const auto& q = lines[j];
      const Rational det = p[0] * q[1] - p[1] * q[0];
      if (det == 0) continue;
      const Rational x = (p[2] * q[1] - p[1] * q[2]) / det;
      const Rational y = (p[0] * q[2] - p[2] * q[0]) / det;
      bool ok = true;
      for (const auto& l : lines) ok = ok && l[0] * x + l[1] * y <= l[2];
      if (!ok) continue;
      const Rational v = c0 * x + c1 * y;
      if (!best || v < *best) best = v;
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("simplex") {
  TEST_CASE("small bounded program") {
    LinearProgram lp;
    auto x = lp.add_variable(), y = lp.add_variable();
    lp.add_constraint({{x, 1}, {y, 1}}, Relation::less_equal, 4);
    lp.add_constraint({{x, 1}, {y, 3}}, Relation::less_equal, 6);
    for (PivotRule rule : rules) {
      Solver solver(lp, rule);
      REQUIRE(solver.feasible());
      Solution s = solver.minimize({-1, -2});
      CHECK(s.status == Status::optimal);
      CHECK(s.value == -5);
      CHECK(s.values[x] == 3);
      CHECK(s.values[y] == 1);
    }
  }

  TEST_CASE("infeasible and unbounded") {
    LinearProgram bad;
    auto x = bad.add_variable();
    bad.add_constraint({{x, 1}}, Relation::greater_equal, 2);
    bad.add_constraint({{x, 1}}, Relation::less_equal, 1);
    CHECK(minimize(bad, {1}).status == Status::infeasible);

    LinearProgram open;
    auto y = open.add_variable();
    open.add_constraint({{y, 1}}, Relation::greater_equal, 1);
    CHECK(minimize(open, {-1}).status == Status::unbounded);
    Solution s = minimize(open, {1});
    CHECK(s.status == Status::optimal);
    CHECK(s.value == 1);
  }

  TEST_CASE("free variables and negative right-hand sides") {
    LinearProgram lp;
    auto x = lp.add_variable(true);
    lp.add_constraint({{x, 1}}, Relation::greater_equal, -3);
    lp.add_constraint({{x, -1}}, Relation::greater_equal, -7);
    Solution lo = minimize(lp, {1});
    CHECK(lo.value == -3);
    CHECK(lo.values[x] == -3);
    Solution hi = maximize(lp, {1});
    CHECK(hi.value == 7);
  }

  TEST_CASE("redundant equality rows") {
    LinearProgram lp;
    auto x = lp.add_variable(), y = lp.add_variable();
    lp.add_constraint({{x, 1}, {y, 1}}, Relation::equal, 1);
    lp.add_constraint({{x, 2}, {y, 2}}, Relation::equal, 2);
    lp.add_constraint({{x, -1}, {y, -1}}, Relation::equal, -1);
    Solution s = minimize(lp, {1, 0});
    CHECK(s.status == Status::optimal);
    CHECK(s.value == 0);
    CHECK(s.values[y] == 1);
  }

  TEST_CASE("Beale's cycling example terminates") {
    LinearProgram lp;
    std::vector<std::size_t> v;
    for (int i = 0; i < 4; ++i) v.push_back(lp.add_variable());
    lp.add_constraint({{v[0], Rational(1, 4)}, {v[1], -8}, {v[2], -1}, {v[3], 9}}, Relation::less_equal, 0);
    lp.add_constraint({{v[0], Rational(1, 2)}, {v[1], -12}, {v[2], Rational(-1, 2)}, {v[3], 3}}, Relation::less_equal,
                      0);
    lp.add_constraint({{v[2], 1}}, Relation::less_equal, 1);
    for (PivotRule rule : rules) {
      Solution s = Solver(lp, rule).minimize({Rational(-3, 4), 20, Rational(-1, 2), 6});
      CHECK(s.status == Status::optimal);
      CHECK(s.value == Rational(-5, 4));
    }
  }

  TEST_CASE("warm-started re-optimization") {
    LinearProgram lp;
    auto x = lp.add_variable(), y = lp.add_variable();
    lp.add_constraint({{x, 1}, {y, 1}}, Relation::less_equal, 4);
    lp.add_constraint({{x, 1}, {y, 3}}, Relation::less_equal, 6);
    Solver solver(lp);
    CHECK(solver.minimize({-1, -2}).value == -5);
    CHECK(solver.maximize({1, 0}).value == 4);
    CHECK(solver.maximize({0, 1}).value == 2);
    CHECK(solver.minimize({1, 1}).value == 0);
  }

  TEST_CASE("random two-variable programs match vertex enumeration") {
    testing::Rng rng(4);
    auto small = [&] { return testing::frac(static_cast<long>(rng() % 11) - 5, 1 + rng() % 3); };
    for (int trial = 0; trial < 200; ++trial) {
      LinearProgram lp;
      auto x = lp.add_variable(), y = lp.add_variable();
      std::vector<std::array<Rational, 3>> rows;
      // A bounding box keeps every program bounded.
      rows.push_back({Rational(1), Rational(0), Rational(10)});
      rows.push_back({Rational(0), Rational(1), Rational(10)});
      for (int r = 0; r < 3; ++r) rows.push_back({small(), small(), Rational(static_cast<long>(rng() % 10))});
      for (const auto& r : rows) lp.add_constraint({{x, r[0]}, {y, r[1]}}, Relation::less_equal, r[2]);
      const Rational c0 = small(), c1 = small();
      for (PivotRule rule : rules) {
        Solution s = Solver(lp, rule).minimize({c0, c1});
        auto expected = brute_force_2d(rows, c0, c1);
        REQUIRE(expected);  // the origin is always feasible
        CHECK(s.status == Status::optimal);
        CHECK(s.value == *expected);
      }
    }
  }
}
