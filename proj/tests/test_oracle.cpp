#include <doctest.h>

#include <set>

#include "autarky/error.hpp"
#include "autarky/oracle.hpp"
#include "support.hpp"

using namespace autarky;
using namespace autarky::oracle;
using namespace autarky::testing;

TEST_SUITE("oracle") {
  TEST_CASE("labeling count and enumeration order") {
    EnergyFunction f(LabelSpace(2, 3, {{0, 1}}));
    CHECK(labeling_count(f) == std::optional<std::size_t>(9));
    CHECK_FALSE(labeling_count(f, 8));
    std::vector<Labeling> seen;
    for_each_labeling(f, [&](const Labeling& x) { seen.push_back(x); });
    REQUIRE(seen.size() == 9);
    CHECK(seen[0] == Labeling({0, 0}));
    CHECK(seen[1] == Labeling({1, 0}));
    CHECK(seen[3] == Labeling({0, 1}));
    CHECK(seen[8] == Labeling({2, 2}));
    std::set<std::vector<Label>> distinct;
    for (const Labeling& x : seen) distinct.insert(x.values());
    CHECK(distinct.size() == 9);
  }

  TEST_CASE("minimizers of the Ising instance") {
    MinimizerSet m = enumerate_minimizers(ising());
    CHECK(m.value == 2);
    CHECK(m.minimizers == std::vector<Labeling>{Labeling({0, 1})});
    CHECK(m.meet == Labeling({0, 1}));
    CHECK(m.join == Labeling({0, 1}));
  }

  TEST_CASE("ties report meet and join") {
    EnergyFunction f(LabelSpace(2, 3, {{0, 1}}));
    MinimizerSet m = enumerate_minimizers(f);
    CHECK(m.value == 0);
    CHECK(m.minimizers.size() == 9);
    CHECK(m.meet == Labeling({0, 0}));
    CHECK(m.join == Labeling({2, 2}));

    MinimizerSet u = enumerate_minimizers(unary_only({1, 0, 0}));
    CHECK(u.minimizers.size() == 2);
    CHECK(u.meet == Labeling({1}));
    CHECK(u.join == Labeling({2}));
  }

  TEST_CASE("autarky definition check") {
    EnergyFunction f = ising();
    AutarkyVerdict good = check_autarky_definition(f, Autarky(Labeling({0, 1}), Labeling({0, 1}), Strength::strong));
    CHECK(good.verdict == Verdict::strong);
    CHECK_FALSE(good.witness);

    AutarkyVerdict bad = check_autarky_definition(f, Autarky(Labeling({1, 0}), Labeling({1, 0}), Strength::weak));
    CHECK(bad.verdict == Verdict::none);
    REQUIRE(bad.witness);
    CHECK(evaluate(f, Labeling({1, 0})) > evaluate(f, *bad.witness));

    // The identity never moves anything, so strictness holds vacuously.
    CHECK(check_autarky_definition(f, Autarky::identity(f.space())).verdict == Verdict::strong);
  }

  TEST_CASE("weak but not strong") {
    EnergyFunction f = unary_only({0, 0});
    AutarkyVerdict v = check_autarky_definition(f, Autarky(Labeling({1}), Labeling({1}), Strength::weak));
    CHECK(v.verdict == Verdict::weak);
    REQUIRE(v.witness);
    CHECK(*v.witness == Labeling({0}));
  }

  TEST_CASE("persistency") {
    EnergyFunction f = ising();
    CHECK(check_persistency(f, DomainConstraint::full(f.space())) == Verdict::strong);
    CHECK(check_persistency(f, DomainConstraint({{0, 1}, {0}}, Strength::strong)) == Verdict::none);
    CHECK(check_persistency(f, DomainConstraint({{0}, {1}}, Strength::strong)) == Verdict::strong);

    EnergyFunction tie = unary_only({0, 0, 1});
    CHECK(check_persistency(tie, DomainConstraint({{1, 2}}, Strength::weak)) == Verdict::weak);
    CHECK(check_persistency(tie, DomainConstraint({{0, 1}}, Strength::weak)) == Verdict::strong);
  }

  TEST_CASE("budget") {
    EnergyFunction big(LabelSpace(30, 2));
    CHECK_FALSE(labeling_count(big));
    CHECK_THROWS_AS(enumerate_minimizers(big), BudgetExceeded);
    CHECK_THROWS_AS(check_persistency(big, DomainConstraint::full(big.space())), BudgetExceeded);
    EnergyFunction small(LabelSpace(3, 2));
    CHECK_THROWS_AS(enumerate_minimizers(small, 7), BudgetExceeded);
    CHECK_NOTHROW(enumerate_minimizers(small, 8));
  }
}
