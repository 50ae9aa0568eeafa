#include <doctest.h>

#include <algorithm>

#include "autarky/error.hpp"
#include "autarky/flow.hpp"
#include "autarky/kovtun.hpp"
#include "autarky/lp_local.hpp"
#include "autarky/oracle.hpp"
#include "support.hpp"

using namespace autarky;
using namespace autarky::kovtun;
using namespace autarky::testing;

namespace {

const PairTable linear3 = table(3, {0, 1, 2, 1, 0, 1, 2, 1, 0});

EnergyFunction load(const char* name) { return io::parse_file(fixture(name)); }

}  // namespace

TEST_SUITE("kovtun") {
  TEST_CASE("sufficient conditions") {
    EnergyFunction zero(LabelSpace(2, 3, {{0, 1}}));
    CHECK(check_sufficient_conditions(zero, {{0, 2}, {1}}).verdict == ConditionVerdict::weak);

    EnergyFunction h = unary_only({0, -1});
    CHECK(check_sufficient_conditions(h, {{1}}).verdict == ConditionVerdict::strong);

    EnergyFunction bad = unary_only({0, 1});
    ConditionCheck c = check_sufficient_conditions(bad, {{1}});
    CHECK(c.verdict == ConditionVerdict::fails);
    CHECK(c.violation.find("(a)") != std::string::npos);

    EnergyFunction edge = single_edge(2, table(2, {0, 0, 0, 1}));
    ConditionCheck e = check_sufficient_conditions(edge, {{0, 1}, {0, 1}});
    CHECK(e.verdict == ConditionVerdict::fails);
    CHECK(e.violation.find("(b)") != std::string::npos);

    CHECK_THROWS_AS(check_sufficient_conditions(h, {{}}), InvalidArgument);
  }

  TEST_CASE("one-vs-all coefficients") {
    EdgeCoefficients k = one_vs_all_coefficients(linear3);
    CHECK(k.a == 0);
    CHECK(k.b == 1);
    CHECK(k.c == 1);
    CHECK(k.d == -1);
    EdgeCoefficients u = one_vs_all_coefficients(linear3, false);
    CHECK(u.d == -1);

    EdgeCoefficients z = one_vs_all_coefficients(PairTable(3));
    CHECK(z.a == 0);
    CHECK(z.b == 0);
    CHECK(z.c == 0);
    CHECK(z.d == 0);

    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      PairTable t(3);
      for (Label i = 0; i < 3; ++i) {
        for (Label j = 0; j < 3; ++j) t(i, j) = static_cast<long>(rng() % 21) - 10;
      }
      EdgeCoefficients c = one_vs_all_coefficients(t);
      CHECK(c.d <= c.b + c.c - c.a);
      CHECK(c.d == std::min(one_vs_all_coefficients(t, false).d, Rational(c.b + c.c - c.a)));
    }
  }

  TEST_CASE("auxiliary for the linear edge") {
    EnergyFunction f = single_edge(3, linear3);
    OneVsAllAuxiliary aux = one_vs_all_auxiliary(f, 2);
    CHECK(aux.ordering == Ordering::identity(2, 3));
    CHECK(is_submodular(aux.aux.g));
    CHECK(add(aux.aux.g, aux.aux.h) == aux.reordered);
    CHECK(aux.aux.K == LabelSets{{0, 2}, {0, 2}});
    const PairTable& g = aux.aux.g.pairwise(0);
    CHECK(g(2, 2) == 0);
    CHECK(g(2, 0) == 1);
    CHECK(g(0, 2) == 1);
    CHECK(g(1, 1) == -1);
  }

  TEST_CASE("ordering puts the target on top and the best competitor at 0") {
    EnergyFunction f = unary_only({4, 1, 1, 0});
    Ordering pi = one_vs_all_ordering(f, 3);
    CHECK(pi(0, 3) == 3);
    CHECK(pi(0, 1) == 0);  // smallest index among the tied minimizers
    CHECK(pi(0, 0) == 1);
    CHECK(pi(0, 2) == 2);
    CHECK_THROWS_AS(one_vs_all_ordering(f, 4), InvalidArgument);
    CHECK_THROWS_AS(one_vs_all_ordering(unary_only({0}), 0), InvalidArgument);
  }

  TEST_CASE("auxiliary invariants on random instances") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      CAPTURE(seed);
      EnergyFunction f = generated(io::Structure::random, 4, 3, seed, 0.7);
      for (Label k = 0; k < 3; ++k) {
        OneVsAllAuxiliary aux = one_vs_all_auxiliary(f, k);
        CHECK(is_submodular(aux.aux.g));
        CHECK(add(aux.aux.g, aux.aux.h) == aux.reordered);
        CHECK(apply_ordering(aux.reordered, aux.ordering.inverse()) == f);
        CHECK(check_sufficient_conditions(aux.aux.h, aux.aux.K).verdict != ConditionVerdict::fails);
        Labeling x_min = solve_one_vs_all(aux);
        for (Label v : x_min) CHECK((v == 0 || v == 2));
        // The two-label solve agrees with the lattice of g itself.
        CHECK(x_min == oracle::enumerate_minimizers(aux.aux.g).meet);
        CHECK(oracle::check_autarky_definition(aux.aux.g, Autarky(x_min, Labeling(4, 2), Strength::strong)).verdict ==
              oracle::Verdict::strong);
      }
    }
  }

  TEST_CASE("solve_one_vs_all extremes") {
    EnergyFunction dominant(LabelSpace(3, 3, {{0, 1}, {1, 2}}));
    for (std::size_t s = 0; s < 3; ++s) dominant.unary(s, 1) = -10;
    CHECK(solve_one_vs_all(one_vs_all_auxiliary(dominant, 1)) == Labeling(3, 2));
    CHECK(one_vs_all(dominant, 1).fixed_nodes() == std::vector<std::size_t>{0, 1, 2});

    EnergyFunction zero(LabelSpace(3, 3, {{0, 1}, {1, 2}}));
    CHECK(solve_one_vs_all(one_vs_all_auxiliary(zero, 1)) == Labeling(3, 0));
  }

  TEST_CASE("all labels on the fixtures") {
    EnergyFunction dd = load("diagonal_dominant.pem");
    AllLabelsResult r = one_vs_all_all_labels(dd);
    CHECK(r.constraint.fixed_nodes() == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(r.combined.x_min == Labeling({0, 1, 2, 0}));
    CHECK(oracle::check_persistency(dd, r.constraint) == oracle::Verdict::strong);
    CHECK(oracle::check_autarky_definition(dd, r.combined).verdict == oracle::Verdict::strong);

    EnergyFunction zero = load("zero.pem");
    CHECK(one_vs_all_all_labels(zero).constraint.fixed_nodes().empty());
  }

  TEST_CASE("threads do not change the result") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      EnergyFunction f = generated(io::Structure::potts, 5, 3, seed, 0.5);
      CHECK(one_vs_all_all_labels(f, 4).constraint.allowed == one_vs_all_all_labels(f, 1).constraint.allowed);
    }
  }

  TEST_CASE("strong persistency on random instances") {
    std::size_t fixed = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      CAPTURE(seed);
      EnergyFunction f = generated(seed % 2 ? io::Structure::potts : io::Structure::random, 4, 3, seed, 0.5);
      AllLabelsResult r = one_vs_all_all_labels(f);
      oracle::MinimizerSet m = oracle::enumerate_minimizers(f);
      CHECK(oracle::check_persistency(m, r.constraint) == oracle::Verdict::strong);
      for (const LabelResult& l : r.per_label) {
        CHECK(oracle::check_autarky_definition(f, l.original).verdict == oracle::Verdict::strong);
      }
      fixed += r.constraint.fixed_nodes().size();
    }
    CHECK(fixed > 0);
  }

  TEST_CASE("relabeling the instance relabels the constraint") {
    Rng rng(77);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      EnergyFunction f = generated(io::Structure::random, 4, 3, seed, 0.5);
      std::vector<Label> p{0, 1, 2};
      std::shuffle(p.begin(), p.end(), rng);
      Ordering global(std::vector<std::vector<Label>>(4, p));
      DomainConstraint original = one_vs_all_all_labels(f).constraint;
      DomainConstraint relabeled = one_vs_all_all_labels(apply_ordering(f, global)).constraint;
      for (std::size_t s = 0; s < 4; ++s) {
        std::vector<Label> expected;
        for (Label i : original.allowed[s]) expected.push_back(p[i]);
        std::sort(expected.begin(), expected.end());
        CHECK(relabeled.allowed[s] == expected);
      }
    }
  }

  TEST_CASE("sequential on a submodular energy with identity ordering") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      CAPTURE(seed);
      EnergyFunction f = generated(io::Structure::submodular, 4, 3, seed, 0.6);
      SequentialResult r = sequential_kovtun(f, Ordering::identity(4, 3));
      CHECK_FALSE(r.aborted);
      CHECK(r.iterations >= 1);
      CHECK(r.reordered.x_min == minimize_submodular(f).lowest);
      REQUIRE(r.aux);
      CHECK(r.aux->g == f);
    }
  }

  TEST_CASE("sequential on the fixtures") {
    EnergyFunction zero = load("zero.pem");
    SequentialResult z = sequential_kovtun(zero, Ordering::identity(3, 3));
    CHECK(z.reordered.x_min == Labeling(3, 0));
    CHECK(z.constraint.fixed_nodes().empty());

    EnergyFunction sub = load("submodular.pem");
    CHECK(sequential_kovtun(sub, Ordering::identity(3, 3)).reordered.x_min == minimize_submodular(sub).lowest);
  }

  TEST_CASE("sequential outputs are strong autarkies") {
    Rng rng(5);
    std::size_t pruned = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      CAPTURE(seed);
      EnergyFunction f = generated(seed % 2 ? io::Structure::potts : io::Structure::random, 4, 3, seed, 0.6);
      const Ordering pi = seed % 3 == 0 ? random_ordering(4, 3, rng) : one_vs_all_ordering(f, seed % 3);
      SequentialResult r = sequential_kovtun(f, pi);
      EnergyFunction fr = apply_ordering(f, pi);
      CHECK(oracle::check_autarky_definition(fr, r.reordered).verdict == oracle::Verdict::strong);
      CHECK(oracle::check_persistency(f, r.constraint) == oracle::Verdict::strong);
      if (r.aux) {
        CHECK(is_submodular(r.aux->g));
        CHECK(add(r.aux->g, r.aux->h) == fr);
        CHECK(check_sufficient_conditions(r.aux->h, r.aux->K).verdict != ConditionVerdict::fails);
      }
      for (const auto& k : r.constraint.allowed) pruned += 3 - k.size();
    }
    CHECK(pruned > 0);
  }

  TEST_CASE("sequential over all labels") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      EnergyFunction f = generated(io::Structure::potts, 4, 3, seed, 0.5);
      SequentialAllLabelsResult r = sequential_all_labels(f);
      CHECK(r.per_label.size() == 3);
      CHECK(oracle::check_persistency(f, r.constraint) == oracle::Verdict::strong);
    }
  }

  TEST_CASE("improved one-vs-all") {
    EnergyFunction f = single_edge(3, linear3);
    f.unary(0, 2) = -3;
    for (Label k = 0; k < 3; ++k) {
      CHECK(improved_one_vs_all(f, k).original.x_min == one_vs_all(f, k).original.x_min);
    }
    CHECK_THROWS_AS(improved_one_vs_all(unary_only({0}), 0), InvalidArgument);

    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      CAPTURE(seed);
      EnergyFunction g = generated(io::Structure::random, 4, 3, seed, 0.6);
      oracle::MinimizerSet m = oracle::enumerate_minimizers(g);
      for (Label k = 0; k < 3; ++k) {
        LabelResult base = one_vs_all(g, k);
        LabelResult better = improved_one_vs_all(g, k);
        std::vector<std::size_t> a = base.fixed_nodes(), b = better.fixed_nodes();
        CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
        CHECK(oracle::check_persistency(m, autarky_to_constraint(better.original)) == oracle::Verdict::strong);
      }
    }
  }
}
