// Shared builders for the unit and acceptance tests.
#ifndef AUTARKY_TESTS_SUPPORT_HPP
#define AUTARKY_TESTS_SUPPORT_HPP

#include <algorithm>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "autarky/energy.hpp"
#include "autarky/lp_local.hpp"
#include "autarky/problem_io.hpp"

namespace autarky {

// Lets doctest print labelings in failure messages.
inline std::ostream& operator<<(std::ostream& out, const Labeling& x) { return out << to_string(x); }

}  // namespace autarky

namespace autarky::testing {

using Rng = std::mt19937_64;

inline std::string fixture(const std::string& name) { return std::string(AUTARKY_FIXTURE_DIR) + "/" + name; }

inline PairTable table(std::size_t n, const std::vector<Rational>& row_major) {
  PairTable t(n);
  for (Label i = 0; i < n; ++i) {
    for (Label j = 0; j < n; ++j) t(i, j) = row_major[i * n + j];
  }
  return t;
}

inline PairTable potts_table(std::size_t n, const Rational& w) {
  PairTable t(n);
  for (Label i = 0; i < n; ++i) {
    for (Label j = 0; j < n; ++j) t(i, j) = i == j ? Rational(0) : w;
  }
  return t;
}

inline EnergyFunction single_edge(std::size_t labels, const PairTable& t) {
  EnergyFunction f(LabelSpace(2, labels, {{0, 1}}));
  f.pairwise(0) = t;
  return f;
}

/// 2 nodes, 2 labels, unaries (0,5) and (3,0), edge cost 0 if equal and 2
/// otherwise. Unique minimizer (0,1) with value 2.
inline EnergyFunction ising() {
  EnergyFunction f(LabelSpace(2, 2, {{0, 1}}));
  f.unary(0, 1) = 5;
  f.unary(1, 0) = 3;
  f.pairwise(0) = potts_table(2, 2);
  return f;
}

/// Anti-ferromagnetic triangle: every edge costs 1 when its ends agree.
inline EnergyFunction frustrated_triangle() {
  EnergyFunction f(LabelSpace(3, 2, {{0, 1}, {1, 2}, {0, 2}}));
  for (std::size_t e = 0; e < 3; ++e) f.pairwise(e) = table(2, {1, 0, 0, 1});
  return f;
}

inline EnergyFunction unary_only(const std::vector<Rational>& values) {
  EnergyFunction f(LabelSpace(1, values.size()));
  for (Label i = 0; i < values.size(); ++i) f.unary(0, i) = values[i];
  return f;
}

inline EnergyFunction generated(io::Structure structure, std::size_t nodes, std::size_t labels, std::uint64_t seed,
                                double density = 0.5, std::int64_t range = 10) {
  io::GeneratorSpec spec;
  spec.structure = structure;
  spec.node_count = nodes;
  spec.label_count = labels;
  spec.seed = seed;
  spec.edge_density = density;
  spec.value_range = range;
  return io::generate(spec);
}

inline Labeling random_labeling(const LabelSpace& space, Rng& rng) {
  std::uniform_int_distribution<Label> label(0, space.top());
  std::vector<Label> x(space.node_count());
  for (auto& v : x) v = label(rng);
  return Labeling(std::move(x));
}

inline Ordering random_ordering(std::size_t nodes, std::size_t labels, Rng& rng) {
  std::vector<std::vector<Label>> maps(nodes, std::vector<Label>(labels));
  for (auto& m : maps) {
    for (Label i = 0; i < labels; ++i) m[i] = i;
    std::shuffle(m.begin(), m.end(), rng);
  }
  return Ordering(std::move(maps));
}

/// num/den in canonical form (mpq_class(num, den) does not reduce).
inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational random_fraction(Rng& rng, long denominator = 12) {
  std::uniform_int_distribution<long> num(0, denominator);
  Rational r(num(rng), denominator);
  r.canonicalize();
  return r;
}

inline RelaxedLabeling uniform_relaxed(const LabelSpace& space) {
  RelaxedLabeling mu(space);
  const Rational n(1, space.label_count());
  for (std::size_t s = 0; s < space.node_count(); ++s) {
    for (Label i = 0; i < space.label_count(); ++i) mu.node(s, i) = n;
  }
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    for (Label i = 0; i < space.label_count(); ++i) {
      for (Label j = 0; j < space.label_count(); ++j) mu.edge(e, i, j) = n * n;
    }
  }
  return mu;
}

/// Convex combination of up to five random vertices phi(x), optionally mixed
/// towards the uniform product point.
inline RelaxedLabeling random_relaxed(const LabelSpace& space, Rng& rng) {
  std::uniform_int_distribution<int> count(1, 5);
  RelaxedLabeling mu = phi(space, random_labeling(space, rng));
  const int k = count(rng);
  for (int v = 1; v < k; ++v) {
    mu = mix(Rational(v, v + 1), mu, phi(space, random_labeling(space, rng)));
  }
  if (rng() % 2) mu = mix(random_fraction(rng), mu, uniform_relaxed(space));
  return mu;
}

}  // namespace autarky::testing

#endif  // AUTARKY_TESTS_SUPPORT_HPP
