#ifndef AUTARKY_ENERGY_HPP
#define AUTARKY_ENERGY_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "autarky/rational.hpp"

namespace autarky {

using Label = std::size_t;

/// Ordered pair st. No symmetrization: (s,t) and (t,s) are distinct edges.
struct Edge {
  std::size_t s;
  std::size_t t;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Nodes, a uniform label set {0..L} and the ordered edge list.
class LabelSpace {
 public:
  LabelSpace(std::size_t node_count, std::size_t label_count, std::vector<Edge> edges = {});

  std::size_t node_count() const { return node_count_; }
  std::size_t label_count() const { return label_count_; }
  /// Index of the top label L.
  Label top() const { return label_count_ - 1; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  friend bool operator==(const LabelSpace&, const LabelSpace&) = default;

 private:
  std::size_t node_count_;
  std::size_t label_count_;
  std::vector<Edge> edges_;
};

/// Square (L+1)x(L+1) table, row = label of s, column = label of t.
class PairTable {
 public:
  PairTable() = default;
  explicit PairTable(std::size_t label_count) : n_(label_count), values_(label_count * label_count) {}

  std::size_t label_count() const { return n_; }
  Rational& operator()(Label i, Label j) { return values_[i * n_ + j]; }
  const Rational& operator()(Label i, Label j) const { return values_[i * n_ + j]; }

  friend bool operator==(const PairTable&, const PairTable&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> values_;
};

/// One label per node.
class Labeling {
 public:
  Labeling() = default;
  explicit Labeling(std::vector<Label> values) : values_(std::move(values)) {}
  Labeling(std::initializer_list<Label> values) : values_(values) {}
  Labeling(std::size_t size, Label fill) : values_(size, fill) {}

  std::size_t size() const { return values_.size(); }
  Label& operator[](std::size_t s) { return values_[s]; }
  Label operator[](std::size_t s) const { return values_[s]; }
  const std::vector<Label>& values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  std::vector<Label> values_;
};

/// Component-wise x <= y.
bool dominated_by(const Labeling& x, const Labeling& y);

Labeling meet(const Labeling& x, const Labeling& y);
Labeling join(const Labeling& x, const Labeling& y);

std::string to_string(const Labeling& x);

/// Pairwise energy f(x) = f_0 + sum_s f_s(x_s) + sum_st f_st(x_s, x_t).
/// Shape is fixed at construction; values may be assigned afterwards.
class EnergyFunction {
 public:
  /// All-zero energy over `space`.
  explicit EnergyFunction(LabelSpace space);

  const LabelSpace& space() const { return space_; }
  std::size_t node_count() const { return space_.node_count(); }
  std::size_t label_count() const { return space_.label_count(); }
  std::size_t edge_count() const { return space_.edge_count(); }
  const Edge& edge(std::size_t e) const { return space_.edges()[e]; }

  Rational& constant() { return constant_; }
  const Rational& constant() const { return constant_; }
  Rational& unary(std::size_t s, Label i) { return unary_[s][i]; }
  const Rational& unary(std::size_t s, Label i) const { return unary_[s][i]; }
  const std::vector<Rational>& unary(std::size_t s) const { return unary_[s]; }
  PairTable& pairwise(std::size_t e) { return pairwise_[e]; }
  const PairTable& pairwise(std::size_t e) const { return pairwise_[e]; }

  friend bool operator==(const EnergyFunction&, const EnergyFunction&) = default;

 private:
  LabelSpace space_;
  Rational constant_;
  std::vector<std::vector<Rational>> unary_;
  std::vector<PairTable> pairwise_;
};

/// Throws InvalidArgument unless x has one valid label per node of f.
void check_labeling(const EnergyFunction& f, const Labeling& x);

Rational evaluate(const EnergyFunction& f, const Labeling& x);

/// f + g and f - g entry-wise; spaces must be equal.
EnergyFunction add(const EnergyFunction& f, const EnergyFunction& g);
EnergyFunction subtract(const EnergyFunction& f, const EnergyFunction& g);

/// Per-node permutation: `map(s)[i]` is the new index of original label i.
class Ordering {
 public:
  explicit Ordering(std::vector<std::vector<Label>> maps);
  static Ordering identity(std::size_t node_count, std::size_t label_count);

  std::size_t node_count() const { return maps_.size(); }
  const std::vector<Label>& map(std::size_t s) const { return maps_[s]; }
  Label operator()(std::size_t s, Label original) const { return maps_[s][original]; }
  Ordering inverse() const;

  friend bool operator==(const Ordering&, const Ordering&) = default;

 private:
  std::vector<std::vector<Label>> maps_;
};

/// f' with f'_s(pi_s(i)) = f_s(i) and f'_st(pi_s(i), pi_t(j)) = f_st(i, j).
EnergyFunction apply_ordering(const EnergyFunction& f, const Ordering& pi);
Labeling apply_ordering(const Labeling& x, const Ordering& pi);

enum class Strength { weak, strong };

std::string to_string(Strength strength);

/// Pair (x_min, x_max): the projection x -> (x v x_min) ^ x_max is claimed
/// not to increase energy (weak), or to strictly decrease it whenever it moves
/// x (strong).
struct Autarky {
  Autarky(Labeling lower, Labeling upper, Strength strength_, std::string provenance_ = {});

  Labeling x_min;
  Labeling x_max;
  Strength strength;
  std::string provenance;

  /// Full-range (identity) autarky over `space`.
  static Autarky identity(const LabelSpace& space, Strength strength = Strength::weak);

  /// Nodes where x_min_s == x_max_s.
  std::vector<std::size_t> fixed_nodes() const;
};

Labeling project_through(const Autarky& a, const Labeling& x);

/// (a.x_min v b.x_min, a.x_max ^ b.x_max). Both inputs must be strong.
Autarky join_autarkies(const Autarky& a, const Autarky& b);

/// Per-node allowed label sets K_s (sorted, nonempty).
struct DomainConstraint {
  DomainConstraint(std::vector<std::vector<Label>> allowed_, Strength strength_);

  std::vector<std::vector<Label>> allowed;
  Strength strength;

  static DomainConstraint full(const LabelSpace& space, Strength strength = Strength::strong);

  bool contains(const Labeling& x) const;
  bool contains(std::size_t s, Label i) const;
  /// Nodes whose domain is a single label.
  std::vector<std::size_t> fixed_nodes() const;
  /// K_s ^ K'_s per node; throws if some intersection is empty.
  DomainConstraint intersect(const DomainConstraint& other) const;
};

DomainConstraint autarky_to_constraint(const Autarky& a);

/// Label pair pairs that violate f_st(x)+f_st(y) >= f_st(x^y)+f_st(x v y).
struct SubmodularityWitness {
  std::size_t edge;
  Label x_s, x_t;
  Label y_s, y_t;
};

std::optional<SubmodularityWitness> find_submodularity_violation(const EnergyFunction& f);
std::optional<SubmodularityWitness> find_submodularity_violation(const PairTable& table);
inline bool is_submodular(const EnergyFunction& f) { return !find_submodularity_violation(f); }
std::string describe(const SubmodularityWitness& w, const EnergyFunction& f);

/// Non-negative, zero exactly on the diagonal, symmetric, triangle inequality.
bool is_metric(const PairTable& table);
bool is_metric(const EnergyFunction& f);

}  // namespace autarky

#endif  // AUTARKY_ENERGY_HPP
