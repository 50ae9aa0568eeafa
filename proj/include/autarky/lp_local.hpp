#ifndef AUTARKY_LP_LOCAL_HPP
#define AUTARKY_LP_LOCAL_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "autarky/energy.hpp"
#include "autarky/rational.hpp"
#include "autarky/simplex.hpp"

namespace autarky {

/// A point of the local polytope: node weights mu_{s,i} and edge weights
/// mu_{st,ij}; the constant component mu_0 is implicitly 1.
class RelaxedLabeling {
 public:
  /// All-zero weights (not a member of the polytope until filled in).
  explicit RelaxedLabeling(LabelSpace space);

  const LabelSpace& space() const { return space_; }
  Rational& node(std::size_t s, Label i) { return node_[s][i]; }
  const Rational& node(std::size_t s, Label i) const { return node_[s][i]; }
  Rational& edge(std::size_t e, Label i, Label j) { return edge_[e](i, j); }
  const Rational& edge(std::size_t e, Label i, Label j) const { return edge_[e](i, j); }

  /// Normalization, marginalization and nonnegativity, checked exactly.
  bool in_local_polytope() const;

  friend bool operator==(const RelaxedLabeling&, const RelaxedLabeling&) = default;

 private:
  LabelSpace space_;
  std::vector<std::vector<Rational>> node_;
  std::vector<PairTable> edge_;
};

/// Indicator embedding of a labeling.
RelaxedLabeling phi(const LabelSpace& space, const Labeling& x);

/// <f, mu> including the constant term f_0 * mu_0.
Rational inner(const EnergyFunction& f, const RelaxedLabeling& mu);

/// Affine combination a*mu + (1-a)*nu, used to build random polytope points.
RelaxedLabeling mix(const Rational& a, const RelaxedLabeling& mu, const RelaxedLabeling& nu);

/// mu "truncated from above" at y: mass above y_s collapses onto y_s.
RelaxedLabeling barwedge(const RelaxedLabeling& mu, const Labeling& y);
/// mu "truncated from below" at y: mass below y_s collapses onto y_s.
RelaxedLabeling veebar(const RelaxedLabeling& mu, const Labeling& y);

enum class MapOrder {
  /// (mu veebar x_min) barwedge x_max, so phi(x) maps to phi((x v x_min) ^ x_max).
  projection,
  /// (mu barwedge x_min) veebar x_max, composition order as literally printed.
  paper_literal,
};

/// The linear map of an autarky pair on relaxed labelings. Both pairings act
/// on every node as a label clamp, so the map moves the whole weight of label
/// i at node s onto label target(s, i).
class AutarkyMap {
 public:
  AutarkyMap(Labeling x_min, Labeling x_max, MapOrder order = MapOrder::projection);

  const Labeling& x_min() const { return x_min_; }
  const Labeling& x_max() const { return x_max_; }
  MapOrder order() const { return order_; }
  Label target(std::size_t s, Label i) const;

 private:
  Labeling x_min_;
  Labeling x_max_;
  MapOrder order_;
};

AutarkyMap autarky_map(const Autarky& a, MapOrder order = MapOrder::projection);
RelaxedLabeling apply_map(const AutarkyMap& map, const RelaxedLabeling& mu);

struct LpSolution {
  Rational value;
  RelaxedLabeling optimizer;
  std::vector<std::size_t> basis;
};

/// Exact minimum of <f, mu> over the local polytope. When `allowed` is given,
/// mu_{s,i} is forced to zero outside K_s.
LpSolution solve_lp(const EnergyFunction& f, const DomainConstraint* allowed = nullptr);

struct LpAutarkyCheck {
  bool holds;
  /// min over the polytope of <f, mu - A mu>.
  Rational optimum;
  /// Optimizer of the verification LP; a counterexample when `holds` is false.
  RelaxedLabeling certificate;
};

LpAutarkyCheck verify_weak_lp_autarky(const EnergyFunction& f, const Autarky& a,
                                      MapOrder order = MapOrder::projection);

/// True iff every mu with A mu != mu strictly decreases under A. Decided by
/// maximizing the weight outside the fixed labels of A over the optimal face
/// of the weak verification LP: strong iff that maximum is zero.
/// Precondition: the weak check holds (throws PreconditionError otherwise).
bool verify_strong_lp_autarky(const EnergyFunction& f, const Autarky& a, MapOrder order = MapOrder::projection);

/// <mu,f> + <phi(y),f> >= <mu barwedge y, f> + <mu veebar y, f>, evaluated exactly.
bool check_relax_submodular(const EnergyFunction& f, const RelaxedLabeling& mu, const Labeling& y);

struct OptimalSupport {
  Rational value;
  /// supported[s][i]: some LP optimizer puts positive weight on (s,i).
  std::vector<std::vector<bool>> supported;
};

OptimalSupport optimal_support(const EnergyFunction& f);

/// For two-label energies: x_min_s / x_max_s are the smallest / largest
/// label in the optimal support at s. Throws InvalidArgument otherwise.
Autarky roof_dual_autarky(const EnergyFunction& f);

}  // namespace autarky

#endif  // AUTARKY_LP_LOCAL_HPP
