#ifndef AUTARKY_FLOW_HPP
#define AUTARKY_FLOW_HPP

#include <cstddef>
#include <vector>

#include "autarky/energy.hpp"
#include "autarky/rational.hpp"

namespace autarky {

/// Directed network with nonnegative exact capacities.
class FlowNetwork {
 public:
  FlowNetwork(std::size_t node_count, std::size_t source, std::size_t sink);

  std::size_t node_count() const { return node_count_; }
  std::size_t source() const { return source_; }
  std::size_t sink() const { return sink_; }

  std::size_t add_node();
  /// Adds arc u->v. Zero-capacity arcs are kept (they matter for residual
  /// reachability only through their reverse direction, which stays empty).
  void add_arc(std::size_t u, std::size_t v, const Rational& capacity);

  struct Arc {
    std::size_t from;
    std::size_t to;
    Rational capacity;
  };
  const std::vector<Arc>& arcs() const { return arcs_; }

 private:
  std::size_t node_count_;
  std::size_t source_;
  std::size_t sink_;
  std::vector<Arc> arcs_;
};

struct CutSolution {
  Rational flow_value;
  /// Source sides of the inclusion-minimal and inclusion-maximal minimum cuts.
  std::vector<bool> minimal_source_side;
  std::vector<bool> maximal_source_side;
};

/// Capacity of the cut (S, V\S) where S is given by `source_side`.
Rational cut_capacity(const FlowNetwork& net, const std::vector<bool>& source_side);

/// Shortest augmenting path (Edmonds-Karp) over exact rationals.
CutSolution max_flow(const FlowNetwork& net);

struct SubmodularMinimum {
  Rational value;
  Labeling lowest;
  Labeling highest;
};

/// Exact minimization of a submodular pairwise energy through the layered
/// reduction: node s gets indicators y_{s,i} = [x_s >= i], i = 1..L, chained by
/// uncuttable arcs; pairwise tables decompose into unary terms plus
/// nonpositive second differences, each realized by one arc. Lowest and
/// highest minimizers come from the minimal and maximal minimum cuts.
/// Throws PreconditionError (with witness) if f is not submodular.
SubmodularMinimum minimize_submodular(const EnergyFunction& f);

/// (lowest minimizer, highest minimizer) as a strong autarky.
Autarky strong_autarky_from_minimizers(const EnergyFunction& f);

}  // namespace autarky

#endif  // AUTARKY_FLOW_HPP
