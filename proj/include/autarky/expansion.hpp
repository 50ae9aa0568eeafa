#ifndef AUTARKY_EXPANSION_HPP
#define AUTARKY_EXPANSION_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "autarky/energy.hpp"
#include "autarky/kovtun.hpp"

namespace autarky::expansion {

/// Binary energy of the move "keep x_s (z_s = 0) or switch to k (z_s = 1)".
struct MoveEnergy {
  EnergyFunction g;
  Labeling x;
  Label k;
};

MoveEnergy move_energy(const EnergyFunction& f, const Labeling& x, Label k);

/// Labeling reached from x by the move z.
Labeling apply_move(const Labeling& x, Label k, const Labeling& z);

/// g_st(1,1) + g_st(0,0) - g_st(0,1) - g_st(1,0) of a two-label table.
Rational delta(const PairTable& table);
Rational delta(const MoveEnergy& g, std::size_t edge);

/// Truncation parameters per edge: alpha, beta >= 0 with alpha + beta <= 1.
class TruncationRule {
 public:
  /// The same (alpha, beta) on every edge. Defaults to (0, 1).
  explicit TruncationRule(Rational alpha = 0, Rational beta = 1);
  /// Per-edge parameters.
  TruncationRule(std::vector<Rational> alpha, std::vector<Rational> beta);

  const Rational& alpha(std::size_t edge) const { return uniform_ ? alpha_[0] : alpha_[edge]; }
  const Rational& beta(std::size_t edge) const { return uniform_ ? beta_[0] : beta_[edge]; }
  bool uniform() const { return uniform_; }
  /// Number of per-edge entries (1 for a uniform rule).
  std::size_t edge_count() const { return alpha_.size(); }

 private:
  bool uniform_;
  std::vector<Rational> alpha_;
  std::vector<Rational> beta_;
};

/// Edges with delta > 0 are rewritten so delta' = 0; all others untouched.
MoveEnergy truncate(const MoveEnergy& g, const TruncationRule& rule);

struct StepResult {
  Labeling x;
  bool improved;
};

/// One expansion move towards k: truncate if needed, take the lowest
/// minimizer z* of the (truncated) move energy, accept iff the true move
/// energy strictly improves.
StepResult expansion_step(const EnergyFunction& f, const Labeling& x, Label k,
                          const TruncationRule& rule = TruncationRule());

struct RunResult {
  Labeling x;
  bool fixed_point;
  /// Energy before the first sweep and after every completed sweep.
  std::vector<Rational> trace;
};

/// Sweeps k = 0..L until a full sweep changes nothing or `max_sweeps` sweeps
/// have run. A run that exhausts its budget reports fixed_point = false.
RunResult run_expansion(const EnergyFunction& f, const Labeling& x0, const TruncationRule& rule,
                        std::size_t max_sweeps);

/// For all z: g^{first}(z) - g^{first}(0) <= g^{second}(z) - g^{second}(0).
/// Exhaustive over z, so the move energy must have few nodes.
bool check_truncation_ordering(const MoveEnergy& g, const TruncationRule& first, const TruncationRule& second);

struct DominanceCheck {
  bool holds;
  /// A node with pi(x)_s < x_min_s, if any.
  std::optional<std::size_t> counterexample;
};

/// pi(x_fixed) >= x_min component-wise in the reordered space of `a`.
DominanceCheck verify_fixed_point_dominance(const Labeling& x_fixed, const kovtun::LabelResult& a);

}  // namespace autarky::expansion

#endif  // AUTARKY_EXPANSION_HPP
