#ifndef AUTARKY_KOVTUN_HPP
#define AUTARKY_KOVTUN_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "autarky/energy.hpp"

namespace autarky::kovtun {

using LabelSets = std::vector<std::vector<Label>>;

/// f = g + h with g submodular; K_s are the label sets h is checked against.
struct AuxiliaryDecomposition {
  EnergyFunction g;
  EnergyFunction h;
  LabelSets K;
};

enum class ConditionVerdict { fails, weak, strong };

std::string to_string(ConditionVerdict v);

struct ConditionCheck {
  ConditionVerdict verdict;
  /// Human-readable description of the first violated inequality, if any.
  std::string violation;
};

/// Sufficient conditions for (y, L) to be an autarky of h for every y with
/// y_s in K_s:
///   (a) h_s(x_s v k) <= h_s(x_s)          for all x_s, k in K_s
///   (b) h_st(x_st v k_st) <= h_st(x_st)   for all x_st, k_st in K_s x K_t
/// and, for strong, (c) h_s(k) < h_s(x_s) whenever x_s < k in K_s.
ConditionCheck check_sufficient_conditions(const EnergyFunction& h, const LabelSets& K);

/// Per-edge pairwise values of the one-vs-all auxiliary: a at (L,L), b at
/// (L, j<L), c at (i<L, L), d on the remaining block.
struct EdgeCoefficients {
  Rational a, b, c, d;
};

/// Coefficients for a table already expressed in the reordered label space.
/// With `capped`, d is clamped to b + c - a so the block structure is
/// submodular; without it d is the raw minimum (possibly non-submodular).
EdgeCoefficients one_vs_all_coefficients(const PairTable& table, bool capped = true);

/// Per node: `target` -> L, the smallest label attaining min_{i != target} f_s(i)
/// -> 0, the remaining labels keep their relative order on 1..L-1.
Ordering one_vs_all_ordering(const EnergyFunction& f, Label target);

struct OneVsAllAuxiliary {
  Label target;
  Ordering ordering;
  /// f in the reordered label space.
  EnergyFunction reordered;
  /// g, h = f' - g and K_s = {0, L}, all in the reordered space.
  AuxiliaryDecomposition aux;
  std::vector<EdgeCoefficients> coefficients;
};

OneVsAllAuxiliary one_vs_all_auxiliary(const EnergyFunction& f, Label target, bool capped = true);

/// The auxiliary restricted to labels {0, L}: two-label energy whose label 1
/// stands for L. Unaries g_s(0), g_s(L); pairwise [[d, c], [b, a]].
EnergyFunction two_label_reduction(const OneVsAllAuxiliary& aux);

/// Lowest minimizer of g in the reordered space; every entry is 0 or L.
Labeling solve_one_vs_all(const OneVsAllAuxiliary& aux);

struct LabelResult {
  Label target;
  Ordering ordering;
  /// (x_min, all-L) in the reordered space.
  Autarky reordered;
  /// The same projection in the original label space: fixed nodes get
  /// [target, target], the others [0, L].
  Autarky original;

  std::vector<std::size_t> fixed_nodes() const { return original.fixed_nodes(); }
};

LabelResult one_vs_all(const EnergyFunction& f, Label target);

struct AllLabelsResult {
  std::vector<LabelResult> per_label;
  /// Join of all per-label autarkies (original space).
  Autarky combined;
  DomainConstraint constraint;
};

/// Runs one-vs-all for every target label and combines the strong results.
/// `threads` > 1 runs the targets concurrently; merging is deterministic.
AllLabelsResult one_vs_all_all_labels(const EnergyFunction& f, std::size_t threads = 1);

struct SequentialResult {
  Ordering ordering;
  /// (x_min, all-L) in the reordered space; vacuous when `aborted`.
  Autarky reordered;
  /// {i : pi_s(i) >= x_min_s} in the original space.
  DomainConstraint constraint;
  /// Final decomposition (reordered space); absent when aborted.
  std::optional<AuxiliaryDecomposition> aux;
  std::size_t iterations = 0;
  bool aborted = false;
};

/// Grows K_s with successive lowest minimizers of auxiliary submodular
/// problems. Each edge's g_st solves a small LP: g submodular, h = f' - g
/// satisfying (b) for the current K, closest to f' in L1. Unaries g_s = f'_s.
SequentialResult sequential_kovtun(const EnergyFunction& f, const Ordering& pi);

struct SequentialAllLabelsResult {
  std::vector<SequentialResult> per_label;
  DomainConstraint constraint;
};

/// sequential_kovtun once per target label, using the one-vs-all ordering.
SequentialAllLabelsResult sequential_all_labels(const EnergyFunction& f);

/// One-vs-all with the uncapped d and a roof-dual solve of the (possibly
/// non-submodular) two-label auxiliary. The roof-dual candidate is kept only
/// if it passes the exact strong LP-autarky check on that auxiliary; the
/// result is joined with the capped one-vs-all autarky.
LabelResult improved_one_vs_all(const EnergyFunction& f, Label target);

}  // namespace autarky::kovtun

#endif  // AUTARKY_KOVTUN_HPP
