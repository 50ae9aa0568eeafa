#ifndef AUTARKY_ORACLE_HPP
#define AUTARKY_ORACLE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "autarky/energy.hpp"

namespace autarky::oracle {

/// Default cap on (L+1)^|V| for exhaustive enumeration.
inline constexpr std::size_t default_budget = 2'000'000;

/// Number of labelings of f, or nullopt if it exceeds `budget`.
std::optional<std::size_t> labeling_count(const EnergyFunction& f, std::size_t budget = default_budget);

/// Calls `visit` on every labeling in mixed-radix order (node 0 fastest).
/// Throws BudgetExceeded when the space is larger than `budget`.
void for_each_labeling(const EnergyFunction& f, const std::function<void(const Labeling&)>& visit,
                       std::size_t budget = default_budget);

struct MinimizerSet {
  Rational value;
  std::vector<Labeling> minimizers;
  Labeling meet;
  Labeling join;
};

MinimizerSet enumerate_minimizers(const EnergyFunction& f, std::size_t budget = default_budget);

/// Verdict lattice: none < weak < strong.
enum class Verdict { none, weak, strong };

std::string to_string(Verdict v);

struct AutarkyVerdict {
  Verdict verdict;
  /// A labeling whose projection increases the energy (verdict none), or
  /// whose projection moves it without strict decrease (verdict weak).
  std::optional<Labeling> witness;
};

/// Definition-level check of f((x v x_min) ^ x_max) <= f(x) over all x.
AutarkyVerdict check_autarky_definition(const EnergyFunction& f, const Autarky& a,
                                        std::size_t budget = default_budget);

/// strong: every minimizer lies in the constraint; weak: at least one does.
Verdict check_persistency(const EnergyFunction& f, const DomainConstraint& c, std::size_t budget = default_budget);
Verdict check_persistency(const MinimizerSet& minimizers, const DomainConstraint& c);

}  // namespace autarky::oracle

#endif  // AUTARKY_ORACLE_HPP
