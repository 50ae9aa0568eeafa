#ifndef AUTARKY_SIMPLEX_HPP
#define AUTARKY_SIMPLEX_HPP

#include <cstddef>
#include <vector>

#include "autarky/rational.hpp"

namespace autarky::lp {

enum class Relation { less_equal, equal, greater_equal };

struct Term {
  std::size_t variable;
  Rational coefficient;
};

/// A linear program in general form: nonnegative or free variables, linear
/// constraints with <=, = or >=. The objective is supplied at solve time so
/// one feasible region can be optimized in several directions.
class LinearProgram {
 public:
  std::size_t add_variable(bool free = false);
  std::size_t variable_count() const { return free_.size(); }
  bool is_free(std::size_t v) const { return free_[v]; }

  void add_constraint(std::vector<Term> terms, Relation relation, Rational rhs);

  struct Constraint {
    std::vector<Term> terms;
    Relation relation;
    Rational rhs;
  };
  const std::vector<Constraint>& constraints() const { return constraints_; }

 private:
  std::vector<bool> free_;
  std::vector<Constraint> constraints_;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  Rational value;
  /// One entry per LP variable.
  std::vector<Rational> values;
  /// Standard-form column indices of the final basis.
  std::vector<std::size_t> basis;
};

enum class PivotRule {
  /// Smallest-index entering and leaving variables. Never cycles.
  bland,
  /// Most negative reduced cost; falls back to Bland's rule during runs of
  /// degenerate pivots so termination is still guaranteed.
  dantzig_with_bland_fallback,
};

/// Exact primal simplex over a dense rational tableau. The constructor runs
/// phase one; `minimize`/`maximize` then start from the current basis, so
/// re-optimizing the same region with a new objective is warm-started.
class Solver {
 public:
  explicit Solver(const LinearProgram& lp, PivotRule rule = PivotRule::dantzig_with_bland_fallback);

  bool feasible() const { return feasible_; }
  Solution minimize(const std::vector<Rational>& objective);
  Solution maximize(const std::vector<Rational>& objective);
  std::size_t pivot_count() const { return pivots_; }

 private:
  void pivot(std::size_t row, std::size_t column);
  /// Runs the simplex loop on `reduced` (length = columns); returns false if unbounded.
  bool optimize(std::vector<Rational>& reduced, std::size_t column_limit);
  std::vector<Rational> column_costs(const std::vector<Rational>& objective) const;
  Solution extract(Status status, const std::vector<Rational>& objective) const;

  PivotRule rule_;
  std::size_t variables_;
  std::vector<std::size_t> positive_column_;
  std::vector<std::size_t> negative_column_;  // SIZE_MAX if not free
  std::size_t columns_ = 0;
  std::vector<std::vector<Rational>> rows_;  // each row has columns_ + 1 entries (rhs last)
  std::vector<std::size_t> basis_;
  bool feasible_ = false;
  std::size_t pivots_ = 0;
};

Solution minimize(const LinearProgram& lp, const std::vector<Rational>& objective);
Solution maximize(const LinearProgram& lp, const std::vector<Rational>& objective);

}  // namespace autarky::lp

#endif  // AUTARKY_SIMPLEX_HPP
