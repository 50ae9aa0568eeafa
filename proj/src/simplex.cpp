#include "autarky/simplex.hpp"

#include <limits>
#include <stdexcept>

#include "autarky/error.hpp"

namespace autarky::lp {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
constexpr std::size_t degenerate_streak_limit = 16;
}  // namespace

std::size_t LinearProgram::add_variable(bool free) {
  free_.push_back(free);
  return free_.size() - 1;
}

void LinearProgram::add_constraint(std::vector<Term> terms, Relation relation, Rational rhs) {
  for (const Term& t : terms) {
    if (t.variable >= free_.size()) throw InvalidArgument("constraint references unknown variable");
  }
  constraints_.push_back({std::move(terms), relation, std::move(rhs)});
}

Solver::Solver(const LinearProgram& lp, PivotRule rule) : rule_(rule), variables_(lp.variable_count()) {
  positive_column_.resize(variables_);
  negative_column_.assign(variables_, npos);
  for (std::size_t v = 0; v < variables_; ++v) {
    positive_column_[v] = columns_++;
    if (lp.is_free(v)) negative_column_[v] = columns_++;
  }
  const auto& constraints = lp.constraints();
  std::vector<std::size_t> slack(constraints.size(), npos);
  for (std::size_t r = 0; r < constraints.size(); ++r) {
    if (constraints[r].relation != Relation::equal) slack[r] = columns_++;
  }
  const std::size_t structural = columns_;
  const std::size_t m = constraints.size();
  const std::size_t total = structural + m;  // artificials appended

  rows_.assign(m, std::vector<Rational>(total + 1));
  basis_.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    auto& row = rows_[r];
    const auto& c = constraints[r];
    for (const Term& t : c.terms) {
      row[positive_column_[t.variable]] += t.coefficient;
      if (negative_column_[t.variable] != npos) row[negative_column_[t.variable]] -= t.coefficient;
    }
    if (c.relation == Relation::less_equal) row[slack[r]] = 1;
    if (c.relation == Relation::greater_equal) row[slack[r]] = -1;
    row[total] = c.rhs;
    if (row[total] < 0) {
      for (auto& value : row) value = -value;
    }
    row[structural + r] = 1;
    basis_[r] = structural + r;
  }
  columns_ = total;

  // Phase one: minimize the sum of artificials.
  std::vector<Rational> reduced(total + 1);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < structural; ++j) reduced[j] -= rows_[r][j];
    reduced[total] -= rows_[r][total];
  }
  optimize(reduced, structural);
  feasible_ = reduced[total] == 0;
  if (!feasible_) return;

  // Drive artificials out of the basis; rows where that is impossible are redundant.
  for (std::size_t r = 0; r < rows_.size();) {
    if (basis_[r] < structural) {
      ++r;
      continue;
    }
    std::size_t column = npos;
    for (std::size_t j = 0; j < structural; ++j) {
      if (rows_[r][j] != 0) {
        column = j;
        break;
      }
    }
    if (column != npos) {
      pivot(r, column);
      ++r;
    } else {
      rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
      basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    }
  }
  for (auto& row : rows_) {
    Rational rhs = row[total];
    row.resize(structural + 1);
    row[structural] = rhs;
  }
  columns_ = structural;
}

void Solver::pivot(std::size_t row, std::size_t column) {
  ++pivots_;
  auto& p = rows_[row];
  const Rational scale = p[column];
  std::vector<std::size_t> nonzero;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] != 0) {
      p[j] /= scale;
      nonzero.push_back(j);
    }
  }
  Rational factor;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (r == row || rows_[r][column] == 0) continue;
    factor = rows_[r][column];
    auto& target = rows_[r];
    for (std::size_t j : nonzero) target[j] -= factor * p[j];
  }
  basis_[row] = column;
}

bool Solver::optimize(std::vector<Rational>& reduced, std::size_t column_limit) {
  const std::size_t rhs = rows_.empty() ? reduced.size() - 1 : rows_[0].size() - 1;
  std::size_t degenerate_streak = 0;
  while (true) {
    const bool use_bland = rule_ == PivotRule::bland || degenerate_streak >= degenerate_streak_limit;
    std::size_t entering = npos;
    for (std::size_t j = 0; j < column_limit; ++j) {
      if (reduced[j] < 0) {
        if (use_bland) {
          entering = j;
          break;
        }
        if (entering == npos || reduced[j] < reduced[entering]) entering = j;
      }
    }
    if (entering == npos) return true;

    std::size_t leaving = npos;
    Rational best_ratio, ratio;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& a = rows_[r][entering];
      if (a <= 0) continue;
      ratio = rows_[r][rhs] / a;
      if (leaving == npos || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leaving])) {
        leaving = r;
        best_ratio = ratio;
      }
    }
    if (leaving == npos) return false;

    degenerate_streak = best_ratio == 0 ? degenerate_streak + 1 : 0;
    // Update the reduced-cost row together with the tableau.
    const Rational factor = reduced[entering] / rows_[leaving][entering];
    const auto& p = rows_[leaving];
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] != 0) reduced[j] -= factor * p[j];
    }
    pivot(leaving, entering);
  }
}

std::vector<Rational> Solver::column_costs(const std::vector<Rational>& objective) const {
  if (objective.size() != variables_) throw InvalidArgument("objective length does not match variable count");
  std::vector<Rational> cost(columns_);
  for (std::size_t v = 0; v < variables_; ++v) {
    cost[positive_column_[v]] = objective[v];
    if (negative_column_[v] != npos) cost[negative_column_[v]] = -objective[v];
  }
  return cost;
}

Solution Solver::extract(Status status, const std::vector<Rational>& objective) const {
  Solution out;
  out.status = status;
  if (status != Status::optimal) return out;
  std::vector<Rational> column_value(columns_);
  for (std::size_t r = 0; r < rows_.size(); ++r) column_value[basis_[r]] = rows_[r][columns_];
  out.values.resize(variables_);
  out.value = 0;
  for (std::size_t v = 0; v < variables_; ++v) {
    out.values[v] = column_value[positive_column_[v]];
    if (negative_column_[v] != npos) out.values[v] -= column_value[negative_column_[v]];
    out.value += objective[v] * out.values[v];
  }
  out.basis = basis_;
  return out;
}

Solution Solver::minimize(const std::vector<Rational>& objective) {
  if (!feasible_) return extract(Status::infeasible, objective);
  std::vector<Rational> cost = column_costs(objective);
  std::vector<Rational> reduced(columns_ + 1);
  for (std::size_t j = 0; j < columns_; ++j) reduced[j] = cost[j];
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational& cb = cost[basis_[r]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j <= columns_; ++j) {
      if (rows_[r][j] != 0) reduced[j] -= cb * rows_[r][j];
    }
  }
  const bool bounded = optimize(reduced, columns_);
  return extract(bounded ? Status::optimal : Status::unbounded, objective);
}

Solution Solver::maximize(const std::vector<Rational>& objective) {
  std::vector<Rational> negated(objective.size());
  for (std::size_t v = 0; v < objective.size(); ++v) negated[v] = -objective[v];
  Solution s = minimize(negated);
  s.value = -s.value;
  return s;
}

Solution minimize(const LinearProgram& lp, const std::vector<Rational>& objective) {
  return Solver(lp).minimize(objective);
}

Solution maximize(const LinearProgram& lp, const std::vector<Rational>& objective) {
  return Solver(lp).maximize(objective);
}

}  // namespace autarky::lp
