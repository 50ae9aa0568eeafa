#include "autarky/lp_local.hpp"

#include <algorithm>

#include "autarky/error.hpp"

namespace autarky {

RelaxedLabeling::RelaxedLabeling(LabelSpace space)
    : space_(std::move(space)),
      node_(space_.node_count(), std::vector<Rational>(space_.label_count())),
      edge_(space_.edge_count(), PairTable(space_.label_count())) {}

bool RelaxedLabeling::in_local_polytope() const {
  const std::size_t n = space_.label_count();
  for (std::size_t s = 0; s < space_.node_count(); ++s) {
    Rational total = 0;
    for (Label i = 0; i < n; ++i) {
      if (node_[s][i] < 0) return false;
      total += node_[s][i];
    }
    if (total != 1) return false;
  }
  for (std::size_t e = 0; e < space_.edge_count(); ++e) {
    const Edge& st = space_.edges()[e];
    Rational total = 0;
    for (Label i = 0; i < n; ++i) {
      Rational row = 0, column = 0;
      for (Label j = 0; j < n; ++j) {
        if (edge_[e](i, j) < 0) return false;
        row += edge_[e](i, j);
        column += edge_[e](j, i);
      }
      if (row != node_[st.s][i] || column != node_[st.t][i]) return false;
      total += row;
    }
    if (total != 1) return false;
  }
  return true;
}

RelaxedLabeling phi(const LabelSpace& space, const Labeling& x) {
  if (x.size() != space.node_count()) throw InvalidArgument("labeling length mismatch");
  RelaxedLabeling mu(space);
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (x[s] >= space.label_count()) throw InvalidArgument("label out of range");
    mu.node(s, x[s]) = 1;
  }
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    const Edge& st = space.edges()[e];
    mu.edge(e, x[st.s], x[st.t]) = 1;
  }
  return mu;
}

Rational inner(const EnergyFunction& f, const RelaxedLabeling& mu) {
  if (!(f.space() == mu.space())) throw InvalidArgument("relaxed labeling over a different space");
  const std::size_t n = f.label_count();
  Rational total = f.constant();
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    for (Label i = 0; i < n; ++i) total += f.unary(s, i) * mu.node(s, i);
  }
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    for (Label i = 0; i < n; ++i) {
      for (Label j = 0; j < n; ++j) total += f.pairwise(e)(i, j) * mu.edge(e, i, j);
    }
  }
  return total;
}

RelaxedLabeling mix(const Rational& a, const RelaxedLabeling& mu, const RelaxedLabeling& nu) {
  if (!(mu.space() == nu.space())) throw InvalidArgument("relaxed labelings over different spaces");
  const LabelSpace& space = mu.space();
  const std::size_t n = space.label_count();
  const Rational b = 1 - a;
  RelaxedLabeling out(space);
  for (std::size_t s = 0; s < space.node_count(); ++s) {
    for (Label i = 0; i < n; ++i) out.node(s, i) = a * mu.node(s, i) + b * nu.node(s, i);
  }
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    for (Label i = 0; i < n; ++i) {
      for (Label j = 0; j < n; ++j) out.edge(e, i, j) = a * mu.edge(e, i, j) + b * nu.edge(e, i, j);
    }
  }
  return out;
}

namespace {

// The two operators differ only in which side of y_s is collapsed; `above`
// selects barwedge (labels above y collapse down) versus veebar.
RelaxedLabeling collapse(const RelaxedLabeling& mu, const Labeling& y, bool above) {
  const LabelSpace& space = mu.space();
  if (y.size() != space.node_count()) throw InvalidArgument("labeling length mismatch");
  const std::size_t n = space.label_count();
  auto kept = [&](Label i, Label bound) { return above ? i < bound : i > bound; };
  auto beyond = [&](Label i, Label bound) { return above ? i > bound : i < bound; };

  RelaxedLabeling nu(space);
  for (std::size_t s = 0; s < space.node_count(); ++s) {
    for (Label i = 0; i < n; ++i) {
      if (kept(i, y[s])) {
        nu.node(s, i) = mu.node(s, i);
      } else if (i == y[s]) {
        Rational sum = 0;
        for (Label k = 0; k < n; ++k) {
          if (!kept(k, y[s])) sum += mu.node(s, k);
        }
        nu.node(s, i) = sum;
      }
    }
  }
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    const Edge& st = space.edges()[e];
    const Label ys = y[st.s], yt = y[st.t];
    for (Label i = 0; i < n; ++i) {
      for (Label j = 0; j < n; ++j) {
        if (beyond(i, ys) || beyond(j, yt)) continue;
        Rational sum = 0;
        if (kept(i, ys) && kept(j, yt)) {
          sum = mu.edge(e, i, j);
        } else if (i == ys && kept(j, yt)) {
          for (Label k = 0; k < n; ++k) {
            if (!kept(k, ys)) sum += mu.edge(e, k, j);
          }
        } else if (kept(i, ys) && j == yt) {
          for (Label l = 0; l < n; ++l) {
            if (!kept(l, yt)) sum += mu.edge(e, i, l);
          }
        } else {
          for (Label k = 0; k < n; ++k) {
            for (Label l = 0; l < n; ++l) {
              if (!kept(k, ys) && !kept(l, yt)) sum += mu.edge(e, k, l);
            }
          }
        }
        nu.edge(e, i, j) = sum;
      }
    }
  }
  return nu;
}

}  // namespace

RelaxedLabeling barwedge(const RelaxedLabeling& mu, const Labeling& y) { return collapse(mu, y, true); }

RelaxedLabeling veebar(const RelaxedLabeling& mu, const Labeling& y) { return collapse(mu, y, false); }

AutarkyMap::AutarkyMap(Labeling x_min, Labeling x_max, MapOrder order)
    : x_min_(std::move(x_min)), x_max_(std::move(x_max)), order_(order) {
  if (!dominated_by(x_min_, x_max_)) throw InvalidArgument("autarky map requires x_min <= x_max");
}

Label AutarkyMap::target(std::size_t s, Label i) const {
  if (order_ == MapOrder::projection) return std::min(std::max(i, x_min_[s]), x_max_[s]);
  return std::max(std::min(i, x_min_[s]), x_max_[s]);
}

AutarkyMap autarky_map(const Autarky& a, MapOrder order) { return AutarkyMap(a.x_min, a.x_max, order); }

RelaxedLabeling apply_map(const AutarkyMap& map, const RelaxedLabeling& mu) {
  if (map.order() == MapOrder::projection) return barwedge(veebar(mu, map.x_min()), map.x_max());
  return veebar(barwedge(mu, map.x_min()), map.x_max());
}

namespace {

// Variables of the local polytope LP: node weights first, then edge weights.
class LocalPolytope {
 public:
  explicit LocalPolytope(const LabelSpace& space) : space_(space), n_(space.label_count()) {
    const std::size_t count = space.node_count() * n_ + space.edge_count() * n_ * n_;
    for (std::size_t v = 0; v < count; ++v) lp_.add_variable();
    for (std::size_t s = 0; s < space.node_count(); ++s) {
      std::vector<lp::Term> terms;
      for (Label i = 0; i < n_; ++i) terms.push_back({node(s, i), 1});
      lp_.add_constraint(std::move(terms), lp::Relation::equal, 1);
    }
    // Edge normalization follows from node normalization and marginalization.
    for (std::size_t e = 0; e < space.edge_count(); ++e) {
      const Edge& st = space.edges()[e];
      for (Label i = 0; i < n_; ++i) {
        std::vector<lp::Term> row{{node(st.s, i), -1}};
        std::vector<lp::Term> column{{node(st.t, i), -1}};
        for (Label j = 0; j < n_; ++j) {
          row.push_back({edge(e, i, j), 1});
          column.push_back({edge(e, j, i), 1});
        }
        lp_.add_constraint(std::move(row), lp::Relation::equal, 0);
        lp_.add_constraint(std::move(column), lp::Relation::equal, 0);
      }
    }
  }

  std::size_t node(std::size_t s, Label i) const { return s * n_ + i; }
  std::size_t edge(std::size_t e, Label i, Label j) const {
    return space_.node_count() * n_ + e * n_ * n_ + i * n_ + j;
  }
  lp::LinearProgram& program() { return lp_; }

  std::vector<Rational> objective(const EnergyFunction& f) const {
    std::vector<Rational> c(lp_.variable_count());
    for (std::size_t s = 0; s < f.node_count(); ++s) {
      for (Label i = 0; i < n_; ++i) c[node(s, i)] = f.unary(s, i);
    }
    for (std::size_t e = 0; e < f.edge_count(); ++e) {
      for (Label i = 0; i < n_; ++i) {
        for (Label j = 0; j < n_; ++j) c[edge(e, i, j)] = f.pairwise(e)(i, j);
      }
    }
    return c;
  }

  RelaxedLabeling decode(const std::vector<Rational>& values) const {
    RelaxedLabeling mu(space_);
    for (std::size_t s = 0; s < space_.node_count(); ++s) {
      for (Label i = 0; i < n_; ++i) mu.node(s, i) = values[node(s, i)];
    }
    for (std::size_t e = 0; e < space_.edge_count(); ++e) {
      for (Label i = 0; i < n_; ++i) {
        for (Label j = 0; j < n_; ++j) mu.edge(e, i, j) = values[edge(e, i, j)];
      }
    }
    return mu;
  }

  void forbid(const DomainConstraint& allowed) {
    for (std::size_t s = 0; s < space_.node_count(); ++s) {
      for (Label i = 0; i < n_; ++i) {
        if (!allowed.contains(s, i)) lp_.add_constraint({{node(s, i), 1}}, lp::Relation::equal, 0);
      }
    }
  }

 private:
  const LabelSpace& space_;
  std::size_t n_;
  lp::LinearProgram lp_;
};

// Cost vector of mu -> <f, mu - A mu> (without the constant term).
std::vector<Rational> map_gap_objective(const LocalPolytope& poly, const EnergyFunction& f, const AutarkyMap& map) {
  const std::size_t n = f.label_count();
  std::vector<Rational> c = poly.objective(f);
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    for (Label i = 0; i < n; ++i) c[poly.node(s, i)] -= f.unary(s, map.target(s, i));
  }
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    const Edge& st = f.edge(e);
    for (Label i = 0; i < n; ++i) {
      for (Label j = 0; j < n; ++j) {
        c[poly.edge(e, i, j)] -= f.pairwise(e)(map.target(st.s, i), map.target(st.t, j));
      }
    }
  }
  return c;
}

void check_autarky_space(const EnergyFunction& f, const Autarky& a) {
  check_labeling(f, a.x_min);
  check_labeling(f, a.x_max);
}

}  // namespace

LpSolution solve_lp(const EnergyFunction& f, const DomainConstraint* allowed) {
  LocalPolytope poly(f.space());
  if (allowed) poly.forbid(*allowed);
  lp::Solution s = lp::minimize(poly.program(), poly.objective(f));
  if (s.status != lp::Status::optimal) throw Error("local polytope LP is infeasible under the given constraint");
  return {s.value + f.constant(), poly.decode(s.values), s.basis};
}

LpAutarkyCheck verify_weak_lp_autarky(const EnergyFunction& f, const Autarky& a, MapOrder order) {
  check_autarky_space(f, a);
  LocalPolytope poly(f.space());
  AutarkyMap map = autarky_map(a, order);
  lp::Solution s = lp::minimize(poly.program(), map_gap_objective(poly, f, map));
  return {s.value >= 0, s.value, poly.decode(s.values)};
}

bool verify_strong_lp_autarky(const EnergyFunction& f, const Autarky& a, MapOrder order) {
  check_autarky_space(f, a);
  LocalPolytope poly(f.space());
  AutarkyMap map = autarky_map(a, order);
  std::vector<Rational> gap = map_gap_objective(poly, f, map);
  {
    lp::Solution weak = lp::minimize(poly.program(), gap);
    if (weak.value < 0) throw PreconditionError("pair is not a weak LP-autarky");
  }
  // Fixed points of A have gap 0, so the weak optimum is exactly 0.
  std::vector<lp::Term> face;
  for (std::size_t v = 0; v < gap.size(); ++v) {
    if (gap[v] != 0) face.push_back({v, gap[v]});
  }
  poly.program().add_constraint(std::move(face), lp::Relation::equal, 0);

  std::vector<Rational> moved(gap.size());
  bool any_moved = false;
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    for (Label i = 0; i < f.label_count(); ++i) {
      if (map.target(s, i) != i) {
        moved[poly.node(s, i)] = 1;
        any_moved = true;
      }
    }
  }
  if (!any_moved) return true;
  lp::Solution worst = lp::maximize(poly.program(), moved);
  return worst.value == 0;
}

bool check_relax_submodular(const EnergyFunction& f, const RelaxedLabeling& mu, const Labeling& y) {
  const Rational lhs = inner(f, mu) + evaluate(f, y);
  const Rational rhs = inner(f, barwedge(mu, y)) + inner(f, veebar(mu, y));
  return lhs >= rhs;
}

OptimalSupport optimal_support(const EnergyFunction& f) {
  LocalPolytope poly(f.space());
  std::vector<Rational> cost = poly.objective(f);
  lp::Solution best = lp::minimize(poly.program(), cost);

  std::vector<lp::Term> face;
  for (std::size_t v = 0; v < cost.size(); ++v) {
    if (cost[v] != 0) face.push_back({v, cost[v]});
  }
  if (!face.empty()) poly.program().add_constraint(std::move(face), lp::Relation::equal, best.value);

  const std::size_t n = f.label_count();
  OptimalSupport out{best.value + f.constant(),
                     std::vector<std::vector<bool>>(f.node_count(), std::vector<bool>(n, false))};
  auto absorb = [&](const std::vector<Rational>& values) {
    for (std::size_t s = 0; s < f.node_count(); ++s) {
      for (Label i = 0; i < n; ++i) {
        if (values[poly.node(s, i)] > 0) out.supported[s][i] = true;
      }
    }
  };
  absorb(best.values);

  lp::Solver solver(poly.program());
  std::vector<Rational> probe(cost.size());
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    for (Label i = 0; i < n; ++i) {
      if (out.supported[s][i]) continue;
      probe[poly.node(s, i)] = 1;
      lp::Solution r = solver.maximize(probe);
      probe[poly.node(s, i)] = 0;
      absorb(r.values);
    }
  }
  return out;
}

Autarky roof_dual_autarky(const EnergyFunction& f) {
  if (f.label_count() != 2) throw InvalidArgument("roof dual is defined for two-label energies");
  OptimalSupport support = optimal_support(f);
  std::vector<Label> lower(f.node_count()), upper(f.node_count());
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    lower[s] = support.supported[s][0] ? 0 : 1;
    upper[s] = support.supported[s][1] ? 1 : 0;
  }
  return Autarky(Labeling(std::move(lower)), Labeling(std::move(upper)), Strength::strong, "roof-dual");
}

}  // namespace autarky
