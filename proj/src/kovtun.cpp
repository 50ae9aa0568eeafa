#include "autarky/kovtun.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "autarky/error.hpp"
#include "autarky/flow.hpp"
#include "autarky/lp_local.hpp"
#include "autarky/simplex.hpp"

namespace autarky::kovtun {

std::string to_string(ConditionVerdict v) {
  switch (v) {
    case ConditionVerdict::fails:
      return "fails";
    case ConditionVerdict::weak:
      return "weak";
    case ConditionVerdict::strong:
      return "strong";
  }
  return "fails";
}

ConditionCheck check_sufficient_conditions(const EnergyFunction& h, const LabelSets& K) {
  if (K.size() != h.node_count()) throw InvalidArgument("one label set per node required");
  const std::size_t n = h.label_count();
  for (std::size_t s = 0; s < K.size(); ++s) {
    if (K[s].empty()) throw InvalidArgument("empty label set at node " + std::to_string(s));
    for (Label k : K[s]) {
      if (k >= n) throw InvalidArgument("label set entry out of range at node " + std::to_string(s));
    }
  }

  for (std::size_t s = 0; s < h.node_count(); ++s) {
    for (Label x = 0; x < n; ++x) {
      for (Label k : K[s]) {
        if (h.unary(s, std::max(x, k)) > h.unary(s, x)) {
          std::ostringstream out;
          out << "(a) node " << s << ": h(" << std::max(x, k) << ") > h(" << x << ") for k=" << k;
          return {ConditionVerdict::fails, out.str()};
        }
      }
    }
  }
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    const Edge& st = h.edge(e);
    const PairTable& t = h.pairwise(e);
    for (Label i = 0; i < n; ++i) {
      for (Label j = 0; j < n; ++j) {
        for (Label p : K[st.s]) {
          for (Label q : K[st.t]) {
            if (t(std::max(i, p), std::max(j, q)) > t(i, j)) {
              std::ostringstream out;
              out << "(b) edge " << e << ": h(" << std::max(i, p) << "," << std::max(j, q) << ") > h(" << i << ","
                  << j << ") for k=(" << p << "," << q << ")";
              return {ConditionVerdict::fails, out.str()};
            }
          }
        }
      }
    }
  }
  for (std::size_t s = 0; s < h.node_count(); ++s) {
    for (Label k : K[s]) {
      for (Label x = 0; x < k; ++x) {
        if (!(h.unary(s, k) < h.unary(s, x))) {
          std::ostringstream out;
          out << "(c) node " << s << ": h(" << k << ") not below h(" << x << ")";
          return {ConditionVerdict::weak, out.str()};
        }
      }
    }
  }
  return {ConditionVerdict::strong, {}};
}

EdgeCoefficients one_vs_all_coefficients(const PairTable& t, bool capped) {
  const std::size_t n = t.label_count();
  if (n < 2) throw InvalidArgument("one-vs-all needs at least two labels");
  const Label top = n - 1;
  EdgeCoefficients out;
  out.a = t(top, top);
  out.b = t(top, 0);
  out.c = t(0, top);
  for (Label j = 1; j < top; ++j) out.b = std::min(out.b, t(top, j));
  for (Label i = 1; i < top; ++i) out.c = std::min(out.c, t(i, top));
  bool first = true;
  for (Label i = 0; i < top; ++i) {
    for (Label j = 0; j < top; ++j) {
      Rational candidate = t(i, j) + std::min(Rational(out.b - t(top, j)), Rational(out.c - t(i, top)));
      if (first || candidate < out.d) out.d = candidate;
      first = false;
    }
  }
  if (capped) out.d = std::min(out.d, Rational(out.b + out.c - out.a));
  return out;
}

Ordering one_vs_all_ordering(const EnergyFunction& f, Label target) {
  const std::size_t n = f.label_count();
  if (n < 2) throw InvalidArgument("one-vs-all needs at least two labels");
  if (target >= n) throw InvalidArgument("target label out of range");
  std::vector<std::vector<Label>> maps(f.node_count(), std::vector<Label>(n));
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    Label best = target == 0 ? 1 : 0;
    for (Label i = 0; i < n; ++i) {
      if (i != target && f.unary(s, i) < f.unary(s, best)) best = i;
    }
    maps[s][target] = n - 1;
    maps[s][best] = 0;
    Label next = 1;
    for (Label i = 0; i < n; ++i) {
      if (i != target && i != best) maps[s][i] = next++;
    }
  }
  return Ordering(std::move(maps));
}

OneVsAllAuxiliary one_vs_all_auxiliary(const EnergyFunction& f, Label target, bool capped) {
  Ordering pi = one_vs_all_ordering(f, target);
  EnergyFunction fr = apply_ordering(f, pi);
  const std::size_t n = f.label_count();
  const Label top = n - 1;

  EnergyFunction g(fr.space());
  g.constant() = fr.constant();
  for (std::size_t s = 0; s < fr.node_count(); ++s) {
    for (Label i = 0; i < n; ++i) g.unary(s, i) = fr.unary(s, i);
  }
  std::vector<EdgeCoefficients> coefficients;
  for (std::size_t e = 0; e < fr.edge_count(); ++e) {
    EdgeCoefficients k = one_vs_all_coefficients(fr.pairwise(e), capped);
    PairTable& t = g.pairwise(e);
    for (Label i = 0; i < n; ++i) {
      for (Label j = 0; j < n; ++j) {
        if (i == top && j == top) {
          t(i, j) = k.a;
        } else if (i == top) {
          t(i, j) = k.b;
        } else if (j == top) {
          t(i, j) = k.c;
        } else {
          t(i, j) = k.d;
        }
      }
    }
    coefficients.push_back(k);
  }
  EnergyFunction h = subtract(fr, g);
  LabelSets K(f.node_count(), std::vector<Label>{0, top});
  return {target, std::move(pi), std::move(fr), {std::move(g), std::move(h), std::move(K)}, std::move(coefficients)};
}

EnergyFunction two_label_reduction(const OneVsAllAuxiliary& aux) {
  const EnergyFunction& g = aux.aux.g;
  const Label top = g.space().top();
  EnergyFunction out(LabelSpace(g.node_count(), 2, g.space().edges()));
  out.constant() = g.constant();
  for (std::size_t s = 0; s < g.node_count(); ++s) {
    out.unary(s, 0) = g.unary(s, 0);
    out.unary(s, 1) = g.unary(s, top);
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const EdgeCoefficients& k = aux.coefficients[e];
    PairTable& t = out.pairwise(e);
    t(0, 0) = k.d;
    t(0, 1) = k.c;
    t(1, 0) = k.b;
    t(1, 1) = k.a;
  }
  return out;
}

Labeling solve_one_vs_all(const OneVsAllAuxiliary& aux) {
  const Label top = aux.aux.g.space().top();
  SubmodularMinimum m = minimize_submodular(two_label_reduction(aux));
  std::vector<Label> x(m.lowest.size());
  for (std::size_t s = 0; s < x.size(); ++s) x[s] = m.lowest[s] == 1 ? top : 0;
  return Labeling(std::move(x));
}

namespace {

LabelResult lift(const EnergyFunction& f, Label target, Ordering pi, const Labeling& reordered_min,
                 const std::string& provenance) {
  const std::size_t nodes = f.node_count();
  const Label top = f.space().top();
  std::vector<Label> lower(nodes, 0), upper(nodes, top);
  for (std::size_t s = 0; s < nodes; ++s) {
    if (reordered_min[s] == top) lower[s] = upper[s] = target;
  }
  Autarky reordered(reordered_min, Labeling(nodes, top), Strength::strong, provenance);
  Autarky original(Labeling(std::move(lower)), Labeling(std::move(upper)), Strength::strong, provenance);
  return {target, std::move(pi), std::move(reordered), std::move(original)};
}

}  // namespace

LabelResult one_vs_all(const EnergyFunction& f, Label target) {
  OneVsAllAuxiliary aux = one_vs_all_auxiliary(f, target);
  Labeling x_min = solve_one_vs_all(aux);
  return lift(f, target, std::move(aux.ordering), x_min, "one-vs-all:" + std::to_string(target));
}

AllLabelsResult one_vs_all_all_labels(const EnergyFunction& f, std::size_t threads) {
  const std::size_t n = f.label_count();
  std::vector<LabelResult> per_label;
  if (threads > 1) {
    std::vector<std::future<LabelResult>> pending;
    for (Label k = 0; k < n; ++k) pending.push_back(std::async(std::launch::async, [&f, k] { return one_vs_all(f, k); }));
    for (auto& p : pending) per_label.push_back(p.get());
  } else {
    for (Label k = 0; k < n; ++k) per_label.push_back(one_vs_all(f, k));
  }
  Autarky combined = Autarky::identity(f.space(), Strength::strong);
  combined.provenance = "one-vs-all";
  for (const LabelResult& r : per_label) {
    combined = join_autarkies(combined, r.original);
    combined.provenance = "one-vs-all";
  }
  DomainConstraint constraint = autarky_to_constraint(combined);
  return {std::move(per_label), std::move(combined), std::move(constraint)};
}

namespace {

// Pairwise part of g for one edge: minimize ||g - f||_1 subject to
// submodularity of g and condition (b) on h = f - g for K_s x K_t.
std::optional<PairTable> auxiliary_edge(const PairTable& f, const std::vector<Label>& ks,
                                        const std::vector<Label>& kt) {
  const std::size_t n = f.label_count();
  lp::LinearProgram program;
  auto h = [n](Label i, Label j) { return 2 * (i * n + j); };
  auto u = [n](Label i, Label j) { return 2 * (i * n + j) + 1; };
  for (std::size_t v = 0; v < n * n; ++v) {
    program.add_variable(true);   // h_ij
    program.add_variable(false);  // |h_ij| bound
  }
  for (Label i = 0; i < n; ++i) {
    for (Label j = 0; j < n; ++j) {
      program.add_constraint({{u(i, j), 1}, {h(i, j), -1}}, lp::Relation::greater_equal, 0);
      program.add_constraint({{u(i, j), 1}, {h(i, j), 1}}, lp::Relation::greater_equal, 0);
    }
  }
  // Second differences of g = f - h must be nonpositive.
  for (Label i = 0; i + 1 < n; ++i) {
    for (Label j = 0; j + 1 < n; ++j) {
      Rational second = f(i, j) + f(i + 1, j + 1) - f(i + 1, j) - f(i, j + 1);
      program.add_constraint({{h(i, j), 1}, {h(i + 1, j + 1), 1}, {h(i + 1, j), -1}, {h(i, j + 1), -1}},
                             lp::Relation::greater_equal, second);
    }
  }
  for (Label i = 0; i < n; ++i) {
    for (Label j = 0; j < n; ++j) {
      for (Label p : ks) {
        for (Label q : kt) {
          const Label ip = std::max(i, p), jq = std::max(j, q);
          if (ip == i && jq == j) continue;
          program.add_constraint({{h(ip, jq), 1}, {h(i, j), -1}}, lp::Relation::less_equal, 0);
        }
      }
    }
  }
  std::vector<Rational> objective(program.variable_count());
  for (Label i = 0; i < n; ++i) {
    for (Label j = 0; j < n; ++j) objective[u(i, j)] = 1;
  }
  lp::Solution s = lp::minimize(program, objective);
  if (s.status != lp::Status::optimal) return std::nullopt;
  PairTable g(n);
  for (Label i = 0; i < n; ++i) {
    for (Label j = 0; j < n; ++j) g(i, j) = f(i, j) - s.values[h(i, j)];
  }
  return g;
}

DomainConstraint upper_set_constraint(const Ordering& pi, const Labeling& reordered_min) {
  std::vector<std::vector<Label>> allowed(pi.node_count());
  for (std::size_t s = 0; s < pi.node_count(); ++s) {
    for (Label i = 0; i < pi.map(s).size(); ++i) {
      if (pi(s, i) >= reordered_min[s]) allowed[s].push_back(i);
    }
  }
  return DomainConstraint(std::move(allowed), Strength::strong);
}

}  // namespace

SequentialResult sequential_kovtun(const EnergyFunction& f, const Ordering& pi) {
  EnergyFunction fr = apply_ordering(f, pi);
  const std::size_t nodes = f.node_count();
  const std::size_t n = f.label_count();
  const Label top = n - 1;
  LabelSets K(nodes);

  auto vacuous = [&](std::size_t iterations) {
    Labeling zero(nodes, 0);
    return SequentialResult{pi,
                            Autarky(zero, Labeling(nodes, top), Strength::strong, "sequential"),
                            upper_set_constraint(pi, zero),
                            std::nullopt,
                            iterations,
                            true};
  };

  // Each non-final pass adds at least one label to some K_s.
  const std::size_t max_passes = nodes * n + 1;
  for (std::size_t pass = 1; pass <= max_passes; ++pass) {
    EnergyFunction g(fr.space());
    g.constant() = fr.constant();
    for (std::size_t s = 0; s < nodes; ++s) {
      for (Label i = 0; i < n; ++i) g.unary(s, i) = fr.unary(s, i);
    }
    for (std::size_t e = 0; e < fr.edge_count(); ++e) {
      const Edge& st = fr.edge(e);
      std::optional<PairTable> table = auxiliary_edge(fr.pairwise(e), K[st.s], K[st.t]);
      if (!table) return vacuous(pass);
      g.pairwise(e) = std::move(*table);
    }
    Labeling x_min = minimize_submodular(g).lowest;

    bool settled = true;
    for (std::size_t s = 0; s < nodes; ++s) {
      if (std::find(K[s].begin(), K[s].end(), x_min[s]) == K[s].end()) {
        settled = false;
        K[s].push_back(x_min[s]);
        std::sort(K[s].begin(), K[s].end());
      }
    }
    if (settled) {
      EnergyFunction h = subtract(fr, g);
      return SequentialResult{pi,
                              Autarky(x_min, Labeling(nodes, top), Strength::strong, "sequential"),
                              upper_set_constraint(pi, x_min),
                              AuxiliaryDecomposition{std::move(g), std::move(h), K},
                              pass,
                              false};
    }
  }
  return vacuous(max_passes);
}

SequentialAllLabelsResult sequential_all_labels(const EnergyFunction& f) {
  SequentialAllLabelsResult out{{}, DomainConstraint::full(f.space())};
  for (Label k = 0; k < f.label_count(); ++k) {
    out.per_label.push_back(sequential_kovtun(f, one_vs_all_ordering(f, k)));
    out.constraint = out.constraint.intersect(out.per_label.back().constraint);
  }
  return out;
}

LabelResult improved_one_vs_all(const EnergyFunction& f, Label target) {
  const std::string provenance = "improved-one-vs-all:" + std::to_string(target);
  LabelResult capped = one_vs_all(f, target);

  OneVsAllAuxiliary aux = one_vs_all_auxiliary(f, target, false);
  EnergyFunction two = two_label_reduction(aux);
  Autarky roof = roof_dual_autarky(two);

  const std::size_t nodes = f.node_count();
  const Label top = f.space().top();
  Autarky candidate(roof.x_min, Labeling(nodes, 1), Strength::strong, provenance);
  Labeling lifted(nodes, 0);
  if (!candidate.fixed_nodes().empty() && verify_weak_lp_autarky(two, candidate).holds &&
      verify_strong_lp_autarky(two, candidate)) {
    for (std::size_t s = 0; s < nodes; ++s) lifted[s] = roof.x_min[s] == 1 ? top : 0;
  }
  LabelResult improved = lift(f, target, capped.ordering, join(lifted, capped.reordered.x_min), provenance);
  return improved;
}

}  // namespace autarky::kovtun
