#include "autarky/expansion.hpp"

#include "autarky/error.hpp"
#include "autarky/flow.hpp"
#include "autarky/oracle.hpp"

namespace autarky::expansion {

MoveEnergy move_energy(const EnergyFunction& f, const Labeling& x, Label k) {
  check_labeling(f, x);
  if (k >= f.label_count()) throw InvalidArgument("move label out of range");
  EnergyFunction g(LabelSpace(f.node_count(), 2, f.space().edges()));
  g.constant() = f.constant();
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    g.unary(s, 0) = f.unary(s, x[s]);
    g.unary(s, 1) = f.unary(s, k);
  }
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    const Edge& st = f.edge(e);
    const PairTable& t = f.pairwise(e);
    PairTable& m = g.pairwise(e);
    m(0, 0) = t(x[st.s], x[st.t]);
    m(0, 1) = t(x[st.s], k);
    m(1, 0) = t(k, x[st.t]);
    m(1, 1) = t(k, k);
  }
  return {std::move(g), x, k};
}

Labeling apply_move(const Labeling& x, Label k, const Labeling& z) {
  if (z.size() != x.size()) throw InvalidArgument("move length mismatch");
  Labeling out = x;
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (z[s] == 1) out[s] = k;
  }
  return out;
}

Rational delta(const PairTable& t) {
  if (t.label_count() != 2) throw InvalidArgument("delta is defined for two-label tables");
  return t(1, 1) + t(0, 0) - t(0, 1) - t(1, 0);
}

Rational delta(const MoveEnergy& g, std::size_t edge) { return delta(g.g.pairwise(edge)); }

namespace {

void check_parameters(const Rational& alpha, const Rational& beta) {
  if (alpha < 0 || beta < 0 || alpha + beta > 1) {
    throw InvalidArgument("truncation parameters need alpha, beta >= 0 and alpha + beta <= 1");
  }
}

}  // namespace

TruncationRule::TruncationRule(Rational alpha, Rational beta)
    : uniform_(true), alpha_{std::move(alpha)}, beta_{std::move(beta)} {
  check_parameters(alpha_[0], beta_[0]);
}

TruncationRule::TruncationRule(std::vector<Rational> alpha, std::vector<Rational> beta)
    : uniform_(false), alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.size() != beta_.size()) throw InvalidArgument("alpha and beta lists differ in length");
  for (std::size_t e = 0; e < alpha_.size(); ++e) check_parameters(alpha_[e], beta_[e]);
}

MoveEnergy truncate(const MoveEnergy& g, const TruncationRule& rule) {
  if (!rule.uniform() && rule.edge_count() != g.g.edge_count()) {
    throw InvalidArgument("per-edge truncation rule does not match the edge count");
  }
  MoveEnergy out = g;
  for (std::size_t e = 0; e < g.g.edge_count(); ++e) {
    const Rational d = delta(g, e);
    if (d <= 0) continue;
    const Rational& alpha = rule.alpha(e);
    const Rational& beta = rule.beta(e);
    PairTable& t = out.g.pairwise(e);
    t(0, 0) -= beta * d;
    t(0, 1) += alpha * d;
    t(1, 0) += (1 - alpha - beta) * d;
  }
  return out;
}

StepResult expansion_step(const EnergyFunction& f, const Labeling& x, Label k, const TruncationRule& rule) {
  MoveEnergy g = move_energy(f, x, k);
  MoveEnergy solvable = truncate(g, rule);
  Labeling z = minimize_submodular(solvable.g).lowest;
  const Labeling zero(x.size(), 0);
  if (evaluate(g.g, z) < evaluate(g.g, zero)) return {apply_move(x, k, z), true};
  return {x, false};
}

RunResult run_expansion(const EnergyFunction& f, const Labeling& x0, const TruncationRule& rule,
                        std::size_t max_sweeps) {
  check_labeling(f, x0);
  RunResult out{x0, false, {evaluate(f, x0)}};
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    for (Label k = 0; k < f.label_count(); ++k) {
      StepResult step = expansion_step(f, out.x, k, rule);
      if (step.improved) {
        out.x = std::move(step.x);
        changed = true;
      }
    }
    out.trace.push_back(evaluate(f, out.x));
    if (!changed) {
      out.fixed_point = true;
      break;
    }
  }
  return out;
}

bool check_truncation_ordering(const MoveEnergy& g, const TruncationRule& first, const TruncationRule& second) {
  const MoveEnergy a = truncate(g, first);
  const MoveEnergy b = truncate(g, second);
  const Labeling zero(g.x.size(), 0);
  const Rational a0 = evaluate(a.g, zero);
  const Rational b0 = evaluate(b.g, zero);
  bool holds = true;
  oracle::for_each_labeling(g.g, [&](const Labeling& z) {
    if (holds && evaluate(a.g, z) - a0 > evaluate(b.g, z) - b0) holds = false;
  });
  return holds;
}

DominanceCheck verify_fixed_point_dominance(const Labeling& x_fixed, const kovtun::LabelResult& a) {
  Labeling reordered = apply_ordering(x_fixed, a.ordering);
  for (std::size_t s = 0; s < reordered.size(); ++s) {
    if (reordered[s] < a.reordered.x_min[s]) return {false, s};
  }
  return {true, std::nullopt};
}

}  // namespace autarky::expansion
