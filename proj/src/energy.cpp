#include "autarky/energy.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "autarky/error.hpp"

namespace autarky {

LabelSpace::LabelSpace(std::size_t node_count, std::size_t label_count, std::vector<Edge> edges)
    : node_count_(node_count), label_count_(label_count), edges_(std::move(edges)) {
  if (node_count_ == 0) throw InvalidArgument("label space needs at least one node");
  if (label_count_ == 0) throw InvalidArgument("label space needs at least one label");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : edges_) {
    if (e.s >= node_count_ || e.t >= node_count_) {
      throw InvalidArgument("edge (" + std::to_string(e.s) + "," + std::to_string(e.t) +
                            ") references a node out of range");
    }
    if (e.s == e.t) throw InvalidArgument("self-loop on node " + std::to_string(e.s));
    if (!seen.emplace(e.s, e.t).second) {
      throw InvalidArgument("duplicate edge (" + std::to_string(e.s) + "," + std::to_string(e.t) + ")");
    }
  }
}

bool dominated_by(const Labeling& x, const Labeling& y) {
  if (x.size() != y.size()) throw InvalidArgument("labeling length mismatch");
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (x[s] > y[s]) return false;
  }
  return true;
}

Labeling meet(const Labeling& x, const Labeling& y) {
  if (x.size() != y.size()) throw InvalidArgument("labeling length mismatch");
  std::vector<Label> out(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) out[s] = std::min(x[s], y[s]);
  return Labeling(std::move(out));
}

Labeling join(const Labeling& x, const Labeling& y) {
  if (x.size() != y.size()) throw InvalidArgument("labeling length mismatch");
  std::vector<Label> out(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) out[s] = std::max(x[s], y[s]);
  return Labeling(std::move(out));
}

std::string to_string(const Labeling& x) {
  std::ostringstream out;
  out << '(';
  for (std::size_t s = 0; s < x.size(); ++s) out << (s ? "," : "") << x[s];
  out << ')';
  return out.str();
}

EnergyFunction::EnergyFunction(LabelSpace space)
    : space_(std::move(space)),
      constant_(0),
      unary_(space_.node_count(), std::vector<Rational>(space_.label_count())),
      pairwise_(space_.edge_count(), PairTable(space_.label_count())) {}

void check_labeling(const EnergyFunction& f, const Labeling& x) {
  if (x.size() != f.node_count()) {
    throw InvalidArgument("labeling has " + std::to_string(x.size()) + " entries, energy has " +
                          std::to_string(f.node_count()) + " nodes");
  }
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (x[s] >= f.label_count()) {
      throw InvalidArgument("label " + std::to_string(x[s]) + " at node " + std::to_string(s) +
                            " out of range");
    }
  }
}

Rational evaluate(const EnergyFunction& f, const Labeling& x) {
  check_labeling(f, x);
  Rational total = f.constant();
  for (std::size_t s = 0; s < f.node_count(); ++s) total += f.unary(s, x[s]);
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    const Edge& st = f.edge(e);
    total += f.pairwise(e)(x[st.s], x[st.t]);
  }
  return total;
}

namespace {

template <typename Op>
EnergyFunction combine(const EnergyFunction& f, const EnergyFunction& g, Op op) {
  if (!(f.space() == g.space())) throw InvalidArgument("energies over different label spaces");
  EnergyFunction out(f.space());
  out.constant() = op(f.constant(), g.constant());
  const std::size_t n = f.label_count();
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    for (Label i = 0; i < n; ++i) out.unary(s, i) = op(f.unary(s, i), g.unary(s, i));
  }
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    for (Label i = 0; i < n; ++i) {
      for (Label j = 0; j < n; ++j) out.pairwise(e)(i, j) = op(f.pairwise(e)(i, j), g.pairwise(e)(i, j));
    }
  }
  return out;
}

}  // namespace

EnergyFunction add(const EnergyFunction& f, const EnergyFunction& g) {
  return combine(f, g, [](const Rational& a, const Rational& b) { return Rational(a + b); });
}

EnergyFunction subtract(const EnergyFunction& f, const EnergyFunction& g) {
  return combine(f, g, [](const Rational& a, const Rational& b) { return Rational(a - b); });
}

Ordering::Ordering(std::vector<std::vector<Label>> maps) : maps_(std::move(maps)) {
  for (std::size_t s = 0; s < maps_.size(); ++s) {
    std::vector<bool> hit(maps_[s].size(), false);
    for (Label to : maps_[s]) {
      if (to >= hit.size() || hit[to]) {
        throw InvalidArgument("ordering at node " + std::to_string(s) + " is not a permutation");
      }
      hit[to] = true;
    }
  }
}

Ordering Ordering::identity(std::size_t node_count, std::size_t label_count) {
  std::vector<Label> id(label_count);
  std::iota(id.begin(), id.end(), Label{0});
  return Ordering(std::vector<std::vector<Label>>(node_count, id));
}

Ordering Ordering::inverse() const {
  std::vector<std::vector<Label>> inv(maps_.size());
  for (std::size_t s = 0; s < maps_.size(); ++s) {
    inv[s].resize(maps_[s].size());
    for (Label i = 0; i < maps_[s].size(); ++i) inv[s][maps_[s][i]] = i;
  }
  return Ordering(std::move(inv));
}

namespace {

void check_ordering(const EnergyFunction& f, const Ordering& pi) {
  if (pi.node_count() != f.node_count()) throw InvalidArgument("ordering node count mismatch");
  for (std::size_t s = 0; s < pi.node_count(); ++s) {
    if (pi.map(s).size() != f.label_count()) throw InvalidArgument("ordering label count mismatch");
  }
}

}  // namespace

EnergyFunction apply_ordering(const EnergyFunction& f, const Ordering& pi) {
  check_ordering(f, pi);
  EnergyFunction out(f.space());
  out.constant() = f.constant();
  const std::size_t n = f.label_count();
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    for (Label i = 0; i < n; ++i) out.unary(s, pi(s, i)) = f.unary(s, i);
  }
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    const Edge& st = f.edge(e);
    for (Label i = 0; i < n; ++i) {
      for (Label j = 0; j < n; ++j) out.pairwise(e)(pi(st.s, i), pi(st.t, j)) = f.pairwise(e)(i, j);
    }
  }
  return out;
}

Labeling apply_ordering(const Labeling& x, const Ordering& pi) {
  if (pi.node_count() != x.size()) throw InvalidArgument("ordering node count mismatch");
  std::vector<Label> out(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (x[s] >= pi.map(s).size()) throw InvalidArgument("label out of range for ordering");
    out[s] = pi(s, x[s]);
  }
  return Labeling(std::move(out));
}

std::string to_string(Strength strength) { return strength == Strength::strong ? "strong" : "weak"; }

Autarky::Autarky(Labeling lower, Labeling upper, Strength strength_, std::string provenance_)
    : x_min(std::move(lower)), x_max(std::move(upper)), strength(strength_), provenance(std::move(provenance_)) {
  if (!dominated_by(x_min, x_max)) {
    throw InvalidArgument("autarky requires x_min <= x_max, got " + to_string(x_min) + " and " + to_string(x_max));
  }
}

Autarky Autarky::identity(const LabelSpace& space, Strength strength) {
  return Autarky(Labeling(space.node_count(), 0), Labeling(space.node_count(), space.top()), strength,
                 "identity");
}

std::vector<std::size_t> Autarky::fixed_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < x_min.size(); ++s) {
    if (x_min[s] == x_max[s]) out.push_back(s);
  }
  return out;
}

Labeling project_through(const Autarky& a, const Labeling& x) { return meet(join(x, a.x_min), a.x_max); }

Autarky join_autarkies(const Autarky& a, const Autarky& b) {
  if (a.strength != Strength::strong || b.strength != Strength::strong) {
    throw InvalidArgument("autarky join is defined for strong autarkies only");
  }
  Labeling lower = join(a.x_min, b.x_min);
  Labeling upper = meet(a.x_max, b.x_max);
  if (!dominated_by(lower, upper)) {
    throw InvalidArgument("contradictory autarkies: joined bounds " + to_string(lower) + " > " + to_string(upper));
  }
  std::string provenance = a.provenance == b.provenance ? a.provenance : a.provenance + "+" + b.provenance;
  return Autarky(std::move(lower), std::move(upper), Strength::strong, std::move(provenance));
}

DomainConstraint::DomainConstraint(std::vector<std::vector<Label>> allowed_, Strength strength_)
    : allowed(std::move(allowed_)), strength(strength_) {
  for (std::size_t s = 0; s < allowed.size(); ++s) {
    auto& k = allowed[s];
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    if (k.empty()) throw InvalidArgument("empty domain at node " + std::to_string(s));
  }
}

DomainConstraint DomainConstraint::full(const LabelSpace& space, Strength strength) {
  std::vector<Label> all(space.label_count());
  std::iota(all.begin(), all.end(), Label{0});
  return DomainConstraint(std::vector<std::vector<Label>>(space.node_count(), all), strength);
}

bool DomainConstraint::contains(std::size_t s, Label i) const {
  return std::binary_search(allowed[s].begin(), allowed[s].end(), i);
}

bool DomainConstraint::contains(const Labeling& x) const {
  if (x.size() != allowed.size()) throw InvalidArgument("labeling length mismatch");
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (!contains(s, x[s])) return false;
  }
  return true;
}

std::vector<std::size_t> DomainConstraint::fixed_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < allowed.size(); ++s) {
    if (allowed[s].size() == 1) out.push_back(s);
  }
  return out;
}

DomainConstraint DomainConstraint::intersect(const DomainConstraint& other) const {
  if (other.allowed.size() != allowed.size()) throw InvalidArgument("constraint size mismatch");
  std::vector<std::vector<Label>> out(allowed.size());
  for (std::size_t s = 0; s < allowed.size(); ++s) {
    std::set_intersection(allowed[s].begin(), allowed[s].end(), other.allowed[s].begin(), other.allowed[s].end(),
                          std::back_inserter(out[s]));
    if (out[s].empty()) throw InvalidArgument("contradictory constraints at node " + std::to_string(s));
  }
  Strength combined = strength == Strength::strong && other.strength == Strength::strong ? Strength::strong
                                                                                          : Strength::weak;
  return DomainConstraint(std::move(out), combined);
}

DomainConstraint autarky_to_constraint(const Autarky& a) {
  std::vector<std::vector<Label>> allowed(a.x_min.size());
  for (std::size_t s = 0; s < a.x_min.size(); ++s) {
    for (Label i = a.x_min[s]; i <= a.x_max[s]; ++i) allowed[s].push_back(i);
  }
  return DomainConstraint(std::move(allowed), a.strength);
}

std::optional<SubmodularityWitness> find_submodularity_violation(const PairTable& table) {
  const std::size_t n = table.label_count();
  for (Label xs = 0; xs < n; ++xs) {
    for (Label xt = 0; xt < n; ++xt) {
      for (Label ys = 0; ys < n; ++ys) {
        for (Label yt = 0; yt < n; ++yt) {
          const Rational lhs = table(xs, xt) + table(ys, yt);
          const Rational rhs = table(std::min(xs, ys), std::min(xt, yt)) + table(std::max(xs, ys), std::max(xt, yt));
          if (lhs < rhs) return SubmodularityWitness{0, xs, xt, ys, yt};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<SubmodularityWitness> find_submodularity_violation(const EnergyFunction& f) {
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    if (auto w = find_submodularity_violation(f.pairwise(e))) {
      w->edge = e;
      return w;
    }
  }
  return std::nullopt;
}

std::string describe(const SubmodularityWitness& w, const EnergyFunction& f) {
  const PairTable& t = f.pairwise(w.edge);
  const Edge& st = f.edge(w.edge);
  std::ostringstream out;
  out << "edge " << w.edge << " (" << st.s << "," << st.t << "): f(" << w.x_s << "," << w.x_t << ")+f(" << w.y_s
      << "," << w.y_t << ") = " << to_string(Rational(t(w.x_s, w.x_t) + t(w.y_s, w.y_t))) << " < f(meet)+f(join) = "
      << to_string(Rational(t(std::min(w.x_s, w.y_s), std::min(w.x_t, w.y_t)) +
                            t(std::max(w.x_s, w.y_s), std::max(w.x_t, w.y_t))));
  return out.str();
}

bool is_metric(const PairTable& table) {
  const std::size_t n = table.label_count();
  for (Label i = 0; i < n; ++i) {
    for (Label j = 0; j < n; ++j) {
      const Rational& v = table(i, j);
      if (v < 0) return false;
      if ((v == 0) != (i == j)) return false;
      if (v != table(j, i)) return false;
      for (Label k = 0; k < n; ++k) {
        if (table(i, k) > v + table(j, k)) return false;
      }
    }
  }
  return true;
}

bool is_metric(const EnergyFunction& f) {
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    if (!is_metric(f.pairwise(e))) return false;
  }
  return true;
}

}  // namespace autarky
