#include "autarky/oracle.hpp"

#include "autarky/error.hpp"

namespace autarky::oracle {

std::optional<std::size_t> labeling_count(const EnergyFunction& f, std::size_t budget) {
  std::size_t count = 1;
  for (std::size_t s = 0; s < f.node_count(); ++s) {
    if (count > budget / f.label_count()) return std::nullopt;
    count *= f.label_count();
  }
  if (count > budget) return std::nullopt;
  return count;
}

void for_each_labeling(const EnergyFunction& f, const std::function<void(const Labeling&)>& visit,
                       std::size_t budget) {
  if (!labeling_count(f, budget)) {
    throw BudgetExceeded(std::to_string(f.label_count()) + "^" + std::to_string(f.node_count()) +
                         " labelings exceed the oracle budget of " + std::to_string(budget));
  }
  Labeling x(f.node_count(), 0);
  const Label top = f.space().top();
  while (true) {
    visit(x);
    std::size_t s = 0;
    while (s < x.size() && x[s] == top) x[s++] = 0;
    if (s == x.size()) return;
    ++x[s];
  }
}

MinimizerSet enumerate_minimizers(const EnergyFunction& f, std::size_t budget) {
  MinimizerSet out;
  bool first = true;
  for_each_labeling(
      f,
      [&](const Labeling& x) {
        Rational v = evaluate(f, x);
        if (first || v < out.value) {
          first = false;
          out.value = v;
          out.minimizers.clear();
        }
        if (v == out.value) out.minimizers.push_back(x);
      },
      budget);
  out.meet = out.minimizers.front();
  out.join = out.minimizers.front();
  for (const Labeling& x : out.minimizers) {
    out.meet = meet(out.meet, x);
    out.join = join(out.join, x);
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::none:
      return "none";
    case Verdict::weak:
      return "weak";
    case Verdict::strong:
      return "strong";
  }
  return "none";
}

AutarkyVerdict check_autarky_definition(const EnergyFunction& f, const Autarky& a, std::size_t budget) {
  check_labeling(f, a.x_min);
  check_labeling(f, a.x_max);
  AutarkyVerdict out{Verdict::strong, std::nullopt};
  for_each_labeling(
      f,
      [&](const Labeling& x) {
        if (out.verdict == Verdict::none) return;
        Labeling y = project_through(a, x);
        if (y == x) return;
        const Rational before = evaluate(f, x);
        const Rational after = evaluate(f, y);
        if (after > before) {
          out = {Verdict::none, x};
        } else if (after == before && out.verdict == Verdict::strong) {
          out = {Verdict::weak, x};
        }
      },
      budget);
  return out;
}

Verdict check_persistency(const MinimizerSet& minimizers, const DomainConstraint& c) {
  std::size_t inside = 0;
  for (const Labeling& x : minimizers.minimizers) {
    if (c.contains(x)) ++inside;
  }
  if (inside == minimizers.minimizers.size()) return Verdict::strong;
  return inside > 0 ? Verdict::weak : Verdict::none;
}

Verdict check_persistency(const EnergyFunction& f, const DomainConstraint& c, std::size_t budget) {
  return check_persistency(enumerate_minimizers(f, budget), c);
}

}  // namespace autarky::oracle
