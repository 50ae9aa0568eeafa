#include "autarky/flow.hpp"

#include <deque>
#include <limits>
#include <stdexcept>

#include "autarky/error.hpp"

namespace autarky {

FlowNetwork::FlowNetwork(std::size_t node_count, std::size_t source, std::size_t sink)
    : node_count_(node_count), source_(source), sink_(sink) {
  if (source >= node_count || sink >= node_count) throw InvalidArgument("terminal out of range");
  if (source == sink) throw InvalidArgument("source and sink coincide");
}

std::size_t FlowNetwork::add_node() { return node_count_++; }

void FlowNetwork::add_arc(std::size_t u, std::size_t v, const Rational& capacity) {
  if (u >= node_count_ || v >= node_count_) throw InvalidArgument("arc endpoint out of range");
  if (capacity < 0) throw InvalidArgument("negative capacity");
  arcs_.push_back({u, v, capacity});
}

Rational cut_capacity(const FlowNetwork& net, const std::vector<bool>& source_side) {
  Rational total = 0;
  for (const auto& arc : net.arcs()) {
    if (source_side[arc.from] && !source_side[arc.to]) total += arc.capacity;
  }
  return total;
}

namespace {

struct Residual {
  struct Arc {
    std::size_t to;
    std::size_t reverse;
    Rational capacity;
  };
  std::vector<std::vector<Arc>> out;

  explicit Residual(const FlowNetwork& net) : out(net.node_count()) {
    for (const auto& arc : net.arcs()) {
      if (arc.from == arc.to) continue;
      out[arc.from].push_back({arc.to, out[arc.to].size(), arc.capacity});
      out[arc.to].push_back({arc.from, out[arc.from].size() - 1, Rational(0)});
    }
  }

  std::vector<bool> reachable_from(std::size_t root) const {
    std::vector<bool> seen(out.size(), false);
    std::deque<std::size_t> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const Arc& a : out[u]) {
        if (a.capacity > 0 && !seen[a.to]) {
          seen[a.to] = true;
          queue.push_back(a.to);
        }
      }
    }
    return seen;
  }

  // Nodes that can still push flow into `root`.
  std::vector<bool> reaching(std::size_t root) const {
    std::vector<bool> seen(out.size(), false);
    std::deque<std::size_t> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      // u -> v has residual capacity iff the paired arc stored at v points to u.
      for (const Arc& back : out[v]) {
        const Arc& forward = out[back.to][back.reverse];
        if (forward.capacity > 0 && !seen[back.to]) {
          seen[back.to] = true;
          queue.push_back(back.to);
        }
      }
    }
    return seen;
  }
};

}  // namespace

CutSolution max_flow(const FlowNetwork& net) {
  Residual residual(net);
  const std::size_t n = net.node_count();
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  Rational flow = 0;

  std::vector<std::size_t> parent_node(n), parent_arc(n);
  while (true) {
    std::fill(parent_node.begin(), parent_node.end(), none);
    parent_node[net.source()] = net.source();
    std::deque<std::size_t> queue{net.source()};
    while (!queue.empty() && parent_node[net.sink()] == none) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < residual.out[u].size(); ++k) {
        const auto& a = residual.out[u][k];
        if (a.capacity > 0 && parent_node[a.to] == none) {
          parent_node[a.to] = u;
          parent_arc[a.to] = k;
          queue.push_back(a.to);
        }
      }
    }
    if (parent_node[net.sink()] == none) break;

    Rational bottleneck = residual.out[parent_node[net.sink()]][parent_arc[net.sink()]].capacity;
    for (std::size_t v = net.sink(); v != net.source(); v = parent_node[v]) {
      const auto& a = residual.out[parent_node[v]][parent_arc[v]];
      if (a.capacity < bottleneck) bottleneck = a.capacity;
    }
    for (std::size_t v = net.sink(); v != net.source(); v = parent_node[v]) {
      auto& a = residual.out[parent_node[v]][parent_arc[v]];
      a.capacity -= bottleneck;
      residual.out[v][a.reverse].capacity += bottleneck;
    }
    flow += bottleneck;
  }

  CutSolution result;
  result.flow_value = flow;
  result.minimal_source_side = residual.reachable_from(net.source());
  std::vector<bool> to_sink = residual.reaching(net.sink());
  result.maximal_source_side.resize(n);
  for (std::size_t v = 0; v < n; ++v) result.maximal_source_side[v] = !to_sink[v];
  return result;
}

SubmodularMinimum minimize_submodular(const EnergyFunction& f) {
  if (auto witness = find_submodularity_violation(f)) {
    throw PreconditionError("energy is not submodular: " + describe(*witness, f));
  }
  const std::size_t nodes = f.node_count();
  const std::size_t top = f.space().top();

  if (top == 0) {
    Labeling zero(nodes, 0);
    return {evaluate(f, zero), zero, zero};
  }

  constexpr std::size_t source = 0;
  constexpr std::size_t sink = 1;
  auto indicator = [&](std::size_t s, Label i) { return 2 + s * top + (i - 1); };
  const std::size_t graph_nodes = 2 + nodes * top;

  Rational constant = f.constant();
  std::vector<Rational> linear(graph_nodes);
  struct Pair {
    std::size_t u, v;
    Rational weight;
  };
  std::vector<Pair> pairs;

  for (std::size_t s = 0; s < nodes; ++s) {
    constant += f.unary(s, 0);
    for (Label i = 1; i <= top; ++i) linear[indicator(s, i)] += f.unary(s, i) - f.unary(s, i - 1);
  }
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    const Edge& st = f.edge(e);
    const PairTable& t = f.pairwise(e);
    constant += t(0, 0);
    for (Label a = 1; a <= top; ++a) linear[indicator(st.s, a)] += t(a, 0) - t(a - 1, 0);
    for (Label b = 1; b <= top; ++b) linear[indicator(st.t, b)] += t(0, b) - t(0, b - 1);
    for (Label a = 1; a <= top; ++a) {
      for (Label b = 1; b <= top; ++b) {
        Rational second = t(a, b) - t(a - 1, b) - t(a, b - 1) + t(a - 1, b - 1);
        if (second == 0) continue;
        // second < 0 here; -w*ya*yb = -w*ya + w*ya*(1-yb).
        Rational w = -second;
        linear[indicator(st.s, a)] -= w;
        pairs.push_back({indicator(st.s, a), indicator(st.t, b), w});
      }
    }
  }

  FlowNetwork net(graph_nodes, source, sink);
  Rational total = 1;
  for (std::size_t v = 2; v < graph_nodes; ++v) {
    const Rational& c = linear[v];
    if (c > 0) {
      net.add_arc(v, sink, c);
    } else if (c < 0) {
      constant += c;
      net.add_arc(source, v, -c);
    }
    total += abs(c);
  }
  for (const Pair& p : pairs) {
    net.add_arc(p.u, p.v, p.weight);
    total += p.weight;
  }
  // Uncuttable: exceeds the capacity of any cut avoiding chain arcs.
  const Rational& infinite = total;
  for (std::size_t s = 0; s < nodes; ++s) {
    for (Label i = 1; i < top; ++i) net.add_arc(indicator(s, i + 1), indicator(s, i), infinite);
  }

  CutSolution cut = max_flow(net);
  auto decode = [&](const std::vector<bool>& side) {
    std::vector<Label> x(nodes, 0);
    for (std::size_t s = 0; s < nodes; ++s) {
      for (Label i = 1; i <= top; ++i) {
        if (side[indicator(s, i)]) x[s] = i;
      }
    }
    return Labeling(std::move(x));
  };

  SubmodularMinimum result{constant + cut.flow_value, decode(cut.minimal_source_side),
                           decode(cut.maximal_source_side)};
  if (evaluate(f, result.lowest) != result.value || evaluate(f, result.highest) != result.value) {
    throw std::logic_error("layered reduction lost exactness");
  }
  return result;
}

Autarky strong_autarky_from_minimizers(const EnergyFunction& f) {
  SubmodularMinimum m = minimize_submodular(f);
  return Autarky(std::move(m.lowest), std::move(m.highest), Strength::strong, "submodular-minimizers");
}

}  // namespace autarky
