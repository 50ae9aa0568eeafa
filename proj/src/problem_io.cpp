#include "autarky/problem_io.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "autarky/error.hpp"

namespace autarky::io {

using autarky::to_string;

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string token; in >> token;) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}

  const Line& next(const char* what) {
    if (index_ >= lines_.size()) {
      const std::size_t last = lines_.empty() ? 1 : lines_.back().number;
      throw ParseError(last, std::string("unexpected end of input, expected ") + what);
    }
    return lines_[index_++];
  }

  const Line& expect(std::size_t count, const char* what) {
    const Line& line = next(what);
    if (line.tokens.size() != count) {
      throw ParseError(line.number, std::string("expected ") + std::to_string(count) + " token(s) for " + what +
                                        ", found " + std::to_string(line.tokens.size()));
    }
    return line;
  }

  bool done() const { return index_ >= lines_.size(); }
  const Line& peek() const { return lines_[index_]; }

 private:
  std::vector<Line> lines_;
  std::size_t index_ = 0;
};

std::size_t to_count(const Line& line, const std::string& token) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line.number, "expected a nonnegative integer, found '" + token + "'");
  }
  try {
    return std::stoull(token);
  } catch (const std::exception&) {
    throw ParseError(line.number, "integer out of range: '" + token + "'");
  }
}

Rational to_rational(const Line& line, const std::string& token) {
  try {
    return parse_rational(token);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line.number, e.what());
  }
}

}  // namespace

EnergyFunction parse(std::string_view text) {
  Reader in(tokenize(text));
  const Line& magic = in.expect(1, "the PEM1 header");
  if (magic.tokens[0] != "PEM1") throw ParseError(magic.number, "missing PEM1 header");

  const Line& counts = in.expect(3, "node_count label_count edge_count");
  const std::size_t nodes = to_count(counts, counts.tokens[0]);
  const std::size_t labels = to_count(counts, counts.tokens[1]);
  const std::size_t edge_count = to_count(counts, counts.tokens[2]);
  if (nodes == 0) throw ParseError(counts.number, "node_count must be positive");
  if (labels == 0) throw ParseError(counts.number, "label_count must be positive");

  const Line& constant = in.expect(1, "f_0");
  Rational f0 = to_rational(constant, constant.tokens[0]);

  std::vector<std::vector<Rational>> unary(nodes);
  for (std::size_t s = 0; s < nodes; ++s) {
    const Line& line = in.expect(labels, "a unary row");
    for (const auto& token : line.tokens) unary[s].push_back(to_rational(line, token));
  }

  std::vector<Edge> edges;
  std::vector<PairTable> tables;
  for (std::size_t e = 0; e < edge_count; ++e) {
    const Line& header = in.expect(2, "an edge header 's t'");
    const Edge st{to_count(header, header.tokens[0]), to_count(header, header.tokens[1])};
    if (st.s >= nodes || st.t >= nodes) throw ParseError(header.number, "edge endpoint out of range");
    if (st.s == st.t) throw ParseError(header.number, "self-loop edge");
    for (const Edge& other : edges) {
      if (other == st) throw ParseError(header.number, "duplicate edge");
    }
    edges.push_back(st);
    PairTable table(labels);
    for (Label i = 0; i < labels; ++i) {
      const Line& row = in.expect(labels, "a pairwise row");
      for (Label j = 0; j < labels; ++j) table(i, j) = to_rational(row, row.tokens[j]);
    }
    tables.push_back(std::move(table));
  }
  if (!in.done()) throw ParseError(in.peek().number, "trailing content after the last edge");

  EnergyFunction f(LabelSpace(nodes, labels, std::move(edges)));
  f.constant() = std::move(f0);
  for (std::size_t s = 0; s < nodes; ++s) {
    for (Label i = 0; i < labels; ++i) f.unary(s, i) = unary[s][i];
  }
  for (std::size_t e = 0; e < edge_count; ++e) f.pairwise(e) = std::move(tables[e]);
  return f;
}

EnergyFunction parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string serialize(const EnergyFunction& f) {
  std::ostringstream out;
  const std::size_t n = f.label_count();
  out << "PEM1\n" << f.node_count() << ' ' << n << ' ' << f.edge_count() << '\n';
  out << to_string(f.constant()) << '\n';
  auto row = [&](auto&& value) {
    for (Label i = 0; i < n; ++i) out << (i ? " " : "") << to_string(value(i));
    out << '\n';
  };
  for (std::size_t s = 0; s < f.node_count(); ++s) row([&](Label i) { return f.unary(s, i); });
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    out << f.edge(e).s << ' ' << f.edge(e).t << '\n';
    for (Label i = 0; i < n; ++i) row([&](Label j) { return f.pairwise(e)(i, j); });
  }
  return out.str();
}

Structure parse_structure(std::string_view name) {
  if (name == "random") return Structure::random;
  if (name == "potts") return Structure::potts;
  if (name == "metric") return Structure::metric;
  if (name == "submodular") return Structure::submodular;
  if (name == "two-label") return Structure::two_label;
  throw InvalidArgument("unknown structure '" + std::string(name) + "'");
}

std::string to_string(Structure structure) {
  switch (structure) {
    case Structure::random:
      return "random";
    case Structure::potts:
      return "potts";
    case Structure::metric:
      return "metric";
    case Structure::submodular:
      return "submodular";
    case Structure::two_label:
      return "two-label";
  }
  return "random";
}

EnergyFunction generate(const GeneratorSpec& spec) {
  if (spec.node_count == 0 || spec.label_count == 0) throw InvalidArgument("empty generator spec");
  if (!(spec.edge_density >= 0.0 && spec.edge_density <= 1.0)) throw InvalidArgument("edge density outside [0,1]");
  if (spec.value_range < 0) throw InvalidArgument("negative value range");
  const bool weighted = spec.structure == Structure::potts || spec.structure == Structure::metric;
  if (weighted && spec.label_count < 2) throw InvalidArgument(to_string(spec.structure) + " needs two or more labels");
  if (weighted && spec.value_range < 1) throw InvalidArgument(to_string(spec.structure) + " needs value_range >= 1");
  if (spec.structure == Structure::two_label && spec.label_count != 2) {
    throw InvalidArgument("two-label structure needs label_count = 2");
  }

  std::mt19937_64 rng(spec.seed);
  const std::int64_t r = spec.value_range;
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  auto value = [&] { return Rational(static_cast<long>(uniform(-r, r))); };

  std::vector<Edge> edges;
  std::bernoulli_distribution keep(spec.edge_density);
  std::bernoulli_distribution flip(0.5);
  for (std::size_t s = 0; s < spec.node_count; ++s) {
    for (std::size_t t = s + 1; t < spec.node_count; ++t) {
      if (!keep(rng)) continue;
      edges.push_back(flip(rng) ? Edge{t, s} : Edge{s, t});
    }
  }

  const std::size_t n = spec.label_count;
  EnergyFunction f(LabelSpace(spec.node_count, n, std::move(edges)));
  for (std::size_t s = 0; s < spec.node_count; ++s) {
    for (Label i = 0; i < n; ++i) f.unary(s, i) = value();
  }
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    PairTable& t = f.pairwise(e);
    switch (spec.structure) {
      case Structure::random:
      case Structure::two_label:
        for (Label i = 0; i < n; ++i) {
          for (Label j = 0; j < n; ++j) t(i, j) = value();
        }
        break;
      case Structure::potts: {
        const Rational w(static_cast<long>(uniform(1, r)));
        for (Label i = 0; i < n; ++i) {
          for (Label j = 0; j < n; ++j) t(i, j) = i == j ? Rational(0) : w;
        }
        break;
      }
      case Structure::metric: {
        for (Label i = 0; i < n; ++i) {
          for (Label j = i + 1; j < n; ++j) t(i, j) = t(j, i) = Rational(static_cast<long>(uniform(1, r)));
        }
        // Shortest-path closure enforces the triangle inequality.
        for (Label k = 0; k < n; ++k) {
          for (Label i = 0; i < n; ++i) {
            for (Label j = 0; j < n; ++j) {
              if (t(i, k) + t(k, j) < t(i, j)) t(i, j) = t(i, k) + t(k, j);
            }
          }
        }
        break;
      }
      case Structure::submodular: {
        std::vector<Rational> row(n), column(n);
        for (Label i = 0; i < n; ++i) row[i] = value();
        for (Label j = 0; j < n; ++j) column[j] = value();
        // Nonpositive coefficients on [i >= a][j >= b] keep second differences <= 0.
        PairTable second(n);
        for (Label a = 1; a < n; ++a) {
          for (Label b = 1; b < n; ++b) second(a, b) = Rational(static_cast<long>(uniform(-r, 0)));
        }
        for (Label i = 0; i < n; ++i) {
          for (Label j = 0; j < n; ++j) {
            Rational v = row[i] + column[j];
            for (Label a = 1; a <= i; ++a) {
              for (Label b = 1; b <= j; ++b) v += second(a, b);
            }
            t(i, j) = v;
          }
        }
        break;
      }
    }
  }
  return f;
}

nlohmann::json to_json(const Labeling& x) { return nlohmann::json(x.values()); }

nlohmann::json to_json(const Autarky& a) {
  return {{"x_min", to_json(a.x_min)},
          {"x_max", to_json(a.x_max)},
          {"strength", to_string(a.strength)},
          {"provenance", a.provenance}};
}

nlohmann::json to_json(const DomainConstraint& c) { return nlohmann::json(c.allowed); }

nlohmann::json to_json(const Report& report) {
  auto optional = [](const auto& value, auto&& convert) -> nlohmann::json {
    return value ? convert(*value) : nlohmann::json(nullptr);
  };
  auto rational = [](const Rational& v) { return nlohmann::json(to_string(v)); };
  nlohmann::json j;
  j["instance"] = report.instance;
  j["method"] = report.method;
  j["derived_constraint"] = optional(report.derived_constraint, [](const DomainConstraint& c) { return to_json(c); });
  j["autarky"] = optional(report.autarky, [](const Autarky& a) { return to_json(a); });
  j["lp_value"] = optional(report.lp_value, rational);
  j["energy_value"] = optional(report.energy_value, rational);
  j["fixed_point"] = optional(report.fixed_point, [](bool b) { return nlohmann::json(b); });
  j["oracle_verdict"] = optional(report.oracle_verdict, [](const std::string& s) { return nlohmann::json(s); });
  j["wall_time_ms"] = report.wall_time_ms;
  j["details"] = report.details;
  return j;
}

Autarky autarky_from_json(const nlohmann::json& j) {
  try {
    Strength strength = Strength::weak;
    if (j.contains("strength") && j.at("strength").get<std::string>() == "strong") strength = Strength::strong;
    std::string provenance = j.contains("provenance") ? j.at("provenance").get<std::string>() : "";
    return Autarky(Labeling(j.at("x_min").get<std::vector<Label>>()), Labeling(j.at("x_max").get<std::vector<Label>>()),
                   strength, std::move(provenance));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed autarky JSON: ") + e.what());
  }
}

}  // namespace autarky::io
