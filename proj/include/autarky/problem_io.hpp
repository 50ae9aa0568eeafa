#ifndef AUTARKY_PROBLEM_IO_HPP
#define AUTARKY_PROBLEM_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "autarky/energy.hpp"

namespace autarky::io {

/// Parses the PEM1 text format:
///
///   PEM1
///   <node_count> <label_count> <edge_count>
///   <f_0>
///   <label_count rationals>            one line per node
///   <s> <t>                            per edge, followed by
///   <label_count rationals>            label_count rows (row = label of s)
///
/// '#' starts a comment; blank lines are ignored. Throws ParseError with the
/// offending line number.
EnergyFunction parse(std::string_view text);
EnergyFunction parse_file(const std::string& path);

/// Canonical PEM1 text; integers carry no denominator.
std::string serialize(const EnergyFunction& f);

enum class Structure { random, potts, metric, submodular, two_label };

Structure parse_structure(std::string_view name);
std::string to_string(Structure structure);

struct GeneratorSpec {
  std::size_t node_count = 4;
  std::size_t label_count = 3;
  double edge_density = 0.5;
  /// Values are integers drawn from [-value_range, value_range]; pairwise
  /// weights of potts/metric tables from [1, value_range].
  std::int64_t value_range = 10;
  Structure structure = Structure::random;
  std::uint64_t seed = 0;
};

/// Deterministic in the spec. Throws InvalidArgument for infeasible specs
/// (e.g. metric with one label, two_label with label_count != 2).
EnergyFunction generate(const GeneratorSpec& spec);

/// Machine-readable result record shared by all CLI subcommands.
struct Report {
  std::string instance;
  std::string method;
  std::optional<DomainConstraint> derived_constraint;
  std::optional<Autarky> autarky;
  std::optional<Rational> lp_value;
  std::optional<Rational> energy_value;
  std::optional<bool> fixed_point;
  std::optional<std::string> oracle_verdict;
  double wall_time_ms = 0;
  /// Method-specific details (labelings, traces, per-label results, ...).
  nlohmann::json details = nlohmann::json::object();
};

/// Every key is always present; absent values serialize as null and
/// rationals as canonical strings.
nlohmann::json to_json(const Report& report);

nlohmann::json to_json(const Labeling& x);
nlohmann::json to_json(const Autarky& a);
nlohmann::json to_json(const DomainConstraint& c);

/// Reads {x_min, x_max[, strength]} as written by to_json(const Autarky&).
Autarky autarky_from_json(const nlohmann::json& j);

}  // namespace autarky::io

#endif  // AUTARKY_PROBLEM_IO_HPP
