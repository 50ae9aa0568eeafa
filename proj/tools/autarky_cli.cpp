// Command-line front end: solve, kovtun, lp, verify-autarky, expand, oracle,
// generate. Exit codes: 0 success/verified, 1 refuted/not found, 2 input
// error, 3 precondition violation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "autarky/energy.hpp"
#include "autarky/error.hpp"
#include "autarky/expansion.hpp"
#include "autarky/flow.hpp"
#include "autarky/kovtun.hpp"
#include "autarky/lp_local.hpp"
#include "autarky/oracle.hpp"
#include "autarky/problem_io.hpp"

namespace {

using namespace autarky;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_refuted = 1;
constexpr int exit_input = 2;
constexpr int exit_precondition = 3;

struct CommonOptions {
  std::string instance;
  bool json = false;
  std::size_t threads = 1;
  std::size_t oracle_budget = oracle::default_budget;
  std::uint64_t seed = 0;
};

class InputError : public Error {
 public:
  using Error::Error;
};

std::string read_stream(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_source(const std::string& path) {
  if (path == "-") return read_stream(std::cin);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_stream(in);
}

EnergyFunction load(const CommonOptions& common) { return io::parse(read_source(common.instance)); }

Labeling parse_labeling(const std::string& text, const EnergyFunction& f, const char* name) {
  std::vector<Label> values;
  std::stringstream in(text);
  for (std::string token; std::getline(in, token, ',');) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError(std::string("malformed ") + name + " entry '" + token + "'");
    }
    values.push_back(std::stoull(token));
  }
  Labeling x(std::move(values));
  try {
    check_labeling(f, x);
  } catch (const InvalidArgument& e) {
    throw InputError(std::string(name) + ": " + e.what());
  }
  return x;
}

bool within_budget(const EnergyFunction& f, const CommonOptions& common) {
  return oracle::labeling_count(f, common.oracle_budget).has_value();
}

json rational_list(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

json marginals(const RelaxedLabeling& mu) {
  json out = json::array();
  for (std::size_t s = 0; s < mu.space().node_count(); ++s) {
    std::vector<Rational> row;
    for (Label i = 0; i < mu.space().label_count(); ++i) row.push_back(mu.node(s, i));
    out.push_back(rational_list(row));
  }
  return out;
}

std::string join_nodes(const std::vector<std::size_t>& nodes) {
  std::string out;
  for (std::size_t s : nodes) out += (out.empty() ? "" : ",") + std::to_string(s);
  return out.empty() ? "-" : out;
}

void emit(const io::Report& report, bool as_json, const std::vector<std::string>& human) {
  if (as_json) {
    std::cout << io::to_json(report).dump(2) << '\n';
    return;
  }
  std::cout << "method: " << report.method << '\n';
  for (const auto& line : human) std::cout << line << '\n';
  if (report.oracle_verdict) std::cout << "oracle: " << *report.oracle_verdict << '\n';
}

class Timer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---- solve ------------------------------------------------------------------

struct SolveOptions {
  std::string method = "bruteforce";
  std::size_t max_sweeps = 100;
};

int cmd_solve(const CommonOptions& common, const SolveOptions& options) {
  Timer timer;
  EnergyFunction f = load(common);
  io::Report report;
  report.instance = common.instance;
  report.method = options.method;
  std::vector<std::string> human;

  if (options.method == "bruteforce") {
    oracle::MinimizerSet m = oracle::enumerate_minimizers(f, common.oracle_budget);
    report.energy_value = m.value;
    report.details["labeling"] = io::to_json(m.minimizers.front());
    report.details["minimizer_count"] = m.minimizers.size();
    report.details["lowest"] = io::to_json(m.meet);
    report.details["highest"] = io::to_json(m.join);
    human.push_back("value: " + to_string(m.value));
    human.push_back("labeling: " + to_string(m.minimizers.front()));
    human.push_back("minimizers: " + std::to_string(m.minimizers.size()));
  } else if (options.method == "submodular-cut") {
    SubmodularMinimum m = minimize_submodular(f);
    report.energy_value = m.value;
    report.autarky = Autarky(m.lowest, m.highest, Strength::strong, "submodular-minimizers");
    report.details["labeling"] = io::to_json(m.lowest);
    report.details["lowest"] = io::to_json(m.lowest);
    report.details["highest"] = io::to_json(m.highest);
    human.push_back("value: " + to_string(m.value));
    human.push_back("lowest: " + to_string(m.lowest));
    human.push_back("highest: " + to_string(m.highest));
  } else if (options.method == "lp") {
    LpSolution lp = solve_lp(f);
    report.lp_value = lp.value;
    report.details["node_marginals"] = marginals(lp.optimizer);
    human.push_back("value: " + to_string(lp.value));
  } else if (options.method == "expansion") {
    expansion::RunResult run =
        expansion::run_expansion(f, Labeling(f.node_count(), 0), expansion::TruncationRule(), options.max_sweeps);
    report.energy_value = evaluate(f, run.x);
    report.fixed_point = run.fixed_point;
    report.details["labeling"] = io::to_json(run.x);
    report.details["trace"] = rational_list(run.trace);
    human.push_back("value: " + to_string(*report.energy_value));
    human.push_back("labeling: " + to_string(run.x));
    human.push_back(std::string("fixed point: ") + (run.fixed_point ? "yes" : "no"));
  } else {
    throw InputError("unknown solve method '" + options.method + "'");
  }
  report.wall_time_ms = timer.elapsed_ms();
  emit(report, common.json, human);
  return exit_ok;
}

// ---- kovtun -----------------------------------------------------------------

struct KovtunOptions {
  std::string method = "one-vs-all";
  long target = -1;
  bool verify = true;
  bool no_verify = false;
};

int cmd_kovtun(const CommonOptions& common, const KovtunOptions& options) {
  Timer timer;
  EnergyFunction f = load(common);
  if (f.label_count() < 2) throw PreconditionError("kovtun methods need at least two labels");
  if (options.target >= static_cast<long>(f.label_count())) throw InputError("--target out of range");

  io::Report report;
  report.instance = common.instance;
  report.method = options.method;
  std::vector<std::string> human;
  std::vector<Label> targets;
  if (options.target >= 0) {
    targets.push_back(static_cast<Label>(options.target));
  } else {
    for (Label k = 0; k < f.label_count(); ++k) targets.push_back(k);
  }

  json per_label = json::array();
  DomainConstraint constraint = DomainConstraint::full(f.space());
  std::optional<Autarky> combined;

  if (options.method == "one-vs-all" || options.method == "improved") {
    std::vector<kovtun::LabelResult> results;
    if (options.method == "one-vs-all" && targets.size() == f.label_count()) {
      results = kovtun::one_vs_all_all_labels(f, common.threads).per_label;
    } else {
      for (Label k : targets) {
        results.push_back(options.method == "improved" ? kovtun::improved_one_vs_all(f, k) : kovtun::one_vs_all(f, k));
      }
    }
    combined = Autarky::identity(f.space(), Strength::strong);
    for (const auto& r : results) {
      combined = join_autarkies(*combined, r.original);
      per_label.push_back({{"target", r.target},
                           {"autarky", io::to_json(r.original)},
                           {"reordered_x_min", io::to_json(r.reordered.x_min)},
                           {"fixed_nodes", r.fixed_nodes()}});
      human.push_back("label " + std::to_string(r.target) + ": fixed nodes " + join_nodes(r.fixed_nodes()));
    }
    combined->provenance = options.method;
    constraint = autarky_to_constraint(*combined);
  } else if (options.method == "sequential") {
    for (Label k : targets) {
      kovtun::SequentialResult r = kovtun::sequential_kovtun(f, kovtun::one_vs_all_ordering(f, k));
      constraint = constraint.intersect(r.constraint);
      per_label.push_back({{"target", k},
                           {"reordered_x_min", io::to_json(r.reordered.x_min)},
                           {"ordering", r.ordering.node_count() ? json(std::vector<std::vector<Label>>()) : json()},
                           {"constraint", io::to_json(r.constraint)},
                           {"iterations", r.iterations},
                           {"aborted", r.aborted}});
      std::vector<std::vector<Label>> maps;
      for (std::size_t s = 0; s < r.ordering.node_count(); ++s) maps.push_back(r.ordering.map(s));
      per_label.back()["ordering"] = maps;
      human.push_back("label " + std::to_string(k) + ": x_min (reordered) " + to_string(r.reordered.x_min) +
                      (r.aborted ? " [aborted]" : ""));
    }
  } else {
    throw InputError("unknown kovtun method '" + options.method + "'");
  }

  report.derived_constraint = constraint;
  report.autarky = combined;
  report.details["per_label"] = per_label;
  std::vector<std::size_t> fixed = constraint.fixed_nodes();
  report.details["fixed_nodes"] = fixed;
  report.details["free_nodes"] = f.node_count() - fixed.size();
  human.push_back("fixed nodes: " + join_nodes(fixed) + " (" + std::to_string(fixed.size()) + "/" +
                  std::to_string(f.node_count()) + ")");

  const bool verify = options.verify && !options.no_verify;
  if (verify && within_budget(f, common)) {
    report.oracle_verdict = oracle::to_string(oracle::check_persistency(f, constraint, common.oracle_budget));
  }
  if (verify && combined) {
    LpAutarkyCheck weak = verify_weak_lp_autarky(f, *combined);
    report.details["lp_autarky"] = weak.holds;
    human.push_back(std::string("LP-autarky: ") + (weak.holds ? "yes" : "no"));
  }
  report.wall_time_ms = timer.elapsed_ms();
  emit(report, common.json, human);
  return exit_ok;
}

// ---- lp ---------------------------------------------------------------------

struct LpOptions {
  bool support = false;
};

int cmd_lp(const CommonOptions& common, const LpOptions& options) {
  Timer timer;
  EnergyFunction f = load(common);
  io::Report report;
  report.instance = common.instance;
  report.method = "lp";
  std::vector<std::string> human;
  LpSolution lp = solve_lp(f);
  report.lp_value = lp.value;
  report.details["node_marginals"] = marginals(lp.optimizer);
  human.push_back("lp value: " + to_string(lp.value));
  if (within_budget(f, common)) {
    oracle::MinimizerSet m = oracle::enumerate_minimizers(f, common.oracle_budget);
    report.energy_value = m.value;
    report.details["integrality_gap"] = to_string(Rational(m.value - lp.value));
    human.push_back("integer optimum: " + to_string(m.value));
  }
  if (options.support) {
    OptimalSupport support = optimal_support(f);
    report.details["optimal_support"] = support.supported;
    if (f.label_count() == 2) {
      Autarky roof = roof_dual_autarky(f);
      report.autarky = roof;
      report.derived_constraint = autarky_to_constraint(roof);
      human.push_back("roof-dual fixed nodes: " + join_nodes(roof.fixed_nodes()));
    }
  }
  report.wall_time_ms = timer.elapsed_ms();
  emit(report, common.json, human);
  return exit_ok;
}

// ---- verify-autarky -----------------------------------------------------------

struct VerifyOptions {
  std::string x_min;
  std::string x_max;
  std::string autarky_json;
};

int cmd_verify(const CommonOptions& common, const VerifyOptions& options) {
  Timer timer;
  EnergyFunction f = load(common);
  std::optional<Autarky> claimed;
  if (!options.autarky_json.empty()) {
    json j;
    try {
      j = json::parse(read_source(options.autarky_json));
    } catch (const json::exception& e) {
      throw InputError(std::string("malformed JSON: ") + e.what());
    }
    const json& node = j.contains("autarky") ? j.at("autarky") : j;
    if (node.is_null()) throw InputError("report carries no autarky");
    try {
      claimed = io::autarky_from_json(node);
      check_labeling(f, claimed->x_min);
      check_labeling(f, claimed->x_max);
    } catch (const InvalidArgument& e) {
      throw InputError(e.what());
    }
  } else {
    if (options.x_min.empty() || options.x_max.empty()) throw InputError("need --x-min and --x-max or --autarky-json");
    Labeling lower = parse_labeling(options.x_min, f, "--x-min");
    Labeling upper = parse_labeling(options.x_max, f, "--x-max");
    if (!dominated_by(lower, upper)) throw InputError("x_min must not exceed x_max");
    claimed = Autarky(lower, upper, Strength::weak, "cli");
  }

  io::Report report;
  report.instance = common.instance;
  report.method = "verify-autarky";
  std::vector<std::string> human;

  LpAutarkyCheck weak = verify_weak_lp_autarky(f, *claimed);
  bool verified = weak.holds;
  std::optional<Strength> strength;
  report.details["lp_optimum"] = to_string(weak.optimum);
  report.details["lp_weak"] = weak.holds;
  if (weak.holds) {
    strength = verify_strong_lp_autarky(f, *claimed) ? Strength::strong : Strength::weak;
    report.details["lp_strong"] = *strength == Strength::strong;
    human.push_back("LP-autarky: " + to_string(*strength));
  } else {
    report.details["certificate"] = {{"node_marginals", marginals(weak.certificate)},
                                     {"gap", to_string(weak.optimum)}};
    human.push_back("LP-autarky: refuted (min <f, mu - A mu> = " + to_string(weak.optimum) + ")");
  }

  if (within_budget(f, common)) {
    oracle::AutarkyVerdict v = oracle::check_autarky_definition(f, *claimed, common.oracle_budget);
    report.oracle_verdict = oracle::to_string(v.verdict);
    if (v.witness) report.details["oracle_witness"] = io::to_json(*v.witness);
    if (v.verdict == oracle::Verdict::none) {
      verified = false;
    } else {
      verified = true;
      if (!strength) strength = v.verdict == oracle::Verdict::strong ? Strength::strong : Strength::weak;
    }
  }
  report.autarky = Autarky(claimed->x_min, claimed->x_max, strength.value_or(Strength::weak), claimed->provenance);
  report.details["verified"] = verified;
  report.wall_time_ms = timer.elapsed_ms();
  human.push_back(verified ? "verified" : "refuted");
  emit(report, common.json, human);
  return verified ? exit_ok : exit_refuted;
}

// ---- expand -----------------------------------------------------------------

struct ExpandOptions {
  std::string x0;
  std::string alpha = "0";
  std::string beta = "1";
  std::size_t max_sweeps = 100;
  bool against_kovtun = false;
};

int cmd_expand(const CommonOptions& common, const ExpandOptions& options) {
  Timer timer;
  EnergyFunction f = load(common);
  Labeling x0 = options.x0.empty() ? Labeling(f.node_count(), 0) : parse_labeling(options.x0, f, "--x0");
  Rational alpha, beta;
  try {
    alpha = parse_rational(options.alpha);
    beta = parse_rational(options.beta);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  expansion::TruncationRule rule = [&] {
    try {
      return expansion::TruncationRule(alpha, beta);
    } catch (const InvalidArgument& e) {
      throw InputError(e.what());
    }
  }();
  expansion::RunResult run = expansion::run_expansion(f, x0, rule, options.max_sweeps);

  io::Report report;
  report.instance = common.instance;
  report.method = "expansion";
  report.energy_value = evaluate(f, run.x);
  report.fixed_point = run.fixed_point;
  report.details["labeling"] = io::to_json(run.x);
  report.details["trace"] = rational_list(run.trace);
  std::vector<std::string> human{"value: " + to_string(*report.energy_value), "labeling: " + to_string(run.x),
                                 std::string("fixed point: ") + (run.fixed_point ? "yes" : "no")};
  bool dominated = true;
  if (options.against_kovtun) {
    if (f.label_count() < 2) throw PreconditionError("kovtun methods need at least two labels");
    json checks = json::array();
    for (Label k = 0; k < f.label_count(); ++k) {
      kovtun::LabelResult a = kovtun::one_vs_all(f, k);
      expansion::DominanceCheck d = expansion::verify_fixed_point_dominance(run.x, a);
      dominated = dominated && d.holds;
      checks.push_back({{"target", k},
                        {"holds", d.holds},
                        {"counterexample_node", d.counterexample ? json(*d.counterexample) : json()}});
    }
    report.details["dominance"] = checks;
    report.details["dominance_holds"] = dominated;
    human.push_back(std::string("dominates one-vs-all autarkies: ") + (dominated ? "yes" : "no"));
  }
  report.wall_time_ms = timer.elapsed_ms();
  emit(report, common.json, human);
  return dominated ? exit_ok : exit_refuted;
}

// ---- oracle -----------------------------------------------------------------

int cmd_oracle(const CommonOptions& common) {
  Timer timer;
  EnergyFunction f = load(common);
  oracle::MinimizerSet m = oracle::enumerate_minimizers(f, common.oracle_budget);
  io::Report report;
  report.instance = common.instance;
  report.method = "oracle";
  report.energy_value = m.value;
  json all = json::array();
  for (const auto& x : m.minimizers) all.push_back(io::to_json(x));
  report.details["minimizers"] = all;
  report.details["lowest"] = io::to_json(m.meet);
  report.details["highest"] = io::to_json(m.join);
  report.wall_time_ms = timer.elapsed_ms();
  emit(report, common.json,
       {"value: " + to_string(m.value), "minimizers: " + std::to_string(m.minimizers.size()),
        "meet: " + to_string(m.meet), "join: " + to_string(m.join)});
  return exit_ok;
}

// ---- generate ---------------------------------------------------------------

int cmd_generate(const CommonOptions& common, io::GeneratorSpec spec, const std::string& structure) {
  try {
    spec.structure = io::parse_structure(structure);
  } catch (const InvalidArgument& e) {
    throw InputError(e.what());
  }
  spec.seed = common.seed;
  std::cout << io::serialize(io::generate(spec));
  return exit_ok;
}

void add_common(CLI::App* app, CommonOptions& common, bool needs_instance = true) {
  if (needs_instance) app->add_option("instance", common.instance, "PEM1 file, or - for standard input")->required();
  app->add_flag("--json", common.json, "emit a JSON report");
  app->add_option("--threads", common.threads, "worker threads for independent sub-problems");
  app->add_option("--oracle-budget", common.oracle_budget, "max labelings for exhaustive checks");
  app->add_option("--seed", common.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial optimality for pairwise energies: autarkies, LP relaxation, expansion moves"};
  app.require_subcommand(1);

  CommonOptions common;

  SolveOptions solve_options;
  auto* solve = app.add_subcommand("solve", "minimize the energy");
  add_common(solve, common);
  solve->add_option("--method", solve_options.method, "bruteforce | submodular-cut | lp | expansion");
  solve->add_option("--max-sweeps", solve_options.max_sweeps, "expansion sweep budget");

  KovtunOptions kovtun_options;
  auto* kovtun_cmd = app.add_subcommand("kovtun", "derive strong autarkies from auxiliary submodular problems");
  add_common(kovtun_cmd, common);
  kovtun_cmd->add_option("--method", kovtun_options.method, "one-vs-all | sequential | improved");
  kovtun_cmd->add_option("--target", kovtun_options.target, "single target label (default: all)");
  kovtun_cmd->add_flag("--no-verify", kovtun_options.no_verify, "skip oracle and LP verification");

  LpOptions lp_options;
  auto* lp_cmd = app.add_subcommand("lp", "solve the local polytope relaxation");
  add_common(lp_cmd, common);
  lp_cmd->add_flag("--support", lp_options.support, "probe the optimal support (roof dual for two labels)");

  VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify-autarky", "check a claimed autarky by LP and oracle");
  add_common(verify, common);
  verify->add_option("--x-min", verify_options.x_min, "comma-separated labels");
  verify->add_option("--x-max", verify_options.x_max, "comma-separated labels");
  verify->add_option("--autarky-json", verify_options.autarky_json, "report or autarky JSON file, - for stdin");

  ExpandOptions expand_options;
  auto* expand = app.add_subcommand("expand", "expansion-move local search");
  add_common(expand, common);
  expand->add_option("--x0", expand_options.x0, "comma-separated start labeling (default all 0)");
  expand->add_option("--alpha", expand_options.alpha, "truncation alpha (rational)");
  expand->add_option("--beta", expand_options.beta, "truncation beta (rational)");
  expand->add_option("--max-sweeps", expand_options.max_sweeps, "sweep budget");
  expand->add_flag("--against-kovtun", expand_options.against_kovtun, "check dominance over one-vs-all autarkies");

  auto* oracle_cmd = app.add_subcommand("oracle", "enumerate all minimizers");
  add_common(oracle_cmd, common);

  io::GeneratorSpec spec;
  std::string structure = "random";
  auto* generate = app.add_subcommand("generate", "write a random PEM1 instance to standard output");
  add_common(generate, common, false);
  generate->add_option("--nodes", spec.node_count);
  generate->add_option("--labels", spec.label_count);
  generate->add_option("--density", spec.edge_density);
  generate->add_option("--range", spec.value_range);
  generate->add_option("--structure", structure, "random | potts | metric | submodular | two-label");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (*solve) return cmd_solve(common, solve_options);
    if (*kovtun_cmd) return cmd_kovtun(common, kovtun_options);
    if (*lp_cmd) return cmd_lp(common, lp_options);
    if (*verify) return cmd_verify(common, verify_options);
    if (*expand) return cmd_expand(common, expand_options);
    if (*oracle_cmd) return cmd_oracle(common);
    if (*generate) return cmd_generate(common, spec, structure);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return exit_input;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return exit_input;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return exit_precondition;
  } catch (const BudgetExceeded& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return exit_precondition;
  } catch (const InvalidArgument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return exit_input;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
  return exit_input;
}
