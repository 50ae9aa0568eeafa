#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "autarky/error.hpp"
#include "autarky/problem_io.hpp"
#include "support.hpp"

using namespace autarky;
using namespace autarky::testing;

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t parse_error_line(const std::string& text) {
  try {
    io::parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_SUITE("problem_io") {
  TEST_CASE("minimal instance") {
    EnergyFunction f = io::parse("PEM1\n1 2 0\n0\n0 0\n");
    CHECK(f.node_count() == 1);
    CHECK(f.label_count() == 2);
    CHECK(f.edge_count() == 0);
    CHECK(f == EnergyFunction(LabelSpace(1, 2)));
    CHECK(io::serialize(f) == "PEM1\n1 2 0\n0\n0 0\n");
  }

  TEST_CASE("rational literals, comments and blank lines") {
    const std::string text =
        "PEM1  # header\n\n2 2 1\n1/2\n0 0\n0 0\n# the only edge\n0 1\n0 \xE2\x88\x92" "3/2\n4/6 0\n";
    EnergyFunction f = io::parse(text);
    CHECK(f.constant() == Rational(1, 2));
    CHECK(f.pairwise(0)(0, 1) == Rational(-3, 2));
    CHECK(f.pairwise(0)(1, 0) == Rational(2, 3));
    CHECK(io::serialize(f).find("-3/2") != std::string::npos);
    CHECK(io::serialize(f).find("2/3") != std::string::npos);
  }

  TEST_CASE("malformed input is rejected with a line number") {
    CHECK(parse_error_line("PEM2\n1 2 0\n0\n0 0\n") == 1);
    CHECK(parse_error_line("PEM1\n2 2 1\n0\n0 0\n0 0\n0 0\n0 0\n0 0\n") == 6);  // self-loop
    CHECK(parse_error_line("PEM1\n2 2 1\n0\n0 0\n0 0\n0 5\n0 0\n0 0\n") == 6);  // endpoint out of range
    CHECK(parse_error_line("PEM1\n2 2 2\n0\n0 0\n0 0\n0 1\n0 0\n0 0\n0 1\n0 0\n0 0\n") == 9);  // duplicate
    CHECK(parse_error_line("PEM1\n1 2 0\n0\n0 x\n") == 4);
    CHECK(parse_error_line("PEM1\n1 2 0\n0\n0 0 0\n") == 4);
    CHECK(parse_error_line("PEM1\n1 2 0\n0\n") > 0);
    CHECK(parse_error_line("PEM1\n1 2 0\n0\n0 0\n7\n") == 5);
    CHECK(parse_error_line("PEM1\n1 2 0\n0\n1/0 0\n") == 4);
    CHECK(parse_error_line("PEM1\n0 2 0\n0\n") == 2);
  }

  TEST_CASE("integers serialize without denominator") {
    EnergyFunction f(LabelSpace(1, 2));
    f.unary(0, 0) = Rational(6, 2);
    CHECK(io::serialize(f) == "PEM1\n1 2 0\n0\n3 0\n");
  }

  TEST_CASE("round trip over generated instances") {
    const io::Structure structures[] = {io::Structure::random, io::Structure::potts, io::Structure::metric,
                                        io::Structure::submodular};
    Rng rng(1);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      EnergyFunction f = generated(structures[seed % 4], 2 + seed % 5, 2 + seed % 3, seed);
      // Perturb with non-integer values so denominators are exercised.
      f.constant() = frac(static_cast<long>(seed) - 50, 7);
      f.unary(0, 0) += Rational(1, 3);
      const std::string text = io::serialize(f);
      CHECK(io::parse(text) == f);
      CHECK(io::serialize(io::parse(text)) == text);
    }
  }

  TEST_CASE("fixtures round trip") {
    for (const auto& entry : std::filesystem::directory_iterator(AUTARKY_FIXTURE_DIR)) {
      if (entry.path().extension() != ".pem") continue;
      CAPTURE(entry.path().string());
      EnergyFunction f = io::parse_file(entry.path().string());
      CHECK(io::parse(read_text(entry.path().string())) == f);
      const std::string canonical = io::serialize(f);
      CHECK(io::parse(canonical) == f);
      CHECK(io::serialize(io::parse(canonical)) == canonical);
    }
    CHECK_THROWS_AS(io::parse_file(fixture("missing.pem")), Error);
  }

  TEST_CASE("generator is deterministic") {
    io::GeneratorSpec spec;
    spec.structure = io::Structure::submodular;
    spec.seed = 7;
    CHECK(io::generate(spec) == io::generate(spec));
    io::GeneratorSpec other = spec;
    other.seed = 8;
    CHECK_FALSE(io::generate(spec) == io::generate(other));
  }

  TEST_CASE("generator structural promises") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      CAPTURE(seed);
      CHECK(is_submodular(generated(io::Structure::submodular, 5, 4, seed, 0.7)));
      CHECK(is_metric(generated(io::Structure::metric, 4, 4, seed, 0.7)));
      EnergyFunction potts = generated(io::Structure::potts, 4, 3, seed, 0.7);
      for (std::size_t e = 0; e < potts.edge_count(); ++e) {
        const PairTable& t = potts.pairwise(e);
        const Rational w = t(0, 1);
        CHECK(w > 0);
        for (Label i = 0; i < 3; ++i) {
          for (Label j = 0; j < 3; ++j) CHECK(t(i, j) == (i == j ? Rational(0) : w));
        }
      }
      EnergyFunction two = generated(io::Structure::two_label, 6, 2, seed);
      CHECK(two.label_count() == 2);
      EnergyFunction dense = generated(io::Structure::random, 4, 3, seed, 1.0, 3);
      CHECK(dense.edge_count() == 6);
      for (std::size_t s = 0; s < 4; ++s) {
        for (Label i = 0; i < 3; ++i) CHECK(abs(dense.unary(s, i)) <= 3);
      }
    }
    CHECK(generated(io::Structure::random, 4, 3, 0, 0.0).edge_count() == 0);
  }

  TEST_CASE("infeasible generator specs") {
    io::GeneratorSpec spec;
    spec.structure = io::Structure::metric;
    spec.label_count = 1;
    CHECK_THROWS_AS(io::generate(spec), InvalidArgument);
    spec.structure = io::Structure::two_label;
    spec.label_count = 3;
    CHECK_THROWS_AS(io::generate(spec), InvalidArgument);
    spec.structure = io::Structure::random;
    spec.edge_density = 1.5;
    CHECK_THROWS_AS(io::generate(spec), InvalidArgument);
  }

  TEST_CASE("structure names") {
    CHECK(io::parse_structure("two-label") == io::Structure::two_label);
    CHECK(io::to_string(io::Structure::metric) == "metric");
    CHECK_THROWS_AS(io::parse_structure("grid"), InvalidArgument);
  }

  TEST_CASE("report keys are always present") {
    io::Report empty;
    nlohmann::json j = io::to_json(empty);
    for (const char* key : {"instance", "method", "derived_constraint", "autarky", "lp_value", "energy_value",
                            "fixed_point", "oracle_verdict", "wall_time_ms"}) {
      CAPTURE(key);
      CHECK(j.contains(key));
    }
    CHECK(j["lp_value"].is_null());

    io::Report full;
    full.lp_value = Rational(-3, 2);
    full.autarky = Autarky(Labeling({0, 1}), Labeling({1, 1}), Strength::strong);
    full.derived_constraint = autarky_to_constraint(*full.autarky);
    j = io::to_json(full);
    CHECK(j["lp_value"] == "-3/2");
    CHECK(j["derived_constraint"][0] == nlohmann::json::array({0, 1}));
    Autarky back = io::autarky_from_json(j["autarky"]);
    CHECK(back.x_min == full.autarky->x_min);
    CHECK(back.x_max == full.autarky->x_max);
    CHECK(back.strength == Strength::strong);
  }
}
