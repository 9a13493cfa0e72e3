#include <doctest.h>

#include <cstdlib>
#include <json.hpp>

#include "proxilift/propcheck.hpp"
#include "proxilift/report.hpp"

using namespace proxilift;
using nlohmann::json;

namespace {

Subspace span_of(const std::string& space, const std::string& vectors) {
  return Subspace::span(parse_space(space), parse_vectors(vectors));
}

struct SeedEnv {
  explicit SeedEnv(const char* value) {
    if (const char* old = std::getenv("PROXILIFT_SEED")) saved = old;
    if (value) {
      setenv("PROXILIFT_SEED", value, 1);
    } else {
      unsetenv("PROXILIFT_SEED");
    }
  }
  ~SeedEnv() {
    if (saved.empty()) {
      unsetenv("PROXILIFT_SEED");
    } else {
      setenv("PROXILIFT_SEED", saved.c_str(), 1);
    }
  }
  std::string saved;
};

}  // namespace

TEST_CASE("config files") {
  const auto c = parse_config("# comment\nseed = 9\n\neps_eq=1e-7\ncandidate_budget = 64\ntimings = true\nout = r.json\n");
  CHECK(c.seed == 9u);
  CHECK(c.tol.eps_eq == 1e-7);
  CHECK(c.candidate_budget == 64);
  CHECK(c.timings);
  CHECK(c.out == "r.json");
  CHECK(c.grid_n == 1025);

  RunConfig base;
  base.grid_n = 33;
  CHECK(parse_config("chebyshev_samples = 10", base).grid_n == 33);

  CHECK_THROWS_AS(parse_config("colour = blue"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("seed = -1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("seed"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("eps_eq = 0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("grid_n = 1"), std::invalid_argument);
  CHECK_THROWS_AS(load_config("/nonexistent/proxilift.cfg"), std::invalid_argument);
}

TEST_CASE("seed resolution") {
  RunConfig c;
  {
    SeedEnv env(nullptr);
    CHECK(c.effective_seed() == kDefaultSeed);
  }
  {
    SeedEnv env("1234");
    CHECK(c.effective_seed() == 1234u);
    c.seed = 5;
    CHECK(c.effective_seed() == 5u);
  }
}

TEST_CASE("analysis of a line in linf^2 with uv > 0") {
  const auto r = analyze(span_of("linf:2", "1,2"), RunConfig{});
  CHECK(r.qlp == QlpStatus::Holds);
  CHECK(r.j0 == J0Status::True);
  REQUIRE(r.complement);
  CHECK(r.complement->kind == ComplementDescription::Kind::Span);
  CHECK(exit_code(r.qlp) == 0);

  const auto doc = json::parse(to_json(r));
  CHECK(doc["command"] == "analyze");
  CHECK(doc["qlp"] == "HOLDS");
  CHECK(doc["J0_is_subspace"] == "TRUE");
  // only Euclidean norms are certified Chebyshev; polyhedral ones are probed
  CHECK(doc["chebyshev"]["verdict"] == "YES_SAMPLED");
  const auto& gen = doc["complement"]["generators"][0];
  CHECK(gen[0].get<double>() == -gen[1].get<double>());
  // kernel of p is spanned by (1, -1)
  const auto& ker = doc["selection"]["kernel_basis"][0];
  CHECK(ker[0].get<double>() == doctest::Approx(-ker[1].get<double>()));
  CHECK_FALSE(doc.contains("timings"));
  CHECK(json::parse(to_json(r, true)).contains("timings"));
}

TEST_CASE("analysis of the constants") {
  const auto r = analyze(span_of("linf:3", "1,1,1"), RunConfig{});
  CHECK(r.qlp == QlpStatus::FailsWithWitness);
  CHECK(r.j0 == J0Status::False);
  const auto doc = json::parse(to_json(r));
  REQUIRE(doc["witnesses"].size() == 1);
  CHECK(doc["witnesses"][0]["valid"] == true);
  CHECK(doc["witnesses"][0]["conclusive"] == true);
  CHECK(doc["selection"].is_null());

  CHECK(analyze(span_of("linf:2", "1,1"), RunConfig{}).qlp == QlpStatus::Holds);
}

TEST_CASE("Euclidean spaces always admit the orthogonal projection") {
  const auto r = analyze(span_of("l2:4", "1,2,0,1;0,1,1,0"), RunConfig{});
  CHECK(r.qlp == QlpStatus::Holds);
  CHECK(r.j0 == J0Status::True);
}

TEST_CASE("inconclusive searches exit with code 2") {
  CHECK(exit_code(QlpStatus::Inconclusive) == 2);
  CHECK(exit_code(QlpStatus::FailsWithWitness) == 0);
}

TEST_CASE("reports are byte-identical across runs and print 17 digits") {
  RunConfig c;
  c.seed = 11;
  const auto j = span_of("l1:3", "1,2,3");
  const auto a = to_json(analyze(j, c));
  const auto b = to_json(analyze(j, c));
  CHECK(a == b);
  CHECK(a.back() == '\n');

  const auto r = analyze(span_of("linf:2", "1,3"), c);
  const auto text = to_json(r);
  // 1/3 shows up in p and needs every digit to round-trip
  const auto doc = json::parse(text);
  for (const auto& row : doc["selection"]["p"]) {
    for (const auto& v : row) {
      const double x = v.get<double>();
      CHECK(std::strtod(v.dump().c_str(), nullptr) == x);
    }
  }
}

TEST_CASE("operator files") {
  const QuotientSpace q(span_of("linf:2", "1,2"));
  const auto S = parse_operator(R"({"domain": "linf:1", "matrix": [[1], [5]]})", q);
  CHECK(S.matrix(1, 0) == 5.0);
  CHECK_THROWS_AS(parse_operator("{", q), std::invalid_argument);
  CHECK_THROWS_AS(parse_operator(R"({"matrix": [[1], [5]]})", q), std::invalid_argument);
  CHECK_THROWS_AS(parse_operator(R"({"domain": "linf:1", "matrix": [[1]]})", q), std::invalid_argument);
  CHECK_THROWS_AS(parse_operator(R"({"domain": "linf:2", "matrix": [[1], [5]]})", q), std::invalid_argument);
  CHECK_THROWS_AS(parse_operator(R"({"domain": "linf:1", "matrix": [["a"], [5]]})", q), std::invalid_argument);
}

TEST_CASE("lift runs") {
  const QuotientSpace q(span_of("linf:2", "1,2"));
  const auto run = run_lift(parse_operator(R"({"domain": "linf:1", "matrix": [[1], [5]]})", q), RunConfig{});
  REQUIRE(run.lift);
  CHECK(run.lift->T.matrix(0, 0) == doctest::Approx(-1.0));
  CHECK(run.lift->T.matrix(1, 0) == doctest::Approx(1.0));
  const auto doc = json::parse(to_json(run));
  CHECK(doc["lift"]["norm_preserved"] == true);

  const QuotientSpace c(span_of("linf:3", "1,1,1"));
  const auto none = run_lift(LinearMap(Matrix::Identity(3, 1), Space(1, NormKind::Sup), c), RunConfig{});
  CHECK_FALSE(none.lift);
  CHECK(json::parse(to_json(none))["lift"].is_null());
}

TEST_CASE("C[0,1] certificates") {
  const auto d = ClosedSet1D::parse("[0.2,0.4];[0.6,0.8]");
  const auto f = sample([](double x) { return x; }, aligned_grid(1025, d));
  const auto cert = certify_c01(f, star_selection_1d(f, d), d, 1025);
  CHECK(cert.equal);
  CHECK(cert.vanishes_on_d);
  CHECK(cert.residual_sup == 0.8);
  CHECK(json::parse(to_json(cert))["residual_sup"] == 0.8);

  GridFunction wrong = f;
  const auto bad = certify_c01(f, wrong, d, 1025);
  CHECK_FALSE(bad.vanishes_on_d);
}

TEST_CASE("property suites run clean on small budgets") {
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    const auto r = run_suite(name, 25, 3);
    CHECK(r.ok());
    CHECK(r.counterexamples.empty());
    CHECK(r.trials == 25);
    for (const auto& p : r.properties) CHECK(p.passed + p.failed + p.skipped == 25);
    CHECK(to_json(r) == to_json(run_suite(name, 25, 3)));
  }
  CHECK_THROWS_AS(run_suite("no_such_suite", 1, 1), std::invalid_argument);
}
