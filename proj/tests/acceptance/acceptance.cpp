// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "proxilift/function_space.hpp"
#include "proxilift/lifting.hpp"
#include "proxilift/projection.hpp"
#include "proxilift/propcheck.hpp"
#include "proxilift/random.hpp"
#include "proxilift/report.hpp"
#include "proxilift/selection.hpp"

using namespace proxilift;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }
Vector v3(double a, double b, double c) { return (Vector(3) << a, b, c).finished(); }
double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Subspace coordinate(const Space& x, int k) {
  Matrix b = Matrix::Zero(x.dim, k);
  for (int i = 0; i < k; ++i) b(i, i) = 1.0;
  return Subspace(x, b);
}

bool parallel(const Vector& a, const Vector& b) {
  return std::abs(a(0) * b(1) - a(1) * b(0)) <= 1e-12 * a.norm() * b.norm();
}

// 1. distances to span(1, a) in linf^2
Outcome linf2_distances() {
  Outcome o;
  const Space x(2, NormKind::Sup);
  int compared = 0;
  for (double a : {0.5, 1.0, 2.0, 3.0, -0.5, -1.0, -2.0, -3.0}) {
    const auto j = Subspace::span(x, {v2(1, a)});
    for (int i = 0; i <= 40; ++i) {
      const double c = -5.0 + 0.25 * i;
      const double got = distance(j, v2(1, c));
      // a > 0: (c - a)/(1 + a) above the line, (a - c)/(1 + a) below;
      // a < 0 mirrors through (x1, x2) -> (x1, -x2)
      const double expected = std::abs(c - a) / (1.0 + std::abs(a));
      o.require(std::abs(got - expected) <= 1e-9, "a=" + std::to_string(a) + " c=" + std::to_string(c));
      o.require(std::abs(got - oracle::line_distance(NormKind::Sup, v2(1, a), v2(1, c))) <= 1e-9,
                "oracle mismatch");
      ++compared;
    }
  }
  o.detail = o.pass ? std::to_string(compared) + " distances" : o.detail;
  return o;
}

// 2. classification of J0 in linf^2
Outcome linf2_classification() {
  Outcome o;
  const Space x(2, NormKind::Sup);
  for (double a : {0.1, 0.5, 1.0, 2.0, 3.0, 10.0, -0.1, -0.5, -1.0, -2.0, -3.0, -10.0}) {
    const auto j = Subspace::span(x, {v2(1, a)});
    const auto c = linf2_complement(j);
    const std::string tag = "a=" + std::to_string(a);
    o.require(c.kind == ComplementDescription::Kind::Span && c.is_subspace, tag + " not a span");
    o.require(c.generators.size() == 1, tag + " generator count");
    if (c.generators.size() != 1) continue;
    const Vector expected = a > 0 ? v2(1, -1) : v2(1, 1);
    o.require(parallel(c.generators[0], expected), tag + " wrong generator");
    o.require(in_metric_complement(j, c.generators[0]), tag + " generator not in J0");
  }
  struct Axis {
    Vector basis;
    std::vector<Vector> in, out;
  };
  const std::vector<Axis> axes = {{v2(1, 0), {v2(0, 2), v2(1, -2)}, {v2(1, 0)}},
                                  {v2(0, 1), {v2(2, 0), v2(-2, 1)}, {v2(0, 1)}}};
  for (const auto& ax : axes) {
    const auto j = Subspace::span(x, {ax.basis});
    const auto c = linf2_complement(j);
    o.require(c.kind == ComplementDescription::Kind::ConeUnion && !c.is_subspace, "uv=0 not a cone union");
    for (const auto& g : c.generators) o.require(in_metric_complement(j, g), "cone generator not in J0");
    for (const auto& p : ax.in) o.require(in_metric_complement(j, p) && c.contains(p), "expected in J0");
    for (const auto& p : ax.out) o.require(!in_metric_complement(j, p) && !c.contains(p), "expected outside J0");
  }
  if (o.pass) o.detail = "12 lines with uv != 0, both axes";
  return o;
}

// 3. constants in linf^3
Outcome constants() {
  Outcome o;
  const Space x(3, NormKind::Sup);
  const auto j = Subspace::span(x, {v3(1, 1, 1)});
  const Vector f = v3(1, -1, 0), g = v3(0, -1, 1);
  const std::vector<std::pair<Vector, double>> best = {{f, 0.0}, {g, 0.0}, {f + g, -0.5}};
  for (const auto& [v, c] : best) {
    const auto r = metric_projection(j, v);
    o.require(r.is_singleton, "best constant not unique");
    o.require(max_abs(r.representative - Vector::Constant(3, c)) <= 1e-9, "best constant mismatch");
    o.require(std::abs(r.distance - oracle::constants_distance(v)) <= 1e-9, "distance mismatch");
  }
  const auto s = find_linear_selection(j);
  o.require(!s.found(), "selection found for constants");
  o.require(s.witness.has_value(), "no witness");
  if (s.witness) {
    const auto check = check_witness(j, *s.witness);
    o.require(check.valid && check.conclusive, "witness does not validate: " + check.reason);
  }
  o.require(analyze(j, RunConfig{}).qlp == QlpStatus::FailsWithWitness, "analyze does not report FAILS_WITH_WITNESS");
  const auto j2 = Subspace::span(Space(2, NormKind::Sup), {v2(1, 1)});
  o.require(analyze(j2, RunConfig{}).qlp == QlpStatus::Holds, "linf^2 constants do not HOLD");
  if (o.pass) o.detail = "best constants 0, 0, -1/2; witness valid";
  return o;
}

// 4. lifts from selections and selections from lifts
Outcome qlp_round_trip() {
  Outcome o;
  int found = 0, lifts = 0;
  for (int t = 0; t < 500; ++t) {
    Rng rng = trial_rng(kSeed, static_cast<std::uint64_t>(t));
    const int n = uniform_int(rng, 2, 3);
    const Space x(n, uniform_int(rng, 0, 1) ? NormKind::Sup : NormKind::Sum);
    const int k = uniform_int(rng, 1, n - 1);
    const auto j = random_subspace(rng, x, k);
    const auto s = find_linear_selection(j, {kSeed + static_cast<std::uint64_t>(t), 512, {}});
    if (!s.found() || !s.selection->certified()) continue;
    ++found;
    const auto& p = *s.selection;
    const QuotientSpace q(j);
    for (int m = 0; m < 5; ++m) {
      const Space y(uniform_int(rng, 1, 3), static_cast<NormKind>(uniform_int(rng, 0, 1)));
      const LinearMap S(uniform_matrix(rng, n, y.dim) * 3.0, y, q);
      const auto r = lift_operator(S, p);
      o.require(r.composition_residual < 1e-9, "composition residual");
      o.require(std::abs(r.norm_T - r.norm_S) < 1e-9, "norm not preserved");
      ++lifts;
    }
    const auto back = selection_from_lift(q, iso_from_selection(q, p));
    o.require(max_abs(back.p - p.p) <= 1e-12, "selection_from_lift does not return p");
  }
  o.require(found > 0, "no selection certified");
  if (o.pass) o.detail = std::to_string(found) + " selections, " + std::to_string(lifts) + " lifts";
  return o;
}

// 5. property suites
Outcome suites() {
  Outcome o;
  std::string counts;
  for (const char* name : {"homogeneity", "cheney_wulbert", "deutsch_roundtrip"}) {
    const auto r = run_suite(name, 1000, kSeed);
    int failed = 0;
    for (const auto& p : r.properties) failed += p.failed;
    o.require(r.ok() && failed == 0, std::string(name) + " has failures");
    counts += std::string(counts.empty() ? "" : ", ") + name + " 1000";
  }
  if (o.pass) o.detail = counts;
  return o;
}

GridFunction piecewise_linear(const std::vector<double>& knots, const std::vector<double>& values,
                              const std::vector<double>& xs) {
  return sample(
      [&](double x) {
        std::size_t i = 1;
        while (i + 1 < knots.size() && knots[i] < x) ++i;
        const double w = (x - knots[i - 1]) / (knots[i] - knots[i - 1]);
        return values[i - 1] + w * (values[i] - values[i - 1]);
      },
      xs);
}

// 6. the construction in C[0,1]
Outcome star_construction() {
  Outcome o;
  const auto d = ClosedSet1D::parse("[0.2,0.4];[0.6,0.8]");
  const auto xs = aligned_grid(1025, d);
  std::vector<std::pair<std::string, GridFunction>> fs;
  fs.emplace_back("x", sample([](double x) { return x; }, xs));
  fs.emplace_back("x^2", sample([](double x) { return x * x; }, xs));
  {
    std::vector<double> knots, values;
    for (int i = 0; i <= 32; ++i) {
      knots.push_back(i / 32.0);
      values.push_back(std::sin(6.0 * M_PI * i / 32.0));
    }
    fs.emplace_back("sin table", piecewise_linear(knots, values, xs));
  }
  for (double c : {1.0, -3.5, 0.0}) fs.emplace_back("const", sample([c](double) { return c; }, xs));
  for (int t = 0; t < 20; ++t) {
    Rng rng = trial_rng(kSeed + 6, static_cast<std::uint64_t>(t));
    const int pieces = uniform_int(rng, 2, 12);
    std::vector<double> knots = {0.0}, values;
    for (int i = 1; i < pieces; ++i) knots.push_back(0.5 * (uniform_vector(rng, 1)(0) + 1.0));
    knots.push_back(1.0);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    for (std::size_t i = 0; i < knots.size(); ++i) values.push_back(5.0 * uniform_vector(rng, 1)(0));
    fs.emplace_back("random pl", piecewise_linear(knots, values, xs));
  }

  std::vector<GridFunction> images;
  for (const auto& [name, f] : fs) {
    const auto f1 = star_selection_1d(f, d);
    double residual = 0.0, on_d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      residual = std::max(residual, std::abs(f.values[i] - f1.values[i]));
      if (d.contains(xs[i])) {
        on_d = std::max(on_d, std::abs(f.values[i]));
        o.require(f1.values[i] == 0.0, name + ": f1 nonzero on D");
      }
    }
    o.require(std::abs(residual - on_d) <= 1e-12 * std::max(1.0, on_d), name + ": residual != max_D |f|");
    images.push_back(f1);
  }
  {
    const auto& id = fs[0].second;
    const auto f1 = star_selection_1d(id, d);
    double residual = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) residual = std::max(residual, std::abs(id.values[i] - f1.values[i]));
    o.require(std::abs(residual - 0.8) <= 1e-12, "f = id residual is not 0.8");
  }
  Rng rng = trial_rng(kSeed + 7, 0);
  for (int t = 0; t < 50; ++t) {
    const auto a = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(fs.size()) - 1));
    const auto b = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(fs.size()) - 1));
    const double alpha = 4.0 * uniform_vector(rng, 1)(0), beta = 4.0 * uniform_vector(rng, 1)(0);
    GridFunction h{xs, {}};
    for (std::size_t i = 0; i < xs.size(); ++i) h.values.push_back(alpha * fs[a].second.values[i] + beta * fs[b].second.values[i]);
    const auto h1 = star_selection_1d(h, d);
    double dev = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double combo = alpha * images[a].values[i] + beta * images[b].values[i];
      dev = std::max(dev, std::abs(h1.values[i] - combo));
      scale = std::max(scale, std::abs(h.values[i]));
    }
    o.require(dev <= 1e-12 * scale, "linearity deviation");
  }
  if (o.pass) o.detail = std::to_string(fs.size()) + " functions, 50 linear pairs";
  return o;
}

// 7. duality lift against the psi lift
Outcome duality() {
  Outcome o;
  for (int k = 1; k <= 2; ++k) {
    const Space x(k + 1, NormKind::Sup);
    const auto j = coordinate(x, k);
    const QuotientSpace q(j);
    const auto s = find_linear_selection(j);
    o.require(s.found(), "no selection for a coordinate subspace");
    if (!s.found()) continue;
    for (int t = 0; t < 200; ++t) {
      Rng rng = trial_rng(kSeed + 70 + static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(t));
      const Space y(uniform_int(rng, 1, 3), static_cast<NormKind>(uniform_int(rng, 0, 1)));
      const LinearMap S(uniform_matrix(rng, x.dim, y.dim) * 3.0, y, q);
      const auto dual = duality_lift(S);
      const auto psi = lift_operator(S, *s.selection);
      o.require(max_abs(dual.T.matrix - psi.T.matrix) <= 1e-9, "lifts disagree");
      o.require(dual.norm_preserved && psi.norm_preserved, "norm not preserved");
      o.require(std::abs(dual.norm_T - dual.norm_S) <= 1e-9, "duality norm gap");
    }
  }
  if (o.pass) o.detail = "400 operators";
  return o;
}

// 8. lifting l1 operators
Outcome l1_lifting() {
  Outcome o;
  const Space linf2(2, NormKind::Sup), linf3(3, NormKind::Sup), l1_2(2, NormKind::Sum);
  int done = 0;
  Rng rng = trial_rng(kSeed + 8, 0);
  while (done < 200) {
    const Matrix psi = uniform_matrix(rng, 2, 3) * 2.0;
    if (numerical_rank(psi, 1e-6) < 2) continue;
    const LinearMap S(uniform_matrix(rng, 2, 2) * 3.0, l1_2, linf2);
    const LinearMap lifted = lift_from_l1(S, LinearMap(psi, linf3, linf2));
    o.require(max_abs(psi * lifted.matrix - S.matrix) <= 1e-9, "psi o lift != S");
    ++done;
  }
  for (int t = 0; t < 200; ++t) {
    Rng r = trial_rng(kSeed + 9, static_cast<std::uint64_t>(t));
    const QuotientSpace q(random_subspace(r, linf3, uniform_int(r, 1, 2)));
    const LinearMap S(uniform_matrix(r, 3, 2) * 3.0, l1_2, q);
    const LinearMap lifted = lift_from_l1(S, quotient_map(q));
    o.require(composition_residual(q, lifted.matrix, S.matrix) <= 1e-9, "pi o lift != S");
    o.require(std::abs(operator_norm(lifted) - operator_norm(S)) <= 1e-9, "quotient lift changes the norm");
  }
  if (o.pass) o.detail = "200 surjections, 200 quotient maps";
  return o;
}

// 9. spans of sign patterns
Outcome support_predicate() {
  Outcome o;
  const auto patterns = oracle::lattice(3);
  const auto probes = oracle::lattice(3);
  int positive = 0, witnessed = 0, exhausted = 0;
  for (NormKind kind : {NormKind::Sup, NormKind::Sum}) {
    const Space x(3, kind);
    for (const auto& f : patterns) {
      const int support = static_cast<int>((f.array() != 0.0).count());
      const bool expected = support <= 2;
      const auto s = span_support_search(kind, f);
      const std::string tag = to_string(kind) + " " + format_vector(f);
      o.require(span_support_qlp_test(kind, f) == expected, tag + ": predicate mismatch");
      if (expected) {
        o.require(s.found() && s.selection->certified() && s.selection->status == CheckMode::Exact,
                  tag + ": no certified selection");
        ++positive;
        continue;
      }
      o.require(!s.found(), tag + ": selection found");
      const auto j = Subspace::span(x, {f});
      if (s.witness) {
        const auto check = check_witness(j, *s.witness);
        o.require(check.valid && check.conclusive, tag + ": witness invalid");
        ++witnessed;
      } else {
        o.require(oracle::best_selection_excess(kind, f, probes, 2.0, 81) > 0.05, tag + ": exhaustive search found a map");
        ++exhausted;
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(positive) + " certified, " + std::to_string(witnessed) + " witnessed, " +
               std::to_string(exhausted) + " by exhaustive search";
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0: no limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "linf^2 line distances", 1.0, linf2_distances},
      {2, "linf^2 complement classification", 0.0, linf2_classification},
      {3, "constants counterexample", 1.0, constants},
      {4, "selection / lift round trip", 30.0, qlp_round_trip},
      {5, "decomposition and complement suites", 0.0, suites},
      {6, "vanishing-ideal selection on [0,1]", 1.0, star_construction},
      {7, "duality lift cross-check", 0.0, duality},
      {8, "l1 basis lifting", 0.0, l1_lifting},
      {9, "support predicate for sign patterns", 60.0, support_predicate},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.require(false, "took " + std::to_string(secs) + " s");
      o.pass = false;
    }
    std::printf("[%s] %d %s (%.3f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
