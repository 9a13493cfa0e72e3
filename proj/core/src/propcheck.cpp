#include "proxilift/propcheck.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "json_writer.hpp"
#include "proxilift/lifting.hpp"
#include "proxilift/oracle.hpp"
#include "proxilift/projection.hpp"
#include "proxilift/random.hpp"
#include "proxilift/selection.hpp"

namespace proxilift {
namespace {

using detail::Json;

enum class Outcome { Pass, Fail, Skip };
using Outcomes = std::vector<Outcome>;

struct Suite {
  std::string name;
  std::vector<std::string> properties;
  std::function<Json(Rng&)> generate;
  std::function<Outcomes(const Json&, const Tolerance&)> check;
};

// -- case encoding ----------------------------------------------------------

Vector vec(const Json& a) {
  Vector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  return v;
}

Matrix mat(const Json& rows, int nrows, int ncols) {
  Matrix m(nrows, ncols);
  for (int r = 0; r < nrows; ++r) {
    for (int c = 0; c < ncols; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

Subspace subspace_of(const Json& c) {
  const Space x = parse_space(c["space"].get<std::string>());
  const int k = static_cast<int>(c["basis"].size());
  Matrix b(x.dim, k);
  for (int i = 0; i < k; ++i) b.col(i) = vec(c["basis"][static_cast<std::size_t>(i)]);
  return Subspace(x, std::move(b));
}

Json encode_subspace(const Subspace& j) {
  return Json{{"space", to_string(j.ambient())}, {"basis", detail::to_json_columns(j.basis())}};
}

NormKind pick_norm(Rng& rng, bool euclid) {
  const int r = uniform_int(rng, 0, euclid ? 2 : 1);
  return r == 0 ? NormKind::Sup : r == 1 ? NormKind::Sum : NormKind::Euclid;
}

Json random_case(Rng& rng, bool euclid, int n_lo, int n_hi) {
  const Space x(uniform_int(rng, n_lo, n_hi), pick_norm(rng, euclid));
  const int k = uniform_int(rng, 1, x.dim - 1);
  return encode_subspace(random_subspace(rng, x, k));
}

bool close(double a, double b, double eps) { return std::abs(a - b) <= eps * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Outcome as(bool ok) { return ok ? Outcome::Pass : Outcome::Fail; }

// -- suites -----------------------------------------------------------------

Suite cheney_wulbert_suite() {
  return {"cheney_wulbert",
          {"sum_is_x", "j_in_J", "j_attains_distance", "j0_in_J0"},
          [](Rng& rng) {
            Json c = random_case(rng, true, 2, 4);
            const int n = parse_space(c["space"].get<std::string>()).dim;
            c["x"] = detail::to_json_vector(uniform_vector(rng, n) * (1.0 + 4.0 * (uniform_vector(rng, 1)(0) + 1.0)));
            return c;
          },
          [](const Json& c, const Tolerance& tol) -> Outcomes {
            const Subspace j = subspace_of(c);
            const Vector x = vec(c["x"]);
            Decomposition d;
            try {
              d = cheney_wulbert_decompose(j, x, tol);
            } catch (const std::logic_error&) {
              return {Outcome::Pass, Outcome::Pass, Outcome::Pass, Outcome::Fail};
            }
            const double scale = std::max(1.0, norm(j.ambient(), x));
            return {as((d.j + d.j0 - x).cwiseAbs().maxCoeff() <= tol.eps_eq * scale),
                    as(j.contains(d.j, tol)),
                    as(close(norm(j.ambient(), d.j0), distance(j, x, tol), tol.eps_eq)),
                    as(in_metric_complement(j, d.j0, tol))};
          }};
}

Suite homogeneity_suite() {
  return {"homogeneity",
          {"scaled_residual_in_J0", "negated_residual_in_J0"},
          [](Rng& rng) {
            Json c = random_case(rng, true, 2, 4);
            const int n = parse_space(c["space"].get<std::string>()).dim;
            c["x"] = detail::to_json_vector(uniform_vector(rng, n) * 3.0);
            double lambda = 10.0 * uniform_vector(rng, 1)(0);
            if (std::abs(lambda) < 1e-2) lambda = 1e-2;
            c["lambda"] = lambda;
            return c;
          },
          [](const Json& c, const Tolerance& tol) -> Outcomes {
            const Subspace j = subspace_of(c);
            const double lambda = c["lambda"].get<double>();
            if (lambda == 0.0) return {Outcome::Skip, Outcome::Skip};
            const Vector j0 = vec(c["x"]) - metric_projection(j, vec(c["x"]), tol).representative;
            return {as(in_metric_complement(j, lambda * j0, tol)), as(in_metric_complement(j, -j0, tol))};
          }};
}

Json random_operator(Rng& rng, int n) {
  const Space y(uniform_int(rng, 1, 3), uniform_int(rng, 0, 1) ? NormKind::Sup : NormKind::Sum);
  return Json{{"domain", to_string(y)}, {"matrix", detail::to_json_matrix(uniform_matrix(rng, n, y.dim) * 2.0)}};
}

Suite lift_norm_suite() {
  return {"lift_norm",
          {"composition", "norm_preserved", "lower_bound_for_other_lifts", "selection_round_trip"},
          [](Rng& rng) {
            Json c = random_case(rng, false, 2, 3);
            const Subspace j = subspace_of(c);
            c["S"] = random_operator(rng, j.ambient().dim);
            const int m = parse_space(c["S"]["domain"].get<std::string>()).dim;
            c["perturbation"] = detail::to_json_matrix(uniform_matrix(rng, j.dim(), m));
            return c;
          },
          [](const Json& c, const Tolerance& tol) -> Outcomes {
            const Subspace j = subspace_of(c);
            const auto search = find_linear_selection(j, SearchOptions{42, 512, tol});
            if (!search.found()) return Outcomes(4, Outcome::Skip);
            const auto& p = *search.selection;
            const QuotientSpace q(j, tol);
            const int n = j.ambient().dim;
            const Space y = parse_space(c["S"]["domain"].get<std::string>());
            const LinearMap S(mat(c["S"]["matrix"], n, y.dim), y, q);
            const LiftReport lift = lift_operator(S, p, tol);
            const Matrix other = lift.T.matrix + j.basis() * mat(c["perturbation"], j.dim(), y.dim);
            const bool bound = lift_norm_lower_bound_check(S, LinearMap(other, y, j.ambient()), tol);
            const auto back = selection_from_lift(q, iso_from_selection(q, p, tol), tol);
            return {as(lift.composition_residual < 1e-9), as(std::abs(lift.norm_T - lift.norm_S) < 1e-9), as(bound),
                    as(back.certified() && max_abs(back.p - p.p) <= 1e-12)};
          }};
}

Suite deutsch_roundtrip_suite() {
  return {"deutsch_roundtrip",
          {"idempotent", "kernel_in_J0", "reassembled_selection"},
          [](Rng& rng) { return random_case(rng, true, 2, 3); },
          [](const Json& c, const Tolerance& tol) -> Outcomes {
            const Subspace j = subspace_of(c);
            const auto search = find_linear_selection(j, SearchOptions{42, 512, tol});
            if (!search.found()) return Outcomes(3, Outcome::Skip);
            const Matrix& p = search.selection->p;
            const int n = j.ambient().dim;
            const QuotientSpace q(j, tol);
            const Matrix j1 = (Matrix::Identity(n, n) - p) * q.complement_basis();
            const auto rebuilt = verify_selection(j, projection_along(j.basis(), j1), tol);
            return {as(max_abs(p * p - p) <= 1e-9 * std::max(1.0, max_abs(p))),
                    as(!find_complement_violation(j, j1, tol).has_value()),
                    as(rebuilt.certified() && max_abs(rebuilt.p - p) <= 1e-9 * std::max(1.0, max_abs(p)))};
          }};
}

Suite duality_suite() {
  return {"duality",
          {"paths_agree", "duality_norm_preserved", "psi_norm_preserved", "duality_composition"},
          [](Rng& rng) {
            const bool three = uniform_int(rng, 0, 1) == 1;
            const Space x(three ? 3 : 2, NormKind::Sup);
            Matrix b = Matrix::Zero(x.dim, three ? 2 : 1);
            for (Eigen::Index i = 0; i < b.cols(); ++i) b(i, i) = 1.0;
            Json c = encode_subspace(Subspace(x, b));
            c["S"] = random_operator(rng, x.dim);
            return c;
          },
          [](const Json& c, const Tolerance& tol) -> Outcomes {
            const Subspace j = subspace_of(c);
            const QuotientSpace q(j, tol);
            const Space y = parse_space(c["S"]["domain"].get<std::string>());
            const LinearMap S(mat(c["S"]["matrix"], j.ambient().dim, y.dim), y, q);
            const LiftReport dual = duality_lift(S, tol);
            const auto search = find_linear_selection(j, SearchOptions{42, 512, tol});
            if (!search.found()) return {Outcome::Fail, as(dual.norm_preserved), Outcome::Fail, as(dual.composition_ok)};
            const LiftReport psi = lift_operator(S, *search.selection, tol);
            return {as(max_abs(dual.T.matrix - psi.T.matrix) <= 1e-9), as(dual.norm_preserved), as(psi.norm_preserved),
                    as(dual.composition_ok)};
          }};
}

Suite distance_oracle_suite() {
  return {"distance_oracle",
          {"lp_below_oracle", "oracle_within_grid_error"},
          [](Rng& rng) {
            const Space x(uniform_int(rng, 2, 3), pick_norm(rng, true));
            Json c = encode_subspace(random_subspace(rng, x, uniform_int(rng, 1, std::min(2, x.dim - 1))));
            c["x"] = detail::to_json_vector(uniform_vector(rng, x.dim) * 2.0);
            return c;
          },
          [](const Json& c, const Tolerance& tol) -> Outcomes {
            const Subspace j = subspace_of(c);
            const Vector x = vec(c["x"]);
            const int n = j.ambient().dim;
            const Matrix& b = j.basis();
            // a best approximation has norm <= 2 ||x||; bound its coefficients
            const double smin = Eigen::JacobiSVD<Matrix>(b).singularValues().minCoeff();
            const double radius = 2.0 * std::sqrt(static_cast<double>(n)) * norm(j.ambient(), x) / smin + 1e-6;
            const int steps = j.dim() == 1 ? 20001 : 801;
            const double oracle = brute_distance_oracle(j, x, radius, steps);
            double lipschitz = 0.0;
            for (Eigen::Index i = 0; i < b.cols(); ++i) lipschitz += norm(j.ambient(), b.col(i));
            const double grid_error = lipschitz * radius / (steps - 1);
            const double d = distance(j, x, tol);
            return {as(d <= oracle + tol.eps_eq * std::max(1.0, oracle)), as(oracle - d <= grid_error + tol.eps_eq)};
          }};
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {cheney_wulbert_suite(), homogeneity_suite(),  lift_norm_suite(),
                                         deutsch_roundtrip_suite(), duality_suite(), distance_oracle_suite()};
  return all;
}

// -- shrinking --------------------------------------------------------------

Json rounded(const Json& j, int decimals) {
  if (j.is_number_float()) {
    const double scale = std::pow(10.0, decimals);
    return std::round(j.get<double>() * scale) / scale;
  }
  if (j.is_structured()) {
    Json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = rounded(*it, decimals);
    return out;
  }
  return j;
}

Outcomes safe_check(const Suite& s, const Json& c, const Tolerance& tol, std::string* error) {
  try {
    return s.check(c, tol);
  } catch (const std::exception& e) {
    if (error) *error = e.what();
    return Outcomes(s.properties.size(), Outcome::Fail);
  }
}

// Coarsest rounding of the case that still fails the same property without
// throwing.
Json shrink(const Suite& s, const Json& c, std::size_t property, const Tolerance& tol) {
  for (int decimals = 0; decimals <= 6; ++decimals) {
    const Json candidate = rounded(c, decimals);
    std::string error;
    const Outcomes o = safe_check(s, candidate, tol, &error);
    if (error.empty() && o[property] == Outcome::Fail) return candidate;
  }
  return c;
}

}  // namespace

bool SuiteResult::ok() const {
  for (const auto& p : properties) {
    if (p.failed) return false;
  }
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(std::string_view name, int trials, std::uint64_t seed, const Tolerance& tol) {
  tol.validate();
  if (trials < 0) throw std::invalid_argument("trial count must be nonnegative");
  const Suite* suite = nullptr;
  for (const auto& s : suites()) {
    if (s.name == name) suite = &s;
  }
  if (!suite) throw std::invalid_argument("unknown suite '" + std::string(name) + "'");

  const auto start = std::chrono::steady_clock::now();
  SuiteResult result;
  result.suite = suite->name;
  result.trials = trials;
  result.seed = seed;
  for (const auto& p : suite->properties) result.properties.push_back({p});

  for (int t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, static_cast<std::uint64_t>(t));
    const Json c = suite->generate(rng);
    std::string error;
    const Outcomes o = safe_check(*suite, c, tol, &error);
    for (std::size_t p = 0; p < o.size(); ++p) {
      auto& tally = result.properties[p];
      if (o[p] == Outcome::Pass) ++tally.passed;
      if (o[p] == Outcome::Skip) ++tally.skipped;
      if (o[p] != Outcome::Fail) continue;
      ++tally.failed;
      Json record{{"suite", suite->name}, {"trial", t}, {"property", tally.name}, {"case", c}};
      if (!error.empty()) {
        record["exception"] = error;
      } else {
        record["shrunk"] = shrink(*suite, c, p, tol);
      }
      result.counterexamples.push_back(detail::dump(record));
    }
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string to_json(const SuiteResult& result, bool with_timings) {
  Json out;
  out["schema"] = 1;
  out["command"] = "propcheck";
  out["suite"] = result.suite;
  out["trials"] = result.trials;
  out["seed"] = result.seed;
  Json props = Json::array();
  for (const auto& p : result.properties) {
    props.push_back(Json{{"name", p.name}, {"passed", p.passed}, {"failed", p.failed}, {"skipped", p.skipped}});
  }
  out["properties"] = props;
  out["ok"] = result.ok();
  Json ces = Json::array();
  for (const auto& c : result.counterexamples) ces.push_back(Json::parse(c));
  out["counterexamples"] = ces;
  if (with_timings) out["timings"] = Json{{"seconds", result.seconds}};
  return detail::dump(out);
}

}  // namespace proxilift
