#include "proxilift/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json_writer.hpp"

namespace proxilift {
namespace {

using detail::Json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    T out{};
    if constexpr (std::is_same_v<T, double>) {
      out = std::stod(value, &used);
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
      out = std::stoull(value, &used);
    } else {
      out = std::stoi(value, &used);
    }
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::logic_error&) {
    throw std::invalid_argument("config key '" + key + "' has malformed value '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config key '" + key + "' expects a boolean, got '" + value + "'");
}

Json tolerance_json(const Tolerance& tol) {
  return Json{{"eps_eq", tol.eps_eq}, {"eps_rank", tol.eps_rank}, {"sphere_samples", tol.sphere_samples}};
}

Json subspace_json(const Subspace& j) {
  return Json{{"dim", j.dim()}, {"basis", detail::to_json_columns(j.basis())}};
}

Json witness_json(const Subspace& j, const NonlinearityWitness& w, const WitnessCheck& check, const Tolerance& tol) {
  const Vector sum = w.f + w.g;
  const Vector pf_pg = w.pf + w.pg;
  return Json{{"f", detail::to_json_vector(w.f)},
              {"g", detail::to_json_vector(w.g)},
              {"pf", detail::to_json_vector(w.pf)},
              {"pg", detail::to_json_vector(w.pg)},
              {"pfg", detail::to_json_vector(w.pfg)},
              {"pf_plus_pg", detail::to_json_vector(pf_pg)},
              {"dist_f_plus_g", distance(j, sum, tol)},
              {"error_of_pf_plus_pg", norm(j.ambient(), sum - pf_pg)},
              {"valid", check.valid},
              {"conclusive", check.conclusive},
              {"reason", check.reason}};
}

Json analysis_body(const AnalysisReport& r) {
  const Subspace& j = r.subspace;
  Json out;
  out["schema"] = kReportSchema;
  out["space"] = to_string(j.ambient());
  out["subspace"] = subspace_json(j);
  out["seed"] = r.seed;
  out["tolerance"] = tolerance_json(r.tol);
  out["chebyshev"] = Json{{"verdict", to_string(r.chebyshev.kind)},
                          {"checked", r.chebyshev.checked},
                          {"witness", r.chebyshev.witness ? detail::to_json_vector(*r.chebyshev.witness) : Json()}};
  out["J0_is_subspace"] = to_string(r.j0);
  if (r.complement) {
    Json gens = Json::array();
    for (const auto& g : r.complement->generators) gens.push_back(detail::to_json_vector(g));
    out["complement"] = Json{{"kind", to_string(r.complement->kind)},
                             {"is_subspace", r.complement->is_subspace},
                             {"generators", gens}};
  } else {
    out["complement"] = nullptr;
  }
  if (r.search.selection) {
    const auto& s = *r.search.selection;
    const int n = j.ambient().dim;
    // ker p is the complement J1 inside J0
    const QuotientSpace q(j, r.tol);
    const Matrix j1 = (Matrix::Identity(n, n) - s.p) * q.complement_basis();
    out["selection"] = Json{{"status", to_string(s.status)},
                            {"method", s.method},
                            {"p", detail::to_json_matrix(s.p)},
                            {"kernel_basis", detail::to_json_columns(j1)}};
  } else {
    out["selection"] = nullptr;
  }
  out["qlp"] = to_string(r.qlp);
  Json witnesses = Json::array();
  if (r.search.witness && r.witness_check) witnesses.push_back(witness_json(j, *r.search.witness, *r.witness_check, r.tol));
  out["witnesses"] = witnesses;
  out["note"] = r.search.note;
  return out;
}

}  // namespace

std::uint64_t RunConfig::effective_seed() const {
  if (seed) return *seed;
  if (const char* env = std::getenv("PROXILIFT_SEED"); env && *env) {
    return parse_number<std::uint64_t>("PROXILIFT_SEED", trim(env));
  }
  return kDefaultSeed;
}

void RunConfig::validate() const {
  tol.validate();
  if (candidate_budget < 1) throw std::invalid_argument("candidate_budget must be positive");
  if (chebyshev_samples < 0) throw std::invalid_argument("chebyshev_samples must be nonnegative");
  if (grid_n < 2) throw std::invalid_argument("grid_n must be at least 2");
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + " is not key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "seed") {
      base.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "eps_eq") {
      base.tol.eps_eq = parse_number<double>(key, value);
    } else if (key == "eps_rank") {
      base.tol.eps_rank = parse_number<double>(key, value);
    } else if (key == "sphere_samples") {
      base.tol.sphere_samples = parse_number<int>(key, value);
    } else if (key == "candidate_budget") {
      base.candidate_budget = parse_number<int>(key, value);
    } else if (key == "chebyshev_samples") {
      base.chebyshev_samples = parse_number<int>(key, value);
    } else if (key == "grid_n") {
      base.grid_n = parse_number<int>(key, value);
    } else if (key == "out") {
      base.out = value;
    } else if (key == "timings") {
      base.timings = parse_bool(key, value);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  base.validate();
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

std::string to_string(J0Status s) {
  switch (s) {
    case J0Status::True: return "TRUE";
    case J0Status::False: return "FALSE";
    case J0Status::SampledTrue: return "SAMPLED_TRUE";
    case J0Status::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string to_string(QlpStatus s) {
  switch (s) {
    case QlpStatus::Holds: return "HOLDS";
    case QlpStatus::FailsWithWitness: return "FAILS_WITH_WITNESS";
    case QlpStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

int exit_code(QlpStatus s) { return s == QlpStatus::Inconclusive ? 2 : 0; }

AnalysisReport analyze(const Subspace& j, const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  AnalysisReport r{.subspace = j};
  r.seed = config.effective_seed();
  r.tol = config.tol;
  r.chebyshev = is_chebyshev(j, config.chebyshev_samples, r.seed, r.tol);
  r.search = find_linear_selection(j, SearchOptions{r.seed, config.candidate_budget, r.tol});
  if (r.search.witness) r.witness_check = check_witness(j, *r.search.witness, r.tol);

  const Space& x = j.ambient();
  if (x.norm == NormKind::Sup && x.dim == 2) r.complement = linf2_complement(j);

  if (r.search.found()) {
    r.qlp = QlpStatus::Holds;
  } else if (r.witness_check && r.witness_check->valid && r.witness_check->conclusive) {
    r.qlp = QlpStatus::FailsWithWitness;
  }

  // J0 is a subspace iff J is Chebyshev and P_J is linear
  using CK = ChebyshevVerdict::Kind;
  if (j.dim() == 0 || j.dim() == x.dim || x.norm == NormKind::Euclid) {
    r.j0 = J0Status::True;
  } else if (r.complement) {
    r.j0 = r.complement->is_subspace ? J0Status::True : J0Status::False;
  } else if (r.chebyshev.kind == CK::No || r.qlp == QlpStatus::FailsWithWitness) {
    r.j0 = J0Status::False;
  } else if (r.search.found()) {
    r.j0 = r.chebyshev.kind == CK::YesCertified ? J0Status::True : J0Status::SampledTrue;
  }
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string to_json(const AnalysisReport& report, bool with_timings) {
  Json out = analysis_body(report);
  Json ordered;
  ordered["schema"] = out["schema"];
  ordered["command"] = "analyze";
  for (const auto& [k, v] : out.items()) {
    if (k != "schema") ordered[k] = v;
  }
  if (with_timings) ordered["timings"] = Json{{"analyze_seconds", report.elapsed_seconds}};
  return detail::dump(ordered);
}

LinearMap parse_operator(std::string_view json_text, const QuotientSpace& q) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("operator file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("domain") || !doc.contains("matrix")) {
    throw std::invalid_argument("operator file needs \"domain\" and \"matrix\"");
  }
  if (!doc["domain"].is_string()) throw std::invalid_argument("\"domain\" must be a space spec such as \"linf:2\"");
  const Space domain = parse_space(doc["domain"].get<std::string>());
  const Json& rows = doc["matrix"];
  const int n = q.ambient().dim;
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw std::invalid_argument("\"matrix\" must have one row per coordinate of X (" + std::to_string(n) + ")");
  }
  Matrix m(n, domain.dim);
  for (int r = 0; r < n; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != domain.dim) {
      throw std::invalid_argument("row " + std::to_string(r) + " of \"matrix\" must have " +
                                  std::to_string(domain.dim) + " entries");
    }
    for (int c = 0; c < domain.dim; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_number()) throw std::invalid_argument("\"matrix\" entries must be numbers");
      m(r, c) = e.get<double>();
    }
  }
  return LinearMap(std::move(m), domain, q);
}

LiftRun run_lift(const LinearMap& S, const RunConfig& config) {
  const auto* q = std::get_if<QuotientSpace>(&S.codomain);
  if (!q) throw std::invalid_argument("S must map into a quotient");
  LiftRun run{analyze(q->subspace(), config), std::nullopt};
  if (run.analysis.search.selection) run.lift = lift_operator(S, *run.analysis.search.selection, config.tol);
  return run;
}

std::string to_json(const LiftRun& run, bool with_timings) {
  const AnalysisReport& a = run.analysis;
  Json out;
  out["schema"] = kReportSchema;
  out["command"] = "lift";
  out["space"] = to_string(a.subspace.ambient());
  out["subspace"] = subspace_json(a.subspace);
  out["seed"] = a.seed;
  out["tolerance"] = tolerance_json(a.tol);
  out["qlp"] = to_string(a.qlp);
  if (a.search.selection) {
    out["selection"] = Json{{"status", to_string(a.search.selection->status)},
                            {"method", a.search.selection->method},
                            {"p", detail::to_json_matrix(a.search.selection->p)}};
  } else {
    out["selection"] = nullptr;
  }
  Json witnesses = Json::array();
  if (a.search.witness && a.witness_check) {
    witnesses.push_back(witness_json(a.subspace, *a.search.witness, *a.witness_check, a.tol));
  }
  out["witnesses"] = witnesses;
  if (run.lift) {
    const LiftReport& l = *run.lift;
    out["lift"] = Json{{"domain", describe(l.T.domain)},
                       {"T", detail::to_json_matrix(l.T.matrix)},
                       {"norm_S", l.norm_S},
                       {"norm_T", l.norm_T},
                       {"composition_residual", l.composition_residual},
                       {"composition_ok", l.composition_ok},
                       {"norm_preserved", l.norm_preserved}};
  } else {
    out["lift"] = nullptr;
  }
  out["note"] = run.lift ? std::string() : "no certified selection, so no norm-preserving lift is produced";
  if (with_timings) out["timings"] = Json{{"analyze_seconds", a.elapsed_seconds}};
  return detail::dump(out);
}

C01Certificate certify_c01(const GridFunction& f, const GridFunction& f1, const ClosedSet1D& d, int grid_n) {
  if (f.xs != f1.xs) throw std::invalid_argument("f and f1 live on different grids");
  C01Certificate c;
  c.d = d.to_string();
  c.grid_n = grid_n;
  c.grid_points = f.xs.size();
  c.vanishes_on_d = true;
  for (std::size_t i = 0; i < f.xs.size(); ++i) {
    c.residual_sup = std::max(c.residual_sup, std::abs(f.values[i] - f1.values[i]));
    if (d.contains(f.xs[i]) && f1.values[i] != 0.0) c.vanishes_on_d = false;
  }
  c.max_abs_on_d = vanishing_ideal_distance(f, d);
  c.equal = std::abs(c.residual_sup - c.max_abs_on_d) <= 1e-12 * std::max(1.0, c.max_abs_on_d);
  return c;
}

std::string to_json(const C01Certificate& c) {
  Json out;
  out["schema"] = kReportSchema;
  out["command"] = "select-c01";
  out["D"] = c.d;
  out["grid_n"] = c.grid_n;
  out["grid_points"] = c.grid_points;
  out["residual_sup"] = c.residual_sup;
  out["max_abs_on_D"] = c.max_abs_on_d;
  out["equal"] = c.equal;
  out["f1_vanishes_on_D"] = c.vanishes_on_d;
  return detail::dump(out);
}

C01Certificate2D certify_c01_2d(const GridFunction2D& f1, const Star2DResult& result, const Region2D& d,
                                std::string region_spec) {
  C01Certificate2D c;
  c.region = std::move(region_spec);
  c.grid_n = f1.n;
  c.rays = result.rays;
  c.uncovered = result.uncovered.size();
  c.cross_ray_jump = result.cross_ray_jump;
  for (int i = 0; i < f1.n; ++i) {
    for (int k = 0; k < f1.n; ++k) {
      if (d(f1.coord(i), f1.coord(k))) c.max_abs_f1_on_d = std::max(c.max_abs_f1_on_d, std::abs(f1.at(i, k)));
    }
  }
  return c;
}

std::string to_json(const C01Certificate2D& c) {
  Json out;
  out["schema"] = kReportSchema;
  out["command"] = "select-c01-2d";
  out["region"] = c.region;
  out["grid_n"] = c.grid_n;
  out["rays"] = c.rays;
  out["uncovered_points"] = c.uncovered;
  out["max_abs_f1_on_D"] = c.max_abs_f1_on_d;
  out["cross_ray_jump"] = c.cross_ray_jump;
  return detail::dump(out);
}

}  // namespace proxilift
