#include "proxilift/selection.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "proxilift/projection.hpp"
#include "proxilift/random.hpp"

namespace proxilift {
namespace {

constexpr int kMaxRestarts = 16;
constexpr int kRandomWitnessPoints = 32;
constexpr std::size_t kMaxWitnessPairs = 20000;

// {-1, 0, 1}^n without the origin, first coordinate varying fastest.
std::vector<Vector> lattice_points(int n) {
  std::vector<Vector> out;
  if (n > 4) {
    for (int i = 0; i < n; ++i) {
      out.push_back(Vector::Unit(n, i));
      for (int l = i + 1; l < n; ++l) {
        out.push_back(Vector::Unit(n, i) + Vector::Unit(n, l));
        out.push_back(Vector::Unit(n, i) - Vector::Unit(n, l));
      }
    }
    return out;
  }
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 1; code < total; ++code) {
    Vector x(n);
    int rest = code;
    for (int i = 0; i < n; ++i) {
      const int digit = rest % 3;
      rest /= 3;
      x(i) = digit == 0 ? 0.0 : (digit == 1 ? 1.0 : -1.0);
    }
    out.push_back(x);
  }
  return out;
}

// Scale to max |entry| = 1 with the first significant entry positive.
Vector canonical_direction(const Vector& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  Vector d = v / scale;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (std::abs(d(i)) > 1e-9) {
      if (d(i) < 0) d = -d;
      break;
    }
  }
  return d;
}

bool is_constants(const Subspace& j) {
  if (j.dim() != 1 || j.ambient().dim < 3) return false;
  const Vector b = j.basis().col(0);
  return (b.array() - b(0)).abs().maxCoeff() <= 1e-12 * std::abs(b(0)) && b(0) != 0.0;
}

std::optional<NonlinearityWitness> make_witness(const Subspace& j, const Vector& f, const Vector& g,
                                                const Tolerance& tol) {
  NonlinearityWitness w{f, g, metric_projection(j, f, tol).representative,
                        metric_projection(j, g, tol).representative,
                        metric_projection(j, f + g, tol).representative};
  const auto check = check_witness(j, w, tol);
  if (check.valid && check.conclusive) return w;
  return std::nullopt;
}

struct Sample {
  Vector x;
  Vector px;
  bool singleton;
};

std::optional<NonlinearityWitness> search_witness(const Subspace& j, const std::vector<Sample>& samples,
                                                  const Tolerance& tol) {
  std::vector<const Sample*> unique;
  for (const auto& s : samples) {
    if (s.singleton) unique.push_back(&s);
  }
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < unique.size(); ++a) {
    for (std::size_t b = a + 1; b < unique.size(); ++b) {
      if (++pairs > kMaxWitnessPairs) return std::nullopt;
      const Vector sum = unique[a]->x + unique[b]->x;
      const double d = distance(j, sum, tol);
      const double via_sum = norm(j.ambient(), sum - unique[a]->px - unique[b]->px);
      if (via_sum > d + 1e-6 * std::max(1.0, d)) {
        if (auto w = make_witness(j, unique[a]->x, unique[b]->x, tol)) return w;
      }
    }
  }
  return std::nullopt;
}

std::optional<SelectionCertificate> complement_search(const Subspace& j, const std::vector<Sample>& samples,
                                                      const SearchOptions& options) {
  const int n = j.ambient().dim;
  const int k = j.dim();
  const Tolerance& tol = options.tol;

  std::vector<Vector> pool;
  for (const auto& s : samples) {
    const Vector r = s.x - s.px;
    if (r.cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, s.x.cwiseAbs().maxCoeff())) continue;
    const Vector d = canonical_direction(r);
    const bool seen = std::any_of(pool.begin(), pool.end(), [&](const Vector& p) {
      return (p - d).cwiseAbs().maxCoeff() <= 1e-9;
    });
    if (!seen) pool.push_back(d);
  }
  if (pool.empty()) return std::nullopt;

  const int need = n - k;
  const auto restarts = std::min<std::size_t>(kMaxRestarts, pool.size());
  for (std::size_t start = 0; start < restarts; ++start) {
    Matrix chosen(n, 0);
    for (std::size_t step = 0; step < pool.size() && chosen.cols() < need; ++step) {
      const Vector& v = pool[(start + step) % pool.size()];
      Matrix stacked(n, k + chosen.cols() + 1);
      stacked << j.basis(), chosen, v;
      if (numerical_rank(stacked, tol.eps_rank * 1e3) != stacked.cols()) continue;
      Matrix trial(n, chosen.cols() + 1);
      trial << chosen, v;
      if (find_complement_violation(j, trial, tol)) continue;
      chosen = std::move(trial);
    }
    if (chosen.cols() != need) continue;
    auto cert = verify_selection(j, projection_along(j.basis(), chosen), tol, options.seed);
    cert.method = "deutsch_search";
    if (cert.certified()) return cert;
  }
  return std::nullopt;
}

SelectionCertificate trivial_certificate(Matrix p, std::string method) {
  SelectionCertificate c;
  c.p = std::move(p);
  c.status = CheckMode::Exact;
  c.method = std::move(method);
  return c;
}

}  // namespace

std::string to_string(CheckMode mode) {
  return mode == CheckMode::Exact ? "CERTIFIED_EXACT" : "CERTIFIED_SAMPLED";
}

std::string format_vector(const Vector& v) {
  std::ostringstream out;
  out << std::setprecision(17) << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v(i);
  }
  out << ')';
  return out.str();
}

WitnessCheck check_witness(const Subspace& j, const NonlinearityWitness& w, const Tolerance& tol) {
  WitnessCheck out;
  const Vector sum = w.f + w.g;
  for (const Vector* v : {&w.pf, &w.pg, &w.pfg}) {
    if (!j.contains(*v, tol)) {
      out.reason = "a claimed best approximation lies outside J";
      return out;
    }
  }
  auto is_best = [&](const Vector& x, const Vector& px) {
    const double d = distance(j, x, tol);
    return std::abs(norm(j.ambient(), x - px) - d) <= tol.eps_eq * std::max(1.0, d) * 10.0;
  };
  if (!is_best(w.f, w.pf) || !is_best(w.g, w.pg) || !is_best(sum, w.pfg)) {
    out.reason = "a claimed best approximation is not nearest";
    return out;
  }
  const double d = distance(j, sum, tol);
  const double gap = norm(j.ambient(), sum - w.pf - w.pg) - d;
  if (gap <= 1e-6 * std::max(1.0, d)) {
    out.reason = "pf + pg is itself a best approximation to f + g";
    return out;
  }
  out.valid = true;
  out.conclusive = metric_projection(j, w.f, tol).is_singleton && metric_projection(j, w.g, tol).is_singleton;
  if (!out.conclusive) out.reason = "P_J(f) or P_J(g) is not a singleton";
  return out;
}

SelectionCertificate verify_selection(const Subspace& j, const Matrix& p, const Tolerance& tol,
                                      std::uint64_t seed) {
  const int n = j.ambient().dim;
  if (p.rows() != n || p.cols() != n) throw DimensionError("selection must be a square map on X");
  SelectionCertificate cert;
  cert.p = p;
  cert.method = "given";

  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  for (int c = 0; c < n; ++c) {
    if (j.residual(p.col(c)) > tol.eps_eq * scale) {
      cert.violations.push_back("p(e_" + std::to_string(c) + ") = " + format_vector(p.col(c)) +
                                " is not in J");
    }
  }
  if (j.dim() > 0) {
    const double err = (p * j.basis() - j.basis()).cwiseAbs().maxCoeff();
    if (err > tol.eps_eq * scale * std::max(1.0, j.basis().cwiseAbs().maxCoeff())) {
      cert.violations.push_back("p is not the identity on J (max error " + std::to_string(err) + ")");
    }
  }

  const Matrix residual_map = Matrix::Identity(n, n) - p;
  if (j.ambient().norm == NormKind::Euclid) {
    cert.status = CheckMode::Exact;
    const double err = (p - j.orthogonal_projector()).cwiseAbs().maxCoeff();
    if (err > tol.eps_eq * scale) {
      cert.violations.push_back("p differs from the orthogonal projection (max error " + std::to_string(err) + ")");
      if (auto bad = find_complement_violation(j, residual_map, tol)) cert.counterexample = *bad;
    }
    return cert;
  }

  std::optional<Vector> bad;
  if (n <= kExactCellMaxDim) {
    cert.status = CheckMode::Exact;
    bad = find_complement_violation(j, residual_map, tol);
  } else {
    cert.status = CheckMode::Sampled;
    bad = sample_complement_violation(j, residual_map, tol.sphere_samples, seed, tol);
  }
  if (bad) {
    const Vector x = *bad;
    const Vector px = p * x;
    cert.violations.push_back("x = " + format_vector(x) + " has ||x - p(x)|| = " +
                              std::to_string(norm(j.ambient(), x - px)) + " but dist(x, J) = " +
                              std::to_string(distance(j, x, tol)));
    cert.counterexample = x;
  }
  return cert;
}

Matrix projection_along(const Matrix& j_basis, const Matrix& complement) {
  const Eigen::Index n = j_basis.rows();
  const Eigen::Index k = j_basis.cols();
  if (complement.rows() != n || complement.cols() != n - k) {
    throw DimensionError("complement must have n - k columns");
  }
  Matrix full(n, n);
  full << j_basis, complement;
  Matrix keep = Matrix::Zero(n, n);
  keep.leftCols(k) = j_basis;
  return keep * full.inverse();
}

SelectionCertificate hyperplane_selection(const Subspace& j, const Vector& functional, const Tolerance& tol) {
  const int n = j.ambient().dim;
  if (functional.size() != n) throw DimensionError("functional has wrong length");
  if (functional.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("functional must be nonzero");
  if (j.dim() != n - 1 || (functional.transpose() * j.basis()).cwiseAbs().maxCoeff() >
                              tol.eps_eq * functional.norm() * std::max(1.0, j.basis().cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("J must be the kernel of the functional");
  }
  // dist(x, ker f) = |f(x)| / ||f||_*, so x0 is in J0 exactly when it norms f
  Vector x0;
  switch (j.ambient().norm) {
    case NormKind::Sum: {
      Eigen::Index i = 0;
      functional.cwiseAbs().maxCoeff(&i);
      x0 = Vector::Unit(n, i);
      break;
    }
    case NormKind::Sup:
      x0 = functional.unaryExpr([](double v) { return v > 0.0 ? 1.0 : v < 0.0 ? -1.0 : 0.0; });
      break;
    case NormKind::Euclid:
      x0 = functional;
      break;
  }
  const double f_x0 = functional.dot(x0);
  const Matrix p = Matrix::Identity(n, n) - x0 * functional.transpose() / f_x0;
  auto cert = verify_selection(j, p, tol);
  cert.method = "hyperplane";
  return cert;
}

SelectionCertificate hyperplane_selection(const Space& space, const Vector& functional, const Tolerance& tol) {
  if (functional.size() != space.dim) throw DimensionError("functional has wrong length");
  if (functional.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("functional must be nonzero");
  const Subspace kernel(space, Subspace::span(space, {functional}).annihilator(), tol);
  return hyperplane_selection(kernel, functional, tol);
}

std::vector<int> coordinate_support(const Subspace& j, const Tolerance& tol) {
  if (j.dim() == 0) return {};
  const Matrix& b = j.basis();
  const double threshold = tol.eps_eq * b.cwiseAbs().maxCoeff();
  std::vector<int> rows;
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    if (b.row(r).cwiseAbs().maxCoeff() > threshold) rows.push_back(static_cast<int>(r));
  }
  if (static_cast<int>(rows.size()) != j.dim()) return {};
  return rows;
}

SelectionSearch find_linear_selection(const Subspace& j, const SearchOptions& options) {
  const Tolerance& tol = options.tol;
  const Space& space = j.ambient();
  const int n = space.dim;
  const int k = j.dim();
  SelectionSearch out;

  auto accept = [&](SelectionCertificate cert) {
    if (!cert.certified()) return false;
    out.selection = std::move(cert);
    return true;
  };

  if (k == 0) {
    accept(trivial_certificate(Matrix::Zero(n, n), "zero_subspace"));
    return out;
  }
  if (k == n) {
    accept(trivial_certificate(Matrix::Identity(n, n), "whole_space"));
    return out;
  }
  if (space.norm == NormKind::Euclid) {
    auto cert = verify_selection(j, j.orthogonal_projector(), tol, options.seed);
    cert.method = "euclidean_projection";
    if (accept(std::move(cert))) return out;
  }
  if (space.norm == NormKind::Sup) {
    const auto support = coordinate_support(j, tol);
    if (!support.empty()) {
      Matrix p = Matrix::Zero(n, n);
      for (int i : support) p(i, i) = 1.0;
      auto cert = verify_selection(j, p, tol, options.seed);
      cert.method = "m_projection";
      if (accept(std::move(cert))) return out;
    }
    if (n == 2) {
      const auto description = linf2_complement(j);
      if (description.kind == ComplementDescription::Kind::Span) {
        Matrix along(2, 1);
        along.col(0) = description.generators.front();
        auto cert = verify_selection(j, projection_along(j.basis(), along), tol, options.seed);
        cert.method = "linf2_closed_form";
        if (accept(std::move(cert))) return out;
      }
    }
  }
  if (j.codim() == 1) {
    if (accept(hyperplane_selection(j, j.annihilator().col(0), tol))) return out;
  }

  // codimension >= 2 under a polyhedral norm
  std::vector<Sample> samples;
  auto add_sample = [&](const Vector& x) {
    const auto proj = metric_projection(j, x, tol);
    samples.push_back({x, proj.representative, proj.is_singleton});
  };
  for (const auto& x : lattice_points(n)) add_sample(x);
  Rng rng(options.seed);
  for (int s = 0; s < kRandomWitnessPoints; ++s) add_sample(uniform_vector(rng, n));

  if (is_constants(j)) {
    const Vector f = Vector::Unit(n, 0) - Vector::Unit(n, 1);
    const Vector g = Vector::Unit(n, 2) - Vector::Unit(n, 1);
    if (auto w = make_witness(j, f, g, tol)) {
      out.witness = std::move(w);
      out.note = "constants: midrange is not additive";
      return out;
    }
  }
  if (auto w = search_witness(j, samples, tol)) {
    out.witness = std::move(w);
    out.note = "lattice/random pair search";
    return out;
  }

  for (int s = kRandomWitnessPoints; s < options.candidate_budget; ++s) add_sample(uniform_vector(rng, n));
  if (auto cert = complement_search(j, samples, options)) {
    accept(std::move(*cert));
    return out;
  }
  out.inconclusive = true;
  out.note = "no complement of J inside J0 found within the candidate budget";
  return out;
}

SelectionSearch span_support_search(NormKind norm_kind, const Vector& f, const SearchOptions& options) {
  if (f.size() < 1 || f.size() > 4) throw std::invalid_argument("support test is limited to dimension <= 4");
  if (f.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("f must be nonzero");
  const Space space(static_cast<int>(f.size()), norm_kind);
  return find_linear_selection(Subspace::span(space, {f}, options.tol), options);
}

bool span_support_qlp_test(NormKind norm_kind, const Vector& f, const SearchOptions& options) {
  return span_support_search(norm_kind, f, options).found();
}

}  // namespace proxilift
