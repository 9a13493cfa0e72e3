#include "proxilift/function_space.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>

#include "proxilift/projection.hpp"

namespace proxilift {
namespace {

using Run = std::pair<std::size_t, std::size_t>;  // inclusive index range

// The selection rule on one sampled line; runs are the D-components as index
// ranges, sorted and disjoint.
void apply_star_rule(std::span<const double> xs, std::span<const double> f, const std::vector<Run>& runs,
                     std::span<double> out) {
  const std::size_t first = runs.front().first;
  const std::size_t last = runs.back().second;
  for (std::size_t i = 0; i < first; ++i) out[i] = f[i] - f[first];
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (std::size_t i = runs[r].first; i <= runs[r].second; ++i) out[i] = 0.0;
    if (r + 1 == runs.size()) break;
    const std::size_t a = runs[r].second;
    const std::size_t b = runs[r + 1].first;
    for (std::size_t i = a + 1; i < b; ++i) {
      out[i] = f[i] - f[a] + (xs[i] - xs[a]) / (xs[b] - xs[a]) * (f[a] - f[b]);
    }
  }
  for (std::size_t i = last + 1; i < xs.size(); ++i) out[i] = f[i] - f[last];
}

std::size_t find_abscissa(const std::vector<double>& xs, double t) {
  const auto it = std::lower_bound(xs.begin(), xs.end(), t - 1e-12);
  if (it == xs.end() || std::abs(*it - t) > 1e-12) {
    throw std::invalid_argument("grid does not contain the D endpoint " + std::to_string(t));
  }
  return static_cast<std::size_t>(it - xs.begin());
}

std::vector<Run> runs_on_grid(const GridFunction& f, const ClosedSet1D& d) {
  std::vector<Run> runs;
  for (const auto& iv : d.intervals()) runs.emplace_back(find_abscissa(f.xs, iv.lo), find_abscissa(f.xs, iv.hi));
  return runs;
}

void check_grid(const GridFunction& f) {
  if (f.xs.size() != f.values.size() || f.xs.empty()) throw std::invalid_argument("grid function has mismatched sizes");
  if (!std::is_sorted(f.xs.begin(), f.xs.end())) throw std::invalid_argument("grid abscissae must increase");
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::string s(text);
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("malformed number '" + item + "'");
  }
  return out;
}

}  // namespace

ClosedSet1D::ClosedSet1D(std::vector<Interval> intervals) {
  if (intervals.empty()) throw std::invalid_argument("D must be nonempty");
  for (const auto& iv : intervals) {
    if (!(iv.lo <= iv.hi) || iv.lo < 0.0 || iv.hi > 1.0) {
      throw std::invalid_argument("interval [" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) +
                                  "] is not inside [0, 1]");
    }
  }
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
      if (iv.lo < intervals_.back().hi) throw std::invalid_argument("intervals of D overlap");
      intervals_.back().hi = iv.hi;  // zero-length gap
      continue;
    }
    intervals_.push_back(iv);
  }
}

ClosedSet1D ClosedSet1D::parse(std::string_view text) {
  std::vector<Interval> intervals;
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  std::stringstream in(s);
  std::string piece;
  while (std::getline(in, piece, ';')) {
    if (piece.empty()) continue;
    try {
      if (piece.front() == '[') {
        if (piece.back() != ']') throw std::invalid_argument("missing ']'");
        const auto nums = parse_numbers(std::string_view(piece).substr(1, piece.size() - 2));
        if (nums.size() != 2) throw std::invalid_argument("expected two endpoints");
        intervals.push_back({nums[0], nums[1]});
      } else {
        const auto nums = parse_numbers(piece);
        if (nums.size() != 1) throw std::invalid_argument("expected a point");
        intervals.push_back({nums[0], nums[0]});
      }
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("malformed D component '" + piece + "': " + e.what());
    }
  }
  return ClosedSet1D(std::move(intervals));
}

bool ClosedSet1D::contains(double x) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [x](const Interval& iv) { return iv.lo <= x && x <= iv.hi; });
}

std::string ClosedSet1D::to_string() const {
  std::string out;
  for (const auto& iv : intervals_) {
    if (!out.empty()) out += ';';
    out += '[' + fmt17(iv.lo) + ',' + fmt17(iv.hi) + ']';
  }
  return out;
}

std::vector<double> aligned_grid(int grid_n, const ClosedSet1D& d) {
  if (grid_n < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> xs(static_cast<std::size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i) xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / (grid_n - 1);
  for (const auto& iv : d.intervals()) {
    xs.push_back(iv.lo);
    xs.push_back(iv.hi);
  }
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) {
    if (out.empty() || x - out.back() > 1e-12) {
      out.push_back(x);
    } else if (d.contains(x)) {
      out.back() = x;  // keep the exact endpoint when it nearly coincides with a grid point
    }
  }
  return out;
}

GridFunction sample(const std::function<double(double)>& fn, std::vector<double> xs) {
  GridFunction f;
  f.values.reserve(xs.size());
  for (double x : xs) f.values.push_back(fn(x));
  f.xs = std::move(xs);
  return f;
}

GridFunction2D sample_2d(const std::function<double(double, double)>& fn, int n) {
  if (n < 2) throw std::invalid_argument("grid needs at least two points per axis");
  GridFunction2D f{n, std::vector<double>(static_cast<std::size_t>(n) * n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) f.at(i, j) = fn(f.coord(i), f.coord(j));
  }
  return f;
}

GridFunction star_selection_1d(const GridFunction& f, const ClosedSet1D& d) {
  check_grid(f);
  const auto runs = runs_on_grid(f, d);
  GridFunction out{f.xs, std::vector<double>(f.values.size())};
  apply_star_rule(f.xs, f.values, runs, out.values);
  return out;
}

double vanishing_ideal_distance(const GridFunction& f, const ClosedSet1D& d) {
  check_grid(f);
  double best = 0.0;
  for (std::size_t i = 0; i < f.xs.size(); ++i) {
    if (d.contains(f.xs[i])) best = std::max(best, std::abs(f.values[i]));
  }
  return best;
}

double sup_norm(const std::vector<double>& values) {
  double best = 0.0;
  for (double v : values) best = std::max(best, std::abs(v));
  return best;
}

Region2D parse_region(std::string_view text) {
  std::vector<Region2D> pieces;
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  std::stringstream in(s);
  std::string piece;
  while (std::getline(in, piece, ';')) {
    if (piece.empty()) continue;
    const auto colon = piece.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("region piece '" + piece + "' has no ':'");
    const std::string kind = piece.substr(0, colon);
    std::vector<double> a;
    try {
      a = parse_numbers(std::string_view(piece).substr(colon + 1));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed region piece '" + piece + "'");
    }
    if (kind == "annulus" && a.size() == 2) {
      pieces.push_back([r0 = a[0], r1 = a[1]](double x, double y) {
        const double r = std::hypot(x, y);
        return r0 <= r && r <= r1;
      });
    } else if (kind == "disk" && a.size() == 3) {
      pieces.push_back([a](double x, double y) { return std::hypot(x - a[0], y - a[1]) <= a[2]; });
    } else if (kind == "box" && a.size() == 4) {
      pieces.push_back([a](double x, double y) { return a[0] <= x && x <= a[2] && a[1] <= y && y <= a[3]; });
    } else {
      throw std::invalid_argument("unknown region piece '" + piece + "'");
    }
  }
  if (pieces.empty()) throw std::invalid_argument("region must be nonempty");
  return [pieces](double x, double y) {
    return std::any_of(pieces.begin(), pieces.end(), [&](const Region2D& r) { return r(x, y); });
  };
}

std::vector<std::pair<int, int>> ray_indices(int n, int a, int b) {
  if (a < 0 || b < 0 || (a == 0 && b == 0) || std::gcd(a, b) != 1) {
    throw std::invalid_argument("ray direction must be primitive and nonnegative");
  }
  std::vector<std::pair<int, int>> out;
  for (int m = 0; m * a <= n - 1 && m * b <= n - 1; ++m) out.emplace_back(m * a, m * b);
  return out;
}

RayProfile ray_profile(const GridFunction2D& f, const Region2D& d, int a, int b) {
  const int n = f.n;
  RayProfile out;
  out.grid_points = ray_indices(n, a, b);
  const int top = std::max(a, b);
  const int steps = 2 * (n - 1);
  out.samples.xs.resize(static_cast<std::size_t>(steps) + 1);
  out.samples.values.resize(out.samples.xs.size());
  out.in_d.resize(out.samples.xs.size());

  std::vector<Interval> runs;
  for (int k = 0; k <= steps; ++k) {
    // grid-index coordinates; exact integers at the grid points of the ray
    const double u = static_cast<double>(k * a) / (2 * top);
    const double v = static_cast<double>(k * b) / (2 * top);
    const int i0 = static_cast<int>(u);
    const int j0 = static_cast<int>(v);
    const double du = u - i0;
    const double dv = v - j0;
    // bilinear, in difference form so constants come through exactly
    auto along_v = [&](int i) {
      return dv == 0.0 ? f.at(i, j0) : f.at(i, j0) + dv * (f.at(i, j0 + 1) - f.at(i, j0));
    };
    const double value = du == 0.0 ? along_v(i0) : along_v(i0) + du * (along_v(i0 + 1) - along_v(i0));
    const auto idx = static_cast<std::size_t>(k);
    const double t = static_cast<double>(k) / steps;
    out.samples.xs[idx] = t;
    out.samples.values[idx] = value;
    out.in_d[idx] = d(u / (n - 1), v / (n - 1));
    if (out.in_d[idx]) {
      if (k > 0 && out.in_d[idx - 1]) {
        runs.back().hi = t;
      } else {
        runs.push_back({t, t});
      }
    }
  }
  for (std::size_t m = 0; m < out.grid_points.size(); ++m) out.grid_samples.push_back(2 * m * static_cast<std::size_t>(top));
  if (!runs.empty()) out.d_on_ray = ClosedSet1D(std::move(runs));
  return out;
}

Star2DResult star_selection_2d(const GridFunction2D& f, const Region2D& d) {
  const int n = f.n;
  if (n < 2 || f.values.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("2-D grid function has mismatched sizes");
  }
  Star2DResult out;
  out.f1 = f;
  std::vector<int> ray_id(static_cast<std::size_t>(n) * n, -1);

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if ((a == 0 && b == 0) || std::gcd(a, b) != 1) continue;
      const RayProfile ray = ray_profile(f, d, a, b);
      const bool diagonal = a == 1 && b == 1;
      const std::size_t from = diagonal ? 0 : 1;
      if (!ray.d_on_ray) {
        for (std::size_t m = from; m < ray.grid_points.size(); ++m) out.uncovered.push_back(ray.grid_points[m]);
      } else {
        const GridFunction f1 = star_selection_1d(ray.samples, *ray.d_on_ray);
        for (std::size_t m = from; m < ray.grid_points.size(); ++m) {
          out.f1.at(ray.grid_points[m].first, ray.grid_points[m].second) = f1.values[ray.grid_samples[m]];
        }
      }
      for (std::size_t m = 1; m < ray.grid_points.size(); ++m) {
        ray_id[static_cast<std::size_t>(ray.grid_points[m].first) * n + ray.grid_points[m].second] = out.rays;
      }
      ++out.rays;
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto here = static_cast<std::size_t>(i) * n + j;
      if (i + 1 < n && ray_id[here] != ray_id[here + n]) {
        out.cross_ray_jump = std::max(out.cross_ray_jump, std::abs(out.f1.at(i, j) - out.f1.at(i + 1, j)));
      }
      if (j + 1 < n && ray_id[here] != ray_id[here + 1]) {
        out.cross_ray_jump = std::max(out.cross_ray_jump, std::abs(out.f1.at(i, j) - out.f1.at(i, j + 1)));
      }
    }
  }
  return out;
}

double product_distance(const Subspace& j, const std::vector<Vector>& tuple, ProductNorm product,
                        const Tolerance& tol) {
  double out = 0.0;
  for (const auto& x : tuple) {
    const double d = distance(j, x, tol);
    out = product == ProductNorm::Sup ? std::max(out, d) : out + d;
  }
  return out;
}

ComponentwiseResult componentwise_selection(const Subspace& j, const SelectionCertificate& p,
                                            const std::vector<Vector>& tuple, ProductNorm product,
                                            const Tolerance& tol) {
  if (!p.certified()) throw std::invalid_argument("selection is not certified");
  const int n = j.ambient().dim;
  if (p.p.rows() != n || p.p.cols() != n) throw DimensionError("selection does not act on X");
  auto combine = [product](double acc, double v) { return product == ProductNorm::Sup ? std::max(acc, v) : acc + v; };

  ComponentwiseResult out;
  for (const auto& x : tuple) {
    if (x.size() != n) throw DimensionError("tuple component has wrong length");
    const Vector px = p.p * x;
    out.selected.push_back(px);
    out.attained = combine(out.attained, norm(j.ambient(), x - px));
    out.tuple_norm = combine(out.tuple_norm, norm(j.ambient(), x));
    out.selected_norm = combine(out.selected_norm, norm(j.ambient(), px));
  }
  out.product_distance = product_distance(j, tuple, product, tol);
  out.bound_holds = out.selected_norm <= 2.0 * out.tuple_norm + tol.eps_eq * std::max(1.0, out.tuple_norm);
  out.attains_distance = std::abs(out.attained - out.product_distance) <=
                         tol.eps_eq * std::max(1.0, out.product_distance) * std::max<std::size_t>(1, tuple.size());
  return out;
}

std::string to_csv(const GridFunction& f) {
  std::string out = "x,value\n";
  for (std::size_t i = 0; i < f.xs.size(); ++i) out += fmt17(f.xs[i]) + ',' + fmt17(f.values[i]) + '\n';
  return out;
}

std::string to_csv(const GridFunction2D& f) {
  std::string out = "x,y,value\n";
  for (int i = 0; i < f.n; ++i) {
    for (int j = 0; j < f.n; ++j) out += fmt17(f.coord(i)) + ',' + fmt17(f.coord(j)) + ',' + fmt17(f.at(i, j)) + '\n';
  }
  return out;
}

GridFunction parse_csv_1d(std::string_view text) {
  GridFunction f;
  std::stringstream in{std::string(text)};
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line.find_first_of("0123456789") != 0 && line[0] != '-' && line[0] != '.') {
      first = false;
      continue;  // header
    }
    first = false;
    std::vector<double> nums;
    try {
      nums = parse_numbers(line);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed CSV row '" + line + "'");
    }
    if (nums.size() != 2) throw std::invalid_argument("CSV rows must be x,value");
    f.xs.push_back(nums[0]);
    f.values.push_back(nums[1]);
  }
  check_grid(f);
  return f;
}

}  // namespace proxilift
