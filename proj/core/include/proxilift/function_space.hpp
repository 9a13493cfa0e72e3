#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "proxilift/selection.hpp"
#include "proxilift/space.hpp"

namespace proxilift {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// A closed subset of [0, 1] given as finitely many disjoint closed intervals
/// (single points allowed). Touching intervals are merged.
class ClosedSet1D {
 public:
  explicit ClosedSet1D(std::vector<Interval> intervals);
  /// "[a,b];[c,d];..." A bare number "t" is the point [t,t].
  static ClosedSet1D parse(std::string_view text);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool contains(double x) const;
  std::string to_string() const;

 private:
  std::vector<Interval> intervals_;
};

/// Samples of a function on [0, 1] at increasing abscissae.
struct GridFunction {
  std::vector<double> xs;
  std::vector<double> values;
};

/// Samples on the uniform n x n grid of [0, 1]^2; values[i * n + j] is the
/// sample at (i / (n - 1), j / (n - 1)).
struct GridFunction2D {
  int n = 0;
  std::vector<double> values;

  double coord(int i) const { return static_cast<double>(i) / (n - 1); }
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
};

/// The uniform grid with grid_n points, plus every endpoint of D inserted
/// exactly, so the construction below sees D's boundary.
std::vector<double> aligned_grid(int grid_n, const ClosedSet1D& d);

GridFunction sample(const std::function<double(double)>& fn, std::vector<double> xs);
GridFunction2D sample_2d(const std::function<double(double, double)>& fn, int n);

/// The linear selection onto J_D = { f : f = 0 on D }: zero on D, f minus
/// the chord between the bounding D-points on each bounded gap, and f minus
/// its value at the nearest D-point outside the hull of D. The grid must
/// contain all endpoints of D.
GridFunction star_selection_1d(const GridFunction& f, const ClosedSet1D& d);

/// max over grid points of D of |f|; equals dist(f, J_D) in the sup norm.
double vanishing_ideal_distance(const GridFunction& f, const ClosedSet1D& d);

double sup_norm(const std::vector<double>& values);

using Region2D = std::function<bool(double, double)>;

/// Union of "annulus:r0,r1", "disk:cx,cy,r" and "box:x0,y0,x1,y1" pieces
/// joined by ';'. Annuli are centred at the origin.
Region2D parse_region(std::string_view text);

/// Grid points m * (a, b), m = 0, 1, ..., on the ray with primitive
/// direction (a, b), gcd(a, b) = 1.
std::vector<std::pair<int, int>> ray_indices(int n, int a, int b);

/// f sampled along the ray from the origin with primitive direction (a, b).
/// The parameter t in [0, 1] runs to the edge of the square in 2 (n - 1)
/// equal steps and f is bilinearly interpolated between grid points. The
/// grid point m (a, b) is the sample k = 2 m max(a, b), where no
/// interpolation happens.
struct RayProfile {
  GridFunction samples;
  std::vector<bool> in_d;
  /// Runs of consecutive samples in D, as a closed set in t; empty when the
  /// ray misses D.
  std::optional<ClosedSet1D> d_on_ray;
  std::vector<std::pair<int, int>> grid_points;
  std::vector<std::size_t> grid_samples;
};

RayProfile ray_profile(const GridFunction2D& f, const Region2D& d, int a, int b);

struct Star2DResult {
  GridFunction2D f1;
  /// Grid points whose ray misses D; f1 = f there.
  std::vector<std::pair<int, int>> uncovered;
  /// Largest |f1(p) - f1(q)| over grid neighbours p, q on different rays.
  double cross_ray_jump = 0.0;
  int rays = 0;
};

/// The one-dimensional rule applied to the profile of every ray through a
/// grid point. The origin takes its value from the diagonal ray.
Star2DResult star_selection_2d(const GridFunction2D& f, const Region2D& d);

enum class ProductNorm { Sup, Sum };

struct ComponentwiseResult {
  std::vector<Vector> selected;
  /// Aggregate of dist(x_m, J): the distance from the tuple to the product of J.
  double product_distance = 0.0;
  /// Aggregate of ||x_m - p(x_m)||.
  double attained = 0.0;
  double tuple_norm = 0.0;
  double selected_norm = 0.0;
  /// ||(p(x_m))|| <= 2 ||(x_m)||
  bool bound_holds = false;
  bool attains_distance = false;
};

/// Applies a certified selection to each component of a tuple in a
/// sup- or sum-product of copies of X.
ComponentwiseResult componentwise_selection(const Subspace& j, const SelectionCertificate& p,
                                            const std::vector<Vector>& tuple, ProductNorm product,
                                            const Tolerance& tol = {});

double product_distance(const Subspace& j, const std::vector<Vector>& tuple, ProductNorm product,
                        const Tolerance& tol = {});

std::string to_csv(const GridFunction& f);
std::string to_csv(const GridFunction2D& f);
/// Reads "x,value" rows (header optional).
GridFunction parse_csv_1d(std::string_view text);

}  // namespace proxilift
