#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "proxilift/function_space.hpp"
#include "proxilift/lifting.hpp"
#include "proxilift/projection.hpp"
#include "proxilift/selection.hpp"

namespace proxilift {

inline constexpr int kReportSchema = 1;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Settings shared by every command. Loaded from a flat `key = value` file
/// (blank lines and `#` comments ignored); command-line flags win over it.
///
///   seed, eps_eq, eps_rank, sphere_samples, candidate_budget,
///   chebyshev_samples, grid_n, out, timings
struct RunConfig {
  std::optional<std::uint64_t> seed;
  Tolerance tol;
  int candidate_budget = 512;
  int chebyshev_samples = 4096;
  int grid_n = 1025;
  std::string out;
  bool timings = false;

  /// Explicit seed, else PROXILIFT_SEED, else 42.
  std::uint64_t effective_seed() const;
  void validate() const;
};

/// Applies the settings in `text` on top of `base`. Throws
/// std::invalid_argument on unknown keys or malformed values.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

enum class J0Status { True, False, SampledTrue, Unknown };
enum class QlpStatus { Holds, FailsWithWitness, Inconclusive };

std::string to_string(J0Status s);
std::string to_string(QlpStatus s);

/// 0 when the question is settled either way, 2 when it is not.
int exit_code(QlpStatus s);
inline constexpr int kExitInputError = 1;

struct AnalysisReport {
  Subspace subspace;
  std::uint64_t seed = kDefaultSeed;
  Tolerance tol{};
  ChebyshevVerdict chebyshev{};
  J0Status j0 = J0Status::Unknown;
  std::optional<ComplementDescription> complement{};
  SelectionSearch search{};
  std::optional<WitnessCheck> witness_check{};
  QlpStatus qlp = QlpStatus::Inconclusive;
  double elapsed_seconds = 0.0;
};

AnalysisReport analyze(const Subspace& j, const RunConfig& config);

/// Pretty-printed JSON; floats at 17 significant digits. Timings appear only
/// when asked for, so repeated runs stay byte-identical.
std::string to_json(const AnalysisReport& report, bool with_timings = false);

/// Operator file: {"domain": "linf:2", "matrix": [[...], ...]} with one row
/// per ambient coordinate; column i is a representative of S(e_i).
LinearMap parse_operator(std::string_view json_text, const QuotientSpace& q);

struct LiftRun {
  AnalysisReport analysis;
  std::optional<LiftReport> lift;
};

LiftRun run_lift(const LinearMap& S, const RunConfig& config);
std::string to_json(const LiftRun& run, bool with_timings = false);

struct C01Certificate {
  std::string d;
  int grid_n = 0;
  std::size_t grid_points = 0;
  double residual_sup = 0.0;
  double max_abs_on_d = 0.0;
  bool equal = false;
  bool vanishes_on_d = false;
};

C01Certificate certify_c01(const GridFunction& f, const GridFunction& f1, const ClosedSet1D& d, int grid_n);
std::string to_json(const C01Certificate& c);

struct C01Certificate2D {
  std::string region;
  int grid_n = 0;
  int rays = 0;
  std::size_t uncovered = 0;
  /// max |f1| over grid points of D; zero when the per-ray rule vanishes on D.
  double max_abs_f1_on_d = 0.0;
  double cross_ray_jump = 0.0;
};

C01Certificate2D certify_c01_2d(const GridFunction2D& f1, const Star2DResult& result, const Region2D& d,
                                std::string region_spec);
std::string to_json(const C01Certificate2D& c);

}  // namespace proxilift
