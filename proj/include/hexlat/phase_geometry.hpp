#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexlat/lattice.hpp"
#include "hexlat/newton_poly.hpp"

namespace hexlat {

struct UnclassifiedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CriticalPoint {
  Vec2 v;             // velocity parameter
  Vec2 x;             // critical point in [0, 2pi)^2
  double grad_norm;   // ||grad g(x) - v||
  double discriminant;
};

enum class CaseLabel { Nondegenerate, A, B, C, D };
enum class NormalFormKind { Morse, Normal1, Normal2 };

/// Classification of one critical point of phi(v, .) = g - <v, .>.
/// Normal1: quartic family a20 u1^2 + a12 u1 u2^2 + a04 u2^4 (R-nondegenerate),
/// exponent pair (-3/4, 0). Normal2: a20 u1^2 + a03 u2^3, pair (-5/6, 0).
/// Morse: pair (-1, 0).
struct SingularityReport {
  CriticalPoint point;
  bool has_lambda = false;
  double lambda = 0.0;
  bool swapped = false;  // canonicalized by the coordinate swap x1 <-> x2
  CaseLabel case_label = CaseLabel::Nondegenerate;
  NormalFormKind normal_form = NormalFormKind::Morse;
  double a20 = 0.0, a12 = 0.0, a03 = 0.0, a04 = 0.0;
  Rational beta;  // exponent pair (beta, p)
  int p = 0;
};

/// Damped Newton (Levenberg-Marquardt) on grad g(x) = v from grid_seeds^2
/// uniform seeds; converged roots (||grad g - v|| < 1e-10) deduplicated
/// modulo 2pi, sorted lexicographically. Empty for v outside the range of
/// grad g.
std::vector<CriticalPoint> find_critical_points(const DispersionSymbol& sym,
                                                Vec2 v, int grid_seeds);

/// Case analysis A/B/C/D at a degenerate critical point (Morse when
/// |discriminant| > 1e-8). Throws UnclassifiedError when both the cubic
/// coefficient and the quartic discriminant vanish within tolerance;
/// std::invalid_argument when x is not a critical point for v.
SingularityReport classify_singularity(const DispersionSymbol& sym, Vec2 x,
                                       Vec2 v);

enum class CurveLabel { Sigma0, Sigma1_2, Sigma2prime };

/// Defining function of the curve at x (hex symbol).
double curve_residual(CurveLabel label, double x1, double x2);

struct CurvePoint {
  double x1, x2, residual;
};

struct CurveSet {
  CurveLabel label;
  int grid_n = 0;
  std::vector<CurvePoint> points;

  /// CSV columns (x1, x2, residual).
  void write_csv(std::ostream& out) const;
};

/// Marching-squares zero extraction on [0,2pi]^2 with per-edge bisection to
/// residual < 1e-6, plus a local-minimum Newton pass that recovers isolated
/// zeros (where the defining function touches zero without a sign change).
CurveSet trace_curve(CurveLabel label, int grid_n);

/// n points on Sigma0 (D(x) = 0): seeded uniform draws projected onto the
/// curve by damped Newton on D.
std::vector<Vec2> sample_sigma0(int n, std::uint64_t seed);

struct CertHit {
  double x1, x2, res1, res2;
};

struct CertifyOptions {
  /// Negative control: replace the second defining function by the first,
  /// turning the whole first curve into spurious intersections.
  bool sabotage_f2 = false;
};

struct CertReport {
  int grid_n = 0;
  double epsilon = 0.0;
  double threshold = 0.0;  // effective: max(epsilon, 2pi/grid_n)
  std::vector<CertHit> hits;          // |res1|, |res2| both below threshold
  std::size_t hit_count = 0;          // hits may be truncated for storage
  std::vector<CertHit> triple_hits;   // Sigma0 also hit, lambda > 0
  double max_hit_distance_cells = 0.0;
  bool distance_ok = false;  // every hit within 4 cells of a corner point
  bool triple_ok = false;    // no lambda > 0 triple intersection
  bool pass = false;

  /// JSON {grid_n, epsilon, hits, pass, ...}.
  void write_json(std::ostream& out) const;
};

/// Scans [0,2pi)^2 at grid_n^2 resolution for simultaneous zeros of the
/// Sigma1_2 and Sigma2prime defining functions, using gradient-normalized
/// residuals |F| / max(||grad F||, 1e-12); checks that every hit lies within
/// 4 cells of the four points (pi/2 + k pi, pi/2 + k pi) and that no
/// lambda > 0 triple intersection with Sigma0 exists away from those points.
CertReport certify_appendix(int grid_n, double epsilon,
                            const CertifyOptions& opt = {});

struct SweepEntry {
  Vec2 v;
  bool unclassified = false;
  std::string error;  // set when unclassified
  SingularityReport report;
};

struct SweepResult {
  std::uint64_t seed = 0;
  std::vector<SweepEntry> entries;
  int n_unclassified = 0;
  Rational worst_beta;  // slowest decay exponent attached
  int worst_p = 0;
};

/// Classification sweep over n_velocities parameters: a deterministic list
/// of degenerate directions (cases A and B), Sigma0-projected velocities
/// v = grad g(x*) with x* on Sigma0 (exercising cases C and D), and uniform
/// draws in B(0, 4 sqrt(2) + 1); every critical point of every velocity is
/// classified.
SweepResult sweep_classification(const DispersionSymbol& sym, int n_velocities,
                                 std::uint64_t seed, int grid_seeds);

}  // namespace hexlat
