#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "hexlat/field.hpp"
#include "hexlat/oscillatory.hpp"

namespace hexlat {

enum class FitMethod { Direct, DyadicEnvelope };

struct FitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  FitMethod method = FitMethod::Direct;
  int n_samples = 0;

  /// JSON object {slope, intercept, r_squared, window, method, n_samples}.
  void write_json(std::ostream& out) const;
};

/// Least-squares line on (log t, log value) over samples inside
/// [t_min, t_max]. DyadicEnvelope first replaces each dyadic block
/// [2^k, 2^{k+1}) by its maximal sample, suppressing oscillatory dips
/// below the envelope. Requires >= 8 in-window samples, all values > 0.
PowerLawFit fit_power_law(const DecaySeries& series, double t_min,
                          double t_max, FitMethod method);

/// True iff 2 <= q, r <= infinity, 1/q + sigma/r = sigma/2, and
/// (q, r, sigma) != (2, inf, 1). Infinity is passed as
/// std::numeric_limits<double>::infinity().
bool is_admissible(double q, double r, double sigma);

/// Composite trapezoid in time of ||u(t)||_{l^r}^q, then the q-th root;
/// q = inf takes the max over samples. Times must be increasing.
double strichartz_norm(const std::vector<std::pair<double, WaveField>>& traj,
                       double q, double r);

}  // namespace hexlat
