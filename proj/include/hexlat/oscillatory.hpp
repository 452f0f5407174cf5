#pragma once

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexlat/field.hpp"
#include "hexlat/lattice.hpp"

namespace hexlat {

struct InsufficientResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Points per axis for resolving the integrand of K(l,t): a >= 4x
/// oversampling of the fastest phase oscillation (per-axis derivative of
/// t*g is bounded by 4t for the hex symbol), clamped to >= 16.
int nyquist_points(double t, long l1, long l2);

/// Tensor trapezoid rule for
///   K(l,t) = (2 pi)^{-2} integral_{[0,2pi]^2} e^{-itg(x)+i<l,x>} dx.
/// The integrand is smooth and periodic, so the rule is spectrally
/// accurate; with m = N it is the same finite sum as kernel_fft.
/// Throws InsufficientResolutionError when m < nyquist_points(t, l).
cplx kernel_quadrature(const DispersionSymbol& sym, long l1, long l2, double t,
                       int m);

enum class DecayBackend { Fft, Quadrature };

struct DecaySample {
  double t;
  double sup_abs;
  long argmax_l1;
  long argmax_l2;
  DecayBackend backend;
};

struct DecaySeries {
  LatticeKind lattice;
  std::string velocity_policy;  // human-readable sampling descriptor
  std::vector<DecaySample> samples;

  /// CSV columns (t, sup_abs, argmax_l1, argmax_l2, backend).
  void write_csv(std::ostream& out) const;
};

struct DecayOptions {
  /// Largest FFT box the series may allocate; beyond it the quadrature
  /// backend takes over.
  int fft_budget = 4096;
  /// With the FFT backend, take the sup over every site of the box instead
  /// of only the rounded velocity samples. The velocity list is still
  /// required for the quadrature backend.
  bool full_box_sup = false;
};

/// Uniform nv x nv velocity grid on [-a, a]^2, a = 4 sqrt(2) + 1, restricted
/// to the closed ball of radius a.
std::vector<Vec2> velocity_grid(int nv);

/// For each t, sup over l = round(t*v) of |K(l,t)|; FFT backend while
/// min_box_size(t) fits the budget, quadrature on the sampled sites beyond.
DecaySeries decay_series(const DispersionSymbol& sym,
                         const std::vector<double>& times,
                         const std::vector<Vec2>& velocity_samples,
                         const DecayOptions& opt = {});

}  // namespace hexlat
