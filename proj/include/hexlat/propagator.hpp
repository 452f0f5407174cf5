#pragma once

#include <complex>
#include <stdexcept>

#include "hexlat/field.hpp"
#include "hexlat/lattice.hpp"

namespace hexlat {

struct BoxTooSmallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Smallest power-of-two box side N >= 2*((4*sqrt(2)+1)*t + 64); keeps
/// wrap-around contamination below machine level inside the light cone.
int min_box_size(double t);

/// Exact linear evolution e^{it Delta}: multiplier e^{-i t g(2 pi j / N)}
/// in frequency space. Preserves the l2 norm to roundoff.
WaveField propagate_linear(const WaveField& field, const DispersionSymbol& sym,
                           double t);

/// Kernel K(l, t) of e^{it Delta} applied to the delta at the origin,
/// for all sites of an n x n box. K(., 0) = delta. Normalization:
/// K(l,t) = (2 pi)^{-2} integral over [0,2pi]^2 of e^{-itg(x)+i<l,x>} dx,
/// realized as the exact N-point tensor trapezoid sum.
class KernelGrid {
 public:
  KernelGrid(const DispersionSymbol& sym, int n, double t);

  int n() const { return field_.n(); }
  double t() const { return t_; }
  cplx at(long l1, long l2) const { return field_.at_site(l1, l2); }
  const WaveField& field() const { return field_; }

  /// max |K| over the whole box and its site.
  struct Sup {
    double value;
    long l1, l2;
  };
  Sup sup_abs() const;

 private:
  WaveField field_;
  double t_;
};

/// Throws BoxTooSmallError unless n >= min_box_size(t).
KernelGrid kernel_fft(const DispersionSymbol& sym, int n, double t);

}  // namespace hexlat
