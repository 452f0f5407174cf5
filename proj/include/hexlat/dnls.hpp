#pragma once

#include <iosfwd>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hexlat/field.hpp"
#include "hexlat/lattice.hpp"

namespace hexlat {

struct DivergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One Strang step for i u_t + Delta u + |u|^{2 sigma} u = 0: half-step
/// nonlinear phase rotation u <- u * exp(i (dt/2) |u|^{2 sigma}), full
/// linear step, half-step nonlinear. Both substeps preserve |u| pointwise /
/// the l2 norm, so mass conservation holds to roundoff.
WaveField step_strang(const WaveField& field, const DispersionSymbol& sym,
                      double dt, double sigma_pow);

struct DnlsSnapshot {
  double t;
  WaveField field;
  double mass;  // l2 norm
  double linf;
  double l4;
  double l6;
};

struct DnlsTrajectory {
  std::vector<DnlsSnapshot> snapshots;

  /// CSV columns (t, mass, linf, l4, l6, strichartz_partial) where
  /// strichartz_partial is the running L^4 l^6 norm over [0, t].
  void write_csv(std::ostream& out) const;

  std::vector<std::pair<double, WaveField>> as_pairs() const;
};

/// Strang time-stepping to T with a snapshot every snap_every steps
/// (and at t = 0 and t = T). Throws BoxTooSmallError (from the propagator
/// contract) when the box cannot contain the light cone of T.
DnlsTrajectory evolve_dnls(const WaveField& psi, const DispersionSymbol& sym,
                           double T, double dt, double sigma_pow,
                           int snap_every = 1);

/// Fixed-point iteration of the Duhamel map
///   L(u)(t) = e^{itD} psi + i * int_0^t e^{i(t-s)D} |u|^{2 sigma} u(s) ds
/// with trapezoid-in-s quadrature on a fixed node set; returns the final
/// iterate at time T. Throws DivergedError when successive iterates'
/// l2 distance grows (data outside the contraction regime).
WaveField duhamel_picard(const WaveField& psi, const DispersionSymbol& sym,
                         double T, int iterations, double sigma_pow,
                         int time_nodes = 16);

}  // namespace hexlat
