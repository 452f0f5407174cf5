#include "hexlat/dnls.hpp"

#include <cmath>
#include <ostream>

#include "hexlat/io.hpp"
#include "hexlat/propagator.hpp"

namespace hexlat {

namespace {

/// In-place half/full nonlinear phase rotation u <- u exp(i tau |u|^{2 sigma}).
void nonlinear_rotate(WaveField& f, double tau, double sigma_pow) {
  cplx* d = f.data();
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = std::norm(d[i]);
    if (a2 == 0.0) continue;
    const double phase = tau * std::pow(a2, sigma_pow);
    d[i] *= cplx(std::cos(phase), std::sin(phase));
  }
}

/// Pointwise nonlinearity N(u) = |u|^{2 sigma} u.
WaveField nonlinearity(const WaveField& f, double sigma_pow) {
  WaveField out = f;
  cplx* d = out.data();
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = std::norm(d[i]);
    d[i] *= a2 == 0.0 ? 0.0 : std::pow(a2, sigma_pow);
  }
  return out;
}

}  // namespace

WaveField step_strang(const WaveField& field, const DispersionSymbol& sym,
                      double dt, double sigma_pow) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_strang: dt > 0");
  if (!(sigma_pow >= 1.0)) {
    throw std::invalid_argument("step_strang: sigma_pow >= 1");
  }
  WaveField u = field;
  nonlinear_rotate(u, dt / 2.0, sigma_pow);
  u = propagate_linear(u, sym, dt);
  nonlinear_rotate(u, dt / 2.0, sigma_pow);
  return u;
}

void DnlsTrajectory::write_csv(std::ostream& out) const {
  out << "t,mass,linf,l4,l6,strichartz_partial\r\n";
  double acc = 0.0;  // running trapezoid of ||u||_6^4
  double prev_t = 0.0, prev_f = 0.0;
  bool first = true;
  for (const DnlsSnapshot& s : snapshots) {
    const double f = std::pow(s.l6, 4.0);
    if (!first) acc += 0.5 * (f + prev_f) * (s.t - prev_t);
    first = false;
    prev_t = s.t;
    prev_f = f;
    out << fmt_g17(s.t) << ',' << fmt_g17(s.mass) << ',' << fmt_g17(s.linf)
        << ',' << fmt_g17(s.l4) << ',' << fmt_g17(s.l6) << ','
        << fmt_g17(std::pow(acc, 0.25)) << "\r\n";
  }
}

std::vector<std::pair<double, WaveField>> DnlsTrajectory::as_pairs() const {
  std::vector<std::pair<double, WaveField>> out;
  out.reserve(snapshots.size());
  for (const DnlsSnapshot& s : snapshots) out.emplace_back(s.t, s.field);
  return out;
}

DnlsTrajectory evolve_dnls(const WaveField& psi, const DispersionSymbol& sym,
                           double T, double dt, double sigma_pow,
                           int snap_every) {
  if (!(T > 0.0) || !(dt > 0.0) || snap_every < 1) {
    throw std::invalid_argument("evolve_dnls: T, dt, snap_every positive");
  }
  if (psi.n() < min_box_size(T)) {
    throw BoxTooSmallError("evolve_dnls: box side " +
                           std::to_string(psi.n()) + " below min_box_size(" +
                           fmt_g17(T) + ") = " +
                           std::to_string(min_box_size(T)));
  }
  const long steps = std::lround(T / dt);
  if (steps < 1 || std::abs(steps * dt - T) > 1e-9 * std::max(1.0, T)) {
    throw std::invalid_argument("evolve_dnls: dt must divide T");
  }
  DnlsTrajectory traj;
  auto snap = [&](double t, const WaveField& u) {
    traj.snapshots.push_back({t, u, u.l2_norm(), u.sup_norm(), u.lp_norm(4.0),
                              u.lp_norm(6.0)});
  };
  WaveField u = psi;
  snap(0.0, u);
  for (long k = 1; k <= steps; ++k) {
    u = step_strang(u, sym, dt, sigma_pow);
    if (k == steps || k % snap_every == 0) snap(k * dt, u);
  }
  return traj;
}

WaveField duhamel_picard(const WaveField& psi, const DispersionSymbol& sym,
                         double T, int iterations, double sigma_pow,
                         int time_nodes) {
  if (!(T > 0.0) || T > 1.0) {
    throw std::invalid_argument("duhamel_picard: T in (0, 1]");
  }
  if (iterations < 1 || time_nodes < 2) {
    throw std::invalid_argument("duhamel_picard: iterations >= 1, nodes >= 2");
  }
  const int m = time_nodes;
  const double ds = T / m;
  // Free trajectory e^{i s_k Delta} psi at the nodes s_k = k ds.
  std::vector<WaveField> free_traj;
  free_traj.reserve(std::size_t(m) + 1);
  for (int k = 0; k <= m; ++k) {
    free_traj.push_back(propagate_linear(psi, sym, k * ds));
  }
  std::vector<WaveField> cur = free_traj;  // zeroth iterate
  double prev_delta = -1.0;
  for (int it = 0; it < iterations; ++it) {
    // Nonlinearity along the current trajectory.
    std::vector<WaveField> nl;
    nl.reserve(cur.size());
    for (const WaveField& u : cur) nl.push_back(nonlinearity(u, sigma_pow));
    std::vector<WaveField> next;
    next.reserve(cur.size());
    for (int j = 0; j <= m; ++j) {
      WaveField acc = free_traj[std::size_t(j)];
      if (j > 0) {
        for (int k = 0; k <= j; ++k) {
          const double w = (k == 0 || k == j) ? 0.5 * ds : ds;
          WaveField prop =
              propagate_linear(nl[std::size_t(k)], sym, (j - k) * ds);
          cplx* a = acc.data();
          const cplx* p = prop.data();
          const cplx iw(0.0, w);  // +i * weight
          for (std::size_t q = 0; q < acc.size(); ++q) a[q] += iw * p[q];
        }
      }
      next.push_back(std::move(acc));
    }
    // l2 distance between successive iterates at the final node.
    double diff2 = 0.0;
    {
      const cplx* a = next.back().data();
      const cplx* b = cur.back().data();
      for (std::size_t q = 0; q < next.back().size(); ++q) {
        diff2 += std::norm(a[q] - b[q]);
      }
    }
    const double delta = std::sqrt(diff2);
    if (!std::isfinite(delta) ||
        (prev_delta >= 0.0 && delta > prev_delta && delta > 1e-12)) {
      throw DivergedError(
          "DIVERGED: Picard iterates separate (||u_{k+1}-u_k|| grew from " +
          fmt_g17(prev_delta) + " to " + fmt_g17(delta) + ")");
    }
    prev_delta = delta;
    cur = std::move(next);
  }
  return cur.back();
}

}  // namespace hexlat
