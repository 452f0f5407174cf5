#include "hexlat/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <utility>

#include "hexlat/io.hpp"
#include "hexlat/parallel.hpp"
#include "hexlat/propagator.hpp"

namespace hexlat {

int nyquist_points(double t, long l1, long l2) {
  const double lmax = double(std::max({std::labs(l1), std::labs(l2),
                                       std::labs(l1 + l2)}));
  const double raw = (4.0 * std::abs(t) + lmax) / kPi;
  const long m = 4 * long(std::ceil(raw));
  return int(std::max<long>(16, m));
}

cplx kernel_quadrature(const DispersionSymbol& sym, long l1, long l2, double t,
                       int m) {
  const int need = nyquist_points(t, l1, l2);
  if (m < need) {
    throw InsufficientResolutionError(
        "kernel_quadrature: m = " + std::to_string(m) +
        " below nyquist_points = " + std::to_string(need));
  }
  // Tensor trapezoid on the torus = plain rectangle sum over the m x m grid.
  // Rows are summed in chunks whose partial sums are reduced in chunk order,
  // so the result is bit-identical for any thread count.
  std::vector<cplx> partial(kParallelChunks, cplx(0.0, 0.0));
  parallel_chunks(m, [&](long chunk, long begin, long end) {
    cplx acc(0.0, 0.0);
    for (long i = begin; i < end; ++i) {
      const double x1 = kTwoPi * double(i) / m;
      cplx row(0.0, 0.0);
      for (long j = 0; j < m; ++j) {
        const double x2 = kTwoPi * double(j) / m;
        const double phase =
            -t * sym.eval(x1, x2) + double(l1) * x1 + double(l2) * x2;
        row += cplx(std::cos(phase), std::sin(phase));
      }
      acc += row;
    }
    partial[std::size_t(chunk)] = acc;
  });
  cplx total(0.0, 0.0);
  for (const cplx& p : partial) total += p;
  return total / (double(m) * double(m));
}

void DecaySeries::write_csv(std::ostream& out) const {
  out << "t,sup_abs,argmax_l1,argmax_l2,backend\r\n";
  for (const DecaySample& s : samples) {
    out << fmt_g17(s.t) << ',' << fmt_g17(s.sup_abs) << ',' << s.argmax_l1
        << ',' << s.argmax_l2 << ','
        << (s.backend == DecayBackend::Fft ? "fft" : "quadrature") << "\r\n";
  }
}

std::vector<Vec2> velocity_grid(int nv) {
  const double a = kMaxGroupSpeedHex + 1.0;
  std::vector<Vec2> out;
  out.reserve(std::size_t(nv) * nv);
  for (int i = 0; i < nv; ++i) {
    const double vx = nv == 1 ? 0.0 : -a + 2.0 * a * i / (nv - 1);
    for (int j = 0; j < nv; ++j) {
      const double vy = nv == 1 ? 0.0 : -a + 2.0 * a * j / (nv - 1);
      if (vx * vx + vy * vy <= a * a * (1.0 + 1e-12)) out.push_back({vx, vy});
    }
  }
  return out;
}

DecaySeries decay_series(const DispersionSymbol& sym,
                         const std::vector<double>& times,
                         const std::vector<Vec2>& velocity_samples,
                         const DecayOptions& opt) {
  DecaySeries series;
  series.lattice = sym.kind();
  series.velocity_policy =
      std::to_string(velocity_samples.size()) + " velocity samples" +
      (opt.full_box_sup ? ", full-box sup on FFT backend" : "");
  series.samples.reserve(times.size());
  for (double t : times) {
    DecaySample s{t, 0.0, 0, 0, DecayBackend::Fft};
    const int nbox = min_box_size(t);
    if (nbox <= opt.fft_budget) {
      KernelGrid grid = kernel_fft(sym, nbox, t);
      if (opt.full_box_sup) {
        KernelGrid::Sup sup = grid.sup_abs();
        s.sup_abs = sup.value;
        s.argmax_l1 = sup.l1;
        s.argmax_l2 = sup.l2;
      } else {
        for (const Vec2& v : velocity_samples) {
          const long l1 = std::lround(t * v.x), l2 = std::lround(t * v.y);
          const double a = std::abs(grid.at(l1, l2));
          if (a > s.sup_abs) {
            s.sup_abs = a;
            s.argmax_l1 = l1;
            s.argmax_l2 = l2;
          }
        }
      }
    } else {
      s.backend = DecayBackend::Quadrature;
      // Deduplicate rounded sites; nearby velocities often land on one l.
      std::map<std::pair<long, long>, double> sites;
      for (const Vec2& v : velocity_samples) {
        sites.emplace(
            std::make_pair(std::lround(t * v.x), std::lround(t * v.y)), 0.0);
      }
      for (auto& [l, val] : sites) {
        const int m = nyquist_points(t, l.first, l.second);
        val = std::abs(kernel_quadrature(sym, l.first, l.second, t, m));
        if (val > s.sup_abs) {
          s.sup_abs = val;
          s.argmax_l1 = l.first;
          s.argmax_l2 = l.second;
        }
      }
    }
    series.samples.push_back(s);
  }
  return series;
}

}  // namespace hexlat
