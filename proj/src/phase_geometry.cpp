#include "hexlat/phase_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "hexlat/io.hpp"
#include "hexlat/parallel.hpp"

namespace hexlat {

namespace {

constexpr double kMorseTol = 1e-8;      // |D| above this -> Morse
constexpr double kCosZeroTol = 1e-7;    // case-A / case-B branch tolerance
constexpr double kCoeffZeroTol = 1e-8;  // normal-form coefficient tolerance
constexpr double kRootTol = 1e-10;      // acceptance residual for roots

double wrap_2pi(double x) {
  x = std::fmod(x, kTwoPi);
  if (x < 0.0) x += kTwoPi;
  return x;
}

double torus_dist(double a, double b) {
  double d = std::abs(a - b);
  d = std::fmod(d, kTwoPi);
  return std::min(d, kTwoPi - d);
}

double torus_dist2(const Vec2& a, const Vec2& b) {
  const double d1 = torus_dist(a.x, b.x);
  const double d2 = torus_dist(a.y, b.y);
  return std::sqrt(d1 * d1 + d2 * d2);
}

/// Levenberg-Marquardt on F(x) = grad g(x) - v (Jacobian = Hess g).
/// Returns true when the final residual is below kRootTol.
bool lm_solve(const DispersionSymbol& sym, const Vec2& v, Vec2& x) {
  auto resid = [&](const Vec2& p) {
    Vec2 g = sym.grad(p.x, p.y);
    return Vec2{g.x - v.x, g.y - v.y};
  };
  auto norm = [](const Vec2& f) { return std::hypot(f.x, f.y); };
  Vec2 f = resid(x);
  double fn = norm(f);
  double mu = 1e-4;
  for (int it = 0; it < 120 && fn > 1e-14; ++it) {
    const Mat2 h = sym.hessian(x.x, x.y);
    // Normal equations (H^T H + mu I) delta = -H^T F; H symmetric.
    const double aa = h.a * h.a + h.b * h.b + mu;
    const double bb = h.b * (h.a + h.c);
    const double cc = h.b * h.b + h.c * h.c + mu;
    const double r1 = -(h.a * f.x + h.b * f.y);
    const double r2 = -(h.b * f.x + h.c * f.y);
    const double det = aa * cc - bb * bb;
    if (det == 0.0) {
      mu *= 10.0;
      continue;
    }
    const Vec2 delta{(r1 * cc - r2 * bb) / det, (aa * r2 - bb * r1) / det};
    const Vec2 cand{x.x + delta.x, x.y + delta.y};
    const Vec2 fc = resid(cand);
    const double fcn = norm(fc);
    if (fcn < fn) {
      x = cand;
      f = fc;
      fn = fcn;
      mu = std::max(mu / 3.0, 1e-14);
    } else {
      mu *= 4.0;
      if (mu > 1e12) break;
    }
  }
  return fn < kRootTol;
}

TaylorSupport support_for(NormalFormKind kind, double a20, double a12,
                          double a03, double a04) {
  TaylorSupport s;
  switch (kind) {
    case NormalFormKind::Morse:
      s.monomials = {{2, 0, 1.0}, {0, 2, 1.0}};
      break;
    case NormalFormKind::Normal2:
      s.monomials = {{2, 0, a20}, {0, 3, a03}};
      break;
    case NormalFormKind::Normal1:
      s.monomials = {{2, 0, a20}, {1, 2, a12}};
      if (a04 != 0.0) s.monomials.push_back({0, 4, a04});
      break;
  }
  return s;
}

}  // namespace

std::vector<CriticalPoint> find_critical_points(const DispersionSymbol& sym,
                                                Vec2 v, int grid_seeds) {
  if (grid_seeds < 16) {
    throw std::invalid_argument("find_critical_points: grid_seeds >= 16");
  }
  std::vector<CriticalPoint> roots;
  for (int i = 0; i < grid_seeds; ++i) {
    for (int j = 0; j < grid_seeds; ++j) {
      Vec2 x{kTwoPi * (i + 0.5) / grid_seeds, kTwoPi * (j + 0.5) / grid_seeds};
      if (!lm_solve(sym, v, x)) continue;
      x = {wrap_2pi(x.x), wrap_2pi(x.y)};
      Vec2 g = sym.grad(x.x, x.y);
      const double gn = std::hypot(g.x - v.x, g.y - v.y);
      const double d = sym.kind() == LatticeKind::HexTriangulation
                           ? sym.discriminant(x.x, x.y)
                           : sym.hessian(x.x, x.y).det() / 4.0;
      roots.push_back({v, x, gn, d});
    }
  }
  // Deduplicate modulo 2pi: base radius 1e-6; near-degenerate roots lie in
  // a flat valley of grad g and scatter wider, so pairs that are both close
  // to Sigma0 merge within 1e-3. The cluster representative is the member
  // with the smallest gradient residual.
  std::sort(roots.begin(), roots.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) {
              return a.grad_norm < b.grad_norm;
            });
  std::vector<CriticalPoint> unique;
  for (const CriticalPoint& r : roots) {
    bool dup = false;
    for (const CriticalPoint& u : unique) {
      const double radius =
          (std::abs(r.discriminant) < 1e-2 && std::abs(u.discriminant) < 1e-2)
              ? 1e-3
              : 1e-6;
      if (torus_dist2(r.x, u.x) < radius) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(r);
  }
  std::sort(unique.begin(), unique.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) {
              return a.x.x != b.x.x ? a.x.x < b.x.x : a.x.y < b.x.y;
            });
  return unique;
}

SingularityReport classify_singularity(const DispersionSymbol& sym, Vec2 x,
                                       Vec2 v) {
  if (sym.kind() != LatticeKind::HexTriangulation) {
    throw std::invalid_argument(
        "classify_singularity: hex symbol only");
  }
  const Vec2 g = sym.grad(x.x, x.y);
  const double gn = std::hypot(g.x - v.x, g.y - v.y);
  if (gn > 1e-8) {
    throw std::invalid_argument(
        "classify_singularity: x is not a critical point for v (residual " +
        fmt_g17(gn) + ")");
  }
  SingularityReport rep;
  rep.point = {v, {wrap_2pi(x.x), wrap_2pi(x.y)}, gn,
               sym.discriminant(x.x, x.y)};

  if (std::abs(rep.point.discriminant) > kMorseTol) {
    rep.case_label = CaseLabel::Nondegenerate;
    rep.normal_form = NormalFormKind::Morse;
    const auto bound =
        varchenko_bound(build_polyhedron(support_for(rep.normal_form, 0, 0, 0, 0)));
    rep.beta = bound.first;
    rep.p = bound.second;
    return rep;
  }

  double x1 = x.x, x2 = x.y;
  double c1 = std::cos(x1), c2 = std::cos(x2);
  if (std::abs(c1) < kCosZeroTol && std::abs(c2) < kCosZeroTol) {
    // Case A: cos x1 = cos x2 = 0 (so sin(x1+x2) = 0); u1 = x1'+x2', u2 = x2'.
    rep.case_label = CaseLabel::A;
    rep.a20 = std::cos(x1 + x2);
    rep.a12 = -std::sin(x1);
    rep.a03 = -(std::sin(x2) - std::sin(x1)) / 3.0;
    rep.a04 = 0.0;
  } else {
    // Cases B-D assume cos x1 != 0; canonicalize by the coordinate swap
    // (the symbol is symmetric under x1 <-> x2).
    if (std::abs(c1) < kCosZeroTol) {
      std::swap(x1, x2);
      std::swap(c1, c2);
      rep.swapped = true;
    }
    const double lam = -c2 / c1;
    rep.has_lambda = true;
    rep.lambda = lam;
    const double s1 = std::sin(x1), s2 = std::sin(x2);
    const double c12 = std::cos(x1 + x2), s12 = std::sin(x1 + x2);
    if (std::abs(c2) < kCosZeroTol) {
      // Case B (lambda = 0): cos x2 = cos(x1+x2) = 0; u = x', no rescaling.
      rep.case_label = CaseLabel::B;
      rep.a20 = c1;
      rep.a12 = -s12;
      rep.a03 = -(s2 + s12) / 3.0;
      rep.a04 = 0.0;
    } else if (lam > 0.0) {
      // Case C: u1 = lambda^{-1/2} x1' + lambda^{1/2} x2', u2 = x2'.
      rep.case_label = CaseLabel::C;
      const double sq = std::sqrt(lam);
      const double om = 1.0 - lam;
      rep.a20 = c12;
      rep.a12 = -(s12 * sq * om * om + s1 * sq * lam * lam);
      rep.a03 = -(s12 * om * om * om - s1 * lam * lam * lam + s2) / 3.0;
      rep.a04 = -(c12 * om * om * om * om + c1 * lam * lam * lam * lam + c2) /
                12.0;
    } else {
      // Case D: mirrored with s = sqrt(-lambda),
      // u1 = (-lambda)^{-1/2} x1' - (-lambda)^{1/2} x2', u2 = x2'.
      rep.case_label = CaseLabel::D;
      const double sq = std::sqrt(-lam);
      const double om = 1.0 - lam;
      rep.a20 = -c12;
      rep.a12 = -sq * (s12 * om * om + s1 * lam * lam);
      rep.a03 = -(s12 * om * om * om - s1 * lam * lam * lam + s2) / 3.0;
      rep.a04 = -(c12 * om * om * om * om + c1 * lam * lam * lam * lam + c2) /
                12.0;
    }
  }

  if (std::abs(rep.a20) > kCoeffZeroTol &&
      std::abs(rep.a03) > kCoeffZeroTol) {
    rep.normal_form = NormalFormKind::Normal2;
  } else if (std::abs(rep.a20) > kCoeffZeroTol &&
             std::abs(rep.a12 * rep.a12 - 4.0 * rep.a20 * rep.a04) >
                 kCoeffZeroTol) {
    rep.normal_form = NormalFormKind::Normal1;
  } else {
    throw UnclassifiedError(
        "UNCLASSIFIED: cubic coefficient and quartic discriminant both "
        "vanish at x = (" +
        fmt_g17(rep.point.x.x) + ", " + fmt_g17(rep.point.x.y) + ")");
  }
  const auto bound = varchenko_bound(build_polyhedron(
      support_for(rep.normal_form, rep.a20, rep.a12, rep.a03, rep.a04)));
  rep.beta = bound.first;
  rep.p = bound.second;
  return rep;
}

double curve_residual(CurveLabel label, double x1, double x2) {
  const double c1 = std::cos(x1), c2 = std::cos(x2);
  switch (label) {
    case CurveLabel::Sigma0:
      return (c1 + c2) * std::cos(x1 + x2) + c1 * c2;
    case CurveLabel::Sigma1_2: {
      const double s = c1 + c2;
      return s * s * s + c1 * c1 + c2 * c2 - c1 * c2 * std::cos(x1 - x2);
    }
    case CurveLabel::Sigma2prime: {
      const double ca = std::cos((x1 - x2) / 2.0);
      const double sa = std::sin((x1 - x2) / 2.0);
      const double sb = std::sin((x1 + x2) / 2.0);
      const double inner = ca * ca + sb * sb;
      return c1 * c1 * c2 * c2 * ca * ca - sa * sa * inner * inner;
    }
  }
  return 0.0;
}

void CurveSet::write_csv(std::ostream& out) const {
  out << "x1,x2,residual\r\n";
  for (const CurvePoint& p : points) {
    out << fmt_g17(p.x1) << ',' << fmt_g17(p.x2) << ',' << fmt_g17(p.residual)
        << "\r\n";
  }
}

namespace {

/// Bisection along the segment [(ax,ay), (bx,by)] assuming a sign change.
CurvePoint bisect_edge(CurveLabel label, double ax, double ay, double fa,
                       double bx, double by) {
  for (int it = 0; it < 80; ++it) {
    const double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
    const double fm = curve_residual(label, mx, my);
    if (std::abs(fm) < 1e-9) return {mx, my, fm};
    if ((fm > 0.0) == (fa > 0.0)) {
      ax = mx;
      ay = my;
      fa = fm;
    } else {
      bx = mx;
      by = my;
    }
  }
  const double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
  return {mx, my, curve_residual(label, mx, my)};
}

/// Newton on the gradient of F (finite differences) to land on an isolated
/// zero where F touches zero without crossing.
bool refine_touch_point(CurveLabel label, Vec2& x) {
  const double h = 1e-5;
  for (int it = 0; it < 40; ++it) {
    auto F = [&](double a, double b) { return curve_residual(label, a, b); };
    const double fx =
        (F(x.x + h, x.y) - F(x.x - h, x.y)) / (2.0 * h);
    const double fy =
        (F(x.x, x.y + h) - F(x.x, x.y - h)) / (2.0 * h);
    const double f0 = F(x.x, x.y);
    const double fxx = (F(x.x + h, x.y) - 2.0 * f0 + F(x.x - h, x.y)) / (h * h);
    const double fyy = (F(x.x, x.y + h) - 2.0 * f0 + F(x.x, x.y - h)) / (h * h);
    const double fxy = (F(x.x + h, x.y + h) - F(x.x + h, x.y - h) -
                        F(x.x - h, x.y + h) + F(x.x - h, x.y - h)) /
                       (4.0 * h * h);
    const double det = fxx * fyy - fxy * fxy;
    if (std::abs(det) < 1e-14) break;
    const double dx = -(fyy * fx - fxy * fy) / det;
    const double dy = -(fxx * fy - fxy * fx) / det;
    x.x += dx;
    x.y += dy;
    if (std::hypot(dx, dy) < 1e-12) break;
  }
  return std::abs(curve_residual(label, x.x, x.y)) < 1e-6;
}

}  // namespace

CurveSet trace_curve(CurveLabel label, int grid_n) {
  if (grid_n < 256) {
    throw std::invalid_argument("trace_curve: grid_n >= 256");
  }
  CurveSet set;
  set.label = label;
  set.grid_n = grid_n;
  const double hstep = kTwoPi / grid_n;
  std::vector<double> vals(std::size_t(grid_n + 1) * (grid_n + 1));
  auto val = [&](int i, int j) -> double& {
    return vals[std::size_t(i) * (grid_n + 1) + j];
  };
  for (int i = 0; i <= grid_n; ++i) {
    for (int j = 0; j <= grid_n; ++j) {
      val(i, j) = curve_residual(label, i * hstep, j * hstep);
    }
  }
  for (int i = 0; i <= grid_n; ++i) {
    for (int j = 0; j <= grid_n; ++j) {
      const double f = val(i, j);
      if (f == 0.0) {
        set.points.push_back({i * hstep, j * hstep, 0.0});
        continue;
      }
      if (i < grid_n && (f > 0.0) != (val(i + 1, j) > 0.0)) {
        set.points.push_back(bisect_edge(label, i * hstep, j * hstep, f,
                                         (i + 1) * hstep, j * hstep));
      }
      if (j < grid_n && (f > 0.0) != (val(i, j + 1) > 0.0)) {
        set.points.push_back(bisect_edge(label, i * hstep, j * hstep, f,
                                         i * hstep, (j + 1) * hstep));
      }
    }
  }
  // Isolated zeros (sign-definite touch points): strict local minima of |F|
  // below a grid-scale cut, polished by Newton on grad F.
  const double cut = 100.0 * hstep * hstep;
  std::vector<Vec2> touches;
  for (int i = 1; i < grid_n; ++i) {
    for (int j = 1; j < grid_n; ++j) {
      const double f = std::abs(val(i, j));
      if (f >= cut || f == 0.0) continue;
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di || dj) && std::abs(val(i + di, j + dj)) < f) {
            is_min = false;
            break;
          }
        }
      }
      if (!is_min) continue;
      Vec2 x{i * hstep, j * hstep};
      if (refine_touch_point(label, x)) {
        bool dup = false;
        for (const Vec2& t : touches) {
          if (torus_dist2(t, x) < 1e-4) {
            dup = true;
            break;
          }
        }
        if (!dup) {
          touches.push_back(x);
          set.points.push_back(
              {x.x, x.y, curve_residual(label, x.x, x.y)});
        }
      }
    }
  }
  return set;
}

std::vector<Vec2> sample_sigma0(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, kTwoPi);
  std::vector<Vec2> out;
  out.reserve(std::size_t(n));
  const DispersionSymbol sym = hex_symbol();
  while (int(out.size()) < n) {
    Vec2 x{uni(rng), uni(rng)};
    // Projection onto D = 0 by Newton along the analytic gradient of
    // D = (c1+c2) c12 + c1 c2; quadratic convergence pushes |D| to
    // machine level so downstream identities hold to ~1e-14.
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      const double d = sym.discriminant(x.x, x.y);
      if (std::abs(d) < 1e-14) {
        ok = true;
        break;
      }
      const double s1 = std::sin(x.x), s2 = std::sin(x.y);
      const double c1 = std::cos(x.x), c2 = std::cos(x.y);
      const double s12 = std::sin(x.x + x.y), c12 = std::cos(x.x + x.y);
      const double dx = -s1 * c12 - (c1 + c2) * s12 - s1 * c2;
      const double dy = -s2 * c12 - (c1 + c2) * s12 - c1 * s2;
      const double g2 = dx * dx + dy * dy;
      if (g2 < 1e-12) break;
      x.x -= d * dx / g2;
      x.y -= d * dy / g2;
    }
    if (ok) out.push_back({wrap_2pi(x.x), wrap_2pi(x.y)});
  }
  return out;
}

namespace {

double normalized_residual(double (*f)(double, double), double x1, double x2) {
  const double h = 1e-5;
  const double v = f(x1, x2);
  const double gx = (f(x1 + h, x2) - f(x1 - h, x2)) / (2.0 * h);
  const double gy = (f(x1, x2 + h) - f(x1, x2 - h)) / (2.0 * h);
  return std::abs(v) / std::max(std::hypot(gx, gy), 1e-12);
}

double f_sigma0(double a, double b) {
  return curve_residual(CurveLabel::Sigma0, a, b);
}
double f_sigma1(double a, double b) {
  return curve_residual(CurveLabel::Sigma1_2, a, b);
}
double f_sigma2(double a, double b) {
  return curve_residual(CurveLabel::Sigma2prime, a, b);
}

double corner_distance(double x1, double x2) {
  // sup-metric torus distance to the nearest of (pi/2 + k pi, pi/2 + k pi).
  double best = 1e9;
  for (int k1 = 0; k1 < 2; ++k1) {
    for (int k2 = 0; k2 < 2; ++k2) {
      const double p1 = kPi / 2.0 + k1 * kPi;
      const double p2 = kPi / 2.0 + k2 * kPi;
      best = std::min(best, std::max(torus_dist(x1, p1), torus_dist(x2, p2)));
    }
  }
  return best;
}

}  // namespace

CertReport certify_appendix(int grid_n, double epsilon,
                            const CertifyOptions& opt) {
  if (grid_n < 1024) {
    throw std::invalid_argument("certify_appendix: grid_n >= 1024");
  }
  if (!(epsilon > 0.0) || epsilon > 1e-2) {
    throw std::invalid_argument("certify_appendix: epsilon in (0, 1e-2]");
  }
  CertReport rep;
  rep.grid_n = grid_n;
  rep.epsilon = epsilon;
  const double cell = kTwoPi / grid_n;
  const double thr = std::max(epsilon, cell);
  rep.threshold = thr;
  double (*f2)(double, double) = opt.sabotage_f2 ? f_sigma1 : f_sigma2;

  struct ChunkOut {
    std::vector<CertHit> hits;
    std::vector<CertHit> triples;
  };
  std::vector<ChunkOut> chunk_out(kParallelChunks);
  parallel_chunks(grid_n, [&](long chunk, long begin, long end) {
    ChunkOut& co = chunk_out[std::size_t(chunk)];
    for (long i = begin; i < end; ++i) {
      const double x1 = cell * double(i);
      for (long j = 0; j < grid_n; ++j) {
        const double x2 = cell * double(j);
        const double n1 = normalized_residual(f_sigma1, x1, x2);
        if (n1 >= thr) continue;
        const double n2 = normalized_residual(f2, x1, x2);
        if (n2 >= thr) continue;
        co.hits.push_back({x1, x2, n1, n2});
        // lambda > 0 triple intersection with Sigma0, excluding the 4-cell
        // neighborhoods of the corner points covered by the distance clause.
        if (corner_distance(x1, x2) > 4.0 * cell) {
          const double n0 = normalized_residual(f_sigma0, x1, x2);
          const double c1 = std::cos(x1), c2 = std::cos(x2);
          const double lam = std::abs(c1) > 1e-12 ? -c2 / c1 : -1.0;
          if (n0 < thr && lam > 0.0) {
            co.triples.push_back({x1, x2, n0, std::min(n1, n2)});
          }
        }
      }
    }
  });

  constexpr std::size_t kMaxStoredHits = 10000;
  rep.max_hit_distance_cells = 0.0;
  for (const ChunkOut& co : chunk_out) {
    for (const CertHit& h : co.hits) {
      ++rep.hit_count;
      rep.max_hit_distance_cells =
          std::max(rep.max_hit_distance_cells, corner_distance(h.x1, h.x2) / cell);
      if (rep.hits.size() < kMaxStoredHits) rep.hits.push_back(h);
    }
    for (const CertHit& h : co.triples) rep.triple_hits.push_back(h);
  }
  rep.distance_ok = rep.max_hit_distance_cells <= 4.0;
  rep.triple_ok = rep.triple_hits.empty();
  rep.pass = rep.distance_ok && rep.triple_ok;
  return rep;
}

void CertReport::write_json(std::ostream& out) const {
  out << "{\n"
      << "  \"grid_n\": " << grid_n << ",\n"
      << "  \"epsilon\": " << fmt_g17(epsilon) << ",\n"
      << "  \"threshold\": " << fmt_g17(threshold) << ",\n"
      << "  \"hit_count\": " << hit_count << ",\n"
      << "  \"max_hit_distance_cells\": " << fmt_g17(max_hit_distance_cells)
      << ",\n"
      << "  \"distance_ok\": " << (distance_ok ? "true" : "false") << ",\n"
      << "  \"triple_ok\": " << (triple_ok ? "true" : "false") << ",\n"
      << "  \"hits\": [";
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (i) out << ", ";
    out << '[' << fmt_g17(hits[i].x1) << ", " << fmt_g17(hits[i].x2) << ", "
        << fmt_g17(hits[i].res1) << ", " << fmt_g17(hits[i].res2) << ']';
  }
  out << "],\n  \"triple_hits\": [";
  for (std::size_t i = 0; i < triple_hits.size(); ++i) {
    if (i) out << ", ";
    out << '[' << fmt_g17(triple_hits[i].x1) << ", "
        << fmt_g17(triple_hits[i].x2) << ", " << fmt_g17(triple_hits[i].res1)
        << ", " << fmt_g17(triple_hits[i].res2) << ']';
  }
  out << "],\n  \"pass\": " << (pass ? "true" : "false") << "\n}\n";
}

SweepResult sweep_classification(const DispersionSymbol& sym, int n_velocities,
                                 std::uint64_t seed, int grid_seeds) {
  SweepResult res;
  res.seed = seed;
  std::vector<Vec2> vels;
  // For Sigma0-projected velocities the exact degenerate critical point is
  // known by construction; classify it directly as well, since the Newton
  // search resolves the flat valley only to ~1e-5 and can land at a nearby
  // point whose discriminant is already above the Morse cut.
  std::vector<std::pair<Vec2, Vec2>> known_points;  // (v, x*)
  // Deterministic degenerate directions: the case-A corners v = (+-2, +-2)
  // (critical points at the half-period points) and two case-B directions.
  const std::vector<Vec2> fixed = {{2.0, 2.0},  {-2.0, -2.0}, {2.0, -2.0},
                                   {-2.0, 2.0}, {-2.0, 0.0},  {0.0, -2.0}};
  for (const Vec2& v : fixed) {
    if (int(vels.size()) < n_velocities) vels.push_back(v);
  }
  // Sigma0-projected velocities v = grad g(x*) reach cases C and D.
  const int n_rest = n_velocities - int(vels.size());
  const int n_sigma = n_rest / 2;
  for (const Vec2& x : sample_sigma0(n_sigma, seed)) {
    const Vec2 v = sym.grad(x.x, x.y);
    vels.push_back(v);
    known_points.emplace_back(v, x);
  }
  // Uniform draws in the group-velocity ball (generically all-Morse).
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double a = kMaxGroupSpeedHex + 1.0;
  while (int(vels.size()) < n_velocities) {
    const double vx = a * uni(rng), vy = a * uni(rng);
    if (vx * vx + vy * vy <= a * a) vels.push_back({vx, vy});
  }

  res.worst_beta = Rational(-10);
  auto classify_into = [&](const Vec2& v, const Vec2& x) {
    SweepEntry entry;
    entry.v = v;
    try {
      entry.report = classify_singularity(sym, x, v);
      if (entry.report.beta > res.worst_beta) {
        res.worst_beta = entry.report.beta;
        res.worst_p = entry.report.p;
      }
    } catch (const UnclassifiedError& e) {
      entry.unclassified = true;
      entry.error = e.what();
      ++res.n_unclassified;
    }
    res.entries.push_back(std::move(entry));
  };
  for (const Vec2& v : vels) {
    for (const CriticalPoint& cp : find_critical_points(sym, v, grid_seeds)) {
      classify_into(v, cp.x);
    }
  }
  for (const auto& [v, x] : known_points) classify_into(v, x);
  return res;
}

}  // namespace hexlat
