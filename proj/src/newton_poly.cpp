#include "hexlat/newton_poly.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace hexlat {

namespace {

long long cross(const std::pair<long long, long long>& o,
                const std::pair<long long, long long>& a,
                const std::pair<long long, long long>& b) {
  return (a.first - o.first) * (b.second - o.second) -
         (a.second - o.second) * (b.first - o.first);
}

}  // namespace

NewtonPolyhedron build_polyhedron(const TaylorSupport& support) {
  if (support.monomials.empty()) {
    throw std::invalid_argument("build_polyhedron: empty support");
  }
  std::vector<std::pair<long long, long long>> pts;
  pts.reserve(support.monomials.size());
  for (const Monomial& m : support.monomials) {
    if (m.a < 0 || m.b < 0) {
      throw std::invalid_argument("build_polyhedron: negative exponent");
    }
    pts.emplace_back(m.a, m.b);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Pareto-minimal points: with x ascending, keep points whose y strictly
  // decreases; dominated points add nothing to the union of quadrants.
  std::vector<std::pair<long long, long long>> pareto;
  long long best_y = std::numeric_limits<long long>::max();
  for (const auto& p : pts) {
    if (p.second < best_y) {
      pareto.push_back(p);
      best_y = p.second;
    }
  }

  // Lower-left convex chain (Andrew monotone chain, popping collinear and
  // reflex points): the hull boundary facing the origin.
  std::vector<std::pair<long long, long long>> hull;
  for (const auto& p : pareto) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), p) <= 0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }

  NewtonPolyhedron poly;
  poly.vertices = hull;

  // The diagonal (rho, rho) enters the polyhedron once every supporting
  // halfplane {a x + b y >= c}, a, b >= 0, is satisfied: x >= xmin,
  // y >= ymin, and one inequality per bounded hull edge.
  const Rational xmin(hull.front().first);
  const Rational ymin(hull.back().second);
  Rational d = std::max(xmin, ymin);
  bool on_edge_interior = false;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const auto& p = hull[i];
    const auto& q = hull[i + 1];
    // Line through p, q: a x + b y = c with a = y_p - y_q > 0,
    // b = x_q - x_p > 0 (both positive on the Pareto chain).
    const long long a = p.second - q.second;
    const long long b = q.first - p.first;
    const long long c = a * p.first + b * p.second;
    const Rational cand(c, a + b);
    if (cand > d) {
      d = cand;
      // Interior of the edge iff strictly between the endpoints' x-range.
      on_edge_interior = cand > Rational(p.first) && cand < Rational(q.first);
    } else if (cand == d) {
      on_edge_interior =
          on_edge_interior ||
          (cand > Rational(p.first) && cand < Rational(q.first));
    }
  }
  poly.distance = d;

  const bool is_vertex =
      std::any_of(hull.begin(), hull.end(), [&](const auto& v) {
        return Rational(v.first) == d && Rational(v.second) == d;
      });
  poly.principal_face_dim = is_vertex && !on_edge_interior ? 0 : 1;
  return poly;
}

std::pair<Rational, int> varchenko_bound(const NewtonPolyhedron& poly) {
  return {Rational(-1) / poly.distance, poly.k() - 1};
}

bool check_r_nondegenerate_quartic(double a20, double a12, double a04) {
  if (a20 == 0.0) return false;
  return a12 * a12 - 4.0 * a20 * a04 != 0.0;
}

std::pair<TaylorSupport, TaylorSupport> quasi_homogeneous_filter(
    const TaylorSupport& support, Rational w1, Rational w2) {
  if (w1 <= Rational(0) || w2 <= Rational(0)) {
    throw std::invalid_argument("quasi_homogeneous_filter: weights must be positive");
  }
  TaylorSupport principal, higher;
  for (const Monomial& m : support.monomials) {
    const Rational deg = w1 * Rational(m.a) + w2 * Rational(m.b);
    if (deg < Rational(1)) {
      throw SubprincipalMonomialError(
          "SUBPRINCIPAL_MONOMIAL: exponent (" + std::to_string(m.a) + "," +
          std::to_string(m.b) + ") has weighted degree < 1");
    }
    (deg == Rational(1) ? principal : higher).monomials.push_back(m);
  }
  return {principal, higher};
}

std::pair<Rational, int> dimensional_reduction(Rational beta, int p, int m) {
  return {beta - Rational(m, 2), p};
}

void NewtonPolyhedron::write_json(std::ostream& out) const {
  const auto bound = varchenko_bound(*this);
  out << "{\n  \"vertices\": [";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) out << ", ";
    out << '[' << vertices[i].first << ", " << vertices[i].second << ']';
  }
  out << "],\n"
      << "  \"distance_num\": " << distance.numerator() << ",\n"
      << "  \"distance_den\": " << distance.denominator() << ",\n"
      << "  \"face_dim\": " << principal_face_dim << ",\n"
      << "  \"bound_beta_num\": " << bound.first.numerator() << ",\n"
      << "  \"bound_beta_den\": " << bound.first.denominator() << ",\n"
      << "  \"bound_p\": " << bound.second << "\n}\n";
}

}  // namespace hexlat
