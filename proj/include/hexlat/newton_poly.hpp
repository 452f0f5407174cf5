#pragma once

#include <boost/rational.hpp>

#include <iosfwd>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hexlat {

using Rational = boost::rational<long long>;

/// Monomial support of a bivariate Taylor polynomial: exponent pairs with
/// nonzero coefficients. Coefficients may be inexact; exponents are exact.
struct Monomial {
  long long a = 0;  // exponent of u1
  long long b = 0;  // exponent of u2
  double coeff = 0.0;
};

struct TaylorSupport {
  std::vector<Monomial> monomials;
};

struct SubprincipalMonomialError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NewtonPolyhedron {
  /// Pareto-minimal support points on the lower-left hull, x ascending.
  std::vector<std::pair<long long, long long>> vertices;
  /// Newton distance: the diagonal meets the hull boundary at (d, d).
  Rational distance;
  /// 0 when (d, d) is a hull vertex, 1 when it lies on an edge
  /// (including the unbounded axis-parallel edges).
  int principal_face_dim = 1;

  int k() const { return 2 - principal_face_dim; }

  /// JSON {vertices, distance_num, distance_den, face_dim,
  ///       bound_beta_num, bound_beta_den, bound_p}.
  void write_json(std::ostream& out) const;
};

/// Lower-left staircase hull of union over support of (alpha + R_+^2), in
/// exact rational arithmetic.
NewtonPolyhedron build_polyhedron(const TaylorSupport& support);

/// Varchenko's bound for an R-nondegenerate phase: (-1/d, k-1).
std::pair<Rational, int> varchenko_bound(const NewtonPolyhedron& poly);

/// Discriminant criterion for the quartic family
/// a20 u1^2 + a12 u1 u2^2 + a04 u2^4: R-nondegenerate iff a20 != 0 and
/// a12^2 - 4 a20 a04 != 0.
bool check_r_nondegenerate_quartic(double a20, double a12, double a04);

/// Splits monomials by weighted degree <weight, exponent>: principal part
/// (== 1) and higher part (> 1). Weighted degree < 1 is a contract breach.
std::pair<TaylorSupport, TaylorSupport> quasi_homogeneous_filter(
    const TaylorSupport& support, Rational w1, Rational w2);

/// Dimensional reduction across m nondegenerate quadratic variables:
/// (beta, p) -> (beta - m/2, p).
std::pair<Rational, int> dimensional_reduction(Rational beta, int p, int m);

}  // namespace hexlat
