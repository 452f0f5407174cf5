#include <doctest.h>

#include <sstream>

#include "hexlat/newton_poly.hpp"

using namespace hexlat;

namespace {

TaylorSupport make_support(std::initializer_list<std::pair<long long, long long>> exps) {
  TaylorSupport s;
  for (const auto& [a, b] : exps) s.monomials.push_back({a, b, 1.0});
  return s;
}

}  // namespace

TEST_CASE("Newton distance for the quartic normal-form support") {
  const NewtonPolyhedron poly =
      build_polyhedron(make_support({{2, 0}, {1, 2}, {0, 4}}));
  CHECK(poly.distance == Rational(4, 3));
  CHECK(poly.principal_face_dim == 1);
  CHECK(poly.k() == 1);
  // (1,2) is collinear on the edge (2,0)-(0,4) and must not be a vertex
  REQUIRE(poly.vertices.size() == 2);
  CHECK(poly.vertices[0] == std::pair<long long, long long>(0, 4));
  CHECK(poly.vertices[1] == std::pair<long long, long long>(2, 0));
  const auto bound = varchenko_bound(poly);
  CHECK(bound.first == Rational(-3, 4));
  CHECK(bound.second == 0);
}

TEST_CASE("Newton distance for the cubic normal-form support") {
  const NewtonPolyhedron poly = build_polyhedron(make_support({{2, 0}, {0, 3}}));
  CHECK(poly.distance == Rational(6, 5));
  CHECK(poly.principal_face_dim == 1);
  const auto bound = varchenko_bound(poly);
  CHECK(bound.first == Rational(-5, 6));
  CHECK(bound.second == 0);
}

TEST_CASE("Morse quadratic support") {
  const NewtonPolyhedron poly = build_polyhedron(make_support({{2, 0}, {0, 2}}));
  CHECK(poly.distance == Rational(1));
  const auto bound = varchenko_bound(poly);
  CHECK(bound.first == Rational(-1));
  CHECK(bound.second == 0);
}

TEST_CASE("distance is invariant under the coordinate swap") {
  const auto a = build_polyhedron(make_support({{3, 0}, {1, 1}, {0, 5}}));
  const auto b = build_polyhedron(make_support({{0, 3}, {1, 1}, {5, 0}}));
  CHECK(a.distance == b.distance);
  CHECK(a.principal_face_dim == b.principal_face_dim);
}

TEST_CASE("interior monomials change nothing") {
  const auto base = build_polyhedron(make_support({{2, 0}, {0, 4}}));
  const auto plus = build_polyhedron(make_support({{2, 0}, {0, 4}, {3, 5}, {2, 2}}));
  CHECK(base.distance == plus.distance);
  CHECK(base.vertices == plus.vertices);
  CHECK(base.principal_face_dim == plus.principal_face_dim);
}

TEST_CASE("vertex-type principal face") {
  // Single monomial u1^2 u2^2: (d,d)=(2,2) is the corner vertex itself.
  const auto poly = build_polyhedron(make_support({{2, 2}}));
  CHECK(poly.distance == Rational(2));
  CHECK(poly.principal_face_dim == 0);
  CHECK(poly.k() == 2);
  CHECK(varchenko_bound(poly).second == 1);
}

TEST_CASE("R-nondegeneracy discriminant criterion") {
  CHECK(check_r_nondegenerate_quartic(1.0, 1.0, 0.0));
  CHECK_FALSE(check_r_nondegenerate_quartic(1.0, 2.0, 1.0));
  CHECK(check_r_nondegenerate_quartic(-1.0, -1.0, 0.0));
  CHECK_FALSE(check_r_nondegenerate_quartic(0.0, 1.0, 1.0));
}

TEST_CASE("quasi-homogeneous split") {
  TaylorSupport s;
  s.monomials = {{2, 0, 1.0}, {1, 2, 1.0}, {0, 4, 1.0}, {0, 5, 1.0}};
  const auto [principal, higher] =
      quasi_homogeneous_filter(s, Rational(1, 2), Rational(1, 4));
  CHECK(principal.monomials.size() == 3);
  REQUIRE(higher.monomials.size() == 1);
  CHECK(higher.monomials[0].b == 5);

  TaylorSupport q;
  q.monomials = {{2, 0, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}};
  const auto [p2, h2] =
      quasi_homogeneous_filter(q, Rational(1, 2), Rational(1, 3));
  CHECK(p2.monomials.size() == 2);
  CHECK(h2.monomials.size() == 1);  // u1 u2^2 has degree 7/6

  TaylorSupport bad;
  bad.monomials = {{1, 0, 1.0}};
  CHECK_THROWS_AS(
      quasi_homogeneous_filter(bad, Rational(1, 2), Rational(1, 3)),
      SubprincipalMonomialError);
}

TEST_CASE("dimensional reduction helper") {
  const auto r = dimensional_reduction(Rational(-1, 4), 0, 1);
  CHECK(r.first == Rational(-3, 4));
  CHECK(r.second == 0);
}

TEST_CASE("polyhedron JSON report") {
  const auto poly = build_polyhedron(make_support({{2, 0}, {1, 2}, {0, 4}}));
  std::ostringstream out;
  poly.write_json(out);
  const std::string s = out.str();
  CHECK(s.find("\"distance_num\": 4") != std::string::npos);
  CHECK(s.find("\"distance_den\": 3") != std::string::npos);
  CHECK(s.find("\"bound_beta_num\": -3") != std::string::npos);
  CHECK(s.find("\"bound_beta_den\": 4") != std::string::npos);
}
