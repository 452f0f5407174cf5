#include <doctest.h>

#include <cmath>

#include "hexlat/lattice.hpp"

using namespace hexlat;

TEST_CASE("hex symbol point values") {
  const DispersionSymbol hex = hex_symbol();
  CHECK(hex.eval(0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(hex.eval(2.0 * kPi / 3.0, 2.0 * kPi / 3.0) == doctest::Approx(9.0));
  CHECK(hex.eval(kPi, kPi) == doctest::Approx(8.0));
  CHECK(hex.eval(kPi, 0.0) == doctest::Approx(8.0));
  const DispersionSymbol z2 = z2_symbol();
  CHECK(z2.eval(kPi, kPi) == doctest::Approx(8.0));
  CHECK(z2.eval(0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("gradient matches finite differences at second order") {
  // Central differences converge at rate h^2; checking the observed order
  // validates both grad and eval in one shot.
  for (const DispersionSymbol sym : {hex_symbol(), z2_symbol()}) {
    const double x1 = 0.7, x2 = 1.9;
    auto err = [&](double h) {
      const Vec2 g = sym.grad(x1, x2);
      const double fd1 = (sym.eval(x1 + h, x2) - sym.eval(x1 - h, x2)) / (2 * h);
      const double fd2 = (sym.eval(x1, x2 + h) - sym.eval(x1, x2 - h)) / (2 * h);
      return std::hypot(fd1 - g.x, fd2 - g.y);
    };
    const double e1 = err(1e-3), e2 = err(2e-3);
    CHECK(e2 / e1 == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("hessian matches finite differences of the gradient") {
  const DispersionSymbol sym = hex_symbol();
  const double x1 = 2.3, x2 = 0.4, h = 1e-6;
  const Mat2 hess = sym.hessian(x1, x2);
  const Vec2 gp = sym.grad(x1 + h, x2), gm = sym.grad(x1 - h, x2);
  CHECK((gp.x - gm.x) / (2 * h) == doctest::Approx(hess.a).epsilon(1e-7));
  CHECK((gp.y - gm.y) / (2 * h) == doctest::Approx(hess.b).epsilon(1e-7));
  const Vec2 qp = sym.grad(x1, x2 + h), qm = sym.grad(x1, x2 - h);
  CHECK((qp.x - qm.x) / (2 * h) == doctest::Approx(hess.b).epsilon(1e-7));
  CHECK((qp.y - qm.y) / (2 * h) == doctest::Approx(hess.c).epsilon(1e-7));
}

TEST_CASE("reduced discriminant equals det Hess / 4") {
  const DispersionSymbol sym = hex_symbol();
  CHECK(sym.discriminant(kPi / 3.0, kPi / 3.0) == doctest::Approx(-0.25));
  CHECK(sym.discriminant(kPi / 2.0, kPi / 2.0) ==
        doctest::Approx(0.0).epsilon(1e-15));
  for (double a : {0.3, 1.1, 2.9}) {
    for (double b : {0.2, 1.7, 5.1}) {
      CHECK(4.0 * sym.discriminant(a, b) ==
            doctest::Approx(sym.hessian(a, b).det()).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS((void)z2_symbol().discriminant(1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("group speed bound over a dense grid") {
  const DispersionSymbol sym = hex_symbol();
  const int n = 4096;
  double sup = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 g = sym.grad(kTwoPi * i / n, kTwoPi * j / n);
      sup = std::max(sup, std::hypot(g.x, g.y));
    }
  }
  // 4*sqrt(2) is the bound used for box sizing; the grid sup is ~4.98 and
  // must stay below it.
  CHECK(sup <= 4.0 * std::sqrt(2.0) + 1e-9);
  CHECK(sup > 4.9);
}

TEST_CASE("grad at the case-A corner gives v=(2,2)") {
  const Vec2 g = hex_symbol().grad(kPi / 2.0, kPi / 2.0);
  CHECK(g.x == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g.y == doctest::Approx(2.0).epsilon(1e-14));
}
