#include <doctest.h>

#include <cmath>
#include <limits>

#include "hexlat/decay_fit.hpp"
#include "hexlat/propagator.hpp"

using namespace hexlat;

namespace {

DecaySeries synthetic(double (*f)(double), double t0, double t1, int n) {
  DecaySeries s;
  s.lattice = LatticeKind::HexTriangulation;
  for (int i = 0; i < n; ++i) {
    const double t = t0 * std::pow(t1 / t0, double(i) / (n - 1));
    s.samples.push_back({t, f(t), 0, 0, DecayBackend::Fft});
  }
  return s;
}

}  // namespace

TEST_CASE("exact power laws are recovered exactly") {
  for (double a : {-0.75, -2.0 / 3.0, -5.0 / 6.0, -1.0}) {
    DecaySeries s;
    s.lattice = LatticeKind::HexTriangulation;
    for (int i = 0; i < 20; ++i) {
      const double t = 10.0 * std::pow(1.3, i);
      s.samples.push_back({t, std::pow(t, a), 0, 0, DecayBackend::Fft});
    }
    const PowerLawFit fit =
        fit_power_law(s, 10.0, 1e5, FitMethod::Direct);
    CHECK(std::abs(fit.slope - a) < 1e-10);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("scale equivariance: slope unchanged under value rescaling") {
  auto f = [](double t) { return std::pow(t, -0.8); };
  DecaySeries a = synthetic(f, 5.0, 500.0, 16);
  DecaySeries b = a;
  for (DecaySample& s : b.samples) s.sup_abs *= 37.5;
  const PowerLawFit fa = fit_power_law(a, 5.0, 500.0, FitMethod::Direct);
  const PowerLawFit fb = fit_power_law(b, 5.0, 500.0, FitMethod::Direct);
  CHECK(std::abs(fa.slope - fb.slope) < 1e-12);
  CHECK(fb.intercept > fa.intercept);
}

TEST_CASE("dyadic envelope suppresses oscillatory dips") {
  auto f = [](double t) {
    return 0.7 * std::pow(t, -2.0 / 3.0) * (1.0 + 0.2 * std::sin(t));
  };
  const DecaySeries s = synthetic(f, 10.0, 2000.0, 200);
  const PowerLawFit fit =
      fit_power_law(s, 10.0, 2000.0, FitMethod::DyadicEnvelope);
  CHECK(std::abs(fit.slope - (-2.0 / 3.0)) < 0.02);
}

TEST_CASE("fit contract violations throw") {
  DecaySeries s = synthetic([](double t) { return 1.0 / t; }, 10.0, 100.0, 6);
  CHECK_THROWS_AS(fit_power_law(s, 10.0, 100.0, FitMethod::Direct), FitError);
  DecaySeries z = synthetic([](double) { return 0.0; }, 10.0, 100.0, 10);
  CHECK_THROWS_AS(fit_power_law(z, 10.0, 100.0, FitMethod::Direct), FitError);
  CHECK_THROWS_AS(fit_power_law(s, 100.0, 10.0, FitMethod::Direct), FitError);
}

TEST_CASE("admissible pairs") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(is_admissible(inf, 2.0, 0.75));
  CHECK(is_admissible(4.0, 6.0, 0.75));
  CHECK_FALSE(is_admissible(2.0, inf, 1.0));
  CHECK_FALSE(is_admissible(4.0, 6.0, 0.7));   // scaling line violated
  CHECK_FALSE(is_admissible(1.5, 6.0, 0.75));  // q < 2
}

TEST_CASE("strichartz norm definitions") {
  const double inf = std::numeric_limits<double>::infinity();
  WaveField u(16);
  u.at_site(0, 0) = cplx(0.6, 0.0);
  u.at_site(1, 0) = cplx(0.0, 0.8);  // l2 norm 1
  std::vector<std::pair<double, WaveField>> traj;
  for (int k = 0; k <= 4; ++k) traj.emplace_back(0.5 * k, u);
  CHECK(strichartz_norm(traj, inf, 2.0) == doctest::Approx(1.0));
  CHECK(strichartz_norm(traj, inf, inf) == doctest::Approx(0.8));
  // constant integrand: L^q norm over [0,2] of a constant c is c * 2^{1/q}
  const double c = u.lp_norm(6.0);
  CHECK(strichartz_norm(traj, 4.0, 6.0) ==
        doctest::Approx(c * std::pow(2.0, 0.25)).epsilon(1e-12));
  CHECK_THROWS(strichartz_norm({}, 4.0, 6.0));
}

TEST_CASE("unitary evolution: sup-in-time l2 equals the initial mass") {
  const DispersionSymbol sym = hex_symbol();
  const double inf = std::numeric_limits<double>::infinity();
  WaveField psi = WaveField::delta(128, cplx(0.5, 0.0));
  std::vector<std::pair<double, WaveField>> traj;
  for (int k = 0; k <= 5; ++k) {
    traj.emplace_back(double(k), propagate_linear(psi, sym, double(k)));
  }
  CHECK(strichartz_norm(traj, inf, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("strichartz self-convergence under time-step halving") {
  const DispersionSymbol sym = hex_symbol();
  WaveField psi = WaveField::delta(256);
  auto norm_with_step = [&](double dt) {
    std::vector<std::pair<double, WaveField>> traj;
    for (double t = 0.0; t <= 20.0 + 1e-12; t += dt) {
      traj.emplace_back(t, propagate_linear(psi, sym, t));
    }
    return strichartz_norm(traj, 4.0, 6.0);
  };
  const double coarse = norm_with_step(0.5);
  const double fine = norm_with_step(0.25);
  CHECK(std::abs(coarse - fine) / fine < 0.02);
}
