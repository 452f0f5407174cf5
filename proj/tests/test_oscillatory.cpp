#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hexlat/io.hpp"
#include "hexlat/oscillatory.hpp"
#include "hexlat/propagator.hpp"

using namespace hexlat;

TEST_CASE("nyquist_points policy") {
  CHECK(nyquist_points(0.0, 0, 0) == 16);
  CHECK(nyquist_points(100.0, 200, 200) == 1020);
  CHECK(nyquist_points(1000.0, 2000, 2000) == 10188);
}

TEST_CASE("quadrature trivial values at t=0") {
  const DispersionSymbol sym = hex_symbol();
  CHECK(std::abs(kernel_quadrature(sym, 0, 0, 0.0, 16) - cplx(1.0, 0.0)) <
        1e-14);
  CHECK(std::abs(kernel_quadrature(sym, 3, 7, 0.0, 64)) < 1e-14);
}

TEST_CASE("insufficient resolution is rejected") {
  CHECK_THROWS_AS(kernel_quadrature(hex_symbol(), 0, 0, 100.0, 128),
                  InsufficientResolutionError);
}

TEST_CASE("spectral convergence: doubling m is a no-op") {
  const DispersionSymbol sym = hex_symbol();
  const double t = 7.0;
  const int m = nyquist_points(t, 10, -4);
  const cplx a = kernel_quadrature(sym, 10, -4, t, m);
  const cplx b = kernel_quadrature(sym, 10, -4, t, 2 * m);
  const cplx c = kernel_quadrature(sym, 10, -4, t, 4 * m);
  // m itself carries ~1e-9 aliasing; beyond 2m the rule is fully converged.
  CHECK(std::abs(a - b) < 1e-8);
  CHECK(std::abs(b - c) < 1e-10);
}

TEST_CASE("conjugation symmetry and modulus bound") {
  const DispersionSymbol sym = hex_symbol();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> li(-30, 30);
  std::uniform_real_distribution<double> tt(0.5, 12.0);
  for (int k = 0; k < 10; ++k) {
    const long l1 = li(rng), l2 = li(rng);
    const double t = tt(rng);
    const int m = nyquist_points(t, l1, l2);
    const cplx a = kernel_quadrature(sym, l1, l2, t, m);
    const cplx b = kernel_quadrature(sym, -l1, -l2, -t, m);
    CHECK(std::abs(a - std::conj(b)) < 1e-13);
    CHECK(std::abs(a) <= 1.0 + 1e-12);
  }
}

TEST_CASE("cross-oracle agreement with the FFT at random sites") {
  const DispersionSymbol sym = hex_symbol();
  const double t = 5.0;
  const int n = min_box_size(t);  // 256 >= nyquist for small l
  KernelGrid grid(sym, n, t);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> li(-20, 20);
  for (int k = 0; k < 20; ++k) {
    const long l1 = li(rng), l2 = li(rng);
    const cplx q = kernel_quadrature(sym, l1, l2, t, n);
    CHECK(std::abs(grid.at(l1, l2) - q) < 1e-10);
  }
}

TEST_CASE("quadrature reduction is bit-identical across thread counts") {
  const DispersionSymbol sym = hex_symbol();
  set_thread_count(1);
  const cplx a = kernel_quadrature(sym, 7, -3, 9.0, 512);
  set_thread_count(8);
  const cplx b = kernel_quadrature(sym, 7, -3, 9.0, 512);
  set_thread_count(1);
  CHECK(a.real() == b.real());
  CHECK(a.imag() == b.imag());
}

TEST_CASE("decay_series switches backend at the FFT budget") {
  const DispersionSymbol sym = hex_symbol();
  const std::vector<Vec2> vels = {{2.0, 2.0}, {0.0, 0.0}};
  DecayOptions opt;
  opt.fft_budget = 512;
  // min_box_size(10)=512 (fft), min_box_size(30)=1024 (quadrature)
  const DecaySeries s = decay_series(sym, {10.0, 30.0}, vels, opt);
  REQUIRE(s.samples.size() == 2);
  CHECK(s.samples[0].backend == DecayBackend::Fft);
  CHECK(s.samples[1].backend == DecayBackend::Quadrature);
  CHECK(s.samples[0].sup_abs > 0.0);
  CHECK(s.samples[1].sup_abs > 0.0);

  std::ostringstream csv;
  s.write_csv(csv);
  CHECK(csv.str().rfind("t,sup_abs,argmax_l1,argmax_l2,backend\r\n", 0) == 0);
  CHECK(csv.str().find("quadrature") != std::string::npos);
}

TEST_CASE("quadrature backend agrees with the FFT backend") {
  const DispersionSymbol sym = hex_symbol();
  const std::vector<Vec2> vels = {{2.0, 2.0}, {1.0, -1.0}, {0.0, 0.0}};
  DecayOptions fft_opt;  // budget 4096 covers t=20
  DecayOptions quad_opt;
  quad_opt.fft_budget = 256;  // forces quadrature at t=20
  const DecaySeries a = decay_series(sym, {20.0}, vels, fft_opt);
  const DecaySeries b = decay_series(sym, {20.0}, vels, quad_opt);
  CHECK(a.samples[0].sup_abs ==
        doctest::Approx(b.samples[0].sup_abs).epsilon(1e-9));
  CHECK(a.samples[0].argmax_l1 == b.samples[0].argmax_l1);
  CHECK(a.samples[0].argmax_l2 == b.samples[0].argmax_l2);
}

TEST_CASE("velocity grid stays inside the closed ball") {
  const double a = 4.0 * std::sqrt(2.0) + 1.0;
  for (const Vec2& v : velocity_grid(21)) {
    CHECK(v.x * v.x + v.y * v.y <= a * a * (1.0 + 1e-9));
  }
  CHECK(velocity_grid(21).size() > 250);  // ball fills ~pi/4 of the square
}
