#include "hexlat/propagator.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace hexlat {

int min_box_size(double t) {
  if (t < 0.0) t = -t;
  const double need = 2.0 * ((kMaxGroupSpeedHex + 1.0) * t + 64.0);
  int n = 128;
  while (double(n) < need) n *= 2;
  return n;
}

namespace {

// FFTW plans are cached per box side; FFTW_ESTIMATE keeps planning
// deterministic so repeated runs produce byte-identical output.
class FftEngine {
 public:
  static FftEngine& instance() {
    static FftEngine e;
    return e;
  }

  void forward(cplx* data, int n) { execute(data, n, FFTW_FORWARD); }
  void backward(cplx* data, int n) { execute(data, n, FFTW_BACKWARD); }

 private:
  struct Plans {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
  };

  void execute(cplx* data, int n, int sign) {
    fftw_plan p;
    {
      std::lock_guard<std::mutex> lock(mu_);
      Plans& pl = plans_[n];
      if (!pl.fwd) {
        // Planning with a scratch buffer; executed via fftw_execute_dft.
        fftw_complex* tmp = fftw_alloc_complex(std::size_t(n) * n);
        pl.fwd = fftw_plan_dft_2d(n, n, tmp, tmp, FFTW_FORWARD, FFTW_ESTIMATE);
        pl.bwd = fftw_plan_dft_2d(n, n, tmp, tmp, FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_free(tmp);
      }
      p = sign == FFTW_FORWARD ? pl.fwd : pl.bwd;
    }
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
  }

  std::mutex mu_;
  std::map<int, Plans> plans_;
};

}  // namespace

WaveField propagate_linear(const WaveField& field, const DispersionSymbol& sym,
                           double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("propagate_linear: t must be finite");
  }
  if (field.n() == 0) {
    throw std::invalid_argument("propagate_linear: empty field");
  }
  WaveField out = field;
  const int n = out.n();
  FftEngine::instance().forward(out.data(), n);
  const double inv_n2 = 1.0 / (double(n) * double(n));
  for (int i = 0; i < n; ++i) {
    const double x1 = kTwoPi * i / n;
    cplx* row = out.data() + std::size_t(i) * n;
    for (int j = 0; j < n; ++j) {
      const double x2 = kTwoPi * j / n;
      const double phase = -t * sym.eval(x1, x2);
      row[j] *= cplx(std::cos(phase), std::sin(phase)) * inv_n2;
    }
  }
  FftEngine::instance().backward(out.data(), n);
  return out;
}

KernelGrid::KernelGrid(const DispersionSymbol& sym, int n, double t)
    : field_(n), t_(t) {
  // ifft of e^{-itg} sampled on the frequency grid; identical to evolving
  // the delta but skips the forward transform of an all-ones spectrum.
  const double inv_n2 = 1.0 / (double(n) * double(n));
  for (int i = 0; i < n; ++i) {
    const double x1 = kTwoPi * i / n;
    cplx* row = field_.data() + std::size_t(i) * n;
    for (int j = 0; j < n; ++j) {
      const double x2 = kTwoPi * j / n;
      const double phase = -t * sym.eval(x1, x2);
      row[j] = cplx(std::cos(phase), std::sin(phase)) * inv_n2;
    }
  }
  FftEngine::instance().backward(field_.data(), n);
}

KernelGrid::Sup KernelGrid::sup_abs() const {
  const int n = field_.n();
  Sup best{0.0, 0, 0};
  for (long l1 = -n / 2; l1 < n / 2; ++l1) {
    for (long l2 = -n / 2; l2 < n / 2; ++l2) {
      const double a = std::abs(field_.at_site(l1, l2));
      if (a > best.value) best = {a, l1, l2};
    }
  }
  return best;
}

KernelGrid kernel_fft(const DispersionSymbol& sym, int n, double t) {
  if (n < min_box_size(t)) {
    throw BoxTooSmallError("kernel_fft: box side " + std::to_string(n) +
                           " below min_box_size(t) = " +
                           std::to_string(min_box_size(t)));
  }
  return KernelGrid(sym, n, t);
}

}  // namespace hexlat
