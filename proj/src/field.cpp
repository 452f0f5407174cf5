#include "hexlat/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "hexlat/io.hpp"

namespace hexlat {

WaveField::WaveField(int n, int origin1, int origin2)
    : n_(n), origin1_(origin1), origin2_(origin2), data_(std::size_t(n) * n) {
  if (n <= 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("WaveField: box side must be a power of two");
  }
}

WaveField WaveField::delta(int n, cplx amp) {
  WaveField f(n);
  f.at_site(0, 0) = amp;
  return f;
}

std::size_t WaveField::index(long l1, long l2) const {
  long i = (l1 + origin1_) % n_;
  long j = (l2 + origin2_) % n_;
  if (i < 0) i += n_;
  if (j < 0) j += n_;
  return std::size_t(i) * n_ + std::size_t(j);
}

cplx& WaveField::at_site(long l1, long l2) { return data_[index(l1, l2)]; }
cplx WaveField::at_site(long l1, long l2) const { return data_[index(l1, l2)]; }

double WaveField::l2_norm() const {
  double s = 0.0;
  for (const cplx& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double WaveField::sup_norm() const {
  double m = 0.0;
  for (const cplx& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double WaveField::lp_norm(double p) const {
  if (std::isinf(p)) return sup_norm();
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (p == 2.0) return l2_norm();
  double s = 0.0;
  for (const cplx& z : data_) s += std::pow(std::abs(z), p);
  return std::pow(s, 1.0 / p);
}

void WaveField::write_csv(std::ostream& out) const {
  out << "l1,l2,re,im\r\n";
  for (long l1 = -n_ / 2; l1 < n_ / 2; ++l1) {
    for (long l2 = -n_ / 2; l2 < n_ / 2; ++l2) {
      const cplx z = at_site(l1, l2);
      out << l1 << ',' << l2 << ',' << fmt_g17(z.real()) << ','
          << fmt_g17(z.imag()) << "\r\n";
    }
  }
}

namespace {
constexpr char kMagic[8] = {'H', 'E', 'X', 'L', 'A', 'T', 'W', 'F'};
}

void WaveField::write_binary(std::ostream& out) const {
  out.write(kMagic, 8);
  const std::uint32_t n = std::uint32_t(n_);
  const std::uint32_t reserved = 0;
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&reserved), 4);
  out.write(reinterpret_cast<const char*>(data_.data()),
            std::streamsize(data_.size() * sizeof(cplx)));
}

WaveField WaveField::read_binary(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) {
    throw std::runtime_error("WaveField::read_binary: bad magic");
  }
  std::uint32_t n = 0, reserved = 0;
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&reserved), 4);
  WaveField f{int(n)};
  in.read(reinterpret_cast<char*>(f.data_.data()),
          std::streamsize(f.data_.size() * sizeof(cplx)));
  if (!in) throw std::runtime_error("WaveField::read_binary: truncated file");
  return f;
}

}  // namespace hexlat
