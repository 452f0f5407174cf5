#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hexlat {

using cplx = std::complex<double>;

/// Complex amplitudes on an N x N periodic box. Lattice site l = (l1, l2)
/// maps to index ((l1 + origin1) mod N, (l2 + origin2) mod N), row-major.
class WaveField {
 public:
  WaveField() = default;
  WaveField(int n, int origin1 = 0, int origin2 = 0);

  /// Delta at site (0,0) scaled by amp.
  static WaveField delta(int n, cplx amp = 1.0);

  int n() const { return n_; }
  int origin1() const { return origin1_; }
  int origin2() const { return origin2_; }

  cplx& at_site(long l1, long l2);
  cplx at_site(long l1, long l2) const;

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  double l2_norm() const;
  double lp_norm(double p) const;  // p >= 1, p = inf -> sup norm
  double sup_norm() const;

  /// CSV snapshot with columns (l1, l2, re, im), sites in [-n/2, n/2).
  void write_csv(std::ostream& out) const;

  /// Compact binary dump: 16-byte header (8-byte magic "HEXLATWF",
  /// uint32 N, uint32 reserved), then row-major complex doubles.
  void write_binary(std::ostream& out) const;
  static WaveField read_binary(std::istream& in);

 private:
  int n_ = 0;
  int origin1_ = 0;
  int origin2_ = 0;
  std::vector<cplx> data_;

  std::size_t index(long l1, long l2) const;
};

}  // namespace hexlat
