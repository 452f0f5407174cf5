#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hexlat {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Maximal group speed of the hex symbol: sup |grad g| = 4*sqrt(2).
inline const double kMaxGroupSpeedHex = 4.0 * std::sqrt(2.0);

enum class LatticeKind {
  HexTriangulation,  // Z^2 with neighbor offsets (+-1,0),(0,+-1),+-(1,1)
  SquareZ2,          // Z^2 with neighbor offsets (+-1,0),(0,+-1)
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Mat2 {
  // symmetric 2x2: [[a, b], [b, c]]
  double a = 0.0, b = 0.0, c = 0.0;
  double det() const { return a * c - b * b; }
};

/// Dispersion symbol g of the lattice Laplacian: Fourier multiplier of -Delta.
/// Hex: g(x) = 6 - 2cos x1 - 2cos x2 - 2cos(x1+x2);
/// Z^2: g(x) = 4 - 2cos x1 - 2cos x2.
class DispersionSymbol {
 public:
  explicit DispersionSymbol(LatticeKind kind) : kind_(kind) {}

  LatticeKind kind() const { return kind_; }

  int neighbor_count() const {
    return kind_ == LatticeKind::HexTriangulation ? 6 : 4;
  }

  std::vector<std::array<int, 2>> neighbor_offsets() const {
    if (kind_ == LatticeKind::HexTriangulation) {
      return {{{1, 0}}, {{-1, 0}}, {{0, 1}}, {{0, -1}}, {{1, 1}}, {{-1, -1}}};
    }
    return {{{1, 0}}, {{-1, 0}}, {{0, 1}}, {{0, -1}}};
  }

  double eval(double x1, double x2) const {
    if (kind_ == LatticeKind::HexTriangulation) {
      return 6.0 - 2.0 * std::cos(x1) - 2.0 * std::cos(x2) -
             2.0 * std::cos(x1 + x2);
    }
    return 4.0 - 2.0 * std::cos(x1) - 2.0 * std::cos(x2);
  }

  Vec2 grad(double x1, double x2) const {
    if (kind_ == LatticeKind::HexTriangulation) {
      const double s12 = std::sin(x1 + x2);
      return {2.0 * std::sin(x1) + 2.0 * s12, 2.0 * std::sin(x2) + 2.0 * s12};
    }
    return {2.0 * std::sin(x1), 2.0 * std::sin(x2)};
  }

  Mat2 hessian(double x1, double x2) const {
    if (kind_ == LatticeKind::HexTriangulation) {
      const double c1 = std::cos(x1), c2 = std::cos(x2),
                   c12 = std::cos(x1 + x2);
      return {2.0 * (c12 + c1), 2.0 * c12, 2.0 * (c12 + c2)};
    }
    return {2.0 * std::cos(x1), 0.0, 2.0 * std::cos(x2)};
  }

  /// Reduced discriminant D(x) = (cos x1 + cos x2) cos(x1+x2) + cos x1 cos x2.
  /// The full Hessian determinant equals 4*D(x).
  /// Hex only; the Z^2 determinant factorizes as 4 cos x1 cos x2 and is
  /// handled by hessian().det() directly.
  double discriminant(double x1, double x2) const {
    if (kind_ != LatticeKind::HexTriangulation) {
      throw std::invalid_argument(
          "discriminant: reduced form defined for the hex lattice only");
    }
    const double c1 = std::cos(x1), c2 = std::cos(x2), c12 = std::cos(x1 + x2);
    return (c1 + c2) * c12 + c1 * c2;
  }

  /// sup_x |grad g(x)| (exact for both lattices).
  double max_group_speed() const {
    return kind_ == LatticeKind::HexTriangulation ? kMaxGroupSpeedHex : 2.0 * std::sqrt(2.0);
  }

 private:
  LatticeKind kind_;
};

/// Phase with velocity parameter: phi(v, x) = g(x) - <v, x>.
/// Hess_x phi = Hess g, independent of v.
struct PhaseFunction {
  DispersionSymbol symbol;
  Vec2 velocity;

  double eval(double x1, double x2) const {
    return symbol.eval(x1, x2) - velocity.x * x1 - velocity.y * x2;
  }
  Vec2 grad(double x1, double x2) const {
    Vec2 gg = symbol.grad(x1, x2);
    return {gg.x - velocity.x, gg.y - velocity.y};
  }
  Mat2 hessian(double x1, double x2) const { return symbol.hessian(x1, x2); }
};

inline DispersionSymbol hex_symbol() {
  return DispersionSymbol(LatticeKind::HexTriangulation);
}
inline DispersionSymbol z2_symbol() {
  return DispersionSymbol(LatticeKind::SquareZ2);
}

}  // namespace hexlat
