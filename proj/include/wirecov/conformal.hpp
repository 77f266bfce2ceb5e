#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "wirecov/geometry.hpp"
#include "wirecov/quadrature.hpp"

namespace wirecov {

using Complex = std::complex<double>;

/// A point of the closed upper half-plane, Im >= 0.
using UpperHalfPoint = Complex;

/// z = anchor + offset with anchor in {-1, 0, +1}. Points crowded against a
/// prevertex keep full relative precision in the offset, which plain
/// doubles lose once |z - w| drops below ~1e-8.
struct AnchoredPoint {
  int anchor = 0;
  Complex offset;

  Complex value() const { return static_cast<double>(anchor) + offset; }
  /// Re(z) - w without cancellation when w is the anchor.
  double real_minus(double w) const {
    return anchor == static_cast<int>(w) ? offset.real() : (anchor - w) + offset.real();
  }
  /// Projection onto the real axis, same anchor.
  AnchoredPoint real_part() const { return {anchor, Complex(offset.real(), 0.0)}; }
};

/// Schwarz–Christoffel map f of the upper half-plane onto the triangle
/// (p1, p2, apex). Prevertices are fixed at -1 -> p1, +1 -> p2, and the
/// apex is the image of infinity:
///
///   f(z) = p1 + C ∫_{-1}^{z} (χ+1)^{α1-1} (1-χ)^{α2-1} dχ
///
/// with the integrand positive on (-1, 1). Immutable after construction.
class SCTriangleMap {
 public:
  static constexpr double kW1 = -1.0;
  static constexpr double kW2 = 1.0;
  static constexpr double kApexGuard = 1e-6;  ///< relative to diam
  static constexpr std::size_t kDefaultGrid = 16;

  SCTriangleMap(Point2 p1, Point2 p2, Point2 apex, std::size_t grid = kDefaultGrid);

  Point2 p1() const { return p1_; }
  Point2 p2() const { return p2_; }
  Point2 apex() const { return apex_; }
  /// Interior angles divided by π at (p1, p2, apex).
  const std::array<double, 3>& alpha() const { return alpha_; }
  Complex scale() const { return C_; }
  double base_integral() const { return I0_; }
  double diam() const { return diam_; }

  Point2 forward(UpperHalfPoint z) const { return to_point(forward_c(z)); }
  Complex forward_c(UpperHalfPoint z) const { return forward_at({0, z}); }
  Complex forward_at(const AnchoredPoint& z) const;

  /// f'(z) = C (z+1)^{α1-1} (1-z)^{α2-1}. Throws SingularPoint at ±1.
  Complex derivative(UpperHalfPoint z) const { return derivative_at({0, z}); }
  Complex derivative_at(const AnchoredPoint& z) const;

  /// Preimage of a point of the closed triangle. `hint` seeds Newton.
  /// Throws ApexExcluded within kApexGuard·diam of the apex and
  /// NoConvergence when Newton and continuation both fail.
  UpperHalfPoint inverse(Point2 x, std::optional<UpperHalfPoint> hint = std::nullopt) const;
  AnchoredPoint inverse_anchored(Point2 x, std::optional<AnchoredPoint> hint = std::nullopt) const;

  /// Newton accepts once |forward(z) - x| <= kInverseTol·diam.
  static constexpr double kInverseTol = 1e-9;

 private:
  Complex integrand(int anchor, Complex d) const;
  AnchoredPoint normalize(const AnchoredPoint& z) const;
  Complex from_prevertex(int anchor, Complex offset) const;
  Complex from_infinity(Complex z) const;
  Complex gj_panel(const QuadratureRule& rule, int anchor, Complex end, double exponent) const;
  Complex gl_adaptive(int anchor, Complex a, Complex b, int depth) const;
  AnchoredPoint newton(Point2 x, AnchoredPoint z0, int max_iter, double& residual) const;

  Point2 p1_, p2_, apex_;
  std::array<double, 3> alpha_{};
  double diam_ = 0.0;
  double I0_ = 0.0;
  Complex C_;
  Complex rot2_;  ///< e^{-iπ(α2-1)}, folds the (1-χ) branch into (χ-1)
  QuadratureRule gj_left_, gj_left_lo_, gj_right_, gj_right_lo_, gj_inf_, gj_inf_lo_, gl_, gl_lo_;
  std::vector<Complex> grid_z_;
  std::vector<Point2> grid_x_;
};

/// Builds the map for triangle (p1, p2, apex); apex must lie to the left of
/// p1 -> p2. Throws DegenerateTriangle.
SCTriangleMap build_triangle_map(Point2 p1, Point2 p2, Point2 apex,
                                 std::size_t grid = SCTriangleMap::kDefaultGrid);

}  // namespace wirecov
