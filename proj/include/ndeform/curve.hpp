#pragma once

#include <vector>

#include "ndeform/defs.hpp"

namespace ndf {

/// Closed polynomial curve parametrized over |w| = 1 by
///
///   h(w) = r w + a_0 + a_1 / w + ... + a_n / w^n,  r > 0.
///
/// The curve is "certified simple" when the margin
/// xi = r - sum_j j |a_j| is positive; xi > 0 makes h a Riemann map from
/// the exterior of the unit disk onto the exterior of the curve, and every
/// operation that needs that map rejects curves with xi <= 0.
/// a_n may be zero: the stored degree is an upper bound, which matters for
/// deformation families that drive coefficients through zero.
class PolynomialCurve {
 public:
  /// a[j] is the coefficient of w^{-j}; a may be empty (circle of radius r).
  PolynomialCurve(double r, std::vector<complexd> a);

  double r() const { return r_; }
  const std::vector<complexd>& coeffs() const { return a_; }
  int degree() const { return static_cast<int>(a_.size()) - 1; }
  complexd coeff(int j) const {
    return (j >= 0 && j <= degree()) ? a_[static_cast<size_t>(j)] : 0.0;
  }

  complexd evaluate(complexd w) const;
  complexd derivative(complexd w) const;

  /// Curve with conjugated coefficients, h-bar.
  PolynomialCurve conjugated() const;

  /// xi = r - sum_{j>=1} j |a_j|.
  double simplicity_margin() const;
  bool certified_simple() const { return simplicity_margin() > 0.0; }

  /// t0 = r^2 - sum_{j>=1} j |a_j|^2; equals area/pi when xi > 0.
  double area_t0() const;

 private:
  double r_;
  std::vector<complexd> a_;
};

/// Roots of unity on |w| = 1 used as trapezoid nodes for contour
/// integrals. The node count is a power of two and must satisfy
/// m >= 4(n+2) so that every Laurent mode occurring in this project is
/// resolved without aliasing.
class ContourGrid {
 public:
  explicit ContourGrid(int m, double tol = 1e-10);

  /// Geometry grid: m = next power of two >= max(4(n+2), min_nodes).
  static ContourGrid for_curve(const PolynomialCurve& curve,
                               int min_nodes = 512);
  /// Moment-quadrature grid: m = next power of two >= 16(n+2).
  static ContourGrid for_moments(const PolynomialCurve& curve);

  int size() const { return m_; }
  const std::vector<complexd>& nodes() const { return nodes_; }
  double tol() const { return tol_; }

 private:
  int m_;
  double tol_;
  std::vector<complexd> nodes_;
};

/// Boundary polyline sampled at grid nodes, with fast point classification.
/// Shared by the winding tests and the Monte Carlo area integrals.
class CurvePolyline {
 public:
  CurvePolyline(const PolynomialCurve& curve, const ContourGrid& grid);

  const std::vector<complexd>& points() const { return pts_; }
  double min_re() const { return min_re_; }
  double max_re() const { return max_re_; }
  double min_im() const { return min_im_; }
  double max_im() const { return max_im_; }

  int winding_number(complexd z) const;
  double squared_distance(complexd z) const;
  /// Winding test without the boundary-distance guard. Points within
  /// roundoff of the polyline may be classified either way, deterministically.
  bool inside_fast(complexd z) const { return winding_number(z) != 0; }

 private:
  std::vector<complexd> pts_;
  double min_re_, max_re_, min_im_, max_im_;
};

/// Verifies |h(w_i) - h(w_j)| >= xi |w_i - w_j| - tol on all node pairs and
/// that the sampled polyline has no self-intersection. For curves with
/// xi <= 0 the pair bound is vacuous and the self-intersection test is what
/// detects an actual crossing.
bool injectivity_check(const PolynomialCurve& curve, const ContourGrid& grid);

/// True iff the winding number of the sampled boundary around z is one.
/// Throws BoundaryAmbiguousError when z is within 1e-12 * r of the polyline
/// and UncertifiedCurveError when xi <= 0.
bool contains_point(const PolynomialCurve& curve, complexd z,
                    const ContourGrid& grid);

/// Max over grid nodes of the distance from h(w) to the segment [-2r, 2r].
double slit_limit_distance(const PolynomialCurve& curve,
                           const ContourGrid& grid);

}  // namespace ndf
