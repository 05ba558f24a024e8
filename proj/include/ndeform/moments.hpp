#pragma once

#include <optional>
#include <vector>

#include "ndeform/curve.hpp"
#include "ndeform/defs.hpp"

namespace ndf {

/// Exterior harmonic moments of a curve: t0 = area/pi and t_j for
/// j = 1 .. n+1. Moments with j > n+1 vanish identically for a degree-n
/// polynomial curve and are not stored. t0 is optional because deformation
/// schedules prescribe only (t_1, ..., t_{n+1}); the area is an output of
/// the inversion.
struct HarmonicMoments {
  std::optional<double> t0;
  std::vector<complexd> t;  // t[j-1] = t_j

  int degree() const { return static_cast<int>(t.size()) - 1; }
  complexd get(int j) const {
    return (j >= 1 && j <= static_cast<int>(t.size()))
               ? t[static_cast<size_t>(j - 1)]
               : complexd(0.0);
  }
};

/// t_j = (1/(2 pi i j)) oint hbar(1/w) h'(w) h(w)^{-j} dw evaluated exactly:
/// h(w)^{-j} is expanded at infinity, the integrand is a terminating Laurent
/// series there, and t_j is read off as the w^{-1} coefficient. t0 comes
/// from the closed form r^2 - sum j |a_j|^2.
/// Requires xi > 0.
HarmonicMoments forward_moments(const PolynomialCurve& curve);

/// Same contract as forward_moments but via the trapezoid rule on |w| = 1,
/// which is spectrally accurate for these integrands; serves as the
/// independent cross-check. Throws PrecisionError when the internal
/// half-grid comparison indicates the requested grid cannot deliver
/// grid.tol() accuracy (this happens for near-slit curves on coarse grids).
HarmonicMoments forward_moments_quadrature(const PolynomialCurve& curve,
                                           const ContourGrid& grid);

/// First-order truncation of the moment map in the scaled variables
/// rho = r^2, alpha_j = a_j / r^j:
///   t0  = rho (1 - |alpha_1|^2)
///   t_j = (1/j) conj(alpha_{j-1}) - conj(alpha_j) alpha_0
///         - (1 + 1/j) alpha_1 conj(alpha_{j+1}) rho.
/// Used to seed Newton and to unit-test the expansion.
HarmonicMoments leading_order_moments(const PolynomialCurve& curve);

namespace detail {

/// Exact moment map together with its Wirtinger derivatives, defined for
/// any r > 0 (no certification requirement: Newton iterates may pass
/// through uncertified configurations).
struct MomentMap {
  std::vector<complexd> t;                   // t_j, j = 1..jmax
  std::vector<complexd> dt_dr;               // d t_j / d r
  std::vector<std::vector<complexd>> dt_da;     // [j-1][m] = d t_j / d a_m
  std::vector<std::vector<complexd>> dt_dabar;  // [j-1][m] = d t_j / d conj(a_m)
};

std::vector<complexd> moment_values(double r, const std::vector<complexd>& a,
                                    int jmax);
MomentMap moment_map_with_derivatives(double r, const std::vector<complexd>& a,
                                      int jmax);

}  // namespace detail

}  // namespace ndf
