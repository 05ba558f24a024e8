#pragma once

#include <utility>
#include <vector>

#include "ndeform/curve.hpp"
#include "ndeform/defs.hpp"

namespace ndf {

/// Inverse Riemann map H(z): the unique root w of h(w) = z with
/// |w| >= 1 - collar_tol (a thin collar inside the unit circle is accepted
/// because the Schwarz function extends across the curve). The root comes
/// from the companion matrix of r w^{n+1} - z w^n + sum_j a_j w^{n-j},
/// polished by one Newton step and certified by |h(w) - z| < 1e-12 (1+|z|).
///
/// Errors: OutsideDomainError when no admissible root exists (z too deep
/// inside), BranchAmbiguityError when several roots sit in the collar
/// (z near a critical value).
complexd riemann_inverse(const PolynomialCurve& curve, complexd z);

/// Schwarz function S(z) = hbar(1 / H(z)); satisfies S(z) = conj(z) on the
/// curve and is analytic in a strip around it.
complexd schwarz_function(const PolynomialCurve& curve, complexd z);

/// Square root with branch cut on the straight segment between b_minus and
/// b_plus, normalized to behave like z - (b_plus + b_minus)/2 at infinity.
complexd two_cut_sqrt(complexd z, complexd b_plus, complexd b_minus);

/// Near-slit form S(z) = E z + Lambda sqrt(z^2 - 4 r a_1) + g(z) with
///   E      = (r^2 + |a_1|^2) / (2 r a_1)
///   Lambda = (|a_1|^2 - r^2) / (2 r a_1)
/// and branch points +-2 sqrt(r a_1). remainder_bound is the sup of |g| on
/// the contour; it vanishes for degree-1 curves and is o(s) along
/// deformation trajectories with every Delta_j > 1.
struct SchwarzDecomposition {
  complexd E;
  complexd Lambda;
  std::pair<complexd, complexd> branch_cut;  // (+2 sqrt(r a1), -2 sqrt(r a1))
  double remainder_bound;
};

/// Throws ValidationError when a_1 = 0 (the degenerate degree-3 situation
/// has no linear-plus-square-root form).
SchwarzDecomposition near_slit_decomposition(const PolynomialCurve& curve);

/// Critical points of h and the induced branch points of S.
struct BranchPointReport {
  std::vector<complexd> critical_points;  // roots of h' with w != 0
  std::vector<complexd> branch_points;    // h(w_c) for |w_c| < 1
  std::vector<bool> inside_flags;         // contains_point per branch point
  int inside_count = 0;
  bool even_inside = true;
  bool none_on_curve = true;
  double critical_radius = 0.0;  // max |w| over all critical points
  bool circle_exception = false; // no branch points at all (circle case)
};

BranchPointReport branch_point_check(const PolynomialCurve& curve);

}  // namespace ndf
