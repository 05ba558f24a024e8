#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ndeform/defs.hpp"
#include "ndeform/moments.hpp"

namespace ndf {

/// One-parameter family of moment targets t(s), s in (0, 1]:
///
///   t_1 = 0
///   t_2 = (sqrt(1-s)/2) exp(i s^{Delta_2} phi)
///   t_j = s^{Delta_j} tau_j,  3 <= j <= n+1
///
/// driven at fixed conformal radius r. As s -> 0 the curve flattens onto
/// the segment [-2r, 2r]; with all Delta_j > 1 the boundary measure
/// converges to the semicircle law of scale r.
///
/// t2_zero selects the degenerate degree-3 study instead: t_2 is pinned to
/// zero, the area is driven down directly via t0(s) = s r^2, and r is left
/// free in the inversion. That family cannot flatten; it either loses the
/// simplicity margin or collapses to a point, and deform reports the
/// breakdown.
struct DeformationSchedule {
  double r = 0.0;
  double phi = 0.0;                // phase angle in [0, 2 pi)
  std::vector<complexd> tau;       // tau[j-1] = tau_j, j = 1..n+1
  std::vector<double> delta;       // delta[j-2] = Delta_j, j = 2..n+1
  bool t2_zero = false;

  int degree() const { return static_cast<int>(tau.size()) - 1; }
  double delta_j(int j) const {
    int idx = j - 2;
    if (idx < 0 || idx >= static_cast<int>(delta.size())) return 1.0;
    return delta[static_cast<size_t>(idx)];
  }

  /// Checks tau_1 = 0, | |tau_2| - 1 | < 1e-14, Delta_j >= 1 and
  /// r < r0(tau). Returns an empty string when the schedule is admissible,
  /// otherwise a description of the violated condition. Running an
  /// inadmissible schedule is allowed; it is how the breakdown regime is
  /// explored.
  std::string validate() const;
};

/// Moment targets at parameter s. t0 is left unset: it is an output of the
/// inversion, not an input of the family.
/// Throws ValidationError for s outside (0, 1].
HarmonicMoments schedule_moments(const DeformationSchedule& sched, double s);

/// Admissibility radii (r_hat, r_bar); r0 = min of the two.
///   r_hat: positive root of  2 sum_{j>=2} j (j+1)^2 |tau_{j+1}|^2 r^{2(j-1)} = 1,
///          capped at the degree-1 constant 1/(2 sqrt 2); the j = 1 term of
///          the defining sum carries no r dependence and acts through the
///          lambda-interval bound instead.
///   r_bar: positive root of  r/2 = sum_{j>=2} j (j+1) r^j |tau_{j+1}|,
///          +infinity when every tau_{j+1} with j >= 2 vanishes.
/// Requires |tau_2| = 1 (within 1e-14) with tau indexed as in the schedule.
std::pair<double, double> admissible_radius(const std::vector<complexd>& tau);

}  // namespace ndf
