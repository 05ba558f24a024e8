#pragma once

#include <vector>

#include "ndeform/curve.hpp"
#include "ndeform/defs.hpp"
#include "ndeform/moments.hpp"
#include "ndeform/schedule.hpp"

namespace ndf {

/// Inverse of the moment map in the regular regime |t_2| < 1/2 - 1e-3.
/// Damped Newton in the scaled variables (rho, alpha_0..alpha_n) on the
/// exact forward map, seeded at alpha_j = (j+1) conj(t_{j+1}),
/// rho = t0 / (1 - 4 |t_2|^2); Jacobians are analytic.
///
/// Preconditions: t0 set and positive, t_1 = 0.
/// Errors: OutOfRegimeError (|t_2| too large), NoSolutionError (Newton did
/// not converge in 50 iterations), BreakdownError (solution has xi <= 0).
PolynomialCurve invert_regular(const HarmonicMoments& m,
                               const PolynomialCurve* warm_start = nullptr);

/// Inverse in the near-slit regime t_2 -> 1/2 at fixed r = sched.r.
/// lambda = |t_2|^2 is recovered from the area by a scalar root-find on
/// t0 = rho * tau0_tilde(rho, lambda, tau), which is monotone decreasing in
/// lambda on [0, 1/4]; the coefficient vector at each lambda comes from a
/// Newton solve seeded by the leading-order bifurcation formulas
/// alpha_j = alpha*_j(lambda) + rho (alpha0_j + zeta_j(lambda)), with zeta
/// obtained from the eta-perturbed block system.
///
/// Errors: OutOfRegimeError (no lambda in [0, 1/4] matches t0),
/// BreakdownError (xi <= 0).
PolynomialCurve invert_near_slit(const HarmonicMoments& m,
                                 const DeformationSchedule& sched,
                                 const PolynomialCurve* warm_start = nullptr);

struct TrajectoryPoint {
  double s;
  PolynomialCurve curve;
  HarmonicMoments moments;  // t0 filled in
  double xi;
};

/// Runs the deformation family over a strictly decreasing list of s values,
/// warm-starting each step from the previous one. The area t0(s) is
/// determined by the fixed-r solve; each step is then reproduced through
/// invert_regular (|t_2| < 0.45) or invert_near_slit (otherwise) and
/// checked for xi > 0. Aborts with BreakdownError naming the failing s
/// when the margin is lost or, in the t2_zero family, when the curve
/// collapses (r below 0.15 of the scheduled radius).
/// partial_out, when given, receives the successfully completed steps even
/// if a later step aborts.
std::vector<TrajectoryPoint> deform(const DeformationSchedule& sched,
                                    const std::vector<double>& s_values,
                                    std::vector<TrajectoryPoint>* partial_out = nullptr);

namespace detail {

/// Targets t_j(lambda) on the schedule's lambda-curve, s = 1 - 4 lambda.
std::vector<complexd> lambda_targets(const DeformationSchedule& sched,
                                     double lambda);

/// Inner solve: coefficients alpha matching the given t_1..t_{n+1} targets
/// at fixed rho. Pure Newton machinery shared by both inversion routes.
std::vector<complexd> solve_alpha_at_rho(double rho,
                                         const std::vector<complexd>& targets,
                                         const std::vector<complexd>* warm,
                                         int max_iter = 60);

/// Leading-order near-slit seed per the bifurcation construction.
std::vector<complexd> near_slit_seed(const DeformationSchedule& sched,
                                     double lambda);

double f0_area(double rho, const std::vector<complexd>& alpha);

}  // namespace detail

}  // namespace ndf
