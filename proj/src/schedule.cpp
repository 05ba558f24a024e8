#include "ndeform/schedule.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ndeform/errors.hpp"

namespace ndf {

namespace {

// Positive root of an increasing function g on (0, hi] by bisection.
double bisect_root(double lo, double hi, const auto& g) {
  double glo = g(lo), ghi = g(hi);
  if (glo > 0.0) return lo;
  if (ghi < 0.0) return hi;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string DeformationSchedule::validate() const {
  if (!(r > 0.0)) return "schedule: r must be positive";
  if (degree() < 1) return "schedule: tau must cover at least tau_1, tau_2";
  if (std::abs(tau[0]) != 0.0) return "schedule: tau_1 must be 0";
  if (!t2_zero && std::abs(std::abs(tau[1]) - 1.0) >= 1e-14)
    return "schedule: |tau_2| must equal 1";
  for (double d : delta)
    if (!(d >= 1.0)) return "schedule: every Delta_j must be >= 1";
  if (!t2_zero) {
    auto [r_hat, r_bar] = admissible_radius(tau);
    double r0 = std::min(r_hat, r_bar);
    if (!(r < r0)) return "schedule: r exceeds the admissibility radius r0";
  }
  return {};
}

HarmonicMoments schedule_moments(const DeformationSchedule& sched, double s) {
  if (!(s > 0.0 && s <= 1.0))
    throw ValidationError("schedule_moments: s must lie in (0, 1]");
  int n = sched.degree();
  if (n < 1) throw ValidationError("schedule_moments: schedule needs degree >= 1");
  HarmonicMoments m;
  m.t.assign(static_cast<size_t>(n + 1), 0.0);
  if (!sched.t2_zero) {
    double phase = std::pow(s, sched.delta_j(2)) * sched.phi;
    m.t[1] = 0.5 * std::sqrt(1.0 - s) * std::polar(1.0, phase);
  }
  for (int j = 3; j <= n + 1; ++j)
    m.t[static_cast<size_t>(j - 1)] =
        std::pow(s, sched.delta_j(j)) * sched.tau[static_cast<size_t>(j - 1)];
  return m;
}

std::pair<double, double> admissible_radius(const std::vector<complexd>& tau) {
  if (tau.size() < 2 || std::abs(std::abs(tau[1]) - 1.0) >= 1e-14)
    throw ValidationError("admissible_radius: |tau_2| = 1 required");
  int n = static_cast<int>(tau.size()) - 1;

  // j = 1 in the r_hat sum carries no r dependence (it feeds the lambda
  // interval instead), so only j >= 2 terms constrain r; the degree-1
  // constant 1/(2 sqrt 2) is kept as a conservative cap.
  constexpr double kRhatCap = 0.35355339059327378;  // 1/(2 sqrt 2)
  bool have_hat = false, have_bar = false;
  for (int j = 2; j <= n; ++j)
    if (std::abs(tau[static_cast<size_t>(j)]) > 0.0) have_hat = have_bar = true;

  double r_hat = kRhatCap;
  if (have_hat) {
    auto g_hat = [&](double r) {
      double acc = -1.0;
      for (int j = 2; j <= n; ++j) {
        double t = std::abs(tau[static_cast<size_t>(j)]);
        acc += 2.0 * j * (j + 1.0) * (j + 1.0) * t * t * std::pow(r, 2 * (j - 1));
      }
      return acc;
    };
    r_hat = std::min(kRhatCap, bisect_root(1e-12, 1e6, g_hat));
  }

  double r_bar = std::numeric_limits<double>::infinity();
  if (have_bar) {
    auto g_bar = [&](double r) {
      double acc = -0.5;
      for (int j = 2; j <= n; ++j)
        acc += j * (j + 1.0) * std::pow(r, j - 1) *
               std::abs(tau[static_cast<size_t>(j)]);
      return acc;
    };
    r_bar = bisect_root(1e-12, 1e6, g_bar);
  }
  return {r_hat, r_bar};
}

}  // namespace ndf
