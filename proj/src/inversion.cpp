#include "ndeform/inversion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "ndeform/block_system.hpp"
#include "ndeform/errors.hpp"

namespace ndf {

namespace {

std::vector<complexd> coeffs_from_alpha(double rho,
                                        const std::vector<complexd>& alpha) {
  double r = std::sqrt(rho);
  std::vector<complexd> a(alpha.size());
  double rp = 1.0;
  for (size_t j = 0; j < alpha.size(); ++j) {
    a[j] = alpha[j] * rp;
    rp *= r;
  }
  return a;
}

std::vector<complexd> alpha_from_curve(const PolynomialCurve& c) {
  std::vector<complexd> alpha(c.coeffs().size());
  double rp = 1.0;
  for (size_t j = 0; j < alpha.size(); ++j) {
    alpha[j] = c.coeffs()[j] / rp;
    rp *= c.r();
  }
  return alpha;
}

double moment_scale(const std::vector<complexd>& targets) {
  double s = 1.0;
  for (complexd t : targets) s += std::abs(t);
  return s;
}

// Residual and real-stacked Jacobian of the coefficient equations
// t_j(rho, alpha) - target_j at fixed rho. Column layout:
// [Re a0, Im a0, ..., Re an, Im an]; optionally one leading rho column.
struct MomentSystem {
  Eigen::VectorXd residual;
  Eigen::MatrixXd jac;
};

MomentSystem eval_moment_system(double rho, const std::vector<complexd>& alpha,
                                const std::vector<complexd>& targets,
                                bool with_rho_column, double t0_target) {
  int n1 = static_cast<int>(alpha.size());  // = n + 1 coefficients
  int jmax = static_cast<int>(targets.size());
  double r = std::sqrt(rho);
  std::vector<complexd> a = coeffs_from_alpha(rho, alpha);
  detail::MomentMap mm = detail::moment_map_with_derivatives(r, a, jmax);

  int rows = 2 * jmax + (with_rho_column ? 1 : 0);
  int cols = 2 * n1 + (with_rho_column ? 1 : 0);
  MomentSystem out;
  out.residual.resize(rows);
  out.jac.setZero(rows, cols);

  int row0 = 0;
  if (with_rho_column) {
    // Area equation t0 = rho - sum_m m |alpha_m|^2 rho^m.
    double f0 = rho, df0_drho = 1.0;
    for (int m = 1; m < n1; ++m) {
      double rm = std::pow(rho, m);
      f0 -= m * std::norm(alpha[static_cast<size_t>(m)]) * rm;
      df0_drho -= static_cast<double>(m) * m *
                  std::norm(alpha[static_cast<size_t>(m)]) * rm / rho;
    }
    out.residual(0) = f0 - t0_target;
    out.jac(0, 0) = df0_drho;
    for (int m = 1; m < n1; ++m) {
      double rm = std::pow(rho, m);
      out.jac(0, 1 + 2 * m) = -2.0 * m * alpha[static_cast<size_t>(m)].real() * rm;
      out.jac(0, 2 + 2 * m) = -2.0 * m * alpha[static_cast<size_t>(m)].imag() * rm;
    }
    row0 = 1;
  }

  for (int j = 1; j <= jmax; ++j) {
    size_t ji = static_cast<size_t>(j - 1);
    complexd g = mm.t[ji] - targets[ji];
    out.residual(row0 + 2 * (j - 1)) = g.real();
    out.residual(row0 + 2 * (j - 1) + 1) = g.imag();

    if (with_rho_column) {
      // d t_j / d rho through r = sqrt(rho) and a_m = alpha_m rho^{m/2}.
      complexd d = mm.dt_dr[ji] / (2.0 * r);
      for (int m = 0; m < n1; ++m) {
        size_t mi = static_cast<size_t>(m);
        d += (mm.dt_da[ji][mi] * (static_cast<double>(m) * a[mi]) +
              mm.dt_dabar[ji][mi] * (static_cast<double>(m) * std::conj(a[mi]))) /
             (2.0 * rho);
      }
      out.jac(row0 + 2 * (j - 1), 0) = d.real();
      out.jac(row0 + 2 * (j - 1) + 1, 0) = d.imag();
    }

    double rp = 1.0;
    for (int m = 0; m < n1; ++m) {
      size_t mi = static_cast<size_t>(m);
      complexd ga = mm.dt_da[ji][mi] * rp;     // d/d alpha_m
      complexd gb = mm.dt_dabar[ji][mi] * rp;  // d/d conj(alpha_m)
      complexd d_re = ga + gb;
      complexd d_im = complexd(0.0, 1.0) * (ga - gb);
      int c0 = (with_rho_column ? 1 : 0) + 2 * m;
      out.jac(row0 + 2 * (j - 1), c0) = d_re.real();
      out.jac(row0 + 2 * (j - 1) + 1, c0) = d_re.imag();
      out.jac(row0 + 2 * (j - 1), c0 + 1) = d_im.real();
      out.jac(row0 + 2 * (j - 1) + 1, c0 + 1) = d_im.imag();
      rp *= r;
    }
  }
  return out;
}

/// alpha* = (j+1) conj(t_{j+1}) plus the first-order block-system
/// correction rho * phi solved from the conjugate-linear system with
/// K_{i1} = (i+1) conj(t_{i+1}) and v_j = 2(1+1/j)(j+2) t_2 conj(t_{j+2}).
std::vector<complexd> bifurcation_seed(double rho,
                                       const std::vector<complexd>& targets) {
  int n1 = static_cast<int>(targets.size());  // n + 1
  int n = n1 - 1;
  auto t = [&](int j) -> complexd {
    return (j >= 1 && j <= n1) ? targets[static_cast<size_t>(j - 1)] : 0.0;
  };
  std::vector<complexd> alpha(static_cast<size_t>(n1), 0.0);
  for (int j = 1; j <= n; ++j)
    alpha[static_cast<size_t>(j)] = static_cast<double>(j + 1) * std::conj(t(j + 1));

  std::vector<complexd> k_col(static_cast<size_t>(n1), 0.0);
  std::vector<complexd> v(static_cast<size_t>(n1), 0.0);
  for (int i = 1; i <= n; ++i)
    k_col[static_cast<size_t>(i - 1)] =
        static_cast<double>(i + 1) * std::conj(t(i + 1));
  for (int j = 1; j <= n - 1; ++j)
    v[static_cast<size_t>(j - 1)] = 2.0 * (1.0 + 1.0 / j) *
                                    static_cast<double>(j + 2) * t(2) *
                                    std::conj(t(j + 2));
  try {
    std::vector<complexd> phi = solve_block_system(BlockSystem(k_col, v));
    for (int j = 0; j < n1; ++j)
      alpha[static_cast<size_t>(j)] += rho * phi[static_cast<size_t>(j)];
  } catch (const NearSingularError&) {
    // exactly at the bifurcation point; the plain base point seeds Newton
  }
  return alpha;
}

double residual_norm(const Eigen::VectorXd& v) { return v.lpNorm<Eigen::Infinity>(); }

}  // namespace

namespace detail {

double f0_area(double rho, const std::vector<complexd>& alpha) {
  double f0 = rho;
  for (int m = 1; m < static_cast<int>(alpha.size()); ++m)
    f0 -= m * std::norm(alpha[static_cast<size_t>(m)]) * std::pow(rho, m);
  return f0;
}

std::vector<complexd> lambda_targets(const DeformationSchedule& sched,
                                     double lambda) {
  double s = 1.0 - 4.0 * lambda;
  int n = sched.degree();
  std::vector<complexd> t(static_cast<size_t>(n + 1), 0.0);
  if (!sched.t2_zero) {
    double phase = std::pow(s, sched.delta_j(2)) * sched.phi;
    t[1] = std::sqrt(lambda) * std::polar(1.0, phase);
  }
  for (int j = 3; j <= n + 1; ++j)
    t[static_cast<size_t>(j - 1)] =
        std::pow(s, sched.delta_j(j)) * sched.tau[static_cast<size_t>(j - 1)];
  return t;
}

std::vector<complexd> near_slit_seed(const DeformationSchedule& sched,
                                     double lambda) {
  return bifurcation_seed(sched.r * sched.r, lambda_targets(sched, lambda));
}

std::vector<complexd> solve_alpha_at_rho(double rho,
                                         const std::vector<complexd>& targets,
                                         const std::vector<complexd>* warm,
                                         int max_iter) {
  std::vector<complexd> alpha =
      (warm && warm->size() == targets.size()) ? *warm
                                               : bifurcation_seed(rho, targets);
  double tol = 1e-13 * moment_scale(targets);

  MomentSystem sys = eval_moment_system(rho, alpha, targets, false, 0.0);
  double norm = residual_norm(sys.residual);
  for (int it = 0; it < max_iter && norm >= tol; ++it) {
    Eigen::VectorXd step = sys.jac.colPivHouseholderQr().solve(sys.residual);
    double damp = 1.0;
    bool accepted = false;
    for (; damp >= 1.0 / 1024.0; damp *= 0.5) {
      std::vector<complexd> trial = alpha;
      for (size_t m = 0; m < trial.size(); ++m)
        trial[m] -= damp * complexd(step(2 * static_cast<int>(m)),
                                    step(2 * static_cast<int>(m) + 1));
      MomentSystem tsys = eval_moment_system(rho, trial, targets, false, 0.0);
      double tnorm = residual_norm(tsys.residual);
      if (tnorm <= (1.0 - 0.25 * damp) * norm || tnorm < tol) {
        alpha = std::move(trial);
        sys = std::move(tsys);
        norm = tnorm;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw NoSolutionError("coefficient solve: damped Newton stalled");
  }
  if (norm >= tol)
    throw NoSolutionError("coefficient solve: no convergence within iteration budget");
  return alpha;
}

}  // namespace detail

PolynomialCurve invert_regular(const HarmonicMoments& m,
                               const PolynomialCurve* warm_start) {
  if (!m.t0.has_value() || !(*m.t0 > 0.0))
    throw ValidationError("invert_regular: t0 must be set and positive");
  if (m.t.empty()) {
    // all moments vanish: disk of area pi t0
    return PolynomialCurve(std::sqrt(*m.t0), {});
  }
  double scale = moment_scale(m.t);
  if (std::abs(m.get(1)) > 1e-10 * scale)
    throw ValidationError("invert_regular: t_1 = 0 required");
  double t2_abs = std::abs(m.get(2));
  if (!(t2_abs < 0.5 - 1e-3))
    throw OutOfRegimeError("invert_regular: |t_2| must be below 1/2 - 1e-3");

  double t0 = *m.t0;
  double rho;
  std::vector<complexd> alpha;
  if (warm_start) {
    rho = warm_start->r() * warm_start->r();
    alpha = alpha_from_curve(*warm_start);
    alpha.resize(m.t.size(), 0.0);
  } else {
    rho = t0 / (1.0 - 4.0 * t2_abs * t2_abs);
    alpha = bifurcation_seed(rho, m.t);
  }

  double tol = 1e-12 * (1.0 + std::abs(t0));
  MomentSystem sys = eval_moment_system(rho, alpha, m.t, true, t0);
  double norm = residual_norm(sys.residual);
  for (int it = 0; it < 50 && norm >= tol; ++it) {
    Eigen::VectorXd step = sys.jac.colPivHouseholderQr().solve(sys.residual);
    double damp = 1.0;
    bool accepted = false;
    for (; damp >= 1.0 / 1024.0; damp *= 0.5) {
      double trial_rho = rho - damp * step(0);
      if (trial_rho <= 0.0) continue;
      std::vector<complexd> trial = alpha;
      for (size_t k = 0; k < trial.size(); ++k)
        trial[k] -= damp * complexd(step(1 + 2 * static_cast<int>(k)),
                                    step(2 + 2 * static_cast<int>(k)));
      MomentSystem tsys = eval_moment_system(trial_rho, trial, m.t, true, t0);
      double tnorm = residual_norm(tsys.residual);
      if (tnorm <= (1.0 - 0.25 * damp) * norm || tnorm < tol) {
        rho = trial_rho;
        alpha = std::move(trial);
        sys = std::move(tsys);
        norm = tnorm;
        accepted = true;
        break;
      }
    }
    if (!accepted) throw NoSolutionError("invert_regular: damped Newton stalled");
  }
  if (norm >= tol)
    throw NoSolutionError("invert_regular: no convergence in 50 iterations");

  PolynomialCurve curve(std::sqrt(rho), coeffs_from_alpha(rho, alpha));
  if (!curve.certified_simple())
    throw BreakdownError("invert_regular: recovered curve has xi <= 0 (cusp regime)");
  return curve;
}

PolynomialCurve invert_near_slit(const HarmonicMoments& m,
                                 const DeformationSchedule& sched,
                                 const PolynomialCurve* warm_start) {
  if (!m.t0.has_value() || !(*m.t0 > 0.0))
    throw ValidationError("invert_near_slit: t0 must be set and positive");
  if (sched.degree() < 1 ||
      (!m.t.empty() && m.degree() != sched.degree()))
    throw ValidationError("invert_near_slit: schedule degree must match the moments");
  double t0 = *m.t0;
  double rho = sched.r * sched.r;
  (void)warm_start;  // every lambda evaluation is seeded from its own
                     // bifurcation formulas: a warm iterate carried across a
                     // large lambda jump can land Newton on a spurious branch

  auto area_at = [&](double lambda) {
    std::vector<complexd> targets = detail::lambda_targets(sched, lambda);
    std::vector<complexd> alpha = detail::solve_alpha_at_rho(rho, targets, nullptr);
    return detail::f0_area(rho, alpha);
  };

  double lo = 1e-9, hi = 0.25;
  double g_lo = area_at(lo) - t0;
  double g_hi = area_at(hi) - t0;
  if (g_lo < 0.0 || g_hi > 0.0)
    throw OutOfRegimeError(
        "invert_near_slit: no lambda in [0, 1/4] matches the given area");
  // t0 = rho * tau0_tilde(lambda) is monotone decreasing in lambda.
  for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
    double mid = 0.5 * (lo + hi);
    if (area_at(mid) - t0 > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double lambda = 0.5 * (lo + hi);
  std::vector<complexd> targets = detail::lambda_targets(sched, lambda);
  std::vector<complexd> alpha = detail::solve_alpha_at_rho(rho, targets, nullptr);

  PolynomialCurve curve(sched.r, coeffs_from_alpha(rho, alpha));
  if (!curve.certified_simple())
    throw BreakdownError("invert_near_slit: recovered curve has xi <= 0");
  return curve;
}

std::vector<TrajectoryPoint> deform(const DeformationSchedule& sched,
                                    const std::vector<double>& s_values,
                                    std::vector<TrajectoryPoint>* partial_out) {
  if (s_values.empty())
    throw ValidationError("deform: empty s list");
  for (size_t i = 0; i < s_values.size(); ++i) {
    if (!(s_values[i] > 0.0 && s_values[i] <= 1.0))
      throw ValidationError("deform: every s must lie in (0, 1]");
    if (i > 0 && !(s_values[i] < s_values[i - 1]))
      throw ValidationError("deform: s values must be strictly decreasing");
  }

  double rho = sched.r * sched.r;
  std::vector<TrajectoryPoint> out;
  out.reserve(s_values.size());
  std::vector<complexd> warm_alpha;
  PolynomialCurve warm_curve(1.0, {});
  bool have_warm = false;

  for (double s : s_values) {
    HarmonicMoments m = schedule_moments(sched, s);
    PolynomialCurve curve(1.0, {});
    try {
      if (sched.t2_zero) {
        m.t0 = s * rho;
        curve = invert_regular(m, have_warm ? &warm_curve : nullptr);
      } else {
        const std::vector<complexd>* w = have_warm ? &warm_alpha : nullptr;
        std::vector<complexd> alpha = detail::solve_alpha_at_rho(rho, m.t, w);
        double t0 = detail::f0_area(rho, alpha);
        if (!(t0 > 0.0)) throw BreakdownError("area became nonpositive");
        m.t0 = t0;
        PolynomialCurve inner(sched.r, coeffs_from_alpha(rho, alpha));
        curve = (std::abs(m.get(2)) < 0.45) ? invert_regular(m, &inner)
                                            : invert_near_slit(m, sched, &inner);
        warm_alpha = std::move(alpha);
      }
    } catch (const Error& e) {
      if (partial_out) *partial_out = out;
      std::ostringstream os;
      os << "deform: step failed at s = " << s << ": " << e.what();
      throw BreakdownError(os.str());
    }

    if (sched.t2_zero && curve.r() < 0.15 * sched.r) {
      if (partial_out) *partial_out = out;
      std::ostringstream os;
      os << "deform: curve collapses to a point at s = " << s << " (r shrank to "
         << curve.r() << ")";
      throw BreakdownError(os.str());
    }
    double xi = curve.simplicity_margin();
    if (!(xi > 0.0)) {
      if (partial_out) *partial_out = out;
      std::ostringstream os;
      os << "deform: simplicity margin lost at s = " << s << " (xi = " << xi << ")";
      throw BreakdownError(os.str());
    }
    warm_curve = curve;
    have_warm = true;
    out.push_back(TrajectoryPoint{s, curve, m, xi});
  }
  if (partial_out) *partial_out = out;
  return out;
}

}  // namespace ndf
