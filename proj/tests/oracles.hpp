// Test-side oracles, independent of the library paths they check.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ndeform/curve.hpp"
#include "ndeform/defs.hpp"
#include "ndeform/moments.hpp"

namespace oracles {

using ndf::complexd;

inline double urand(std::mt19937_64& gen, double lo, double hi) {
  double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline complexd disk_point(std::mt19937_64& gen, double radius) {
  for (;;) {
    double x = urand(gen, -1.0, 1.0), y = urand(gen, -1.0, 1.0);
    if (x * x + y * y <= 1.0) return complexd(radius * x, radius * y);
  }
}

/// Random curve with simplicity margin at least margin_frac * r.
inline ndf::PolynomialCurve random_certified_curve(std::mt19937_64& gen,
                                                   int n_max,
                                                   double alpha_max = 0.2,
                                                   double margin_frac = 0.05) {
  int n = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(n_max));
  double shrink = 1.0;
  for (;;) {
    double r = urand(gen, 0.6, 1.2);
    std::vector<complexd> a(static_cast<size_t>(n) + 1);
    a[0] = disk_point(gen, 0.05 * r);
    for (int j = 1; j <= n; ++j)
      a[j] = disk_point(gen, shrink * alpha_max) * std::pow(r, j) /
             static_cast<double>(j);
    ndf::PolynomialCurve c(r, a);
    if (c.simplicity_margin() >= margin_frac * r) return c;
    shrink *= 0.8;
  }
}

/// Adjusts a_0 so that the first exterior moment vanishes (Newton on the
/// 2x2 real system), leaving the other coefficients untouched.
inline ndf::PolynomialCurve project_t1_zero(const ndf::PolynomialCurve& c) {
  std::vector<complexd> a = c.coeffs();
  for (int it = 0; it < 40; ++it) {
    ndf::detail::MomentMap mm =
        ndf::detail::moment_map_with_derivatives(c.r(), a, 1);
    complexd t1 = mm.t[0];
    if (std::abs(t1) < 1e-14) break;
    complexd ga = mm.dt_da[0][0], gb = mm.dt_dabar[0][0];
    Eigen::Matrix2d J;
    complexd d_re = ga + gb, d_im = complexd(0, 1) * (ga - gb);
    J << d_re.real(), d_im.real(), d_re.imag(), d_im.imag();
    Eigen::Vector2d rhs(t1.real(), t1.imag());
    Eigen::Vector2d step = J.partialPivLu().solve(rhs);
    a[0] -= complexd(step(0), step(1));
  }
  return ndf::PolynomialCurve(c.r(), a);
}

/// Dense stacked real/imaginary solve of
///   J^{-1} phi - K conj(phi) = v  (K nonzero only in its first column),
/// the conjugate of which is the companion block equation.
inline std::vector<complexd> dense_block_solve(const std::vector<complexd>& k_col,
                                               const std::vector<complexd>& v) {
  int m = static_cast<int>(v.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  Eigen::VectorXd b(2 * m);
  for (int i = 0; i < m; ++i) {
    double jinv = 1.0 / static_cast<double>(i + 1);
    double kr = k_col[static_cast<size_t>(i)].real();
    double ki = k_col[static_cast<size_t>(i)].imag();
    // Re: x_i / (i+1) - (kr x_1 + ki y_1) = Re v_i
    A(2 * i, 2 * i) += jinv;
    A(2 * i, 0) -= kr;
    A(2 * i, 1) -= ki;
    b(2 * i) = v[static_cast<size_t>(i)].real();
    // Im: y_i / (i+1) - (ki x_1 - kr y_1) = Im v_i
    A(2 * i + 1, 2 * i + 1) += jinv;
    A(2 * i + 1, 0) -= ki;
    A(2 * i + 1, 1) += kr;
    b(2 * i + 1) = v[static_cast<size_t>(i)].imag();
  }
  Eigen::VectorXd x = A.fullPivLu().solve(b);
  std::vector<complexd> phi(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) phi[static_cast<size_t>(i)] = complexd(x(2 * i), x(2 * i + 1));
  return phi;
}

/// Semicircle-law integral of x^k by composite Simpson after x = 2 sigma
/// sin(theta); independent of the Gauss-Chebyshev route.
inline double semicircle_simpson(int k, double sigma, int panels = 4000) {
  auto g = [&](double th) {
    double x = 2.0 * sigma * std::sin(th);
    double c = std::cos(th);
    return std::pow(x, k) * c * c;
  };
  double a = -0.5 * ndf::kPi, b = 0.5 * ndf::kPi;
  double h = (b - a) / panels;
  double acc = g(a) + g(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
  return acc * h / 3.0 * (2.0 * sigma / ndf::kPi) / sigma;
}

/// Joint-density exponent via the ordered-pair loop, written independently
/// of the library's upper-triangle accumulation.
inline double energy_brute_force(const std::vector<complexd>& z, double t0,
                                 const std::vector<complexd>& p_coeffs) {
  double pair_term = 0.0;
  size_t n = z.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      pair_term += std::log(1.0 / std::abs(z[i] - z[j]));
    }
  double pot = 0.0;
  for (complexd zi : z) {
    complexd p = 0.0;
    for (size_t j = 0; j < p_coeffs.size(); ++j)
      p += p_coeffs[j] * std::pow(zi, static_cast<int>(j) + 2);
    pot += (std::norm(zi) - 2.0 * p.real()) / t0;
  }
  return pair_term + static_cast<double>(n) * pot;
}

/// Does the closed polyline through pts self-intersect? Independent
/// predicate based on explicit segment-segment parameter solves.
inline bool polyline_self_intersects(const std::vector<complexd>& pts) {
  size_t m = pts.size();
  auto cross = [](complexd a, complexd b) {
    return a.real() * b.imag() - a.imag() * b.real();
  };
  for (size_t i = 0; i < m; ++i) {
    complexd p = pts[i], r = pts[(i + 1) % m] - pts[i];
    for (size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;
      complexd q = pts[j], s = pts[(j + 1) % m] - pts[j];
      double denom = cross(r, s);
      if (std::abs(denom) < 1e-14) continue;
      double t = cross(q - p, s) / denom;
      double u = cross(q - p, r) / denom;
      if (t > 1e-12 && t < 1.0 - 1e-12 && u > 1e-12 && u < 1.0 - 1e-12)
        return true;
    }
  }
  return false;
}

/// 2 Re int_1^w hbar(1/z) h'(z) dz along the straight segment, by
/// composite 5-point Gauss-Legendre; used to cross-check the closed-form
/// energy. The segment from 1 to w must avoid z = 0.
inline double energy_line_integral(const ndf::PolynomialCurve& curve,
                                   complexd w, int segments = 400) {
  static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
  static const double gw[5] = {0.2369268850561891, 0.4786286704993665,
                               0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};
  ndf::PolynomialCurve hbar = curve.conjugated();
  complexd a = 1.0, b = w;
  complexd acc = 0.0;
  for (int s = 0; s < segments; ++s) {
    complexd z0 = a + (b - a) * (static_cast<double>(s) / segments);
    complexd z1 = a + (b - a) * (static_cast<double>(s + 1) / segments);
    complexd mid = 0.5 * (z0 + z1), half = 0.5 * (z1 - z0);
    for (int g = 0; g < 5; ++g) {
      complexd zeta = mid + gx[g] * half;
      acc += gw[g] * half * hbar.evaluate(1.0 / zeta) * curve.derivative(zeta);
    }
  }
  return 2.0 * acc.real();
}

}  // namespace oracles
