#include "ndeform/moments.hpp"

#include <cmath>

#include "ndeform/errors.hpp"
#include "ndeform/laurent.hpp"

namespace ndf {

namespace {

LaurentPoly hbar_at_inverse(double r, const std::vector<complexd>& a) {
  // hbar(1/w) = r/w + conj(a_0) + conj(a_1) w + ... + conj(a_n) w^n
  LaurentPoly p = LaurentPoly::monomial(-1, r);
  for (int j = 0; j < static_cast<int>(a.size()); ++j)
    p.add_term(j, std::conj(a[static_cast<size_t>(j)]));
  return p;
}

LaurentPoly h_derivative_poly(double r, const std::vector<complexd>& a) {
  // h'(w) = r - sum_j j a_j w^{-(j+1)}
  LaurentPoly p = LaurentPoly::monomial(0, r);
  for (int j = 1; j < static_cast<int>(a.size()); ++j)
    p.add_term(-(j + 1), -static_cast<double>(j) * a[static_cast<size_t>(j)]);
  return p;
}

/// Coefficient of w^{-1} in P(w) h(w)^{-q}, exact.
complexd residue_vs_hpow(double r, const std::vector<complexd>& a,
                         const LaurentPoly& P, int q) {
  if (P.empty()) return 0.0;
  int depth = P.hi() - q + 1;
  if (depth < 0) return 0.0;
  // h = r w (1 + u), u = sum_l (a_l / r) w^{-(l+1)}
  LaurentPoly u;
  for (int l = 0; l < static_cast<int>(a.size()); ++l) {
    complexd al = a[static_cast<size_t>(l)];
    if (al != 0.0) u.add_term(-(l + 1), al / r);
  }
  LaurentPoly v = inv_one_plus_pow(u, q, depth);
  double rq = std::pow(r, -q);
  complexd acc = 0.0;
  for (int e = std::max(P.lo(), q - 1); e <= P.hi(); ++e)
    acc += P.coeff(e) * v.coeff(q - 1 - e);
  return acc * rq;
}

}  // namespace

namespace detail {

std::vector<complexd> moment_values(double r, const std::vector<complexd>& a,
                                    int jmax) {
  LaurentPoly hb = hbar_at_inverse(r, a);
  LaurentPoly hp = h_derivative_poly(r, a);
  LaurentPoly P = hb.times(hp);
  std::vector<complexd> t(static_cast<size_t>(jmax));
  for (int j = 1; j <= jmax; ++j)
    t[static_cast<size_t>(j - 1)] = residue_vs_hpow(r, a, P, j) / static_cast<double>(j);
  return t;
}

MomentMap moment_map_with_derivatives(double r, const std::vector<complexd>& a,
                                      int jmax) {
  int ncoef = static_cast<int>(a.size());
  LaurentPoly hb = hbar_at_inverse(r, a);
  LaurentPoly hp = h_derivative_poly(r, a);
  LaurentPoly P = hb.times(hp);

  MomentMap mm;
  mm.t.resize(static_cast<size_t>(jmax));
  mm.dt_dr.resize(static_cast<size_t>(jmax));
  mm.dt_da.assign(static_cast<size_t>(jmax),
                  std::vector<complexd>(static_cast<size_t>(ncoef), 0.0));
  mm.dt_dabar.assign(static_cast<size_t>(jmax),
                     std::vector<complexd>(static_cast<size_t>(ncoef), 0.0));

  for (int j = 1; j <= jmax; ++j) {
    size_t ji = static_cast<size_t>(j - 1);
    double inv_j = 1.0 / static_cast<double>(j);
    mm.t[ji] = residue_vs_hpow(r, a, P, j) * inv_j;

    // d/dr: h and hbar both carry an explicit r, and h^{-j} responds
    // through dh/dr = w.
    LaurentPoly dP_dr =
        LaurentPoly::monomial(-1, 1.0).times(hp).plus(hb);  // d(hb*hp)/dr
    complexd ddr = residue_vs_hpow(r, a, dP_dr, j) -
                   static_cast<double>(j) *
                       residue_vs_hpow(r, a, P.times(LaurentPoly::monomial(1, 1.0)),
                                       j + 1);
    mm.dt_dr[ji] = ddr * inv_j;

    for (int m = 0; m < ncoef; ++m) {
      // d/d conj(a_m): only hbar(1/w) depends on it, with derivative w^m.
      LaurentPoly wm_hp = LaurentPoly::monomial(m, 1.0).times(hp);
      mm.dt_dabar[ji][static_cast<size_t>(m)] =
          residue_vs_hpow(r, a, wm_hp, j) * inv_j;

      // d/d a_m: h' contributes -m w^{-(m+1)}; h^{-j} contributes via
      // dh/da_m = w^{-m}.
      complexd dda = 0.0;
      if (m >= 1) {
        LaurentPoly dhp = LaurentPoly::monomial(-(m + 1), -static_cast<double>(m));
        dda += residue_vs_hpow(r, a, hb.times(dhp), j);
      }
      dda -= static_cast<double>(j) *
             residue_vs_hpow(r, a, P.times(LaurentPoly::monomial(-m, 1.0)), j + 1);
      mm.dt_da[ji][static_cast<size_t>(m)] = dda * inv_j;
    }
  }
  return mm;
}

}  // namespace detail

HarmonicMoments forward_moments(const PolynomialCurve& curve) {
  if (!curve.certified_simple())
    throw UncertifiedCurveError("forward_moments: curve has xi <= 0");
  HarmonicMoments m;
  m.t0 = curve.area_t0();
  m.t = detail::moment_values(curve.r(), curve.coeffs(), curve.degree() + 1);
  return m;
}

HarmonicMoments forward_moments_quadrature(const PolynomialCurve& curve,
                                           const ContourGrid& grid) {
  if (!curve.certified_simple())
    throw UncertifiedCurveError("forward_moments_quadrature: curve has xi <= 0");

  int jmax = curve.degree() + 1;
  auto run = [&](int m_nodes) {
    std::vector<complexd> t(static_cast<size_t>(jmax) + 1, 0.0);  // [0] = t0
    PolynomialCurve hb = curve.conjugated();
    for (int k = 0; k < m_nodes; ++k) {
      double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m_nodes);
      complexd w(std::cos(th), std::sin(th));
      complexd base = hb.evaluate(1.0 / w) * curve.derivative(w) * w;
      complexd hw = curve.evaluate(w);
      complexd hpow = 1.0;
      for (int j = 0; j <= jmax; ++j) {
        t[static_cast<size_t>(j)] += base * hpow;
        hpow /= hw;
      }
    }
    for (int j = 0; j <= jmax; ++j) {
      t[static_cast<size_t>(j)] /= static_cast<double>(m_nodes);
      if (j >= 1) t[static_cast<size_t>(j)] /= static_cast<double>(j);
    }
    return t;
  };

  std::vector<complexd> full = run(grid.size());
  std::vector<complexd> half = run(grid.size() / 2);
  double scale = std::max(1.0, std::abs(full[0]));
  for (int j = 0; j <= jmax; ++j) {
    if (std::abs(full[static_cast<size_t>(j)] - half[static_cast<size_t>(j)]) >
        grid.tol() * scale)
      throw PrecisionError(
          "forward_moments_quadrature: grid refinement check failed; "
          "increase the node count");
  }

  HarmonicMoments m;
  m.t0 = full[0].real();
  m.t.assign(full.begin() + 1, full.end());
  return m;
}

HarmonicMoments leading_order_moments(const PolynomialCurve& curve) {
  double r = curve.r();
  double rho = r * r;
  int n = curve.degree();
  auto alpha = [&](int j) -> complexd {
    if (j < 0 || j > n) return 0.0;
    return curve.coeff(j) / std::pow(r, j);
  };
  HarmonicMoments m;
  m.t0 = rho * (1.0 - std::norm(alpha(1)));
  m.t.resize(static_cast<size_t>(n + 1));
  for (int j = 1; j <= n + 1; ++j) {
    double inv_j = 1.0 / static_cast<double>(j);
    m.t[static_cast<size_t>(j - 1)] = inv_j * std::conj(alpha(j - 1)) -
                                      std::conj(alpha(j)) * alpha(0) -
                                      (1.0 + inv_j) * alpha(1) *
                                          std::conj(alpha(j + 1)) * rho;
  }
  return m;
}

}  // namespace ndf
