#include "ndeform/schwarz.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ndeform/errors.hpp"

namespace ndf {

namespace {

constexpr double kCollarTol = 1e-6;

/// All roots of c_0 + c_1 w + ... + c_d w^d via the companion matrix,
/// with one Newton polish per root.
std::vector<complexd> poly_roots(std::vector<complexd> c) {
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  int d = static_cast<int>(c.size()) - 1;
  if (d < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<complexd> roots(static_cast<size_t>(d));
  auto eval = [&](complexd w, complexd& p, complexd& dp) {
    p = 0.0;
    dp = 0.0;
    for (int i = d; i >= 0; --i) {
      dp = dp * w + p;
      p = p * w + c[static_cast<size_t>(i)];
    }
  };
  for (int i = 0; i < d; ++i) {
    complexd w = es.eigenvalues()(i);
    for (int it = 0; it < 2; ++it) {
      complexd p, dp;
      eval(w, p, dp);
      if (std::abs(dp) > 0.0) w -= p / dp;
    }
    roots[static_cast<size_t>(i)] = w;
  }
  return roots;
}

std::vector<complexd> preimage_polynomial(const PolynomialCurve& curve,
                                          complexd z) {
  // r w^{n+1} + (a_0 - z) w^n + a_1 w^{n-1} + ... + a_n, ascending order.
  int n = std::max(curve.degree(), 0);
  std::vector<complexd> c(static_cast<size_t>(n + 2), 0.0);
  c[static_cast<size_t>(n + 1)] = curve.r();
  c[static_cast<size_t>(n)] = curve.coeff(0) - z;
  for (int j = 1; j <= n; ++j) c[static_cast<size_t>(n - j)] = curve.coeff(j);
  return c;
}

}  // namespace

complexd riemann_inverse(const PolynomialCurve& curve, complexd z) {
  if (!curve.certified_simple())
    throw UncertifiedCurveError("riemann_inverse: curve has xi <= 0");
  std::vector<complexd> roots = poly_roots(preimage_polynomial(curve, z));
  double resid_tol = 1e-12 * (1.0 + std::abs(z));
  complexd best = 0.0;
  int admissible = 0;
  for (complexd w : roots) {
    if (std::abs(w) < 1.0 - kCollarTol) continue;
    if (std::abs(curve.evaluate(w) - z) > resid_tol) continue;
    ++admissible;
    if (admissible == 1 || std::abs(w) > std::abs(best)) best = w;
  }
  if (admissible == 0)
    throw OutsideDomainError(
        "riemann_inverse: z lies beyond the analyticity collar of the exterior map");
  if (admissible > 1)
    throw BranchAmbiguityError(
        "riemann_inverse: several preimages in the collar (near a critical point)");
  return best;
}

complexd schwarz_function(const PolynomialCurve& curve, complexd z) {
  complexd w = riemann_inverse(curve, z);
  return curve.conjugated().evaluate(1.0 / w);
}

complexd two_cut_sqrt(complexd z, complexd b_plus, complexd b_minus) {
  complexd c = 0.5 * (b_plus + b_minus);
  complexd d = 0.5 * (b_plus - b_minus);
  if (d == 0.0) return z - c;
  complexd u = d / (z - c);
  // sqrt(1-u) sqrt(1+u) has its only cut where u is real with |u| >= 1,
  // i.e. exactly on the segment [b_minus, b_plus].
  return (z - c) * std::sqrt(1.0 - u) * std::sqrt(1.0 + u);
}

SchwarzDecomposition near_slit_decomposition(const PolynomialCurve& curve) {
  complexd a1 = curve.coeff(1);
  if (a1 == 0.0)
    throw ValidationError(
        "near_slit_decomposition: a_1 = 0, no linear + square-root form");
  double r = curve.r();
  SchwarzDecomposition dec;
  dec.E = (r * r + std::norm(a1)) / (2.0 * r * a1);
  dec.Lambda = (std::norm(a1) - r * r) / (2.0 * r * a1);
  complexd b = 2.0 * std::sqrt(r * a1);
  dec.branch_cut = {b, -b};

  ContourGrid grid = ContourGrid::for_curve(curve);
  PolynomialCurve hbar = curve.conjugated();
  double worst = 0.0;
  for (complexd w : grid.nodes()) {
    complexd z = curve.evaluate(w);
    complexd s_exact = hbar.evaluate(1.0 / w);  // S on the contour
    complexd s_model = dec.E * z + dec.Lambda * two_cut_sqrt(z, b, -b);
    worst = std::max(worst, std::abs(s_exact - s_model));
  }
  dec.remainder_bound = worst;
  return dec;
}

BranchPointReport branch_point_check(const PolynomialCurve& curve) {
  if (!curve.certified_simple())
    throw UncertifiedCurveError("branch_point_check: curve has xi <= 0");
  BranchPointReport rep;

  // h'(w) = 0  <=>  r w^{n+1} - sum_{j>=1} j a_j w^{n-j} = 0, w != 0.
  int n = std::max(curve.degree(), 0);
  std::vector<complexd> c(static_cast<size_t>(n + 2), 0.0);
  c[static_cast<size_t>(n + 1)] = curve.r();
  for (int j = 1; j <= n; ++j)
    c[static_cast<size_t>(n - j)] = -static_cast<double>(j) * curve.coeff(j);
  for (complexd w : poly_roots(c)) {
    if (std::abs(w) < 1e-12) continue;  // artifact of clearing denominators
    if (std::abs(curve.derivative(w)) > 1e-8 * curve.r()) continue;
    rep.critical_points.push_back(w);
    rep.critical_radius = std::max(rep.critical_radius, std::abs(w));
  }

  ContourGrid grid = ContourGrid::for_curve(curve);
  for (complexd wc : rep.critical_points) {
    if (std::abs(wc) >= 1.0) continue;
    complexd zc = curve.evaluate(wc);
    rep.branch_points.push_back(zc);
    bool inside = false;
    try {
      inside = contains_point(curve, zc, grid);
    } catch (const BoundaryAmbiguousError&) {
      rep.none_on_curve = false;
    }
    rep.inside_flags.push_back(inside);
    if (inside) ++rep.inside_count;
  }
  rep.even_inside = (rep.inside_count % 2 == 0);
  rep.circle_exception = rep.branch_points.empty();
  return rep;
}

}  // namespace ndf
