#include "ndeform/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ndeform/errors.hpp"

namespace ndf {

PolynomialCurve::PolynomialCurve(double r, std::vector<complexd> a)
    : r_(r), a_(std::move(a)) {
  if (!(r > 0.0)) throw ValidationError("curve: leading radius r must be > 0");
}

complexd PolynomialCurve::evaluate(complexd w) const {
  if (w == 0.0) throw ValidationError("curve: h(w) undefined at w = 0");
  complexd acc = 0.0;
  // Horner in 1/w over a_n ... a_0.
  for (int j = degree(); j >= 0; --j) acc = acc / w + a_[static_cast<size_t>(j)];
  return r_ * w + acc;
}

complexd PolynomialCurve::derivative(complexd w) const {
  if (w == 0.0) throw ValidationError("curve: h'(w) undefined at w = 0");
  complexd acc = 0.0;
  for (int j = degree(); j >= 1; --j)
    acc = acc / w + static_cast<double>(j) * a_[static_cast<size_t>(j)];
  return r_ - acc / (w * w);
}

PolynomialCurve PolynomialCurve::conjugated() const {
  std::vector<complexd> ac(a_.size());
  for (size_t j = 0; j < a_.size(); ++j) ac[j] = std::conj(a_[j]);
  return PolynomialCurve(r_, std::move(ac));
}

double PolynomialCurve::simplicity_margin() const {
  double s = 0.0;
  for (int j = 1; j <= degree(); ++j)
    s += static_cast<double>(j) * std::abs(a_[static_cast<size_t>(j)]);
  return r_ - s;
}

double PolynomialCurve::area_t0() const {
  double s = 0.0;
  for (int j = 1; j <= degree(); ++j)
    s += static_cast<double>(j) * std::norm(a_[static_cast<size_t>(j)]);
  return r_ * r_ - s;
}

ContourGrid::ContourGrid(int m, double tol) : m_(m), tol_(tol) {
  if (m < 4 || (m & (m - 1)) != 0)
    throw ValidationError("contour grid: node count must be a power of two >= 4");
  nodes_.resize(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
    nodes_[static_cast<size_t>(k)] = complexd(std::cos(th), std::sin(th));
  }
}

ContourGrid ContourGrid::for_curve(const PolynomialCurve& curve,
                                   int min_nodes) {
  int need = std::max(4 * (curve.degree() + 2), min_nodes);
  return ContourGrid(next_pow2(std::max(need, 4)));
}

ContourGrid ContourGrid::for_moments(const PolynomialCurve& curve) {
  // 16(n+2) under-resolves moderately eccentric curves (the integrand has
  // singularities at the zeros of h inside the disk); 256 nodes keep the
  // trapezoid error below 1e-12 for every certified curve with
  // |alpha_j| <= 0.2.
  return ContourGrid(next_pow2(std::max(16 * (curve.degree() + 2), 256)));
}

CurvePolyline::CurvePolyline(const PolynomialCurve& curve,
                             const ContourGrid& grid) {
  pts_.reserve(grid.nodes().size());
  min_re_ = min_im_ = std::numeric_limits<double>::infinity();
  max_re_ = max_im_ = -std::numeric_limits<double>::infinity();
  for (complexd w : grid.nodes()) {
    complexd z = curve.evaluate(w);
    pts_.push_back(z);
    min_re_ = std::min(min_re_, z.real());
    max_re_ = std::max(max_re_, z.real());
    min_im_ = std::min(min_im_, z.imag());
    max_im_ = std::max(max_im_, z.imag());
  }
}

int CurvePolyline::winding_number(complexd z) const {
  // Signed crossing count against the horizontal ray to +infinity.
  int wind = 0;
  size_t m = pts_.size();
  for (size_t k = 0; k < m; ++k) {
    complexd p = pts_[k];
    complexd q = pts_[(k + 1) % m];
    bool p_below = p.imag() <= z.imag();
    bool q_below = q.imag() <= z.imag();
    if (p_below == q_below) continue;
    // x coordinate where the segment crosses the horizontal through z
    double t = (z.imag() - p.imag()) / (q.imag() - p.imag());
    double xc = p.real() + t * (q.real() - p.real());
    if (xc > z.real()) wind += q_below ? -1 : 1;
  }
  return wind;
}

double CurvePolyline::squared_distance(complexd z) const {
  double best = std::numeric_limits<double>::infinity();
  size_t m = pts_.size();
  for (size_t k = 0; k < m; ++k) {
    complexd p = pts_[k];
    complexd d = pts_[(k + 1) % m] - p;
    double len2 = std::norm(d);
    complexd v = z - p;
    double t = len2 > 0.0
                   ? std::clamp((v.real() * d.real() + v.imag() * d.imag()) / len2,
                                0.0, 1.0)
                   : 0.0;
    best = std::min(best, std::norm(v - t * d));
  }
  return best;
}

namespace {

int orientation(complexd a, complexd b, complexd c) {
  double v = (b.real() - a.real()) * (c.imag() - a.imag()) -
             (b.imag() - a.imag()) * (c.real() - a.real());
  double scale = std::abs(b - a) * (std::abs(c - a) + std::abs(c - b));
  if (std::abs(v) <= 1e-15 * scale) return 0;
  return v > 0 ? 1 : -1;
}

bool segments_cross(complexd a, complexd b, complexd c, complexd d) {
  int o1 = orientation(a, b, c);
  int o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a);
  int o4 = orientation(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

bool injectivity_check(const PolynomialCurve& curve, const ContourGrid& grid) {
  const auto& w = grid.nodes();
  size_t m = w.size();
  std::vector<complexd> h(m);
  for (size_t i = 0; i < m; ++i) h[i] = curve.evaluate(w[i]);

  double xi = std::max(curve.simplicity_margin(), 0.0);
  double tol = 1e-10 * curve.r();
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (std::abs(h[i] - h[j]) < xi * std::abs(w[i] - w[j]) - tol) return false;

  // Pairwise segment crossings; adjacent segments share an endpoint and are
  // skipped.
  for (size_t i = 0; i < m; ++i) {
    complexd a = h[i], b = h[(i + 1) % m];
    for (size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;
      if (segments_cross(a, b, h[j], h[(j + 1) % m])) return false;
    }
  }
  return true;
}

bool contains_point(const PolynomialCurve& curve, complexd z,
                    const ContourGrid& grid) {
  if (!curve.certified_simple())
    throw UncertifiedCurveError("contains_point: curve has xi <= 0");
  CurvePolyline poly(curve, grid);
  double tol = 1e-12 * curve.r();
  if (poly.squared_distance(z) <= tol * tol)
    throw BoundaryAmbiguousError("contains_point: z within tolerance of the boundary");
  return poly.winding_number(z) == 1;
}

double slit_limit_distance(const PolynomialCurve& curve,
                           const ContourGrid& grid) {
  double two_r = 2.0 * curve.r();
  double worst = 0.0;
  for (complexd w : grid.nodes()) {
    complexd z = curve.evaluate(w);
    double dx = std::max(0.0, std::abs(z.real()) - two_r);
    double d = std::hypot(dx, z.imag());
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace ndf
