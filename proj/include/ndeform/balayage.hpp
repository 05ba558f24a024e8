#pragma once

#include <cstdint>
#include <vector>

#include "ndeform/curve.hpp"
#include "ndeform/defs.hpp"
#include "ndeform/inversion.hpp"
#include "ndeform/schedule.hpp"

namespace ndf {

/// Polynomial test function, holomorphic on the closed domain. Degree is
/// capped at 12 so every contour quadrature in this project stays exact.
class TestFunction {
 public:
  static TestFunction monomial(int k);
  static TestFunction polynomial(std::vector<complexd> coeffs);

  complexd operator()(complexd z) const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }

 private:
  explicit TestFunction(std::vector<complexd> c);
  std::vector<complexd> c_;  // c_[k] multiplies z^k
};

/// (1/(2 pi i t0)) oint f(z) S(z) dz over the curve, evaluated on |w| = 1
/// as (1/(t0 m)) sum_k f(h(w_k)) hbar(1/w_k) h'(w_k) w_k. The integrand is
/// a Laurent polynomial, so the trapezoid sum is exact once the grid
/// resolves its modes.
complexd balayage_integral(const PolynomialCurve& curve, const TestFunction& f,
                           const ContourGrid& grid);

struct MonteCarloEstimate {
  complexd value;
  double std_error_re;
  double std_error_im;
  std::int64_t accepted;
};

/// (1/(pi t0)) integral of f over the interior, by rejection sampling on
/// the bounding box. Bit-exactly reproducible for a given seed regardless
/// of the number of worker threads (fixed substream assignment).
MonteCarloEstimate area_integral(const PolynomialCurve& curve,
                                 const TestFunction& f, std::int64_t n_samples,
                                 std::uint64_t seed);

/// Integral of f against the semicircle law of scale sigma (support
/// [-2 sigma, 2 sigma]), by Gauss-Chebyshev quadrature of the second kind;
/// exact for polynomials within the node budget. Returns the real part.
double semicircle_integral(const TestFunction& f, double sigma);

struct ConvergencePoint {
  double s;
  complexd boundary_value;   // oint f d(balayage measure) at this s
  double semicircle_value;   // integral of f against the scale-r semicircle
  double abs_error;
};

/// Runs the deformation and tracks |oint f dmu_hat(s) - semicircle(f, r)|.
/// Throws PrecisionError when the error fails to decay from the first to
/// the last step (beyond a 1e-12 noise floor).
std::vector<ConvergencePoint> deformation_convergence(
    const DeformationSchedule& sched, const TestFunction& f,
    const std::vector<double>& s_values);

/// Scaled equilibrium energy on the exterior chart,
///   E(w) = (|h(w)|^2 - |h(1)|^2 - 2 Re int_1^w hbar(1/z) h'(z) dz) / t0.
/// The integrand is a Laurent polynomial whose z^{-1} coefficient equals
/// t0 exactly, so the integral is elementary plus t0 log w; only log|w|
/// survives the real part, making the value path-independent. Vanishes on
/// |w| = 1 and is nonnegative for |w| >= 1 on admissible curves.
double equilibrium_energy(const PolynomialCurve& curve, complexd w);

struct EnergyCertificate {
  double min_value;
  complexd min_location;        // w of the grid minimum
  double min_value_off_unit;    // restricted to |w| > 1 + 0.01
  complexd min_location_off_unit;
  double w_max;
  bool pass;  // min_value >= -1e-8
};

/// Evaluates E on a log-radial grid 1 <= |w| <= w_max covering the
/// preimage of the confining disk (radius 3 max(2r, curve radius)).
EnergyCertificate equilibrium_certificate(const PolynomialCurve& curve,
                                          const ContourGrid& grid);

}  // namespace ndf
