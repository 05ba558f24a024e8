#include "ndeform/balayage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "ndeform/errors.hpp"

namespace ndf {

namespace {

constexpr int kMaxTestDegree = 12;

double u01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

TestFunction::TestFunction(std::vector<complexd> c) : c_(std::move(c)) {
  if (c_.empty()) c_.assign(1, 0.0);
  if (degree() > kMaxTestDegree)
    throw ValidationError("test function: degree must be <= 12");
}

TestFunction TestFunction::monomial(int k) {
  if (k < 0 || k > kMaxTestDegree)
    throw ValidationError("test function: monomial degree must be in [0, 12]");
  std::vector<complexd> c(static_cast<size_t>(k) + 1, 0.0);
  c.back() = 1.0;
  return TestFunction(std::move(c));
}

TestFunction TestFunction::polynomial(std::vector<complexd> coeffs) {
  return TestFunction(std::move(coeffs));
}

complexd TestFunction::operator()(complexd z) const {
  complexd acc = 0.0;
  for (size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
  return acc;
}

complexd balayage_integral(const PolynomialCurve& curve, const TestFunction& f,
                           const ContourGrid& grid) {
  if (!curve.certified_simple())
    throw UncertifiedCurveError("balayage_integral: curve has xi <= 0");
  double t0 = curve.area_t0();
  if (!(t0 > 0.0))
    throw ValidationError("balayage_integral: t0 must be positive");

  PolynomialCurve hbar = curve.conjugated();
  complexd acc = 0.0;
  for (complexd w : grid.nodes())
    acc += f(curve.evaluate(w)) * hbar.evaluate(1.0 / w) *
           curve.derivative(w) * w;
  return acc / (t0 * static_cast<double>(grid.size()));
}

MonteCarloEstimate area_integral(const PolynomialCurve& curve,
                                 const TestFunction& f, std::int64_t n_samples,
                                 std::uint64_t seed) {
  if (!curve.certified_simple())
    throw UncertifiedCurveError("area_integral: curve has xi <= 0");
  if (n_samples <= 0) throw ValidationError("area_integral: n_samples must be > 0");

  ContourGrid grid = ContourGrid::for_curve(curve);
  CurvePolyline poly(curve, grid);
  double x0 = poly.min_re(), x1 = poly.max_re();
  double y0 = poly.min_im(), y1 = poly.max_im();

  // Fixed substream per block: the estimate does not depend on how blocks
  // are distributed over threads.
  constexpr std::int64_t kBlock = 1 << 16;
  std::int64_t n_blocks = (n_samples + kBlock - 1) / kBlock;
  struct BlockStat {
    complexd sum{0.0};
    double sum_re2 = 0.0, sum_im2 = 0.0;
    std::int64_t accepted = 0;
  };
  std::vector<BlockStat> stats(static_cast<size_t>(n_blocks));

  auto run_block = [&](std::int64_t b) {
    std::mt19937_64 gen(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(b + 1));
    std::int64_t count = std::min(kBlock, n_samples - b * kBlock);
    BlockStat st;
    for (std::int64_t i = 0; i < count; ++i) {
      double x = x0 + (x1 - x0) * u01(gen);
      double y = y0 + (y1 - y0) * u01(gen);
      complexd z(x, y);
      if (!poly.inside_fast(z)) continue;
      complexd v = f(z);
      st.sum += v;
      st.sum_re2 += v.real() * v.real();
      st.sum_im2 += v.imag() * v.imag();
      ++st.accepted;
    }
    stats[static_cast<size_t>(b)] = st;
  };

  unsigned hw = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  if (n_blocks > 1 && hw > 1) {
    std::vector<std::thread> pool;
    std::atomic<std::int64_t> next{0};
    for (unsigned t = 0; t < hw; ++t)
      pool.emplace_back([&] {
        for (std::int64_t b; (b = next.fetch_add(1)) < n_blocks;) run_block(b);
      });
    for (auto& th : pool) th.join();
  } else {
    for (std::int64_t b = 0; b < n_blocks; ++b) run_block(b);
  }

  complexd sum = 0.0;
  double sum_re2 = 0.0, sum_im2 = 0.0;
  std::int64_t acc = 0;
  for (const BlockStat& st : stats) {
    sum += st.sum;
    sum_re2 += st.sum_re2;
    sum_im2 += st.sum_im2;
    acc += st.accepted;
  }
  if (acc == 0)
    throw PrecisionError("area_integral: no sample accepted");

  double inv = 1.0 / static_cast<double>(acc);
  complexd mean = sum * inv;
  double var_re = std::max(0.0, sum_re2 * inv - mean.real() * mean.real());
  double var_im = std::max(0.0, sum_im2 * inv - mean.imag() * mean.imag());
  MonteCarloEstimate est;
  est.value = mean;
  est.std_error_re = std::sqrt(var_re * inv);
  est.std_error_im = std::sqrt(var_im * inv);
  est.accepted = acc;
  return est;
}

double semicircle_integral(const TestFunction& f, double sigma) {
  if (!(sigma > 0.0)) throw ValidationError("semicircle_integral: sigma must be > 0");
  // int f dmu_W = (2/pi) int_{-1}^{1} f(2 sigma u) sqrt(1-u^2) du
  constexpr int kNodes = 16;  // exact for degree <= 31
  double acc = 0.0;
  for (int k = 1; k <= kNodes; ++k) {
    double th = kPi * static_cast<double>(k) / (kNodes + 1.0);
    double u = std::cos(th);
    double wgt = (kPi / (kNodes + 1.0)) * std::sin(th) * std::sin(th);
    acc += wgt * f(complexd(2.0 * sigma * u, 0.0)).real();
  }
  return acc * 2.0 / kPi;
}

std::vector<ConvergencePoint> deformation_convergence(
    const DeformationSchedule& sched, const TestFunction& f,
    const std::vector<double>& s_values) {
  std::vector<TrajectoryPoint> traj = deform(sched, s_values);
  double target = semicircle_integral(f, sched.r);
  std::vector<ConvergencePoint> out;
  out.reserve(traj.size());
  for (const TrajectoryPoint& p : traj) {
    ContourGrid grid = ContourGrid::for_curve(p.curve);
    complexd v = balayage_integral(p.curve, f, grid);
    out.push_back({p.s, v, target, std::abs(v - target)});
  }
  if (out.size() >= 2) {
    double first = out.front().abs_error;
    double last = out.back().abs_error;
    if (last > std::max(0.5 * first, 1e-12))
      throw PrecisionError(
          "deformation_convergence: boundary integrals are not approaching "
          "the semicircle value");
  }
  return out;
}

double equilibrium_energy(const PolynomialCurve& curve, complexd w) {
  if (w == 0.0) throw ValidationError("equilibrium_energy: w = 0");
  double t0 = curve.area_t0();
  if (!(t0 > 0.0))
    throw ValidationError("equilibrium_energy: t0 must be positive");

  // Q(z) = hbar(1/z) h'(z) = sum c_k z^k, k = -(n+2) .. n; c_{-1} = t0.
  int n = std::max(curve.degree(), 0);
  int klo = -(n + 2), khi = n;
  std::vector<complexd> c(static_cast<size_t>(khi - klo + 1), 0.0);
  auto cref = [&](int k) -> complexd& { return c[static_cast<size_t>(k - klo)]; };
  // hbar(1/z): r z^{-1} + conj(a_j) z^j ; h'(z): r - sum_l l a_l z^{-(l+1)}
  cref(-1) += curve.r() * curve.r();
  for (int l = 1; l <= n; ++l)
    cref(-l - 2) += curve.r() * (-static_cast<double>(l) * curve.coeff(l));
  for (int j = 0; j <= n; ++j) {
    cref(j) += std::conj(curve.coeff(j)) * curve.r();
    for (int l = 1; l <= n; ++l)
      cref(j - l - 1) +=
          std::conj(curve.coeff(j)) * (-static_cast<double>(l) * curve.coeff(l));
  }

  // 2 Re int_1^w Q = 2 Re sum_{k != -1} c_k (w^{k+1} - 1)/(k+1) + 2 t0 log|w|
  complexd elementary = 0.0;
  for (int k = klo; k <= khi; ++k) {
    if (k == -1) continue;
    elementary += cref(k) * (std::pow(w, k + 1) - 1.0) / static_cast<double>(k + 1);
  }
  double integral2re = 2.0 * elementary.real() + 2.0 * cref(-1).real() * std::log(std::abs(w));

  double h_w2 = std::norm(curve.evaluate(w));
  double h_12 = std::norm(curve.evaluate(1.0));
  return (h_w2 - h_12 - integral2re) / t0;
}

EnergyCertificate equilibrium_certificate(const PolynomialCurve& curve,
                                          const ContourGrid& grid) {
  if (!curve.certified_simple())
    throw UncertifiedCurveError("equilibrium_certificate: curve has xi <= 0");
  double coeff_sum = 0.0;
  for (int j = 0; j <= curve.degree(); ++j) coeff_sum += std::abs(curve.coeff(j));
  double curve_radius = curve.r() + coeff_sum;
  double sigma_radius = 3.0 * std::max(2.0 * curve.r(), curve_radius);
  double w_max = (sigma_radius + coeff_sum) / curve.r() + 0.5;

  EnergyCertificate cert;
  cert.w_max = w_max;
  cert.min_value = std::numeric_limits<double>::infinity();
  cert.min_value_off_unit = std::numeric_limits<double>::infinity();

  constexpr int kRadii = 64;
  int n_angles = std::max(256, grid.size());
  for (int ir = 0; ir < kRadii; ++ir) {
    double radius =
        std::exp(std::log(w_max) * static_cast<double>(ir) / (kRadii - 1.0));
    for (int ia = 0; ia < n_angles; ++ia) {
      double th = 2.0 * kPi * static_cast<double>(ia) / n_angles;
      complexd w = std::polar(radius, th);
      double e = equilibrium_energy(curve, w);
      if (e < cert.min_value) {
        cert.min_value = e;
        cert.min_location = w;
      }
      if (radius > 1.01 && e < cert.min_value_off_unit) {
        cert.min_value_off_unit = e;
        cert.min_location_off_unit = w;
      }
    }
  }
  cert.pass = cert.min_value >= -1e-8;
  return cert;
}

}  // namespace ndf
