#include "ndeform/coulomb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ndeform/errors.hpp"

namespace ndf {

namespace {

double u01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Box-Muller pair; both values are consumed by one complex proposal, so the
// stream layout is stable.
complexd gaussian_pair(std::mt19937_64& gen) {
  double u1 = u01(gen), u2 = u01(gen);
  while (u1 <= 0.0) u1 = u01(gen);
  double mag = std::sqrt(-2.0 * std::log(u1));
  return complexd(mag * std::cos(2.0 * kPi * u2), mag * std::sin(2.0 * kPi * u2));
}

}  // namespace

double PotentialSpec::V(complexd z) const {
  complexd p = 0.0;
  for (size_t i = p_coeffs.size(); i-- > 0;) p = (p + p_coeffs[i]) * z;
  p *= z;  // p(z) = sum_{j>=2} t_j z^j
  return (std::norm(z) - 2.0 * p.real()) / t0;
}

void PotentialSpec::validate() const {
  if (!(t0 > 0.0)) throw ValidationError("potential: t0 must be positive");
  if (!p_coeffs.empty() && !(std::abs(p_coeffs[0]) <= 0.5))
    throw ValidationError("potential: |t_2| <= 1/2 required");
  if (!(sigma_radius > 0.0))
    throw ValidationError("potential: sigma_radius must be positive");
}

double total_energy(const std::vector<complexd>& points,
                    const PotentialSpec& pot) {
  size_t n = points.size();
  double pair_term = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      double d2 = std::norm(points[i] - points[j]);
      if (d2 == 0.0) return std::numeric_limits<double>::infinity();
      pair_term -= std::log(d2);  // 2 log |.|^{-1}
    }
  double pot_term = 0.0;
  for (complexd z : points) pot_term += pot.V(z);
  return pair_term + static_cast<double>(n) * pot_term;
}

EnsembleSample metropolis_run(const PotentialSpec& pot, int n_order,
                              int sweeps, double step, std::uint64_t seed) {
  pot.validate();
  if (n_order < 2) throw ValidationError("metropolis_run: N >= 2 required");
  if (sweeps < 1) throw ValidationError("metropolis_run: sweeps >= 1 required");
  if (!(step > 0.0)) throw ValidationError("metropolis_run: step must be positive");

  std::mt19937_64 gen(seed);
  size_t n = static_cast<size_t>(n_order);
  double nd = static_cast<double>(n_order);

  // cold start, uniform in the disk of radius sqrt(t0)
  std::vector<complexd> z(n);
  double r_init = std::sqrt(pot.t0);
  for (size_t i = 0; i < n; ++i) {
    for (;;) {
      double x = 2.0 * u01(gen) - 1.0, y = 2.0 * u01(gen) - 1.0;
      if (x * x + y * y <= 1.0) {
        z[i] = complexd(r_init * x, r_init * y);
        break;
      }
    }
  }

  double energy = total_energy(z, pot);
  int burn_in = std::max(1, sweeps / 5);
  double cur_step = step;
  long accepted = 0, proposed = 0;
  long tune_accepted = 0, tune_proposed = 0;
  double max_drift = 0.0;

  EnsembleSample out;
  out.energy_series.reserve(static_cast<size_t>(sweeps));
  out.m2_series.reserve(static_cast<size_t>(sweeps));

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (size_t i = 0; i < n; ++i) {
      complexd zi = z[i];
      complexd zp = zi + cur_step * gaussian_pair(gen);
      ++proposed;
      ++tune_proposed;
      if (std::abs(zp) > pot.sigma_radius) continue;  // confinement

      double dh = nd * (pot.V(zp) - pot.V(zi));
      bool coincident = false;
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        double d_new = std::norm(zp - z[j]);
        if (d_new == 0.0) {
          coincident = true;
          break;
        }
        dh += std::log(std::norm(zi - z[j])) - std::log(d_new);
      }
      if (coincident) continue;

      if (dh <= 0.0 || u01(gen) < std::exp(-dh)) {
        z[i] = zp;
        energy += dh;
        ++accepted;
        ++tune_accepted;
      }
    }

    // step tuning, burn-in only
    if (sweep < burn_in && tune_proposed >= 200) {
      double rate = static_cast<double>(tune_accepted) / tune_proposed;
      if (rate < 0.30)
        cur_step *= 0.8;
      else if (rate > 0.50)
        cur_step *= 1.25;
      tune_accepted = tune_proposed = 0;
    }

    if ((sweep + 1) % 100 == 0) {
      double full = total_energy(z, pot);
      max_drift = std::max(max_drift,
                           std::abs(full - energy) / (1.0 + std::abs(full)));
      energy = full;
    }

    complexd m2 = 0.0;
    for (complexd zz : z) m2 += zz * zz;
    out.energy_series.push_back(energy);
    out.m2_series.push_back(m2 / nd);
  }

  out.points = std::move(z);
  out.n_order = n_order;
  out.energy = total_energy(out.points, pot);
  out.seed = seed;
  out.sweeps = sweeps;
  out.acceptance_rate = proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0;
  out.tuned_step = cur_step;
  out.max_energy_drift = max_drift;
  out.burn_in_sweeps = burn_in;
  return out;
}

EmpiricalReport empirical_moments(const EnsembleSample& sample,
                                  const PolynomialCurve& curve, int k_max) {
  if (sample.points.empty())
    throw ValidationError("empirical_moments: empty sample");
  size_t n = sample.points.size();
  double nd = static_cast<double>(n);

  EmpiricalReport rep;
  ContourGrid grid = ContourGrid::for_curve(curve);
  long inside = 0;
  for (complexd z : sample.points)
    if (contains_point(curve, z, grid)) ++inside;
  rep.inside_fraction = static_cast<double>(inside) / nd;

  for (int k = 0; k <= k_max; ++k) {
    TestFunction f = TestFunction::monomial(k);
    complexd sum = 0.0;
    std::vector<complexd> vals(n);
    for (size_t i = 0; i < n; ++i) {
      vals[i] = f(sample.points[i]);
      sum += vals[i];
    }
    complexd mean = sum / nd;
    // leave-one-out jackknife of the mean
    double var_re = 0.0, var_im = 0.0;
    for (size_t i = 0; i < n; ++i) {
      complexd loo = (sum - vals[i]) / (nd - 1.0);
      var_re += (loo.real() - mean.real()) * (loo.real() - mean.real());
      var_im += (loo.imag() - mean.imag()) * (loo.imag() - mean.imag());
    }
    double fac = (nd - 1.0) / nd;
    MomentComparison cmp;
    cmp.k = k;
    cmp.empirical = mean;
    cmp.jack_err_re = std::sqrt(fac * var_re);
    cmp.jack_err_im = std::sqrt(fac * var_im);
    cmp.predicted = balayage_integral(curve, f, grid);
    double err = std::hypot(std::max(cmp.jack_err_re, 1e-15),
                            std::max(cmp.jack_err_im, 1e-15));
    cmp.within_3_errors = std::abs(cmp.empirical - cmp.predicted) <= 3.0 * err;
    rep.moments.push_back(cmp);
  }
  return rep;
}

}  // namespace ndf
