#pragma once

#include <cstdint>
#include <vector>

#include "ndeform/balayage.hpp"
#include "ndeform/curve.hpp"
#include "ndeform/defs.hpp"

namespace ndf {

/// Confined polynomial potential V(z) = (|z|^2 - p(z) - conj(p(z))) / t0
/// with p(z) = sum_{j>=2} t_j z^j, restricted to the disk |z| <= sigma_radius.
struct PotentialSpec {
  double t0 = 1.0;
  std::vector<complexd> p_coeffs;  // p_coeffs[j-2] = t_j, j = 2..n+1
  double sigma_radius = 3.0;

  double V(complexd z) const;
  void validate() const;  // throws ValidationError
};

/// State of one Metropolis chain over the N-eigenvalue joint density.
struct EnsembleSample {
  std::vector<complexd> points;
  int n_order = 0;        // matrix order N
  double energy = 0.0;    // 2 sum_{i<j} log|z_i - z_j|^{-1} + N sum_i V(z_i)
  std::uint64_t seed = 0;
  int sweeps = 0;
  // chain metadata
  double acceptance_rate = 0.0;
  double tuned_step = 0.0;
  double max_energy_drift = 0.0;         // incremental vs recomputed, worst case
  int burn_in_sweeps = 0;
  std::vector<double> energy_series;     // per sweep
  std::vector<complexd> m2_series;       // per sweep, (1/N) sum z_i^2
};

/// Exponent of the joint eigenvalue density, evaluated directly.
/// Coincident points give +infinity.
double total_energy(const std::vector<complexd>& points,
                    const PotentialSpec& pot);

/// Single-site Metropolis with Gaussian proposals; proposals leaving the
/// confining disk are rejected. The step is auto-tuned to a 30-50 percent
/// acceptance rate during burn-in (first fifth of the sweeps) and frozen
/// afterwards. Deterministic for a fixed seed. The incremental energy is
/// checked against a full recomputation every 100 sweeps.
EnsembleSample metropolis_run(const PotentialSpec& pot, int n_order,
                              int sweeps, double step, std::uint64_t seed);

struct MomentComparison {
  int k;
  complexd empirical;
  double jack_err_re;
  double jack_err_im;
  complexd predicted;  // contour (balayage) prediction
  bool within_3_errors;
};

struct EmpiricalReport {
  double inside_fraction;
  std::vector<MomentComparison> moments;
};

/// Empirical moments (1/N) sum z_i^k with leave-one-out jackknife errors,
/// the inside-domain fraction, and contour predictions for comparison.
EmpiricalReport empirical_moments(const EnsembleSample& sample,
                                  const PolynomialCurve& curve, int k_max);

}  // namespace ndf
