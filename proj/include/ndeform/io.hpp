#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ndeform/balayage.hpp"
#include "ndeform/coulomb.hpp"
#include "ndeform/curve.hpp"
#include "ndeform/defs.hpp"
#include "ndeform/inversion.hpp"
#include "ndeform/moments.hpp"
#include "ndeform/schedule.hpp"

namespace ndf {

// File formats are JSON records with a leading format_version field;
// complex numbers are always two-element real arrays [re, im]. Tabular
// outputs (trajectories, convergence traces, samples) are CSV with a
// header row and complex entries split into .re/.im columns.

struct SampleRunConfig {
  double t0 = 1.0;
  std::vector<complexd> t;  // t[j-1] = t_j, must have t_1 = 0
  double sigma_radius = 3.0;
  int n_order = 0;
  int sweeps = 0;
  double step = 0.1;
  std::vector<std::uint64_t> seeds;

  PotentialSpec potential() const;
  void validate() const;
};

PolynomialCurve read_curve(const std::string& path);
void write_curve(const std::string& path, const PolynomialCurve& curve);

HarmonicMoments read_moments(const std::string& path);
void write_moments(const std::string& path, const HarmonicMoments& m,
                   double quadrature_discrepancy = -1.0);

DeformationSchedule read_schedule(const std::string& path);
void write_schedule(const std::string& path, const DeformationSchedule& sched);

SampleRunConfig read_run_config(const std::string& path);

void write_trajectory_csv(const std::string& path,
                          const std::vector<TrajectoryPoint>& traj);
void write_convergence_csv(const std::string& path,
                           const std::vector<ConvergencePoint>& pts);
void write_samples_csv(const std::string& path,
                       const std::vector<EnsembleSample>& chains);

}  // namespace ndf
