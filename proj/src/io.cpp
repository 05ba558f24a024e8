#include "ndeform/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "ndeform/errors.hpp"

namespace ndf {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
  if (j.value("format_version", 0) != kFormatVersion)
    throw ValidationError("unsupported format_version in " + path);
  return j;
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

json complex_to_json(complexd z) { return json::array({z.real(), z.imag()}); }

complexd complex_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(std::string("expected [re, im] pair for ") + what);
  return complexd(j[0].get<double>(), j[1].get<double>());
}

std::vector<complexd> complex_list(const json& j, const char* what) {
  if (!j.is_array())
    throw ValidationError(std::string("expected an array for ") + what);
  std::vector<complexd> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e, what));
  return out;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << std::setprecision(17);
  return out;
}

}  // namespace

PotentialSpec SampleRunConfig::potential() const {
  PotentialSpec pot;
  pot.t0 = t0;
  if (t.size() > 1) pot.p_coeffs.assign(t.begin() + 1, t.end());
  pot.sigma_radius = sigma_radius;
  return pot;
}

void SampleRunConfig::validate() const {
  if (!(t0 > 0.0)) throw ValidationError("run config: t0 must be positive");
  if (!t.empty() && std::abs(t[0]) != 0.0)
    throw ValidationError("run config: t_1 must be 0");
  if (n_order < 2) throw ValidationError("run config: N >= 2 required");
  if (sweeps < 1) throw ValidationError("run config: sweeps >= 1 required");
  if (!(step > 0.0)) throw ValidationError("run config: step must be positive");
  if (seeds.empty()) throw ValidationError("run config: at least one seed required");
  potential().validate();
}

PolynomialCurve read_curve(const std::string& path) {
  json j = load_json(path);
  if (!j.contains("r")) throw ValidationError("curve file: missing r");
  double r = j["r"].get<double>();
  std::vector<complexd> a;
  if (j.contains("a")) a = complex_list(j["a"], "a");
  if (!(r > 0.0)) throw ValidationError("curve file: r must be positive");
  return PolynomialCurve(r, std::move(a));
}

void write_curve(const std::string& path, const PolynomialCurve& curve) {
  json j;
  j["format_version"] = kFormatVersion;
  j["r"] = curve.r();
  json a = json::array();
  for (complexd v : curve.coeffs()) a.push_back(complex_to_json(v));
  j["a"] = a;
  j["xi"] = curve.simplicity_margin();
  j["t0"] = curve.area_t0();
  save_json(path, j);
}

HarmonicMoments read_moments(const std::string& path) {
  json j = load_json(path);
  HarmonicMoments m;
  if (j.contains("t0") && !j["t0"].is_null()) {
    m.t0 = j["t0"].get<double>();
    if (!(*m.t0 > 0.0)) throw ValidationError("moments file: t0 must be positive");
  }
  if (j.contains("t")) m.t = complex_list(j["t"], "t");
  return m;
}

void write_moments(const std::string& path, const HarmonicMoments& m,
                   double quadrature_discrepancy) {
  json j;
  j["format_version"] = kFormatVersion;
  if (m.t0.has_value())
    j["t0"] = *m.t0;
  else
    j["t0"] = nullptr;
  json t = json::array();
  for (complexd v : m.t) t.push_back(complex_to_json(v));
  j["t"] = t;
  if (quadrature_discrepancy >= 0.0)
    j["quadrature_discrepancy"] = quadrature_discrepancy;
  save_json(path, j);
}

DeformationSchedule read_schedule(const std::string& path) {
  json j = load_json(path);
  DeformationSchedule s;
  if (!j.contains("r") || !j.contains("tau"))
    throw ValidationError("schedule file: r and tau are required");
  s.r = j["r"].get<double>();
  s.phi = j.value("phi", 0.0);
  s.tau = complex_list(j["tau"], "tau");
  if (j.contains("delta")) {
    if (!j["delta"].is_array())
      throw ValidationError("schedule file: delta must be an array");
    for (const auto& d : j["delta"]) s.delta.push_back(d.get<double>());
  }
  s.t2_zero = j.value("t2_mode", std::string("scheduled")) == "zero";
  if (!(s.r > 0.0)) throw ValidationError("schedule file: r must be positive");
  if (s.degree() < 1)
    throw ValidationError("schedule file: tau must cover tau_1 and tau_2");
  if (std::abs(s.tau[0]) != 0.0)
    throw ValidationError("schedule file: tau_1 must be 0");
  if (!s.t2_zero && std::abs(std::abs(s.tau[1]) - 1.0) >= 1e-14)
    throw ValidationError("schedule file: |tau_2| must equal 1");
  for (double d : s.delta)
    if (!(d >= 1.0)) throw ValidationError("schedule file: Delta_j >= 1 required");
  return s;
}

void write_schedule(const std::string& path, const DeformationSchedule& sched) {
  json j;
  j["format_version"] = kFormatVersion;
  j["r"] = sched.r;
  j["phi"] = sched.phi;
  json tau = json::array();
  for (complexd v : sched.tau) tau.push_back(complex_to_json(v));
  j["tau"] = tau;
  j["delta"] = sched.delta;
  j["t2_mode"] = sched.t2_zero ? "zero" : "scheduled";
  save_json(path, j);
}

SampleRunConfig read_run_config(const std::string& path) {
  json j = load_json(path);
  SampleRunConfig cfg;
  cfg.t0 = j.value("t0", 0.0);
  if (j.contains("t")) cfg.t = complex_list(j["t"], "t");
  cfg.sigma_radius = j.value("sigma_radius", 3.0);
  cfg.n_order = j.value("N", 0);
  cfg.sweeps = j.value("sweeps", 0);
  cfg.step = j.value("step", 0.1);
  if (j.contains("seeds"))
    for (const auto& s : j["seeds"]) cfg.seeds.push_back(s.get<std::uint64_t>());
  cfg.validate();
  return cfg;
}

void write_trajectory_csv(const std::string& path,
                          const std::vector<TrajectoryPoint>& traj) {
  std::ofstream out = open_csv(path);
  int n = traj.empty() ? 0 : traj.front().curve.degree();
  int jmax = traj.empty() ? 0 : static_cast<int>(traj.front().moments.t.size());
  out << "s,r,t0,xi";
  for (int j = 0; j <= n; ++j) out << ",a" << j << ".re,a" << j << ".im";
  for (int j = 1; j <= jmax; ++j) out << ",t" << j << ".re,t" << j << ".im";
  out << "\n";
  for (const TrajectoryPoint& p : traj) {
    out << p.s << "," << p.curve.r() << ","
        << (p.moments.t0 ? *p.moments.t0 : p.curve.area_t0()) << "," << p.xi;
    for (int j = 0; j <= n; ++j) {
      complexd a = p.curve.coeff(j);
      out << "," << a.real() << "," << a.imag();
    }
    for (int j = 1; j <= jmax; ++j) {
      complexd t = p.moments.get(j);
      out << "," << t.real() << "," << t.imag();
    }
    out << "\n";
  }
}

void write_convergence_csv(const std::string& path,
                           const std::vector<ConvergencePoint>& pts) {
  std::ofstream out = open_csv(path);
  out << "s,value_re,value_im,semicircle_value,abs_error\n";
  for (const ConvergencePoint& p : pts)
    out << p.s << "," << p.boundary_value.real() << ","
        << p.boundary_value.imag() << "," << p.semicircle_value << ","
        << p.abs_error << "\n";
}

void write_samples_csv(const std::string& path,
                       const std::vector<EnsembleSample>& chains) {
  std::ofstream out = open_csv(path);
  out << "chain_id,index,z_re,z_im\n";
  for (size_t c = 0; c < chains.size(); ++c)
    for (size_t i = 0; i < chains[c].points.size(); ++i)
      out << c << "," << i << "," << chains[c].points[i].real() << ","
          << chains[c].points[i].imag() << "\n";
}

}  // namespace ndf
