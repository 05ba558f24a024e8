// Command line surface for the deformation pipeline. Subcommands:
//   moments  curve file -> moments file, with exact/quadrature cross-check
//   invert   moments file -> curve file (regular or near-slit regime)
//   deform   schedule file -> trajectory + convergence CSVs
//   sample   run-config file -> eigenvalue samples + report
//   verify   curve file -> certificate report
// Exit codes: 0 success, 2 validation, 3 precision, 4 breakdown.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ndeform/balayage.hpp"
#include "ndeform/coulomb.hpp"
#include "ndeform/curve.hpp"
#include "ndeform/errors.hpp"
#include "ndeform/inversion.hpp"
#include "ndeform/io.hpp"
#include "ndeform/moments.hpp"
#include "ndeform/schedule.hpp"
#include "ndeform/schwarz.hpp"

namespace {

using nlohmann::json;
using namespace ndf;

json complex_to_json(complexd z) { return json::array({z.real(), z.imag()}); }

void echo_config(const std::string& command, const json& resolved) {
  json j;
  j["command"] = command;
  j["resolved_config"] = resolved;
  std::cout << j.dump(2) << std::endl;
}

std::vector<double> parse_s_list(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}

std::vector<double> geometric_s_list(double s_min, double factor) {
  std::vector<double> out;
  for (double s = 1.0; s >= s_min * (1.0 - 1e-12); s *= factor) out.push_back(s);
  if (out.empty() || out.back() > s_min) out.push_back(s_min);
  return out;
}

int cmd_moments(const std::string& input, const std::string& output,
                int grid_size, double tol) {
  PolynomialCurve curve = read_curve(input);
  if (!curve.certified_simple()) {
    std::ostringstream os;
    os << "curve is not certified simple: xi = " << curve.simplicity_margin()
       << " <= 0";
    throw UncertifiedCurveError(os.str());
  }
  HarmonicMoments exact = forward_moments(curve);
  ContourGrid grid = grid_size > 0 ? ContourGrid(next_pow2(grid_size), tol)
                                   : ContourGrid::for_moments(curve);
  HarmonicMoments quad = forward_moments_quadrature(curve, grid);

  double disc = std::abs(*exact.t0 - *quad.t0);
  for (size_t j = 0; j < exact.t.size(); ++j)
    disc = std::max(disc, std::abs(exact.t[j] - quad.t[j]));
  double scale = 1.0 + std::abs(*exact.t0);
  if (disc > tol * scale) {
    std::ostringstream os;
    os << "exact/quadrature discrepancy " << disc << " exceeds tolerance "
       << tol * scale;
    throw PrecisionError(os.str());
  }
  write_moments(output, exact, disc);
  echo_config("moments", {{"input", input},
                          {"output", output},
                          {"grid_size", grid.size()},
                          {"tol", tol},
                          {"discrepancy", disc}});
  return 0;
}

int cmd_invert(const std::string& input, const std::string& output,
               const std::string& schedule_path) {
  HarmonicMoments m = read_moments(input);
  if (!m.t0.has_value())
    throw ValidationError("invert: input moments must carry t0");
  double t2 = std::abs(m.get(2));
  PolynomialCurve curve(1.0, {});
  std::string regime;
  if (t2 < 0.5 - 1e-3) {
    curve = invert_regular(m);
    regime = "regular";
  } else if (!schedule_path.empty() && t2 < 0.5) {
    DeformationSchedule sched = read_schedule(schedule_path);
    curve = invert_near_slit(m, sched);
    regime = "near-slit";
  } else {
    std::ostringstream os;
    os << "|t_2| = " << t2 << " is outside both inversion regimes"
       << (schedule_path.empty() ? " (near-slit regime needs --schedule)" : "");
    throw OutOfRegimeError(os.str());
  }

  HarmonicMoments back = forward_moments(curve);
  double resid = std::abs(*back.t0 - *m.t0);
  for (size_t j = 0; j < m.t.size(); ++j)
    resid = std::max(resid, std::abs(back.get(static_cast<int>(j) + 1) -
                                     m.t[j]));
  write_curve(output, curve);
  echo_config("invert", {{"input", input},
                         {"output", output},
                         {"regime", regime},
                         {"roundtrip_residual", resid}});
  return 0;
}

int cmd_deform(const std::string& input, const std::string& output,
               const std::string& convergence_out, const std::string& s_list,
               double s_min) {
  DeformationSchedule sched = read_schedule(input);
  std::vector<double> s_values =
      s_list.empty() ? geometric_s_list(s_min, 0.9) : parse_s_list(s_list);

  std::vector<TrajectoryPoint> traj;
  try {
    deform(sched, s_values, &traj);
  } catch (const BreakdownError&) {
    if (!output.empty()) write_trajectory_csv(output, traj);
    throw;
  }
  if (!output.empty()) write_trajectory_csv(output, traj);

  if (!convergence_out.empty()) {
    // x^2 and x^4 traces against the scale-r semicircle
    std::vector<ConvergencePoint> both;
    for (int k : {2, 4}) {
      std::vector<ConvergencePoint> pts =
          deformation_convergence(sched, TestFunction::monomial(k), s_values);
      both.insert(both.end(), pts.begin(), pts.end());
    }
    write_convergence_csv(convergence_out, both);
  }
  echo_config("deform", {{"input", input},
                         {"trajectory", output},
                         {"convergence", convergence_out},
                         {"steps", traj.size()},
                         {"s_first", s_values.front()},
                         {"s_last", s_values.back()}});
  return 0;
}

int cmd_sample(const std::string& input, const std::string& output,
               const std::string& report_path, std::uint64_t seed_override) {
  SampleRunConfig cfg = read_run_config(input);
  if (seed_override != 0) cfg.seeds.assign(1, seed_override);
  PotentialSpec pot = cfg.potential();

  std::vector<EnsembleSample> chains;
  for (std::uint64_t seed : cfg.seeds)
    chains.push_back(metropolis_run(pot, cfg.n_order, cfg.sweeps, cfg.step, seed));
  write_samples_csv(output, chains);

  json rep;
  rep["format_version"] = 1;
  rep["chains"] = json::array();
  HarmonicMoments m;
  m.t0 = cfg.t0;
  m.t = cfg.t;
  PolynomialCurve curve = invert_regular(m);
  for (const EnsembleSample& ch : chains) {
    EmpiricalReport er = empirical_moments(ch, curve, 4);
    json jch;
    jch["seed"] = ch.seed;
    jch["acceptance_rate"] = ch.acceptance_rate;
    jch["tuned_step"] = ch.tuned_step;
    jch["max_energy_drift"] = ch.max_energy_drift;
    jch["final_energy"] = ch.energy;
    jch["inside_fraction"] = er.inside_fraction;
    json moments = json::array();
    for (const MomentComparison& c : er.moments) {
      json jm;
      jm["k"] = c.k;
      jm["empirical"] = complex_to_json(c.empirical);
      jm["jack_err"] = json::array({c.jack_err_re, c.jack_err_im});
      jm["predicted"] = complex_to_json(c.predicted);
      jm["within_3_errors"] = c.within_3_errors;
      moments.push_back(jm);
    }
    jch["moments"] = moments;
    rep["chains"].push_back(jch);
  }
  std::ofstream out(report_path);
  if (!out) throw ValidationError("cannot open report file: " + report_path);
  out << rep.dump(2) << "\n";

  echo_config("sample", {{"input", input},
                         {"samples", output},
                         {"report", report_path},
                         {"N", cfg.n_order},
                         {"sweeps", cfg.sweeps},
                         {"chains", cfg.seeds.size()}});
  return 0;
}

int cmd_verify(const std::string& input, const std::string& report_path,
               std::uint64_t seed, int grid_size) {
  PolynomialCurve curve = read_curve(input);
  if (!curve.certified_simple()) {
    std::ostringstream os;
    os << "curve is not certified simple: xi = " << curve.simplicity_margin();
    throw UncertifiedCurveError(os.str());
  }
  ContourGrid grid = grid_size > 0 ? ContourGrid(next_pow2(grid_size))
                                   : ContourGrid::for_curve(curve);

  json rep;
  rep["format_version"] = 1;
  rep["xi"] = curve.simplicity_margin();
  rep["t0"] = curve.area_t0();

  EnergyCertificate cert = equilibrium_certificate(curve, grid);
  rep["equilibrium"] = {{"pass", cert.pass},
                        {"min_value", cert.min_value},
                        {"min_location", complex_to_json(cert.min_location)},
                        {"min_value_off_unit", cert.min_value_off_unit},
                        {"min_location_off_unit",
                         complex_to_json(cert.min_location_off_unit)},
                        {"w_max", cert.w_max}};

  BranchPointReport bp = branch_point_check(curve);
  json crit = json::array(), branch = json::array(), flags = json::array();
  for (complexd w : bp.critical_points) crit.push_back(complex_to_json(w));
  for (complexd z : bp.branch_points) branch.push_back(complex_to_json(z));
  for (bool f : bp.inside_flags) flags.push_back(f);
  rep["branch_points"] = {{"critical_points", crit},
                          {"branch_points", branch},
                          {"inside_flags", flags},
                          {"inside_count", bp.inside_count},
                          {"even_inside", bp.even_inside},
                          {"none_on_curve", bp.none_on_curve},
                          {"critical_radius", bp.critical_radius},
                          {"circle_exception", bp.circle_exception}};

  // balayage vs Monte Carlo area cross-check for z^k, k <= 3
  json bal = json::array();
  bool bal_pass = true;
  for (int k = 0; k <= 3; ++k) {
    TestFunction f = TestFunction::monomial(k);
    complexd contour = balayage_integral(curve, f, grid);
    MonteCarloEstimate mc = area_integral(curve, f, 200000, seed + k);
    double err = std::hypot(std::max(mc.std_error_re, 1e-15),
                            std::max(mc.std_error_im, 1e-15));
    bool ok = std::abs(contour - mc.value) <= 3.0 * err;
    bal_pass = bal_pass && ok;
    bal.push_back({{"k", k},
                   {"contour", complex_to_json(contour)},
                   {"monte_carlo", complex_to_json(mc.value)},
                   {"std_error", json::array({mc.std_error_re, mc.std_error_im})},
                   {"within_3_errors", ok}});
  }
  rep["balayage_vs_area"] = {{"pass", bal_pass}, {"checks", bal}};
  rep["all_pass"] = cert.pass && bal_pass && bp.none_on_curve;

  std::ofstream out(report_path);
  if (!out) throw ValidationError("cannot open report file: " + report_path);
  out << rep.dump(2) << "\n";

  echo_config("verify", {{"input", input},
                         {"report", report_path},
                         {"grid_size", grid.size()},
                         {"seed", seed},
                         {"all_pass", rep["all_pass"].get<bool>()}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normal-ensemble deformation toolkit"};
  app.require_subcommand(1);

  std::string input, output, report, schedule_path, convergence_out, s_list;
  std::uint64_t seed = 12345;
  double tol = 1e-10;
  int grid_size = 0;
  double s_min = 1e-3;

  auto* mom = app.add_subcommand("moments", "harmonic moments of a curve");
  mom->add_option("--input", input)->required();
  mom->add_option("--output", output)->required();
  mom->add_option("--grid-size", grid_size);
  mom->add_option("--tol", tol);

  auto* inv = app.add_subcommand("invert", "curve from harmonic moments");
  inv->add_option("--input", input)->required();
  inv->add_option("--output", output)->required();
  inv->add_option("--schedule", schedule_path);

  auto* def = app.add_subcommand("deform", "run a deformation schedule");
  def->add_option("--input", input)->required();
  def->add_option("--output", output)->required();
  def->add_option("--convergence", convergence_out);
  def->add_option("--s-list", s_list);
  def->add_option("--s-min", s_min);

  auto* smp = app.add_subcommand("sample", "Metropolis eigenvalue sampler");
  smp->add_option("--input", input)->required();
  smp->add_option("--output", output)->required();
  smp->add_option("--report", report)->required();
  smp->add_option("--seed", seed);

  auto* ver = app.add_subcommand("verify", "equilibrium and branch-point checks");
  ver->add_option("--input", input)->required();
  ver->add_option("--output", report)->required();
  ver->add_option("--seed", seed);
  ver->add_option("--grid-size", grid_size);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(mom)) return cmd_moments(input, output, grid_size, tol);
    if (app.got_subcommand(inv)) return cmd_invert(input, output, schedule_path);
    if (app.got_subcommand(def))
      return cmd_deform(input, output, convergence_out, s_list, s_min);
    if (app.got_subcommand(smp)) {
      std::uint64_t ov = smp->count("--seed") ? seed : 0;
      return cmd_sample(input, output, report, ov);
    }
    if (app.got_subcommand(ver)) return cmd_verify(input, report, seed, grid_size);
  } catch (const ndf::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 2;
}
