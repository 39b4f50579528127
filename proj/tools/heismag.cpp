// Command-line interface: closed-form magnetic trajectories on the
// Heisenberg group, classification, and cross-validation against the
// numerical integrator.
//
// Exit codes: 0 success, 1 verification tolerance violation,
// 2 invalid input, 3 numerical failure.

#include <CLI11.hpp>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heis/oracle.hpp"
#include "heis/quartic.hpp"
#include "heis/solver.hpp"
#include "heis/symmetry.hpp"
#include "heis/variational.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitToleranceViolation = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNumericalFailure = 3;

std::string fmt17(double v) {
  if (v == 0.0) return "0";  // collapse negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct JobSpec {
  std::vector<double> force{1.0, 0.0, 1.0};  // beta, alpha, rho
  std::vector<double> ic{0.0, 0.0, 0.0};
  std::vector<double> span{0.0, 10.0};
  std::size_t n = 1000;
  std::string format = "csv";
  std::string output;
  double tol = 1e-6;

  heis::LorentzForce force_value() const {
    return {force[0], force[1], force[2]};
  }
  heis::InitialVelocity ic_value() const { return {ic[0], ic[1], ic[2]}; }

  void validate() const {
    if (force.size() != 3 || ic.size() != 3 || span.size() != 2)
      throw CLI::ValidationError("--force/--ic need 3 values, --span needs 2");
    if (n < 2) throw CLI::ValidationError("--n must be at least 2");
    if (!(span[1] > span[0]) || !std::isfinite(span[0]) ||
        !std::isfinite(span[1]))
      throw CLI::ValidationError("--span must be a finite increasing pair");
    if (format != "csv" && format != "json")
      throw CLI::ValidationError("--format must be csv or json");
  }

  std::vector<double> grid() const {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i)
      t[i] = span[0] + (span[1] - span[0]) * static_cast<double>(i) /
                           static_cast<double>(n - 1);
    t.back() = span[1];
    return t;
  }
};

void add_job_options(CLI::App* cmd, JobSpec& job, bool with_span = true) {
  cmd->add_option("--force", job.force, "Lorentz force beta,alpha,rho")
      ->delimiter(',')
      ->expected(1, 3);
  cmd->add_option("--ic", job.ic, "initial velocity x0,y0,z0")
      ->delimiter(',')
      ->expected(1, 3);
  if (with_span) {
    cmd->add_option("--span", job.span, "time span t0,t1")
        ->delimiter(',')
        ->expected(1, 2);
    cmd->add_option("--n", job.n, "number of samples");
    cmd->add_option("--format", job.format, "output format: csv|json");
    cmd->add_option("-o,--output", job.output, "output file (default stdout)");
  }
  cmd->add_option("--tol", job.tol, "verification tolerance");
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CLI::ValidationError("cannot open output file " + path);
  out << body;
}

// Classification of the canonicalized problem: the quartic data that
// drives the solution family.  Absent for exact/zero forces.
std::optional<heis::QuarticAnalysis> canonical_analysis(
    const heis::LorentzForce& f, const heis::InitialVelocity& ic) {
  using namespace heis;
  if (is_zero(f) || std::hypot(f.beta, f.alpha) <= 1e-12) return std::nullopt;
  const OrbitResult orbit = canonicalize(f);
  const AlgebraVector pushed =
      push_velocity(orbit.witness, {ic.x0, ic.y0, ic.z0});
  InitialVelocity transformed{orbit.witness.r * pushed.c1,
                              orbit.witness.r * pushed.c2,
                              orbit.witness.r * pushed.c3};
  // The reflection symmetry handles x0 < 0; the quartic data only sees
  // x0^2, so classifying the mirrored velocity is equivalent.
  transformed.x0 = std::abs(transformed.x0);
  return classify(transformed, orbit.canonical.rho);
}

std::string interval_str(const heis::Interval& im) {
  std::string s = im.lo_closed ? "[" : "(";
  s += fmt17(im.lo);
  s += ",";
  s += fmt17(im.hi);
  s += im.hi_closed ? "]" : ")";
  return s;
}

json meta_json(const JobSpec& job, const heis::Trajectory& traj,
               const std::optional<heis::QuarticAnalysis>& analysis) {
  json meta;
  meta["case"] = heis::to_string(traj.family());
  meta["force"] = job.force;
  meta["ic"] = job.ic;
  meta["span"] = job.span;
  meta["n"] = job.n;
  const double nan = std::nan("");
  meta["delta"] = analysis ? analysis->delta : nan;
  meta["p0"] = analysis ? analysis->params.p0 : nan;
  meta["q0"] = analysis ? analysis->params.q0 : nan;
  meta["mu"] = analysis ? analysis->mu : nan;
  meta["r"] = analysis ? analysis->double_root : nan;
  if (traj.period()) meta["period"] = *traj.period();
  if (traj.x_image()) meta["image"] = interval_str(*traj.x_image());
  return meta;
}

std::string csv_body(const JobSpec& job, const heis::Trajectory& traj,
                     const std::optional<heis::QuarticAnalysis>& analysis) {
  std::ostringstream os;
  os << "#schema=1\n";
  os << "#case=" << heis::to_string(traj.family()) << "\n";
  os << "#force=" << fmt17(job.force[0]) << "," << fmt17(job.force[1]) << ","
     << fmt17(job.force[2]) << "\n";
  os << "#ic=" << fmt17(job.ic[0]) << "," << fmt17(job.ic[1]) << ","
     << fmt17(job.ic[2]) << "\n";
  os << "#span=" << fmt17(job.span[0]) << "," << fmt17(job.span[1]) << "\n";
  os << "#n=" << job.n << "\n";
  const double nan = std::nan("");
  os << "#delta=" << fmt17(analysis ? analysis->delta : nan) << "\n";
  os << "#p0=" << fmt17(analysis ? analysis->params.p0 : nan) << "\n";
  os << "#q0=" << fmt17(analysis ? analysis->params.q0 : nan) << "\n";
  os << "#mu=" << fmt17(analysis ? analysis->mu : nan) << "\n";
  os << "#r=" << fmt17(analysis ? analysis->double_root : nan) << "\n";
  os << "#period=" << (traj.period() ? fmt17(*traj.period()) : "none") << "\n";
  os << "#image="
     << (traj.x_image() ? interval_str(*traj.x_image()) : "none") << "\n";
  os << "t,x,y,z,xp,yp,zp\n";
  for (const double t : job.grid()) {
    const heis::TrajectoryState s = traj(t);
    os << fmt17(t) << "," << fmt17(s.x) << "," << fmt17(s.y) << ","
       << fmt17(s.z) << "," << fmt17(s.xp) << "," << fmt17(s.yp) << ","
       << fmt17(s.zp) << "\n";
  }
  return os.str();
}

std::string json_body(const JobSpec& job, const heis::Trajectory& traj,
                      const std::optional<heis::QuarticAnalysis>& analysis) {
  json doc;
  doc["schema"] = 1;
  doc["meta"] = meta_json(job, traj, analysis);
  doc["columns"] = {"t", "x", "y", "z", "xp", "yp", "zp"};
  json rows = json::array();
  for (const double t : job.grid()) {
    const heis::TrajectoryState s = traj(t);
    rows.push_back({t, s.x, s.y, s.z, s.xp, s.yp, s.zp});
  }
  doc["samples"] = std::move(rows);
  return doc.dump(1) + "\n";
}

int cmd_solve(const JobSpec& job) {
  job.validate();
  const heis::Trajectory traj = heis::solve(job.force_value(), job.ic_value());
  const auto analysis = canonical_analysis(job.force_value(), job.ic_value());
  write_text(job.output, job.format == "csv" ? csv_body(job, traj, analysis)
                                             : json_body(job, traj, analysis));
  return kExitOk;
}

int cmd_integrate(const JobSpec& job) {
  job.validate();
  heis::IntegrationConfig cfg;
  cfg.t0 = job.span[0];
  cfg.t1 = job.span[1];
  cfg.samples = job.n;
  const heis::SampledTrajectory s =
      heis::integrate_full(job.force_value(), job.ic_value(), cfg);
  std::ostringstream os;
  os << "#schema=1\n#method=dormand_prince_54\n";
  os << "#force=" << fmt17(job.force[0]) << "," << fmt17(job.force[1]) << ","
     << fmt17(job.force[2]) << "\n";
  os << "#ic=" << fmt17(job.ic[0]) << "," << fmt17(job.ic[1]) << ","
     << fmt17(job.ic[2]) << "\n";
  os << "#rel_tol=" << fmt17(cfg.rel_tol) << "\n#abs_tol=" << fmt17(cfg.abs_tol)
     << "\n";
  os << "t,x,y,z,xp,yp,zp\n";
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const heis::TrajectoryState& st = s.state[i];
    os << fmt17(s.t[i]) << "," << fmt17(st.x) << "," << fmt17(st.y) << ","
       << fmt17(st.z) << "," << fmt17(st.xp) << "," << fmt17(st.yp) << ","
       << fmt17(st.zp) << "\n";
  }
  write_text(job.output, os.str());
  return kExitOk;
}

int cmd_verify(const JobSpec& job) {
  using namespace heis;
  job.validate();
  const LorentzForce f = job.force_value();
  const InitialVelocity ic = job.ic_value();
  const Trajectory closed = solve(f, ic);

  IntegrationConfig cfg;
  cfg.t0 = job.span[0];
  cfg.t1 = job.span[1];
  cfg.samples = job.n;
  cfg.rel_tol = 3e-16;  // cross-validation wants the oracle at its best
  cfg.abs_tol = 1e-18;
  const SampledTrajectory oracle = integrate_full(f, ic, cfg);

  double max_coord = 0.0;
  for (std::size_t i = 0; i < oracle.t.size(); ++i) {
    const TrajectoryState a = closed(oracle.t[i]);
    const TrajectoryState& b = oracle.state[i];
    max_coord = std::max({max_coord, std::abs(a.x - b.x),
                          std::abs(a.y - b.y), std::abs(a.z - b.z)});
  }
  const InvariantReport rep =
      monitor_invariants(closed, f, job.span[0], job.span[1], 200);
  const LagrangianSpec spec = make_lagrangian(f);
  double el_max = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    const double t = job.span[0] + (job.span[1] - job.span[0]) *
                                       static_cast<double>(i) / 99.0;
    const auto r = el_residual(spec, closed, t);
    el_max = std::max({el_max, std::abs(r[0]), std::abs(r[1]),
                       std::abs(r[2])});
  }

  const double tol_speed = 1e-8, tol_fi = 1e-8, tol_ode = 1e-6,
               tol_el = 1e-5;
  const bool pass = max_coord <= job.tol && rep.speed_drift <= tol_speed &&
                    rep.first_integral_drift <= tol_fi &&
                    rep.ode_residual_max <= tol_ode && el_max <= tol_el;

  json doc;
  doc["schema"] = 1;
  doc["force"] = job.force;
  doc["ic"] = job.ic;
  doc["span"] = job.span;
  doc["samples"] = job.n;
  doc["case"] = to_string(closed.family());
  doc["max_coord_err"] = max_coord;
  doc["speed_drift"] = rep.speed_drift;
  doc["first_integral_drift"] = rep.first_integral_drift;
  doc["ode_residual_max"] = rep.ode_residual_max;
  doc["el_residual_max"] = el_max;
  doc["tolerances"] = {{"coord", job.tol},
                       {"speed", tol_speed},
                       {"first_integral", tol_fi},
                       {"ode_residual", tol_ode},
                       {"el_residual", tol_el}};
  doc["pass"] = pass;
  write_text(job.output, doc.dump(1) + "\n");
  return pass ? kExitOk : kExitToleranceViolation;
}

int cmd_classify(const JobSpec& job) {
  using namespace heis;
  const LorentzForce f = job.force_value();
  const InitialVelocity ic = job.ic_value();
  std::ostringstream os;
  if (is_zero(f)) {
    os << "zero force: all trajectories are geodesics\n";
    std::cout << os.str();
    return kExitOk;
  }
  const OrbitResult orbit = canonicalize(f);
  const bool exact_type = std::hypot(f.beta, f.alpha) <= 1e-12;
  if (exact_type) {
    os << "orbit: exact (F_{0,1})\n";
  } else {
    os << "orbit: F_{e1," << fmt17(orbit.canonical.rho) << "}\n";
  }
  os << "isotropy: " << to_string(isotropy_description(f)) << "\n";
  const Trajectory traj = solve(f, ic);
  const auto analysis = canonical_analysis(f, ic);
  os << "case: " << to_string(traj.family());
  if (analysis) {
    os << " (delta=" << fmt17(analysis->delta)
       << ", p0=" << fmt17(analysis->params.p0)
       << ", q0=" << fmt17(analysis->params.q0) << ")";
  }
  os << "\n";
  if (traj.period()) {
    os << "periodic: yes (period=" << fmt17(*traj.period()) << ")\n";
  } else {
    os << "periodic: no\n";
  }
  if (traj.x_image()) os << "x-image: " << interval_str(*traj.x_image()) << "\n";
  os << "geodesic: " << (geodesic_magnetic_classifier(f, ic) ? "yes" : "no")
     << "\n";
  std::cout << os.str();
  return kExitOk;
}

int cmd_canonicalize(const JobSpec& job) {
  using namespace heis;
  const OrbitResult r = canonicalize(job.force_value());
  std::ostringstream os;
  os << "canonical: " << fmt17(r.canonical.beta) << ","
     << fmt17(r.canonical.alpha) << "," << fmt17(r.canonical.rho) << "\n";
  os << "witness: r=" << fmt17(r.witness.r) << " B=[[" << fmt17(r.witness.B.a11)
     << "," << fmt17(r.witness.B.a12) << "],[" << fmt17(r.witness.B.a21) << ","
     << fmt17(r.witness.B.a22) << "]]\n";
  os << "isotropy: " << to_string(isotropy_description(job.force_value()))
     << "\n";
  std::cout << os.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"magnetic trajectories on the Heisenberg group"};
  app.require_subcommand(1);

  JobSpec job;
  CLI::App* solve = app.add_subcommand(
      "solve", "sample a closed-form magnetic trajectory");
  add_job_options(solve, job);
  CLI::App* verify = app.add_subcommand(
      "verify", "cross-validate closed form against the integrator");
  add_job_options(verify, job);
  CLI::App* classify = app.add_subcommand(
      "classify", "orbit, isotropy, solution family, geodesic flag");
  add_job_options(classify, job, false);
  CLI::App* canonicalize =
      app.add_subcommand("canonicalize", "orbit normal form and witness");
  add_job_options(canonicalize, job, false);
  CLI::App* integrate = app.add_subcommand(
      "integrate", "sample the adaptive Runge-Kutta reference solution");
  add_job_options(integrate, job);

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return cmd_solve(job);
    if (verify->parsed()) return cmd_verify(job);
    if (classify->parsed()) return cmd_classify(job);
    if (canonicalize->parsed()) return cmd_canonicalize(job);
    if (integrate->parsed()) return cmd_integrate(job);
    return kExitBadInput;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  } catch (const heis::ClassificationError& e) {
    std::cerr << "classification error: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const heis::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
}
