// elastica: solve obstacle instances, evaluate the cone threshold, run the
// verification suites and emit candidate curves.
//
// Exit codes: 0 ok, 1 usage or input error, 2 solver did not converge
// (partial results written), 3 verification failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elastica/analysis.hpp"
#include "elastica/io.hpp"
#include "elastica/solver.hpp"
#include "elastica/specfun.hpp"
#include "elastica/verify.hpp"

namespace fs = std::filesystem;
using namespace elastica;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kPartial = 2;
constexpr int kVerifyFailed = 3;

std::string join_argv(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  std::ofstream f(dir / name);
  if (!f) throw InputError("cannot write " + (dir / name).string());
  return f;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message());
}

struct SolveArgs {
  std::string obstacle;
  std::string obstacle_file;
  SolverConfig cfg;
  bool serial = false;
  bool stage_curves = false;
  unsigned long long seed = 0;
  std::string out = ".";
};

int cmd_solve(const SolveArgs& a, RunManifest m) {
  if (a.obstacle.empty() == a.obstacle_file.empty()) {
    throw InputError("solve: give exactly one of --obstacle or --obstacle-file");
  }
  const Obstacle o = a.obstacle.empty() ? read_obstacle_file(a.obstacle_file) : parse_obstacle(a.obstacle);
  SolverConfig cfg = a.cfg;
  cfg.exec = a.serial ? Exec::serial : Exec::parallel;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  m.obstacle = a.obstacle.empty() ? a.obstacle_file : a.obstacle;
  m.n = cfg.n;
  m.seed = a.seed;

  std::vector<PolyCurve> stages;
  const SolveReport r = solve(o, cfg, a.stage_curves ? &stages : nullptr);

  const fs::path dir(a.out);
  make_dir(dir);
  {
    nlohmann::json body = to_json(r);
    body["config"] = to_json(cfg);
    body["obstacle"] = to_json(o);
    auto f = open_out(dir, "report.json");
    write_json(f, body, m);
  }
  {
    auto f = open_out(dir, "curve.csv");
    write_curve_csv(f, r.curve, m);
  }
  {
    auto f = open_out(dir, "top.csv");
    write_graph_csv(f, r.cap.top, m);
  }
  {
    auto f = open_out(dir, "convergence.csv");
    write_convergence_csv(f, r.log, m);
  }
  for (std::size_t k = 0; k < stages.size(); ++k) {
    std::ostringstream name;
    name << "curve_stage_" << std::setw(2) << std::setfill('0') << k << ".csv";
    auto f = open_out(dir, name.str());
    write_curve_csv(f, stages[k], m);
  }

  std::printf("classification  %s\n", to_string(r.classification));
  std::printf("alpha           %.10f  (c0^2 = %.10f)\n", r.alpha, std::pow(g_profile().c0(), 2));
  std::printf("length          %.10f\n", r.length);
  std::printf("end slopes      %.6g  %.6g\n", r.slope_left, r.slope_right);
  std::printf("stubs           %.6g  %.6g\n", r.cap.h_left, r.cap.h_right);
  std::printf("contact nodes   %zu\n", r.contact_nodes.size());
  std::printf("bounds          energy %s  length %s  one-sided %s  touching %s  feasible %s\n",
              r.bounds.energy_ok ? "ok" : "FAIL",
              r.bounds.length_bound ? (r.bounds.length_ok ? "ok" : "FAIL") : "n/a",
              r.bounds.one_sided_applicable ? (r.bounds.one_sided_ok ? "ok" : "FAIL") : "n/a",
              r.bounds.touching ? "yes" : "no", r.bounds.feasible ? "yes" : "no");
  if (r.el) std::printf("EL deviation    %.3e\n", r.el->piecewise_const_dev);
  std::printf("converged       %s\n", r.converged ? "yes" : "no");
  std::printf("wrote           %s\n", dir.string().c_str());
  return r.converged ? kOk : kPartial;
}

struct ThresholdArgs {
  std::string sweep;
  std::string out;
};

int cmd_threshold(const ThresholdArgs& a, RunManifest m) {
  const ThresholdSweep sw = cone_threshold_sweep();
  std::printf("sweep sup       %.12f  (A = %.6g)\n", sw.sweep_max, sw.sweep_argmax);
  std::printf("gamma limit     %.12f\n", sw.limit);
  std::printf("difference      %.3e\n", sw.sweep_max - sw.limit);
  std::printf("sweep monotone  %s\n", sw.monotone ? "yes" : "no");
  std::printf("2/c0            %.12f\n", 2.0 / compute_c0());
  if (a.sweep.empty()) return kOk;

  double lo = 0.0, hi = 0.0;
  int count = 0;
  {
    std::string s = a.sweep;
    for (char& ch : s) {
      if (ch == ':') ch = ' ';
    }
    std::istringstream is(s);
    if (!(is >> lo >> hi >> count) || !(lo > 0.0) || !(hi > lo) || count < 2) {
      throw InputError("--sweep expects a:b:N with 0 < a < b and N >= 2");
    }
  }
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw InputError("cannot write " + a.out);
  }
  std::ostream& os = a.out.empty() ? std::cout : file;
  m.n = count;
  write_manifest_header(os, m);
  os << std::setprecision(17) << "A,ratio,half_A\n";
  for (int k = 0; k < count; ++k) {
    // log spacing
    const double A = lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1));
    os << A << ',' << cone_threshold_ratio(A) << ',' << A / 2 << '\n';
  }
  return kOk;
}

struct VerifyArgs {
  std::vector<std::string> suites;
  unsigned long long seed = 1;
  int n = -1;
  int trials = 100;
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<std::string> suites = a.suites;
  if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) suites = suite_names();
  VerifyOptions opt;
  opt.seed = a.seed;
  opt.n = a.n;
  opt.trials = a.trials;
  bool all = true;
  std::printf("%-12s %-40s %14s %14s %10s  %s\n", "suite", "check", "value", "reference", "tol", "pass");
  for (const auto& name : suites) {
    SuiteResult r;
    try {
      r = run_suite(name, opt);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    for (const auto& c : r.checks) {
      std::printf("%-12s %-40s %14.8g %14.8g %10.3g  %s\n", name.c_str(), c.name.c_str(), c.value,
                  c.reference, c.tolerance, c.pass ? "pass" : "FAIL");
    }
    all = all && r.all_pass();
  }
  std::printf("%s\n", all ? "all checks passed" : "verification FAILED");
  return all ? kOk : kVerifyFailed;
}

struct CandidateArgs {
  double S = 0.0;
  double m0 = 1.0;
  double C0 = -1.0;
  int n = 2048;
  std::string out = ".";
};

int cmd_candidate_comparison(const CandidateArgs& a, RunManifest m) {
  if (!(a.S >= 0.0)) throw InputError("candidate comparison: --S must be >= 0");
  m.n = a.n;
  PolyCurve c = comparison_polyline(a.S, a.n);
  const EnergyBreakdown e = curve_energy(c);
  const fs::path dir(a.out);
  make_dir(dir);
  {
    auto f = open_out(dir, "candidate.csv");
    write_curve_csv(f, c, m);
  }
  nlohmann::json body = {{"kind", "comparison"}, {"S", a.S}, {"energy", to_json(e)}};
  const double c0 = g_profile().c0();
  body["reference"] = {{"energy", c0 * c0}, {"length", 2 * a.S + comparison_top_length()}};
  if (a.n >= 64) body["cap"] = to_json(comparison_curve(a.S, a.n));
  {
    auto f = open_out(dir, "candidate.json");
    write_json(f, body, m);
  }
  std::printf("energy %.10f (c0^2 %.10f)  length %.10f (ref %.10f)\n", e.bending, c0 * c0, e.length,
              2 * a.S + comparison_top_length());
  return kOk;
}

int cmd_candidate_cone(const CandidateArgs& a, RunManifest m) {
  m.n = a.n;
  ConeCandidate cc;
  try {
    cc = cone_shooting(a.m0, a.C0, a.n);
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  // bending energy of the half profile, trapezoid in x
  const std::size_t k = cc.x.size();
  double energy = 0.0;
  for (std::size_t j = 1; j + 1 < k; ++j) {
    const double h = cc.x[j + 1] - cc.x[j];
    const double upp = (cc.slope[j + 1] - cc.slope[j - 1]) / (2 * h);
    energy += h * upp * upp / std::pow(1 + cc.slope[j] * cc.slope[j], 2.5);
  }
  const fs::path dir(a.out);
  make_dir(dir);
  {
    auto f = open_out(dir, "candidate.csv");
    write_manifest_header(f, m);
    f << std::setprecision(17) << "x,slope,u\n";
    for (std::size_t j = 0; j < k; ++j) f << cc.x[j] << ',' << cc.slope[j] << ',' << cc.height[j] << '\n';
  }
  nlohmann::json body = {{"kind", "cone"}, {"candidate", to_json(cc)}, {"half_energy", energy}};
  {
    auto f = open_out(dir, "candidate.json");
    write_json(f, body, m);
  }
  std::printf("ode residual %.3e  u'(1/2) %.6g", cc.ode_residual, cc.m1);
  if (cc.peak_x) std::printf("  peak at x = %.6g, height %.6g", *cc.peak_x, *cc.peak_height);
  std::printf("  half energy %.8g\n", energy);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic curves above obstacles: solver, thresholds, verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunManifest manifest;
  manifest.command = join_argv(argc, argv);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Minimize the penalized energy above an obstacle");
  solve_cmd->add_option("--obstacle", sa.obstacle, "cone:A=..,s=.. | pl:x,y;x,y;.. | tab:v,v,..");
  solve_cmd->add_option("--obstacle-file", sa.obstacle_file, "Obstacle JSON file");
  solve_cmd->add_option("--n", sa.cfg.n, "Grid resolution")->capture_default_str();
  solve_cmd->add_option("--eps-start", sa.cfg.eps_start)->capture_default_str();
  solve_cmd->add_option("--eps-factor", sa.cfg.eps_factor)->capture_default_str();
  solve_cmd->add_option("--eps-min", sa.cfg.eps_min)->capture_default_str();
  solve_cmd->add_option("--obstacle-penalty", sa.cfg.obstacle_penalty)->capture_default_str();
  solve_cmd->add_option("--speed-penalty", sa.cfg.speed_penalty, "Coefficient of n^3")->capture_default_str();
  solve_cmd->add_option("--monotone-penalty", sa.cfg.monotone_penalty)->capture_default_str();
  solve_cmd->add_option("--max-iters", sa.cfg.max_iters, "Per eps stage")->capture_default_str();
  solve_cmd->add_option("--grad-tol", sa.cfg.grad_tol)->capture_default_str();
  solve_cmd->add_option("--armijo-c", sa.cfg.armijo_c)->capture_default_str();
  solve_cmd->add_option("--backtrack", sa.cfg.backtrack)->capture_default_str();
  solve_cmd->add_option("--max-backtracks", sa.cfg.max_backtracks)->capture_default_str();
  solve_cmd->add_option("--cap-project-every", sa.cfg.cap_project_every)->capture_default_str();
  solve_cmd->add_option("--vertical-slope", sa.cfg.vertical_slope)->capture_default_str();
  solve_cmd->add_option("--stub-tol", sa.cfg.stub_tol)->capture_default_str();
  solve_cmd->add_option("--contact-tol", sa.cfg.contact_tol, "Default 1e-6 (1 + sup psi)");
  solve_cmd->add_option("--alpha-margin", sa.cfg.alpha_margin)->capture_default_str();
  solve_cmd->add_option("--asymmetry", sa.cfg.asymmetry, "Tilt of the initial guess")->capture_default_str();
  solve_cmd->add_flag("--serial", sa.serial, "Use the serial objective kernel");
  solve_cmd->add_flag("--stage-curves", sa.stage_curves, "Write the curve after every eps stage");
  solve_cmd->add_option("--seed", sa.seed, "Recorded in the manifest")->capture_default_str();
  solve_cmd->add_option("--out", sa.out, "Output directory")->capture_default_str();

  ThresholdArgs ta;
  auto* thr_cmd = app.add_subcommand("threshold", "Cone nonexistence threshold");
  thr_cmd->add_option("--sweep", ta.sweep, "a:b:N log-spaced CSV of (A, ratio, A/2)");
  thr_cmd->add_option("--out", ta.out, "CSV file for the sweep (default stdout)");

  VerifyArgs va;
  auto* ver_cmd = app.add_subcommand("verify", "Run identity and property suites");
  std::string suite_help = "all";
  for (const auto& s : suite_names()) suite_help += ", " + s;
  ver_cmd->add_option("--suite", va.suites, suite_help);
  ver_cmd->add_option("--seed", va.seed)->capture_default_str();
  ver_cmd->add_option("--n", va.n, "Resolution (suite default when omitted)");
  ver_cmd->add_option("--trials", va.trials)->capture_default_str();

  CandidateArgs ca;
  auto* cand_cmd = app.add_subcommand("candidate", "Emit an explicit candidate curve");
  cand_cmd->require_subcommand(1);
  auto* cand_cmp = cand_cmd->add_subcommand("comparison", "Stubs of height S with the constant-density top");
  cand_cmp->add_option("--S", ca.S, "Stub height")->required();
  cand_cmp->add_option("--n", ca.n)->capture_default_str();
  cand_cmp->add_option("--out", ca.out)->capture_default_str();
  auto* cand_cone = cand_cmd->add_subcommand("cone", "Shooting half-profile for a cone obstacle");
  cand_cone->add_option("--m0", ca.m0, "u'(0)")->required();
  cand_cone->add_option("--C0", ca.C0, "Euler-Lagrange constant, <= 0")->required();
  cand_cone->add_option("--n", ca.n)->capture_default_str();
  cand_cone->add_option("--out", ca.out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve_cmd) {
      manifest.subcommand = "solve";
      return cmd_solve(sa, manifest);
    }
    if (*thr_cmd) {
      manifest.subcommand = "threshold";
      return cmd_threshold(ta, manifest);
    }
    if (*ver_cmd) return cmd_verify(va);
    if (*cand_cmp) {
      manifest.subcommand = "candidate comparison";
      return cmd_candidate_comparison(ca, manifest);
    }
    if (*cand_cone) {
      manifest.subcommand = "candidate cone";
      return cmd_candidate_cone(ca, manifest);
    }
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (*solve_cmd) std::fprintf(stderr, "%s", solve_cmd->help().c_str());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
