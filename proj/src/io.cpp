#include "elastica/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace elastica {

namespace {

double parse_number(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) {
    throw InputError("obstacle: bad number '" + s + "' in " + what);
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

// rejects inadmissible obstacles with the failing diagnostics listed
Obstacle checked(Obstacle o) {
  std::string bad;
  for (const auto& d : admissibility_check(o)) {
    if (!d.passed) bad += (bad.empty() ? "" : "; ") + d.name + ": " + d.detail;
  }
  if (!bad.empty()) throw InputError("obstacle not admissible: " + bad);
  return o;
}

std::ostream& prec(std::ostream& os) { return os << std::setprecision(17); }

}  // namespace

nlohmann::json to_json(const RunManifest& m) {
  return {{"command", m.command}, {"subcommand", m.subcommand},
          {"obstacle", m.obstacle}, {"n", m.n},
          {"seed", m.seed},         {"version", m.version}};
}

void write_manifest_header(std::ostream& os, const RunManifest& m) {
  os << "# command: " << m.command << '\n'
     << "# subcommand: " << m.subcommand << '\n'
     << "# obstacle: " << m.obstacle << '\n'
     << "# n: " << m.n << '\n'
     << "# seed: " << m.seed << '\n'
     << "# version: " << m.version << '\n';
}

Obstacle parse_obstacle(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw InputError("obstacle: expected kind:params, got '" + spec + "'");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  try {
    if (kind == "cone") {
      double A = 0.0, s = 0.25;
      bool have_a = false;
      for (const auto& kv : split(body, ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw InputError("obstacle: expected key=value in '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const double v = parse_number(kv.substr(eq + 1), spec);
        if (key == "A") { A = v; have_a = true; }
        else if (key == "s") s = v;
        else throw InputError("obstacle: unknown cone parameter '" + key + "'");
      }
      if (!have_a) throw InputError("obstacle: cone needs A");
      return checked(Obstacle::cone(A, s));
    }
    if (kind == "pl") {
      std::vector<Vec2> pts;
      for (const auto& pair : split(body, ';')) {
        const auto xy = split(pair, ',');
        if (xy.size() != 2) throw InputError("obstacle: expected x,y in '" + pair + "'");
        pts.push_back({parse_number(xy[0], spec), parse_number(xy[1], spec)});
      }
      return checked(Obstacle::piecewise_linear(std::move(pts)));
    }
    if (kind == "tab") {
      std::vector<double> v;
      for (const auto& s : split(body, ',')) v.push_back(parse_number(s, spec));
      return checked(Obstacle::tabulated(std::move(v)));
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("obstacle: ") + e.what());
  }
  throw InputError("obstacle: unknown kind '" + kind + "' (cone, pl, tab)");
}

Obstacle obstacle_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cone") {
      return checked(Obstacle::cone(j.at("A").get<double>(), j.value("s", 0.25)));
    }
    if (kind == "piecewise_linear") {
      std::vector<Vec2> pts;
      for (const auto& p : j.at("breakpoints")) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      return checked(Obstacle::piecewise_linear(std::move(pts)));
    }
    if (kind == "tabulated") {
      return checked(Obstacle::tabulated(j.at("samples").get<std::vector<double>>()));
    }
    throw InputError("obstacle: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("obstacle json: ") + e.what());
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("obstacle: ") + e.what());
  }
}

Obstacle read_obstacle_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open obstacle file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("obstacle file " + path.string() + ": " + e.what());
  }
  return obstacle_from_json(j);
}

nlohmann::json to_json(const Obstacle& o) {
  nlohmann::json j;
  switch (o.kind()) {
    case ObstacleKind::cone:
      j = {{"kind", "cone"}, {"A", o.cone_params()->peak}, {"s", o.cone_params()->valley}};
      break;
    case ObstacleKind::piecewise_linear: j["kind"] = "piecewise_linear"; break;
    case ObstacleKind::tabulated: j["kind"] = "tabulated"; break;
  }
  auto& bp = j["breakpoints"] = nlohmann::json::array();
  for (const auto& p : o.breakpoints()) bp.push_back({p.x, p.y});
  j["sup"] = o.sup_value();
  j["slope_bound"] = o.slope_bound();
  return j;
}

nlohmann::json to_json(const EnergyBreakdown& e) {
  return {{"bending", e.bending}, {"length", e.length}, {"epsilon", e.epsilon}, {"total", e.total}};
}

nlohmann::json to_json(const ELReport& r) {
  return {{"v", r.v},
          {"lagrange", r.lagrange},
          {"v_left", r.v_left},
          {"v_right", r.v_right},
          {"contact_nodes", r.contact_nodes},
          {"interval_constants", r.interval_constants},
          {"piecewise_const_dev", r.piecewise_const_dev},
          {"penalized_residual", r.penalized_residual}};
}

nlohmann::json to_json(const CapShape& c) {
  std::vector<double> top(c.top.values().begin(), c.top.values().end());
  nlohmann::json hull = nlohmann::json::array();
  for (const auto& p : c.hull) hull.push_back({p.x, p.y});
  return {{"h_left", c.h_left}, {"h_right", c.h_right}, {"n", c.top.n()}, {"top", top},
          {"concave_certified", c.concave_certified}, {"hull", hull}};
}

nlohmann::json to_json(const LengthBound& b) {
  return {{"value", b.value}, {"graph_part", b.graph_part},
          {"touching_part", b.touching_part}, {"near_degenerate", b.near_degenerate}};
}

nlohmann::json to_json(const ConeCandidate& c) {
  nlohmann::json j = {{"m0", c.m0}, {"m1", c.m1}, {"C0", c.C0}, {"C1", c.C1},
                      {"ode_residual", c.ode_residual}};
  j["peak_x"] = c.peak_x ? nlohmann::json(*c.peak_x) : nlohmann::json(nullptr);
  j["peak_height"] = c.peak_height ? nlohmann::json(*c.peak_height) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const SolverConfig& c) {
  return {{"n", c.n},
          {"eps_start", c.eps_start},
          {"eps_factor", c.eps_factor},
          {"eps_min", c.eps_min},
          {"obstacle_penalty", c.obstacle_penalty},
          {"speed_penalty", c.speed_penalty},
          {"monotone_penalty", c.monotone_penalty},
          {"max_iters", c.max_iters},
          {"grad_tol", c.grad_tol},
          {"armijo_c", c.armijo_c},
          {"backtrack", c.backtrack},
          {"max_backtracks", c.max_backtracks},
          {"cap_project_every", c.cap_project_every},
          {"vertical_slope", c.vertical_slope},
          {"stub_tol", c.stub_tol},
          {"alpha_margin", c.alpha_margin},
          {"contact_tol", c.contact_tol},
          {"asymmetry", c.asymmetry},
          {"exec", c.exec == Exec::parallel ? "parallel" : "serial"}};
}

nlohmann::json to_json(const SolveReport& r) {
  nlohmann::json traj = nlohmann::json::array();
  for (const auto& e : r.eps_trajectory) {
    traj.push_back({{"epsilon", e.epsilon}, {"e_eps", e.e_eps}, {"energy", e.energy},
                    {"length", e.length}, {"status", to_string(e.status)}, {"iters", e.iters}});
  }
  const auto& b = r.bounds;
  nlohmann::json bounds = {{"energy_limit", b.energy_limit},
                           {"energy_ok", b.energy_ok},
                           {"length_ok", b.length_ok},
                           {"one_sided_applicable", b.one_sided_applicable},
                           {"one_sided_ok", b.one_sided_ok},
                           {"touching", b.touching},
                           {"feasible", b.feasible},
                           {"feasibility_margin", b.feasibility_margin},
                           {"oscillation_ok", b.oscillation_ok}};
  bounds["length_bound"] = b.length_bound ? to_json(*b.length_bound) : nlohmann::json(nullptr);
  bounds["oscillation_bound"] = b.oscillation_bound ? nlohmann::json(*b.oscillation_bound) : nlohmann::json(nullptr);
  nlohmann::json j = {{"alpha", r.alpha},
                      {"breakdown", to_json(r.breakdown)},
                      {"length", r.length},
                      {"eps_trajectory", traj},
                      {"contact_nodes", r.contact_nodes},
                      {"boundary_slopes", {r.slope_left, r.slope_right}},
                      {"vertical", {r.vertical_left, r.vertical_right}},
                      {"classification", to_string(r.classification)},
                      {"bounds_check", bounds},
                      {"cap", to_json(r.cap)},
                      {"symmetry_defect", r.symmetry_defect},
                      {"speed_deviation", r.speed_deviation},
                      {"converged", r.converged}};
  j["el"] = r.el ? to_json(*r.el) : nlohmann::json(nullptr);
  return j;
}

void write_curve_csv(std::ostream& os, const PolyCurve& c, const RunManifest& m) {
  write_manifest_header(os, m);
  prec(os) << "t,x,y\n";
  for (int i = 0; i <= c.n(); ++i) os << c.h() * i << ',' << c[i].x << ',' << c[i].y << '\n';
}

void write_graph_csv(std::ostream& os, const SampledGraph& g, const RunManifest& m) {
  write_manifest_header(os, m);
  prec(os) << "x,u\n";
  for (int i = 0; i <= g.n(); ++i) os << g.x(i) << ',' << g[i] << '\n';
}

void write_convergence_csv(std::ostream& os, const std::vector<IterLog>& log,
                           const RunManifest& m) {
  write_manifest_header(os, m);
  prec(os) << "stage,epsilon,iter,objective,grad_norm,step,event\n";
  for (const auto& r : log) {
    os << r.stage << ',' << r.epsilon << ',' << r.iter << ',' << r.objective << ','
       << r.grad_norm << ',' << r.step << ',' << r.event << '\n';
  }
}

void write_json(std::ostream& os, const nlohmann::json& body, const RunManifest& m) {
  nlohmann::json j = body;
  j["manifest"] = to_json(m);
  os << j.dump(2) << '\n';
}

}  // namespace elastica
