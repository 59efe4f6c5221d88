#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "elastica/io.hpp"

using namespace elastica;
using doctest::Approx;

TEST_CASE("obstacle descriptors") {
  const auto c = parse_obstacle("cone:A=0.4,s=0.2");
  REQUIRE(c.cone_params());
  CHECK(c.cone_params()->peak == 0.4);
  CHECK(c.cone_params()->valley == 0.2);
  CHECK(parse_obstacle("cone:A=1.2").cone_params()->valley == 0.25);
  const auto pl = parse_obstacle("pl:0,-1;0.5,1;1,-1");
  CHECK(pl.kind() == ObstacleKind::piecewise_linear);
  CHECK(pl.eval(0.25) == Approx(0.0).scale(1.0));
  const auto tab = parse_obstacle("tab:-1,0.5,1,0.5,-1");
  CHECK(tab.kind() == ObstacleKind::tabulated);
  CHECK(tab.sup_value() == 1.0);
}

TEST_CASE("bad descriptors are input errors") {
  for (const char* s : {"cone", "cone:", "cone:s=0.2", "cone:A=x", "cone:A=1,q=2", "cone:A=-1",
                        "pl:0,-1;0.5", "pl:0,1;1,-1", "tab:1", "blob:1,2", "tab:-1,0.5,,-1"}) {
    INFO(s);
    CHECK_THROWS_AS(parse_obstacle(s), InputError);
  }
}

TEST_CASE("obstacle json round trip") {
  for (const char* s : {"cone:A=0.4,s=0.25", "pl:0,-1;0.3,0.5;1,-0.2"}) {
    const auto o = parse_obstacle(s);
    const auto back = obstacle_from_json(to_json(o));
    CHECK(back.breakpoints() == o.breakpoints());
    CHECK(back.kind() == o.kind());
  }
  nlohmann::json tab = {{"kind", "tabulated"}, {"samples", {-1, 1, -1}}};
  CHECK(obstacle_from_json(tab).sup_value() == 1.0);
  CHECK_THROWS_AS(obstacle_from_json({{"kind", "cone"}}), InputError);
  CHECK_THROWS_AS(obstacle_from_json({{"kind", "spiral"}}), InputError);
  CHECK_THROWS_AS(read_obstacle_file("/nonexistent/obstacle.json"), InputError);

  const auto path = std::filesystem::temp_directory_path() / "elastica_io_obstacle.json";
  {
    std::ofstream f(path);
    f << R"({"kind": "piecewise_linear", "breakpoints": [[0, -1], [0.5, 0.7], [1, -1]]})";
  }
  CHECK(read_obstacle_file(path).sup_value() == 0.7);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK_THROWS_AS(read_obstacle_file(path), InputError);
  std::filesystem::remove(path);
}

TEST_CASE("every output carries the manifest") {
  RunManifest m;
  m.command = "elastica solve --obstacle cone:A=0.4";
  m.subcommand = "solve";
  m.obstacle = "cone:A=0.4";
  m.n = 64;
  m.seed = 17;

  std::ostringstream csv;
  write_curve_csv(csv, PolyCurve({{0, 0}, {0.5, 0.25}, {1, 0}}), m);
  std::istringstream in(csv.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 10);
  CHECK(lines[0] == "# command: elastica solve --obstacle cone:A=0.4");
  CHECK(lines[4] == "# seed: 17");
  CHECK(lines[5] == std::string("# version: ") + kVersion);
  CHECK(lines[6] == "t,x,y");
  CHECK(lines[8] == "0.5,0.5,0.25");

  std::ostringstream js;
  write_json(js, {{"alpha", 1.5}}, m);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["alpha"] == 1.5);
  CHECK(j["manifest"]["seed"] == 17);
  CHECK(j["manifest"]["n"] == 64);
  CHECK(j["manifest"]["version"] == kVersion);
}

TEST_CASE("csv values survive a text round trip") {
  RunManifest m;
  const double v = 0.1 + 0.2;
  std::ostringstream os;
  write_graph_csv(os, SampledGraph(std::vector<double>(9, v)), m);
  const std::string s = os.str();
  const auto pos = s.find("x,u\n");
  REQUIRE(pos != std::string::npos);
  std::istringstream in(s.substr(pos + 4));
  std::string row;
  std::getline(in, row);
  CHECK(std::stod(row.substr(row.find(',') + 1)) == v);
}

TEST_CASE("report json has the documented keys") {
  SolveReport r;
  const auto j = to_json(r);
  for (const char* k : {"alpha", "breakdown", "length", "eps_trajectory", "contact_nodes", "boundary_slopes",
                        "vertical", "classification", "bounds_check", "cap", "symmetry_defect",
                        "speed_deviation", "converged", "el"}) {
    INFO(k);
    CHECK(j.contains(k));
  }
  CHECK(j["el"].is_null());
  CHECK(j["bounds_check"].contains("one_sided_applicable"));
  CHECK(to_json(SolverConfig{})["exec"] == "parallel");
}
