#pragma once

// Obstacle descriptors, CSV/JSON output. Every file written here starts
// with the run manifest so a run can be reproduced from its outputs.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "elastica/analysis.hpp"
#include "elastica/obstacles.hpp"
#include "elastica/solver.hpp"

namespace elastica {

inline constexpr const char* kVersion = "0.1.0";

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunManifest {
  std::string command;      // full command line
  std::string subcommand;
  std::string obstacle;     // descriptor as given
  int n = 0;
  unsigned long long seed = 0;
  std::string version = kVersion;
};

nlohmann::json to_json(const RunManifest& m);
// "# key: value" lines, one per manifest field.
void write_manifest_header(std::ostream& os, const RunManifest& m);

// "cone:A=0.4,s=0.25", "pl:0,-1;0.5,1;1,-1" or "tab:-1,0.5,1,0.5,-1".
Obstacle parse_obstacle(const std::string& spec);
// {"kind": "cone", "A": .., "s": ..}, {"kind": "piecewise_linear",
// "breakpoints": [[x, y], ...]} or {"kind": "tabulated", "samples": [...]}.
Obstacle obstacle_from_json(const nlohmann::json& j);
Obstacle read_obstacle_file(const std::filesystem::path& path);
nlohmann::json to_json(const Obstacle& o);

nlohmann::json to_json(const EnergyBreakdown& e);
nlohmann::json to_json(const ELReport& r);
nlohmann::json to_json(const CapShape& c);
nlohmann::json to_json(const LengthBound& b);
nlohmann::json to_json(const ConeCandidate& c);
nlohmann::json to_json(const SolverConfig& c);
nlohmann::json to_json(const SolveReport& r);

// Columns t,x,y with 17 significant digits.
void write_curve_csv(std::ostream& os, const PolyCurve& c, const RunManifest& m);
// Columns x,u.
void write_graph_csv(std::ostream& os, const SampledGraph& g, const RunManifest& m);
// Columns stage,epsilon,iter,objective,grad_norm,step,event.
void write_convergence_csv(std::ostream& os, const std::vector<IterLog>& log,
                           const RunManifest& m);
void write_json(std::ostream& os, const nlohmann::json& body, const RunManifest& m);

}  // namespace elastica
