#pragma once

// Identity and property suites run by `elastica verify`, plus the seeded
// random inputs they (and the tests) draw from.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "elastica/geometry.hpp"
#include "elastica/obstacles.hpp"

namespace elastica {

using Rng = std::mt19937_64;

// Uniform on [a, b) from the top 53 bits, independent of the standard
// library's distribution implementations.
double uniform(Rng& rng, double a, double b);

// Smooth pseudograph from (0,0) to (1,0): optional vertical stubs joined
// with matching tangents to a monotone middle arc, at constant speed.
PolyCurve random_pseudograph(Rng& rng, int n);

// u = x(1-x) (a + sum_k b_k sin(k pi x)) + small affine-free bumps, u(0) = u(1) = 0.
SampledGraph random_smooth_graph(Rng& rng, int n);

struct Check {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool all_pass() const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int n = -1;        // suite default when <= 0
  int trials = 100;
};

const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt = {});

SuiteResult verify_appendix(const VerifyOptions& opt);
SuiteResult verify_threshold(const VerifyOptions& opt);
SuiteResult verify_envelope(const VerifyOptions& opt);
SuiteResult verify_comparison(const VerifyOptions& opt);
SuiteResult verify_oscillation(const VerifyOptions& opt);
SuiteResult verify_gradient(const VerifyOptions& opt);

// Slack constants c with E_eps(cap) <= E_eps(input) + c/n (resp. L) over a
// batch of random pseudographs; negative when every cap decreased.
struct MonotonicitySlack {
  double energy_c = 0.0;
  double length_c = 0.0;
  double epsilon_c[3] = {0.0, 0.0, 0.0};  // eps = 0, 0.1, 1
  int trials = 0;
};
MonotonicitySlack envelope_slack(std::uint64_t seed, int n, int trials);

}  // namespace elastica
