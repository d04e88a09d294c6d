#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "critgrass/io.hpp"
#include "critgrass/parallel.hpp"
#include "critgrass/plabic.hpp"

namespace critgrass {

struct SuiteConfig {
  int k = 2, n = 4;
  int samples = -1;  // suite default when negative
  int seeds = 5;
  uint64_t seed = 0;
  double tol = 1e-9;
  Exec exec = Exec::Parallel;
};

struct Check {
  std::string name;
  bool pass = true;
  double residual = 0;  // worst measured deviation, or the margin for lower bounds
  long count = 0;       // instances examined
  std::string detail;
};

struct Report {
  std::string suite;
  SuiteConfig config;
  std::vector<Check> checks;
  bool pass() const;
  Json to_json() const;
};

const std::vector<std::string>& suite_names();
// Throws Precondition for an unknown suite.
Report run_suite(const std::string& name, const SuiteConfig& cfg);

// Graphs with sites for every move kind, each with at most 12 interior vertices.
std::vector<std::pair<std::string, PlabicGraph>> move_fixtures(int k, int n);
// Adds an interior leaf, a parallel edge and a dipole where possible.
PlabicGraph decorate(const PlabicGraph& g);

// Number of nonempty faces of Δ_{2,n}.
long hypersimplex_face_count(int n);
// f-vector of the cyclohedron of dimension n-1 from its h-vector.
std::vector<long> cyclohedron_fvector(int n);

}  // namespace critgrass
