#pragma once

#include "coarsemaps/report.hpp"
#include "coarsemaps/zquad.hpp"

// The acceptance battery: one deterministic check per headline property,
// shared by the CLI `theorem-suite` subcommand and the test harness.

namespace coarsemaps {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // witness / counterexample text on failure
  double seconds = 0.0;
};

struct NamedMap {
  std::string name;
  std::shared_ptr<GroupMap> map;
};

// The six base maps every cross-cutting check runs against.
std::vector<NamedMap> base_corpus();

std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 42);

}  // namespace coarsemaps
