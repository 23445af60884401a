// verify.hpp
// Runnable property suites. Each suite re-derives a family of invariants
// numerically (sampling where appropriate) and reports one named result per
// check; the CLI front end turns these into exit codes.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "joinlab/brauer.hpp"
#include "joinlab/qudit.hpp"

namespace joinlab {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;  // short failure context, empty on success
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

SuiteReport verify_maps(std::uint64_t seed, int samples);
SuiteReport verify_positivity(std::uint64_t seed, int samples);
SuiteReport verify_joinability(std::uint64_t seed, int samples);
SuiteReport verify_agreement(std::uint64_t seed, int samples);

// which: one suite name or "all"; throws std::invalid_argument on unknown.
std::vector<SuiteReport> verify_suites(const std::string& which,
                                       std::uint64_t seed, int samples);

// Positivity report for one bipartite operator, shared by the CLI check
// command and the property suites. For parameterized families the margins
// come from the closed forms; for dense input they are eigenvalue slacks
// (and a product-state search for local positivity).
struct OperatorReport {
  bool state_positive = false;
  double state_margin = 0.0;
  bool channel_positive = false;
  double channel_margin = 0.0;
  bool local_positive = false;
  double local_margin = 0.0;
  bool ppt = false;
  double ppt_margin = 0.0;
  bool entangled = false;  // NPT implies entangled
};

OperatorReport check_brauer_params(const BrauerParams& p);
OperatorReport check_dense_bipartite(const DenseOperator& m,
                                     std::uint64_t seed = 1);

}  // namespace joinlab
