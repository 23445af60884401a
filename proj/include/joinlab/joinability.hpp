// joinability.hpp
// Closed-form three-party joinability regions for collective-invariance
// operator trios, plus the separability and classical reference sets.
//
// Conventions shared by every predicate:
//   * boundaries are inclusive (slack >= -1e-12 counts as inside);
//   * each predicate reports the raw slack of its tightest constraint,
//     so grid sweeps can locate boundaries from sign changes alone.
//
// The channel predicates do not use the corollary constants as printed in
// the source derivation (those reject the trivially joinable origin); they
// use the block-eigenvalue form recalibrated against the brute-force
// oracle, see channel_join_form_description().

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "joinlab/brauer.hpp"

namespace joinlab {

struct EtaTriple {
  double ab;
  double ac;
  double bc;
};

enum class Pivot { A, B, C };

enum class Scenario {
  State,
  ChannelA,
  ChannelB,
  ChannelC,
  LocalPositive,
  Separable,
  Classical,
};

const char* scenario_name(Scenario s);
std::set<Scenario> all_scenarios(int d);  // drops d=2-only sets when d > 2

// Corollary conditions for joining three Werner states by an invariant
// state-positive tripartite operator.
Verdict state_joinable(int d, const EtaTriple& t);

// Channel joinability with respect to one pivot party (the joining operator
// must have a PSD partial transpose on the pivot). Calibrated block form.
Verdict channel_joinable(int d, const EtaTriple& t, Pivot pivot);

// One-line description of the frozen channel predicate, embedded in sweep
// output metadata.
std::string channel_join_form_description();

// d=2 only: joinability by a local-positive invariant tripartite operator.
// Four linear bounds plus the cubic surface condition, the latter applied
// only when the interior stationary point of the product-state objective is
// admissible (eta_ab*eta_ac*eta_bc > 0 and |u*| <= 1).
Verdict local_positive_joinable(const EtaTriple& t);

// Raw value of the cubic surface expression
// 2 abc - (ab)^2 - (ac)^2 - (bc)^2 (in the pairwise-product sense).
double local_cubic_expression(const EtaTriple& t);

// Exact minimum over product states of the scaled expectation
// (1 + eta_ab cos(th) + eta_ac cos(om) + eta_bc cos(th+om))/4.
double local_min_objective(const EtaTriple& t);

// d=2 only: separable Werner triples; cubic dual-surface inequality
// conjoined with state joinability.
Verdict separable_region(const EtaTriple& t);
double cayley_expression(const EtaTriple& t);

// Classical d-nary agreement probabilities. Throws std::invalid_argument if
// any alpha lies outside [0,1].
bool classical_joinable(int d, const std::array<double, 3>& alphas);

// Classical region pulled back to eta coordinates through alpha_of_eta;
// slack includes the [0,1] range constraints so it is total.
Verdict classical_joinable_etas(int d, const EtaTriple& t);

struct RegionVerdict {
  std::optional<Verdict> state;
  std::optional<Verdict> channel_a;
  std::optional<Verdict> channel_b;
  std::optional<Verdict> channel_c;
  std::optional<Verdict> local;
  std::optional<Verdict> separable;
  std::optional<Verdict> classical;

  const std::optional<Verdict>& by_scenario(Scenario s) const;
  std::optional<Verdict>& by_scenario(Scenario s);
};

// Evaluate the requested scenarios at one point. Enforces the containment
// sanity checks (state => local, channel => local) up to tolerance and
// throws std::logic_error on a genuine violation.
RegionVerdict evaluate_region_point(int d, const EtaTriple& t,
                                    const std::set<Scenario>& scenarios);

struct SweepConfig {
  int d = 2;
  int grid_count = 21;  // per axis
  double lo = -1.0;
  double hi = 1.0;
  std::set<Scenario> scenarios;
  bool with_oracle = false;
  double oracle_tol = 1e-9;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct SweepRow {
  EtaTriple t;
  RegionVerdict verdict;
  // present only when SweepConfig.with_oracle is set; indexed like the
  // scenario enum for State..LocalPositive
  std::optional<bool> oracle_state;
  std::optional<bool> oracle_channel_a;
  std::optional<bool> oracle_channel_b;
  std::optional<bool> oracle_channel_c;
  std::optional<bool> oracle_local;
};

struct SweepSummary {
  long points = 0;
  long oracle_disagreements = 0;       // outside the margin band
  long oracle_within_band = 0;         // inside |margin| <= band
  double band = 1e-6;
};

// Full grid sweep in lexicographic order (ab slowest, bc fastest).
std::vector<SweepRow> region_sweep(const SweepConfig& cfg,
                                   SweepSummary* summary = nullptr);

// Points on the symmetric diagonal (eta,eta,eta), count >= 2.
std::vector<SweepRow> diagonal_sweep(const SweepConfig& cfg,
                                     SweepSummary* summary = nullptr);

}  // namespace joinlab
