// oracle.hpp
// Independent brute-force certifiers for the closed-form predicates:
// eigenvalue feasibility searches over the invariant joining family,
// product-state minimization for block positivity, and seeded samplers.
//
// The searches exploit two properties that are themselves verified by the
// test suite: the smallest eigenvalue of the joining family is jointly
// concave in the free parameters (it is a min-eigenvalue of an affine
// family), and it is even in the antisymmetric coefficient f (entrywise
// conjugation flips the sign of f and preserves the spectrum). Golden
// section search is exact for concave unimodal objectives, including the
// nonsmooth points at eigenvalue crossings.

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "joinlab/joinability.hpp"
#include "joinlab/maps.hpp"

namespace joinlab {

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> best_free_params;
  double best_min_eigenvalue = 0.0;
  long evaluations = 0;
  double tol = 1e-9;
};

struct OracleOptions {
  int iterations = 60;      // golden-section iterations per parameter
  double box = 4.0;         // free parameters searched over [-box, box]
  // Skip the f search and use the f = 0 slice with a real-symmetric
  // eigensolver. Justified by the evenness/concavity properties above;
  // cross-checked against the full search in the test suite.
  bool even_f_reduction = false;
};

// The U(x)U(x)U-invariant operator with Werner marginals t and free
// coefficients e (symmetric 3-cycle) and f (antisymmetric 3-cycle).
// For d = 2 the e coefficient is a gauge freedom (the six permutation
// operators obey one linear relation) and does not change the operator.
DenseOperator invariant_joining_operator(int d, const EtaTriple& t, double e,
                                         double f);

// Feasibility of state joining: maximize the smallest eigenvalue of
// w(t; e, f) over the free parameters; d in {2, 3}.
FeasibilityResult oracle_state_joinable(int d, const EtaTriple& t,
                                        double tol = 1e-9,
                                        const OracleOptions& opt = {});

// Same search, objective = smallest eigenvalue of the pivot partial
// transpose of w(t; e, f).
FeasibilityResult oracle_channel_joinable(int d, const EtaTriple& t,
                                          Pivot pivot, double tol = 1e-9,
                                          const OracleOptions& opt = {});

// d=2 local-positive joinability: minimize the product-state objective
// F(th, om) = (1 + ab cos th + ac cos om + bc cos(th+om))/4 over a 360x360
// grid followed by Newton refinement from the best cells.
FeasibilityResult oracle_local_positive_joinable(const EtaTriple& t,
                                                 double tol = 1e-9);

// Block positivity of a bipartite operator by alternating smallest-
// eigenvector descent over product vectors, multistart.
struct BlockPositiveResult {
  bool positive = false;
  double best_value = 0.0;
  long evaluations = 0;
};
BlockPositiveResult oracle_block_positive(const DenseOperator& m,
                                          double tol = 1e-9,
                                          std::uint64_t seed = 1,
                                          int starts = 32, int sweeps = 200);

// Sampled extrema of the agreement probability over a positivity cone;
// includes the two analytic extremizers among the candidates.
enum class Cone { State, Channel };
std::pair<double, double> oracle_agreement_extrema(int d, int n, Cone cone,
                                                   int samples,
                                                   std::uint64_t seed);

// Seeded samplers (deterministic per seed).
DenseOperator random_density(const QuditSpace& space, std::uint64_t seed);
LinearMapRep random_cptp(int d, std::uint64_t seed);
cmat random_unitary(int d, std::mt19937_64& gen);
cmat random_hermitian(int d, std::mt19937_64& gen);

}  // namespace joinlab
