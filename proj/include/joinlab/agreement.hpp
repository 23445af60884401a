// agreement.hpp
// Collective agreement/disagreement POVM and the closed-form bounds on the
// agreement probability over the state and channel cones, with the cloning
// and sharability limits that follow from them.

#pragma once

#include <optional>
#include <utility>

#include "joinlab/qudit.hpp"

namespace joinlab {

// Projector onto the totally symmetric subspace of (C^d)^(x)n, built by
// permutation averaging (1/n!) sum_pi V_pi. For n > 6 the equivalent
// content-count formula is used instead of the literal n!-term sum.
DenseOperator symmetric_projector(int d, int n);

// Two-outcome collective measurement. e_agree is the symmetric projector
// scaled by d/binom(d+n-1, n); e_disagree its complement.
struct AgreementPovm {
  int d;
  int n_parties;
  DenseOperator e_agree;
  DenseOperator e_disagree;
};

// Throws if d^n exceeds the 4096 dimension cap.
AgreementPovm agreement_povm(int d, int n);

// tr(w * e_agree) for a trace-one Hermitian w on the matching space.
double agreement_probability(const DenseOperator& w, const AgreementPovm& povm);

enum class AgreementCone { State, Channel };

// Closed-form [lo, hi] interval of the agreement probability over the cone:
// state:   [0, d/binom(d-1+n, n)]  (n = 2 gives [0, 2/(d+1)])
// channel: [1/(d+1), 1]            (defined for n = 2 only)
std::pair<double, double> agreement_bounds(int d, int n, AgreementCone cone);

struct DerivedTaskBounds {
  double cloning_alpha_max;                            // (d+3)/(2(d+1))
  std::optional<double> sharability_alpha_bound_qubit;  // 1/6, d = 2 only
};

DerivedTaskBounds derived_task_bounds(int d);

// The executable derivation chain behind DerivedTaskBounds: fix the BC
// agreement at the state-cone maximum 2/(d+1) and optimize the symmetric
// alpha over the classical joinability inequalities.
double cloning_alpha_from_classical_chain(int d);
double sharability_alpha_from_classical_chain();  // d = 2

}  // namespace joinlab
