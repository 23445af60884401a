// brauer.hpp
// Collective-invariance operator families on two qudits: the U(x)U-invariant
// (Werner) line, the O(x)O-invariant (eta, beta) plane, and the three-qubit
// invariant joining family. Positivity of the bipartite families is decided
// by closed-form linear inequalities; each predicate returns the raw slack of
// its tightest constraint so sweeps can locate boundaries by sign changes.
// All predicates treat the boundary as positive (closed cones).

#pragma once

#include <array>
#include <optional>

#include "joinlab/qudit.hpp"

namespace joinlab {

inline constexpr double kBoundarySlack = 1e-12;

struct WernerParams {
  int d;
  double eta;
};

struct BrauerParams {
  int d;
  double eta;
  double beta;
};

// Parameters of the three-qubit invariant joining family: reduced Werner
// parameters plus the antisymmetric 3-cycle coefficient f.
struct TripartiteWernerParams {
  double eta_ab;
  double eta_ac;
  double eta_bc;
  double f = 0.0;
};

struct Verdict {
  bool positive;
  double margin;  // signed slack of the tightest constraint
};

// (1-eta) I/d^2 + eta V/d
DenseOperator werner_operator(const WernerParams& p);

// (1-eta-beta) I/d^2 + eta V/d + beta V^{T_A}/d
DenseOperator brauer_operator(const BrauerParams& p);

struct EigenLine {
  double value;
  int multiplicity;
};

// The three eigenvalue lines of brauer_operator, in the order
// antisymmetric space, span|Phi+>, remainder of the symmetric space.
std::array<EigenLine, 3> brauer_spectrum(const BrauerParams& p);

Verdict is_state_positive(const BrauerParams& p);
Verdict is_channel_positive(const BrauerParams& p);
Verdict is_local_positive(const BrauerParams& p);

// w = I/8 + sum_l (eta_l/4)(V_l - I/2) + i f (V_ABC - V_CBA)/2  (three qubits)
DenseOperator tripartite_werner_operator(const TripartiteWernerParams& t);

// Agreement probability of a Werner operator, alpha = (1 + (d-1) eta)/d,
// and its inverse.
double alpha_of_eta(int d, double eta);
double eta_of_alpha(int d, double alpha);

// Vertices of the positivity polygons in the (eta, beta) plane, for the
// decomposability cross-checks.
std::array<std::array<double, 2>, 3> state_polygon_vertices(int d);
std::array<std::array<double, 2>, 3> channel_polygon_vertices(int d);
std::array<std::array<double, 2>, 4> local_polygon_vertices(int d);

}  // namespace joinlab
