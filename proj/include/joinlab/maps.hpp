// maps.hpp
// Superoperator representation and the two channel <-> bipartite-operator
// dualities: the correlation-preserving map H and the positivity-preserving
// Choi map J. Both carry the 1/d_in prefactor, so trace-preserving maps give
// trace-one bipartite operators and channel operators are directly comparable
// with density operators.
//
// The computational basis fixed in qudit.hpp is the reference basis for J;
// this is deliberate and not configurable.

#pragma once

#include "joinlab/qudit.hpp"

namespace joinlab {

// A linear map on operators, stored by its action tensor:
//   M(|i><j|) = sum_{kl} T[k,l,i,j] |k><l|.
// Internally T is a (dim_out^2 x dim_in^2) matrix with row index k*dim_out+l
// and column index i*dim_in+j.
class LinearMapRep {
 public:
  LinearMapRep(int dim_in, int dim_out, cmat action);

  static LinearMapRep identity(int d);
  static LinearMapRep completely_depolarizing(int d);
  static LinearMapRep transpose_map(int d);

  int dim_in() const { return din_; }
  int dim_out() const { return dout_; }
  const cmat& action() const { return t_; }

  cplx entry(int k, int l, int i, int j) const {
    return t_(k * dout_ + l, i * din_ + j);
  }

  cmat apply(const cmat& x) const;

  // validated flags
  bool is_hermiticity_preserving(double tol = kHermTol) const;
  bool is_trace_preserving(double tol = kHermTol) const;

  LinearMapRep operator+(const LinearMapRep& o) const;
  friend LinearMapRep operator*(cplx s, const LinearMapRep& m) {
    return {m.din_, m.dout_, s * m.t_};
  }

 private:
  int din_, dout_;
  cmat t_;
};

// H(M) = (1/d_in) sum_{ij} |i><j| (x) M(|j><i|)
DenseOperator homocorrelation(const LinearMapRep& map);

// J(M) = (1/d_in) sum_{ij} |i><j| (x) M(|i><j|)
//      = partial_transpose(homocorrelation(M), {0})
DenseOperator choi(const LinearMapRep& map);

// Inverse of H for a bipartite operator with a known (d_A, d_B) split.
LinearMapRep inverse_homocorrelation(const DenseOperator& m);

// D_eta(rho) = (1-eta) tr(rho) I/d + eta rho
LinearMapRep depolarizing(int d, double eta);

// tr[m (a (x) b)]; for m = homocorrelation(M) this equals (1/d_A) tr[M(a) b].
double correlation_expectation(const DenseOperator& m, const cmat& a,
                               const cmat& b);

// Channel test: Choi operator PSD (min eigenvalue >= -tol) and unit Choi
// trace. The strict pointwise trace-preservation check lives on the map
// itself (is_trace_preserving); the Choi-trace form keeps the test
// meaningful for maps obtained from arbitrary unit-trace bipartite
// operators, where only the overall normalization is preserved.
bool is_cptp(const LinearMapRep& map, double tol = 1e-10);

}  // namespace joinlab
