// qudit.hpp
// Dense multi-qudit operator algebra: construction, composition, reduction,
// transposition, and Hermitian spectra.
//
// Basis convention: product states |i1 i2 ... in> are enumerated row-major
// with the last subsystem index fastest, i.e. the flat index of |i1..in> is
// ((i1*d2 + i2)*d3 + i3)*... . Every matrix literal in the library and its
// tests assumes this ordering.

#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace joinlab {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using rmat = Eigen::MatrixXd;

inline constexpr double kHermTol = 1e-12;  // absolute entrywise tolerance

// An ordered list of subsystem dimensions (each >= 2).
class QuditSpace {
 public:
  explicit QuditSpace(std::vector<int> dims);
  QuditSpace(std::initializer_list<int> dims)
      : QuditSpace(std::vector<int>(dims)) {}

  // n subsystems of equal dimension d
  static QuditSpace homogeneous(int n, int d);

  int subsystems() const { return static_cast<int>(dims_.size()); }
  int dim(int k) const { return dims_.at(static_cast<size_t>(k)); }
  long total_dim() const { return total_; }
  const std::vector<int>& dims() const { return dims_; }
  bool homogeneous_dims() const;

  bool operator==(const QuditSpace& o) const { return dims_ == o.dims_; }
  bool operator!=(const QuditSpace& o) const { return !(*this == o); }

 private:
  std::vector<int> dims_;
  long total_ = 1;
};

// A complex square matrix attached to a QuditSpace. Immutable after
// construction; all operations below are pure functions.
class DenseOperator {
 public:
  DenseOperator(QuditSpace space, cmat entries);

  static DenseOperator identity(const QuditSpace& space);
  static DenseOperator zero(const QuditSpace& space);

  const QuditSpace& space() const { return space_; }
  const cmat& matrix() const { return m_; }
  long dim() const { return space_.total_dim(); }

  cplx trace() const { return m_.trace(); }
  DenseOperator adjoint() const { return {space_, m_.adjoint()}; }
  DenseOperator transpose() const { return {space_, m_.transpose()}; }

  // max entrywise |M - M^dagger|
  double hermiticity_defect() const;
  bool is_hermitian(double tol = kHermTol) const {
    return hermiticity_defect() <= tol;
  }

  DenseOperator operator+(const DenseOperator& o) const;
  DenseOperator operator-(const DenseOperator& o) const;
  DenseOperator operator*(const DenseOperator& o) const;
  friend DenseOperator operator*(cplx s, const DenseOperator& a) {
    return {a.space_, s * a.m_};
  }

 private:
  QuditSpace space_;
  cmat m_;
};

// Kronecker product; result dims = concat(a.dims, b.dims).
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

// Trace out every subsystem not listed in `keep` (indices into space.dims,
// kept in increasing order). Throws "subsystem out of range" on bad indices.
DenseOperator partial_trace(const DenseOperator& m, const std::vector<int>& keep);

// Transpose the listed subsystems in place; an involution that preserves
// trace and Hermiticity.
DenseOperator partial_transpose(const DenseOperator& m,
                                const std::vector<int>& subsystems);

// Representation V_pi of a subsystem permutation on a homogeneous space.
// perm[k] = pi(k): the content of slot k is moved to slot pi(k), so that
// V_pi V_sigma = V_{pi sigma}. Throws on inhomogeneous dims.
DenseOperator permutation_operator(const QuditSpace& space,
                                   const std::vector<int>& perm);

// Ascending real eigenvalues; requires a Hermitian input (1e-12 defect).
std::vector<double> hermitian_eigenvalues(const DenseOperator& m);
double min_eigenvalue(const DenseOperator& m);
double min_eigenvalue(const cmat& m);
double min_eigenvalue_real(const rmat& m);

// Two-party building blocks on d x d.
DenseOperator swap_operator(int d);            // V = sum |ij><ji|
DenseOperator bell_projector(int d);           // |Phi+><Phi+|

}  // namespace joinlab
