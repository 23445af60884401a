#include "joinlab/maps.hpp"

#include <stdexcept>

namespace joinlab {

LinearMapRep::LinearMapRep(int dim_in, int dim_out, cmat action)
    : din_(dim_in), dout_(dim_out), t_(std::move(action)) {
  if (din_ < 2 || dout_ < 2)
    throw std::invalid_argument("LinearMapRep: dims must be >= 2");
  if (t_.rows() != long(dout_) * dout_ || t_.cols() != long(din_) * din_)
    throw std::invalid_argument("LinearMapRep: action tensor shape mismatch");
}

LinearMapRep LinearMapRep::identity(int d) {
  cmat t = cmat::Identity(long(d) * d, long(d) * d);
  return {d, d, std::move(t)};
}

LinearMapRep LinearMapRep::completely_depolarizing(int d) {
  // rho -> tr(rho) I/d
  cmat t = cmat::Zero(long(d) * d, long(d) * d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) t(k * d + k, i * d + i) = 1.0 / d;
  return {d, d, std::move(t)};
}

LinearMapRep LinearMapRep::transpose_map(int d) {
  // T[k,l,i,j] = delta_{kj} delta_{li}
  cmat t = cmat::Zero(long(d) * d, long(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t(j * d + i, i * d + j) = 1.0;
  return {d, d, std::move(t)};
}

cmat LinearMapRep::apply(const cmat& x) const {
  if (x.rows() != din_ || x.cols() != din_)
    throw std::invalid_argument("LinearMapRep::apply: dimension mismatch");
  cmat out = cmat::Zero(dout_, dout_);
  for (int i = 0; i < din_; ++i)
    for (int j = 0; j < din_; ++j) {
      if (x(i, j) == cplx(0.0)) continue;
      for (int k = 0; k < dout_; ++k)
        for (int l = 0; l < dout_; ++l)
          out(k, l) += x(i, j) * t_(k * dout_ + l, i * din_ + j);
    }
  return out;
}

bool LinearMapRep::is_hermiticity_preserving(double tol) const {
  // T[k,l,i,j] == conj(T[l,k,j,i])
  for (int k = 0; k < dout_; ++k)
    for (int l = 0; l < dout_; ++l)
      for (int i = 0; i < din_; ++i)
        for (int j = 0; j < din_; ++j) {
          cplx lhs = t_(k * dout_ + l, i * din_ + j);
          cplx rhs = std::conj(t_(l * dout_ + k, j * din_ + i));
          if (std::abs(lhs - rhs) > tol) return false;
        }
  return true;
}

bool LinearMapRep::is_trace_preserving(double tol) const {
  // sum_k T[k,k,i,j] == delta_{ij}
  for (int i = 0; i < din_; ++i)
    for (int j = 0; j < din_; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < dout_; ++k) acc += t_(k * dout_ + k, i * din_ + j);
      cplx want = (i == j) ? 1.0 : 0.0;
      if (std::abs(acc - want) > tol) return false;
    }
  return true;
}

LinearMapRep LinearMapRep::operator+(const LinearMapRep& o) const {
  if (din_ != o.din_ || dout_ != o.dout_)
    throw std::invalid_argument("LinearMapRep::operator+: shape mismatch");
  return {din_, dout_, t_ + o.t_};
}

DenseOperator homocorrelation(const LinearMapRep& map) {
  const int da = map.dim_in(), db = map.dim_out();
  cmat out(long(da) * db, long(da) * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) {
      // block (i,j) of the A factor holds M(|j><i|)/d_A
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l)
          out(i * db + k, j * db + l) = map.entry(k, l, j, i) / double(da);
    }
  return {QuditSpace{da, db}, std::move(out)};
}

DenseOperator choi(const LinearMapRep& map) {
  const int da = map.dim_in(), db = map.dim_out();
  cmat out(long(da) * db, long(da) * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l)
          out(i * db + k, j * db + l) = map.entry(k, l, i, j) / double(da);
  return {QuditSpace{da, db}, std::move(out)};
}

LinearMapRep inverse_homocorrelation(const DenseOperator& m) {
  if (m.space().subsystems() != 2)
    throw std::invalid_argument("inverse_homocorrelation: bipartite operator required");
  const int da = m.space().dim(0), db = m.space().dim(1);
  cmat t(long(db) * db, long(da) * da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l)
          t(k * db + l, j * da + i) = double(da) * m.matrix()(i * db + k, j * db + l);
  return {da, db, std::move(t)};
}

LinearMapRep depolarizing(int d, double eta) {
  if (d < 2) throw std::invalid_argument("depolarizing: d >= 2 required");
  cmat t = cmat::Zero(long(d) * d, long(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      t(i * d + j, i * d + j) += eta;
      if (i == j)
        for (int k = 0; k < d; ++k) t(k * d + k, i * d + i) += (1.0 - eta) / d;
    }
  return {d, d, std::move(t)};
}

double correlation_expectation(const DenseOperator& m, const cmat& a,
                               const cmat& b) {
  if (m.space().subsystems() != 2)
    throw std::invalid_argument("correlation_expectation: bipartite operator required");
  const int da = m.space().dim(0), db = m.space().dim(1);
  if (a.rows() != da || a.cols() != da || b.rows() != db || b.cols() != db)
    throw std::invalid_argument("correlation_expectation: dimension mismatch");
  cplx acc = 0.0;
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l)
          acc += m.matrix()(i * db + k, j * db + l) * a(j, i) * b(l, k);
  return acc.real();
}

bool is_cptp(const LinearMapRep& map, double tol) {
  DenseOperator c = choi(map);
  if (std::abs(c.trace() - cplx(1.0)) > 1e-9) return false;
  return min_eigenvalue(c.matrix()) >= -tol;
}

}  // namespace joinlab
