#include "joinlab/qudit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace joinlab {

QuditSpace::QuditSpace(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("QuditSpace: empty dims");
  for (int d : dims_) {
    if (d < 2) throw std::invalid_argument("QuditSpace: every dim must be >= 2");
    total_ *= d;
  }
}

QuditSpace QuditSpace::homogeneous(int n, int d) {
  if (n < 1) throw std::invalid_argument("QuditSpace: need at least 1 subsystem");
  return QuditSpace(std::vector<int>(static_cast<size_t>(n), d));
}

bool QuditSpace::homogeneous_dims() const {
  return std::all_of(dims_.begin(), dims_.end(),
                     [&](int d) { return d == dims_[0]; });
}

DenseOperator::DenseOperator(QuditSpace space, cmat entries)
    : space_(std::move(space)), m_(std::move(entries)) {
  if (m_.rows() != m_.cols())
    throw std::invalid_argument("DenseOperator: matrix must be square");
  if (m_.rows() != space_.total_dim())
    throw std::invalid_argument("DenseOperator: matrix side must equal product of dims");
}

DenseOperator DenseOperator::identity(const QuditSpace& space) {
  long n = space.total_dim();
  return {space, cmat::Identity(n, n)};
}

DenseOperator DenseOperator::zero(const QuditSpace& space) {
  long n = space.total_dim();
  return {space, cmat::Zero(n, n)};
}

double DenseOperator::hermiticity_defect() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

DenseOperator DenseOperator::operator+(const DenseOperator& o) const {
  if (space_ != o.space_) throw std::invalid_argument("operator+: space mismatch");
  return {space_, m_ + o.m_};
}

DenseOperator DenseOperator::operator-(const DenseOperator& o) const {
  if (space_ != o.space_) throw std::invalid_argument("operator-: space mismatch");
  return {space_, m_ - o.m_};
}

DenseOperator DenseOperator::operator*(const DenseOperator& o) const {
  if (space_ != o.space_) throw std::invalid_argument("operator*: space mismatch");
  return {space_, m_ * o.m_};
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  std::vector<int> dims = a.space().dims();
  dims.insert(dims.end(), b.space().dims().begin(), b.space().dims().end());
  long na = a.dim(), nb = b.dim();
  cmat out(na * nb, na * nb);
  for (long i = 0; i < na; ++i)
    for (long j = 0; j < na; ++j)
      out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
  return {QuditSpace(dims), std::move(out)};
}

namespace {

// strides for the row-major (last index fastest) flattening
std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> s(dims.size());
  long acc = 1;
  for (size_t k = dims.size(); k-- > 0;) {
    s[k] = acc;
    acc *= dims[k];
  }
  return s;
}

void check_subsystems(const QuditSpace& sp, const std::vector<int>& idx) {
  for (int k : idx)
    if (k < 0 || k >= sp.subsystems())
      throw std::out_of_range("subsystem out of range");
}

}  // namespace

DenseOperator partial_trace(const DenseOperator& m, const std::vector<int>& keep) {
  const QuditSpace& sp = m.space();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep must be nonempty");
  check_subsystems(sp, keep);

  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  keep_sorted.erase(std::unique(keep_sorted.begin(), keep_sorted.end()),
                    keep_sorted.end());

  const int n = sp.subsystems();
  std::vector<bool> kept(static_cast<size_t>(n), false);
  for (int k : keep_sorted) kept[static_cast<size_t>(k)] = true;

  std::vector<int> traced;
  for (int k = 0; k < n; ++k)
    if (!kept[static_cast<size_t>(k)]) traced.push_back(k);

  std::vector<int> out_dims;
  for (int k : keep_sorted) out_dims.push_back(sp.dim(k));
  if (traced.empty()) return m;  // nothing to trace

  const auto strides = strides_of(sp.dims());
  long keep_total = 1, traced_total = 1;
  for (int k : keep_sorted) keep_total *= sp.dim(k);
  for (int k : traced) traced_total *= sp.dim(k);

  // base offsets of each kept multi-index and each traced multi-index
  auto offsets = [&](const std::vector<int>& subs, long count) {
    std::vector<long> off(static_cast<size_t>(count), 0);
    std::vector<int> digit(subs.size(), 0);
    for (long r = 0; r < count; ++r) {
      long o = 0;
      for (size_t q = 0; q < subs.size(); ++q)
        o += digit[q] * strides[static_cast<size_t>(subs[q])];
      off[static_cast<size_t>(r)] = o;
      for (size_t q = subs.size(); q-- > 0;) {
        if (++digit[q] < sp.dim(subs[q])) break;
        digit[q] = 0;
      }
    }
    return off;
  };
  const auto keep_off = offsets(keep_sorted, keep_total);
  const auto tr_off = offsets(traced, traced_total);

  cmat out = cmat::Zero(keep_total, keep_total);
  const cmat& M = m.matrix();
  for (long r = 0; r < keep_total; ++r)
    for (long c = 0; c < keep_total; ++c) {
      cplx acc = 0.0;
      for (long t = 0; t < traced_total; ++t)
        acc += M(keep_off[static_cast<size_t>(r)] + tr_off[static_cast<size_t>(t)],
                 keep_off[static_cast<size_t>(c)] + tr_off[static_cast<size_t>(t)]);
      out(r, c) = acc;
    }
  return {QuditSpace(out_dims), std::move(out)};
}

DenseOperator partial_transpose(const DenseOperator& m,
                                const std::vector<int>& subsystems) {
  const QuditSpace& sp = m.space();
  check_subsystems(sp, subsystems);
  std::vector<bool> flip(static_cast<size_t>(sp.subsystems()), false);
  for (int k : subsystems) flip[static_cast<size_t>(k)] = true;

  const auto strides = strides_of(sp.dims());
  const long n = sp.total_dim();
  const int ns = sp.subsystems();

  auto digits = [&](long idx) {
    std::vector<int> dg(static_cast<size_t>(ns));
    for (int k = 0; k < ns; ++k) {
      dg[static_cast<size_t>(k)] =
          static_cast<int>(idx / strides[static_cast<size_t>(k)]) % sp.dim(k);
    }
    return dg;
  };

  cmat out(n, n);
  for (long r = 0; r < n; ++r) {
    auto rd = digits(r);
    for (long c = 0; c < n; ++c) {
      auto cd = digits(c);
      long rr = 0, cc = 0;
      for (int k = 0; k < ns; ++k) {
        int a = rd[static_cast<size_t>(k)], b = cd[static_cast<size_t>(k)];
        if (flip[static_cast<size_t>(k)]) std::swap(a, b);
        rr += a * strides[static_cast<size_t>(k)];
        cc += b * strides[static_cast<size_t>(k)];
      }
      out(rr, cc) = m.matrix()(r, c);
    }
  }
  return {sp, std::move(out)};
}

DenseOperator permutation_operator(const QuditSpace& space,
                                   const std::vector<int>& perm) {
  if (!space.homogeneous_dims())
    throw std::invalid_argument("permutation requires homogeneous space");
  const int n = space.subsystems();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation_operator: size mismatch");
  std::vector<int> inv(static_cast<size_t>(n), -1);
  for (int k = 0; k < n; ++k) {
    int p = perm[static_cast<size_t>(k)];
    if (p < 0 || p >= n || inv[static_cast<size_t>(p)] != -1)
      throw std::invalid_argument("permutation_operator: not a permutation");
    inv[static_cast<size_t>(p)] = k;
  }

  const int d = space.dim(0);
  const long ntot = space.total_dim();
  cmat V = cmat::Zero(ntot, ntot);
  std::vector<int> dg(static_cast<size_t>(n));
  for (long idx = 0; idx < ntot; ++idx) {
    long r = idx;
    for (int k = n - 1; k >= 0; --k) {
      dg[static_cast<size_t>(k)] = static_cast<int>(r % d);
      r /= d;
    }
    long out = 0;
    for (int m2 = 0; m2 < n; ++m2)
      out = out * d + dg[static_cast<size_t>(inv[static_cast<size_t>(m2)])];
    V(out, idx) = 1.0;
  }
  return {space, std::move(V)};
}

std::vector<double> hermitian_eigenvalues(const DenseOperator& m) {
  if (!m.is_hermitian()) throw std::invalid_argument("Hermitian required");
  Eigen::SelfAdjointEigenSolver<cmat> es(m.matrix(),
                                         Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double min_eigenvalue(const cmat& m) {
  Eigen::SelfAdjointEigenSolver<cmat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double min_eigenvalue_real(const rmat& m) {
  Eigen::SelfAdjointEigenSolver<rmat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double min_eigenvalue(const DenseOperator& m) {
  if (!m.is_hermitian()) throw std::invalid_argument("Hermitian required");
  return min_eigenvalue(m.matrix());
}

DenseOperator swap_operator(int d) {
  QuditSpace sp{d, d};
  cmat V = cmat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) V(i * d + j, j * d + i) = 1.0;
  return {sp, std::move(V)};
}

DenseOperator bell_projector(int d) {
  QuditSpace sp{d, d};
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(d * d);
  for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(double(d));
  return {sp, phi * phi.adjoint()};
}

}  // namespace joinlab
