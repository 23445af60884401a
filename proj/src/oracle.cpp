#include "joinlab/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "joinlab/agreement.hpp"

namespace joinlab {

namespace {

// Cached permutation basis of the three-party invariant family, together
// with the pivot partial transposes of every basis element (the partial
// transpose is linear, so transposing the basis once is enough).
struct JoiningBasis {
  int d;
  long n;
  // order: I, V_AB, V_AC, V_BC, (V_ABC+V_CBA)/2; all real symmetric
  std::array<rmat, 5> sym;
  // i (V_ABC - V_CBA)/2, Hermitian with imaginary entries
  cmat anti;
  // index 0..2 = pivot A..C, index 3 = no transpose
  std::array<std::array<rmat, 5>, 4> sym_pt;
  std::array<cmat, 4> anti_pt;
};

const JoiningBasis& joining_basis(int d) {
  static std::map<int, JoiningBasis> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;

  const QuditSpace sp = QuditSpace::homogeneous(3, d);
  JoiningBasis jb;
  jb.d = d;
  jb.n = sp.total_dim();
  DenseOperator I = DenseOperator::identity(sp);
  DenseOperator Vab = permutation_operator(sp, {1, 0, 2});
  DenseOperator Vac = permutation_operator(sp, {2, 1, 0});
  DenseOperator Vbc = permutation_operator(sp, {0, 2, 1});
  DenseOperator Vabc = permutation_operator(sp, {1, 2, 0});
  DenseOperator Vcba = permutation_operator(sp, {2, 0, 1});
  const std::array<DenseOperator, 5> ops = {
      I, Vab, Vac, Vbc,
      DenseOperator(sp, 0.5 * (Vabc.matrix() + Vcba.matrix()))};
  DenseOperator anti(sp,
                     cplx(0, 0.5) * (Vabc.matrix() - Vcba.matrix()));
  for (int k = 0; k < 5; ++k) jb.sym[size_t(k)] = ops[size_t(k)].matrix().real();
  jb.anti = anti.matrix();
  for (int piv = 0; piv < 4; ++piv) {
    for (int k = 0; k < 5; ++k) {
      DenseOperator o = piv < 3
                            ? partial_transpose(ops[size_t(k)], {piv})
                            : ops[size_t(k)];
      jb.sym_pt[size_t(piv)][size_t(k)] = o.matrix().real();
    }
    jb.anti_pt[size_t(piv)] =
        piv < 3 ? partial_transpose(anti, {piv}).matrix() : anti.matrix();
  }
  return cache.emplace(d, std::move(jb)).first->second;
}

struct JoiningCoeffs {
  double a, b, c, g, e;
};

JoiningCoeffs joining_coeffs(int d, const EtaTriple& t, double e) {
  const double dd = d;
  const double s = t.ab + t.ac + t.bc;
  return {(1.0 - s) / (dd * dd * dd) + 2.0 * e / (dd * dd),
          (t.ab / dd - e) / dd, (t.ac / dd - e) / dd, (t.bc / dd - e) / dd,
          e};
}

rmat assemble_real(const JoiningBasis& jb, const JoiningCoeffs& co, int piv) {
  const auto& B = jb.sym_pt[size_t(piv)];
  return co.a * B[0] + co.b * B[1] + co.c * B[2] + co.g * B[3] + co.e * B[4];
}

cmat assemble_cplx(const JoiningBasis& jb, const JoiningCoeffs& co, double f,
                   int piv) {
  cmat m = assemble_real(jb, co, piv).cast<cplx>();
  if (f != 0.0) m += f * jb.anti_pt[size_t(piv)];
  return m;
}

double golden_max_1d(const std::function<double(double)>& fn, double lo,
                     double hi, int iters, double* best_x) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = fn(c1), f2 = fn(c2);
  for (int it = 0; it < iters; ++it) {
    if (f1 < f2) {
      a = c1; c1 = c2; f1 = f2;
      c2 = a + gr * (b - a); f2 = fn(c2);
    } else {
      b = c2; c2 = c1; f2 = f1;
      c1 = b - gr * (b - a); f1 = fn(c1);
    }
  }
  const double x = 0.5 * (a + b);
  if (best_x) *best_x = x;
  return fn(x);
}

FeasibilityResult joining_search(int d, const EtaTriple& t, int piv,
                                 double tol, const OracleOptions& opt) {
  if (d != 2 && d != 3)
    throw std::invalid_argument("joining oracle supports d in {2,3} only");
  const JoiningBasis& jb = joining_basis(d);
  FeasibilityResult res;
  res.tol = tol;
  long evals = 0;

  auto eig_cplx = [&](double e, double f) {
    ++evals;
    return min_eigenvalue(assemble_cplx(jb, joining_coeffs(d, t, e), f, piv));
  };
  auto eig_real = [&](double e) {
    ++evals;
    return min_eigenvalue_real(assemble_real(jb, joining_coeffs(d, t, e), piv));
  };

  double best = 0.0;
  std::vector<double> params;
  if (opt.even_f_reduction) {
    // the objective is even and concave in f, so f* = 0; for d = 2 the
    // remaining coefficient is a gauge freedom and no search is needed.
    if (d == 2) {
      best = eig_real(0.0);
      params = {0.0};
    } else {
      double estar = 0.0;
      best = golden_max_1d(eig_real, -opt.box, opt.box, opt.iterations, &estar);
      params = {estar, 0.0};
    }
  } else if (d == 2) {
    double fstar = 0.0;
    best = golden_max_1d([&](double f) { return eig_cplx(0.0, f); }, -opt.box,
                         opt.box, opt.iterations, &fstar);
    params = {fstar};
  } else {
    double estar = 0.0, fstar = 0.0;
    auto inner = [&](double e) {
      return golden_max_1d([&](double f) { return eig_cplx(e, f); }, -opt.box,
                           opt.box, opt.iterations, nullptr);
    };
    best = golden_max_1d(inner, -opt.box, opt.box, opt.iterations, &estar);
    golden_max_1d([&](double f) { return eig_cplx(estar, f); }, -opt.box,
                  opt.box, opt.iterations, &fstar);
    best = eig_cplx(estar, fstar);
    params = {estar, fstar};
  }

  res.feasible = best >= -tol;
  res.best_min_eigenvalue = best;
  res.best_free_params = std::move(params);
  res.evaluations = evals;
  return res;
}

}  // namespace

DenseOperator invariant_joining_operator(int d, const EtaTriple& t, double e,
                                         double f) {
  const JoiningBasis& jb = joining_basis(d);
  return {QuditSpace::homogeneous(3, d),
          assemble_cplx(jb, joining_coeffs(d, t, e), f, 3)};
}

FeasibilityResult oracle_state_joinable(int d, const EtaTriple& t, double tol,
                                        const OracleOptions& opt) {
  return joining_search(d, t, 3, tol, opt);
}

FeasibilityResult oracle_channel_joinable(int d, const EtaTriple& t,
                                          Pivot pivot, double tol,
                                          const OracleOptions& opt) {
  return joining_search(d, t, static_cast<int>(pivot), tol, opt);
}

FeasibilityResult oracle_local_positive_joinable(const EtaTriple& t,
                                                 double tol) {
  const double p = t.ab, q = t.ac, r = t.bc;
  auto F = [&](double th, double om) {
    return 0.25 *
           (1.0 + p * std::cos(th) + q * std::cos(om) + r * std::cos(th + om));
  };

  constexpr int N = 360;
  static std::array<double, N> ct = [] {
    std::array<double, N> c{};
    for (int i = 0; i < N; ++i) c[size_t(i)] = std::cos(2.0 * M_PI * i / N);
    return c;
  }();
  static std::array<double, N> st = [] {
    std::array<double, N> s{};
    for (int i = 0; i < N; ++i) s[size_t(i)] = std::sin(2.0 * M_PI * i / N);
    return s;
  }();

  struct Cell {
    double val;
    int i, j;
  };
  std::array<Cell, 5> best{};
  best.fill({1e300, 0, 0});
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const double csum = ct[size_t(i)] * ct[size_t(j)] -
                          st[size_t(i)] * st[size_t(j)];
      const double v =
          0.25 * (1.0 + p * ct[size_t(i)] + q * ct[size_t(j)] + r * csum);
      if (v < best.back().val) {
        best.back() = {v, i, j};
        std::sort(best.begin(), best.end(),
                  [](const Cell& x, const Cell& y) { return x.val < y.val; });
      }
    }

  double fmin = best.front().val;
  double th_best = 2.0 * M_PI * best.front().i / N;
  double om_best = 2.0 * M_PI * best.front().j / N;
  for (const Cell& c : best) {
    double th = 2.0 * M_PI * c.i / N, om = 2.0 * M_PI * c.j / N;
    for (int it = 0; it < 30; ++it) {
      const double sth = std::sin(th), cth = std::cos(th);
      const double som = std::sin(om), com = std::cos(om);
      const double ssum = std::sin(th + om), csum = std::cos(th + om);
      const double gth = -0.25 * (p * sth + r * ssum);
      const double gom = -0.25 * (q * som + r * ssum);
      const double hthth = -0.25 * (p * cth + r * csum);
      const double homom = -0.25 * (q * com + r * csum);
      const double hcross = -0.25 * r * csum;
      const double det = hthth * homom - hcross * hcross;
      if (std::abs(det) < 1e-14) break;
      double dth = -(homom * gth - hcross * gom) / det;
      double dom = -(-hcross * gth + hthth * gom) / det;
      const double step = std::hypot(dth, dom);
      if (step > 0.5) {
        dth *= 0.5 / step;
        dom *= 0.5 / step;
      }
      th += dth;
      om += dom;
      if (step < 1e-14) break;
    }
    const double v = F(th, om);
    if (v < fmin) {
      fmin = v;
      th_best = th;
      om_best = om;
    }
  }

  FeasibilityResult res;
  res.tol = tol;
  res.feasible = fmin >= -tol;
  res.best_min_eigenvalue = fmin;
  res.best_free_params = {th_best, om_best};
  res.evaluations = long(N) * N + 5 * 30;
  return res;
}

BlockPositiveResult oracle_block_positive(const DenseOperator& m, double tol,
                                          std::uint64_t seed, int starts,
                                          int sweeps) {
  if (m.space().subsystems() != 2)
    throw std::invalid_argument("oracle_block_positive: bipartite operator required");
  const int da = m.space().dim(0), db = m.space().dim(1);
  const cmat& M = m.matrix();
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);

  auto random_state = [&](int dim) {
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cplx(nd(gen), nd(gen));
    v.normalize();
    return v;
  };

  BlockPositiveResult res;
  res.best_value = 1e300;
  long evals = 0;
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXcd psi = random_state(da);
    double value = 1e300;
    for (int it = 0; it < sweeps; ++it) {
      // contract the A side: B(psi)[k,l] = <psi (x) k| M |psi (x) l>
      cmat Bm = cmat::Zero(db, db);
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
          Bm += std::conj(psi(i)) * psi(j) * M.block(i * db, j * db, db, db);
      Eigen::SelfAdjointEigenSolver<cmat> esb(Bm);
      Eigen::VectorXcd phi = esb.eigenvectors().col(0);
      // contract the B side
      cmat Am = cmat::Zero(da, da);
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
          Am(i, j) = (phi.adjoint() * M.block(i * db, j * db, db, db) * phi)(0);
      Eigen::SelfAdjointEigenSolver<cmat> esa(Am);
      psi = esa.eigenvectors().col(0);
      const double v = esa.eigenvalues()(0);
      evals += 2;
      if (value - v < 1e-12) {
        value = std::min(value, v);
        break;
      }
      value = v;
    }
    res.best_value = std::min(res.best_value, value);
  }
  res.evaluations = evals;
  res.positive = res.best_value >= -tol;
  return res;
}

cmat random_unitary(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> nd(0.0, 1.0);
  cmat G(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) G(i, j) = cplx(nd(gen), nd(gen));
  Eigen::HouseholderQR<cmat> qr(G);
  cmat Q = qr.householderQ();
  cmat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    cplx r = R(j, j);
    Q.col(j) *= (r == cplx(0.0)) ? 1.0 : r / std::abs(r);
  }
  return Q;
}

cmat random_hermitian(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> nd(0.0, 1.0);
  cmat G(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) G(i, j) = cplx(nd(gen), nd(gen));
  return 0.5 * (G + G.adjoint());
}

DenseOperator random_density(const QuditSpace& space, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  const long n = space.total_dim();
  cmat G(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) G(i, j) = cplx(nd(gen), nd(gen));
  cmat rho = G * G.adjoint();
  rho /= rho.trace();
  return {space, std::move(rho)};
}

LinearMapRep random_cptp(int d, std::uint64_t seed) {
  // Ginibre-style PSD Choi, whitened on the input marginal so the map is
  // trace-preserving.
  DenseOperator C = random_density(QuditSpace{d, d}, seed);
  DenseOperator rodA = partial_trace(C, {0});
  Eigen::SelfAdjointEigenSolver<cmat> es(rodA.matrix());
  cmat isqrt = cmat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double v = std::max(es.eigenvalues()(i), 1e-14);
    isqrt += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint() /
             std::sqrt(v);
  }
  DenseOperator W = kron(DenseOperator(QuditSpace{d}, isqrt),
                         DenseOperator::identity(QuditSpace{d}));
  cmat J = W.matrix() * C.matrix() * W.matrix();
  J /= double(d);
  DenseOperator choi_op(QuditSpace{d, d}, std::move(J));
  return inverse_homocorrelation(partial_transpose(choi_op, {0}));
}

std::pair<double, double> oracle_agreement_extrema(int d, int n, Cone cone,
                                                   int samples,
                                                   std::uint64_t seed) {
  if (cone == Cone::Channel && n != 2)
    throw std::invalid_argument("bipartite only");
  const AgreementPovm povm = agreement_povm(d, n);
  const QuditSpace sp = QuditSpace::homogeneous(n, d);

  std::vector<DenseOperator> candidates;
  if (cone == Cone::State) {
    DenseOperator sym = symmetric_projector(d, n);
    const double tsym = sym.trace().real();
    candidates.push_back({sp, sym.matrix() / tsym});
    cmat comp = cmat::Identity(sp.total_dim(), sp.total_dim()) - sym.matrix();
    candidates.push_back({sp, comp / comp.trace()});
    for (int k = 0; k < samples; ++k)
      candidates.push_back(random_density(sp, seed + std::uint64_t(k)));
  } else {
    DenseOperator V = swap_operator(d);
    candidates.push_back({sp, V.matrix() / double(d)});
    cmat lo = cmat::Identity(d * d, d * d) - V.matrix() / double(d);
    candidates.push_back({sp, lo / (double(d) * d - 1.0)});
    for (int k = 0; k < samples; ++k)
      candidates.push_back(
          homocorrelation(random_cptp(d, seed + std::uint64_t(k))));
  }

  double lo = 1e300, hi = -1e300;
  for (const auto& w : candidates) {
    const double a = agreement_probability(w, povm);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return {lo, hi};
}

}  // namespace joinlab
