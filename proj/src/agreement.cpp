#include "joinlab/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace joinlab {

namespace {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long ipow(int base, int exp) {
  long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace

DenseOperator symmetric_projector(int d, int n) {
  if (d < 2 || n < 2)
    throw std::invalid_argument("symmetric_projector: d >= 2, n >= 2 required");
  const QuditSpace sp = QuditSpace::homogeneous(n, d);
  const long dim = sp.total_dim();

  if (n <= 6) {
    // literal permutation average
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    cmat acc = cmat::Zero(dim, dim);
    long count = 0;
    do {
      acc += permutation_operator(sp, perm).matrix();
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {sp, acc / double(count)};
  }

  // content-count formula: <x| P |y> = [content(x)=content(y)] *
  // prod_s counts_s! / n!, which equals the permutation average.
  auto content = [&](long idx) {
    std::vector<int> cnt(size_t(d), 0);
    for (int k = 0; k < n; ++k) {
      cnt[size_t(idx % d)]++;
      idx /= d;
    }
    return cnt;
  };
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  cmat P = cmat::Zero(dim, dim);
  std::vector<std::vector<int>> contents(static_cast<size_t>(dim));
  for (long x = 0; x < dim; ++x) contents[size_t(x)] = content(x);
  for (long x = 0; x < dim; ++x) {
    double w = 1.0;
    for (int c : contents[size_t(x)])
      for (int i = 2; i <= c; ++i) w *= i;
    w /= nfact;
    for (long y = 0; y < dim; ++y)
      if (contents[size_t(x)] == contents[size_t(y)]) P(x, y) = w;
  }
  return {sp, std::move(P)};
}

AgreementPovm agreement_povm(int d, int n) {
  if (d < 2 || n < 2)
    throw std::invalid_argument("agreement_povm: d >= 2, n >= 2 required");
  if (ipow(d, n) > 4096)
    throw std::invalid_argument("agreement_povm: dimension cap exceeded");
  DenseOperator sym = symmetric_projector(d, n);
  const double scale = double(d) / double(binom(d + n - 1, n));
  DenseOperator e_agree(sym.space(), scale * sym.matrix());
  DenseOperator e_disagree =
      DenseOperator::identity(sym.space()) - e_agree;
  return {d, n, std::move(e_agree), std::move(e_disagree)};
}

double agreement_probability(const DenseOperator& w, const AgreementPovm& povm) {
  if (w.space() != povm.e_agree.space())
    throw std::invalid_argument("agreement_probability: dimension mismatch");
  return (w.matrix() * povm.e_agree.matrix()).trace().real();
}

std::pair<double, double> agreement_bounds(int d, int n, AgreementCone cone) {
  if (d < 2 || n < 2)
    throw std::invalid_argument("agreement_bounds: d >= 2, n >= 2 required");
  if (cone == AgreementCone::Channel) {
    if (n != 2) throw std::invalid_argument("bipartite only");
    return {1.0 / (d + 1), 1.0};
  }
  return {0.0, double(d) / double(binom(d - 1 + n, n))};
}

double cloning_alpha_from_classical_chain(int d) {
  // alpha_BC pinned at the state-cone maximum; the binding classical
  // inequality alpha_AB + alpha_AC - alpha_BC <= 1 with alpha_AB = alpha_AC
  // gives the optimal symmetric agreement.
  const double alpha_bc = 2.0 / (d + 1);
  return (1.0 + alpha_bc) / 2.0;
}

double sharability_alpha_from_classical_chain() {
  // d = 2: the sum inequality alpha_AB + alpha_AC + alpha_BC >= 1 with
  // alpha_BC at the state maximum bounds the symmetric agreement from below.
  const double alpha_bc = 2.0 / 3.0;
  return (1.0 - alpha_bc) / 2.0;
}

DerivedTaskBounds derived_task_bounds(int d) {
  if (d < 2) throw std::invalid_argument("derived_task_bounds: d >= 2 required");
  DerivedTaskBounds b{(d + 3.0) / (2.0 * (d + 1.0)), std::nullopt};
  if (d == 2) b.sharability_alpha_bound_qubit = 1.0 / 6.0;
  return b;
}

}  // namespace joinlab
