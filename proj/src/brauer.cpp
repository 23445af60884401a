#include "joinlab/brauer.hpp"

#include <algorithm>
#include <stdexcept>

namespace joinlab {

DenseOperator werner_operator(const WernerParams& p) {
  return brauer_operator({p.d, p.eta, 0.0});
}

DenseOperator brauer_operator(const BrauerParams& p) {
  if (p.d < 2) throw std::invalid_argument("brauer_operator: d >= 2 required");
  const int d = p.d;
  DenseOperator I = DenseOperator::identity(QuditSpace{d, d});
  DenseOperator V = swap_operator(d);
  DenseOperator E = partial_transpose(V, {0});  // d |Phi+><Phi+|
  cmat m = (1.0 - p.eta - p.beta) / double(d) / double(d) * I.matrix() +
           p.eta / double(d) * V.matrix() + p.beta / double(d) * E.matrix();
  return {QuditSpace{d, d}, std::move(m)};
}

std::array<EigenLine, 3> brauer_spectrum(const BrauerParams& p) {
  const double d = p.d;
  const double base = (1.0 - p.eta - p.beta) / (d * d);
  const int n_anti = p.d * (p.d - 1) / 2;
  const int n_y = p.d * (p.d + 1) / 2 - 1;
  return {EigenLine{base - p.eta / d, n_anti},
          EigenLine{base + p.eta / d + p.beta, 1},
          EigenLine{base + p.eta / d, n_y}};
}

Verdict is_state_positive(const BrauerParams& p) {
  const double d = p.d;
  const double s1 = 1.0 - (d + 1) * p.eta - p.beta;
  const double s2 = 1.0 + (d - 1) * p.eta + (d * d - 1) * p.beta;
  const double s3 = 1.0 + (d - 1) * p.eta - p.beta;
  const double m = std::min({s1, s2, s3});
  return {m >= -kBoundarySlack, m};
}

Verdict is_channel_positive(const BrauerParams& p) {
  return is_state_positive({p.d, p.beta, p.eta});
}

Verdict is_local_positive(const BrauerParams& p) {
  const double d = p.d;
  const double s1 = p.eta + p.beta + 1.0 / (d - 1);
  const double s2 = 1.0 - p.eta - p.beta;
  const double s3 = 1.0 + (d - 1) * p.eta - p.beta;
  const double s4 = 1.0 - p.eta + (d - 1) * p.beta;
  const double m = std::min({s1, s2, s3, s4});
  return {m >= -kBoundarySlack, m};
}

DenseOperator tripartite_werner_operator(const TripartiteWernerParams& t) {
  const QuditSpace sp = QuditSpace::homogeneous(3, 2);
  DenseOperator I = DenseOperator::identity(sp);
  DenseOperator Vab = permutation_operator(sp, {1, 0, 2});
  DenseOperator Vac = permutation_operator(sp, {2, 1, 0});
  DenseOperator Vbc = permutation_operator(sp, {0, 2, 1});
  DenseOperator Vabc = permutation_operator(sp, {1, 2, 0});
  DenseOperator Vcba = permutation_operator(sp, {2, 0, 1});
  cmat m = I.matrix() / 8.0;
  auto add_pair = [&](double eta, const DenseOperator& V) {
    m += eta / 4.0 * (V.matrix() - I.matrix() / 2.0);
  };
  add_pair(t.eta_ab, Vab);
  add_pair(t.eta_ac, Vac);
  add_pair(t.eta_bc, Vbc);
  m += cplx(0.0, t.f / 2.0) * (Vabc.matrix() - Vcba.matrix());
  return {sp, std::move(m)};
}

double alpha_of_eta(int d, double eta) {
  if (d < 2) throw std::invalid_argument("alpha_of_eta: d >= 2 required");
  return (1.0 + (d - 1) * eta) / d;
}

double eta_of_alpha(int d, double alpha) {
  if (d < 2) throw std::invalid_argument("eta_of_alpha: d >= 2 required");
  return (d * alpha - 1.0) / (d - 1);
}

std::array<std::array<double, 2>, 3> state_polygon_vertices(int d) {
  const double dd = d;
  const double den = (dd - 1) * (dd + 2);
  return {std::array<double, 2>{0.0, 1.0},
          std::array<double, 2>{dd / den, -2.0 / den},
          std::array<double, 2>{-1.0 / (dd - 1), 0.0}};
}

std::array<std::array<double, 2>, 3> channel_polygon_vertices(int d) {
  auto v = state_polygon_vertices(d);
  for (auto& p : v) std::swap(p[0], p[1]);
  return v;
}

std::array<std::array<double, 2>, 4> local_polygon_vertices(int d) {
  const double r = 1.0 / (d - 1.0);
  return {std::array<double, 2>{0.0, 1.0}, std::array<double, 2>{1.0, 0.0},
          std::array<double, 2>{-r, 0.0}, std::array<double, 2>{0.0, -r}};
}

}  // namespace joinlab
