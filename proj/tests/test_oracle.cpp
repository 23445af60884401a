#include <doctest.h>

#include <cmath>
#include <random>

#include "joinlab/agreement.hpp"
#include "joinlab/maps.hpp"
#include "joinlab/oracle.hpp"
#include "test_helpers.hpp"

using namespace joinlab;
using joinlab::testing::max_abs_diff;

TEST_CASE("invariant joining family marginals") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int d : {2, 3}) {
    for (int k = 0; k < 4; ++k) {
      const EtaTriple t{u(gen), u(gen), u(gen)};
      DenseOperator w = invariant_joining_operator(d, t, 0.05 * k, 0.1 * k);
      CHECK(std::abs(w.trace() - cplx(1.0)) <= 1e-12);
      CHECK(w.is_hermitian(1e-12));
      CHECK(max_abs_diff(partial_trace(w, {0, 1}).matrix(),
                         werner_operator({d, t.ab}).matrix()) <= 1e-12);
      CHECK(max_abs_diff(partial_trace(w, {0, 2}).matrix(),
                         werner_operator({d, t.ac}).matrix()) <= 1e-12);
      CHECK(max_abs_diff(partial_trace(w, {1, 2}).matrix(),
                         werner_operator({d, t.bc}).matrix()) <= 1e-12);
    }
  }
}

TEST_CASE("state joinability oracle, d=2") {
  SUBCASE("origin is feasible with f* near zero") {
    auto r = oracle_state_joinable(2, {0, 0, 0});
    CHECK(r.feasible);
    CHECK(std::abs(r.best_free_params.at(0)) <= 1e-6);
    CHECK(r.best_min_eigenvalue == doctest::Approx(1.0 / 8).epsilon(1e-9));
  }
  SUBCASE("two singlets sharing a party are infeasible") {
    CHECK_FALSE(oracle_state_joinable(2, {-1, -1, 0}).feasible);
  }
  SUBCASE("singlet plus maximally mixed pairs sit on the boundary") {
    auto r = oracle_state_joinable(2, {-1, 0, 0});
    CHECK(r.feasible);
    CHECK(std::abs(r.best_min_eigenvalue) <= 1e-9);
    // the boundary point is already attained on the f = 0 slice
    CHECK(min_eigenvalue(invariant_joining_operator(2, {-1, 0, 0}, 0, 0)) >=
          -1e-12);
  }
  SUBCASE("symmetric line flips at 1/3") {
    const double hi = 1.0 / 3.0;
    CHECK(oracle_state_joinable(2, {hi - 1e-4, hi - 1e-4, hi - 1e-4}).feasible);
    CHECK_FALSE(
        oracle_state_joinable(2, {hi + 1e-4, hi + 1e-4, hi + 1e-4}).feasible);
    CHECK(oracle_state_joinable(2, {-hi + 1e-4, -hi + 1e-4, -hi + 1e-4})
              .feasible);
    CHECK_FALSE(oracle_state_joinable(2, {-hi - 1e-4, -hi - 1e-4, -hi - 1e-4})
                    .feasible);
  }
  SUBCASE("unsupported dimension") {
    CHECK_THROWS_AS(oracle_state_joinable(5, {0, 0, 0}), std::invalid_argument);
  }
}

TEST_CASE("channel joinability oracle, d=2") {
  SUBCASE("origin is feasible for every pivot") {
    for (Pivot p : {Pivot::A, Pivot::B, Pivot::C})
      CHECK(oracle_channel_joinable(2, {0, 0, 0}, p).feasible);
  }
  SUBCASE("perfect double cloning is infeasible for every opposite pair") {
    for (int k = 0; k <= 20; ++k) {
      const double bc = -1.0 + 2.0 * k / 20.0;
      CHECK_FALSE(oracle_channel_joinable(2, {1, 1, bc}, Pivot::A).feasible);
    }
  }
  SUBCASE("symmetric cloning face flips at 2/3") {
    // the feasible window of the opposite pair shrinks to the point 1/3 as
    // the cross pairs approach 2/3; probe the center of that window
    auto feasible = [&](double eta) {
      const double bc = 0.5 * ((2 * eta - 1) + 1.0 / 3);
      return oracle_channel_joinable(2, {eta, eta, bc}, Pivot::A).feasible;
    };
    CHECK(feasible(2.0 / 3 - 1e-3));
    CHECK_FALSE(feasible(2.0 / 3 + 1e-3));
    // the known optimum: cross pairs 2/3, opposite pair 1/3
    auto r = oracle_channel_joinable(2, {2.0 / 3, 2.0 / 3, 1.0 / 3}, Pivot::A);
    CHECK(r.feasible);
    CHECK(std::abs(r.best_min_eigenvalue) <= 1e-8);
  }
}

TEST_CASE("d=3 joining searches") {
  SUBCASE("origin feasible, state and channel") {
    CHECK(oracle_state_joinable(3, {0, 0, 0}).feasible);
    CHECK(oracle_channel_joinable(3, {0, 0, 0}, Pivot::A).feasible);
  }
  SUBCASE("fast reduction matches the full search") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int k = 0; k < 4; ++k) {
      const EtaTriple t{u(gen), u(gen), u(gen)};
      const OracleOptions fast{48, 4.0, true};
      const OracleOptions full{40, 4.0, false};
      auto rs = oracle_state_joinable(3, t, 1e-9, fast);
      auto rf = oracle_state_joinable(3, t, 1e-9, full);
      CHECK(std::abs(rs.best_min_eigenvalue - rf.best_min_eigenvalue) <= 1e-6);
      auto cs = oracle_channel_joinable(3, t, Pivot::B, 1e-9, fast);
      auto cf = oracle_channel_joinable(3, t, Pivot::B, 1e-9, full);
      CHECK(std::abs(cs.best_min_eigenvalue - cf.best_min_eigenvalue) <= 1e-6);
    }
  }
}

TEST_CASE("objective concavity and evenness in the free parameters") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 100; ++k) {
    const EtaTriple t{u(gen), u(gen), u(gen)};
    const double f1 = 2.0 * u(gen), f2 = 2.0 * u(gen);
    auto eig = [&](double f) {
      return min_eigenvalue(invariant_joining_operator(2, t, 0.0, f));
    };
    // midpoint concavity
    CHECK(eig(0.5 * (f1 + f2)) >= 0.5 * (eig(f1) + eig(f2)) - 1e-12);
    // evenness
    CHECK(std::abs(eig(f1) - eig(-f1)) <= 1e-12);
  }
}

TEST_CASE("local positivity oracle") {
  SUBCASE("interior, boundary and exterior reference points") {
    auto origin = oracle_local_positive_joinable({0, 0, 0});
    CHECK(origin.feasible);
    CHECK(origin.best_min_eigenvalue == doctest::Approx(0.25).epsilon(1e-12));

    auto edge = oracle_local_positive_joinable({2.0 / 3, 2.0 / 3, 2.0 / 3});
    CHECK(std::abs(edge.best_min_eigenvalue) <= 1e-8);

    auto out = oracle_local_positive_joinable({1, 1, 1});
    CHECK_FALSE(out.feasible);
    CHECK(out.best_min_eigenvalue == doctest::Approx(-0.125).epsilon(1e-10));
    // minimizing angles sit at (2 pi/3, 2 pi/3) up to symmetry
    const double th = out.best_free_params.at(0);
    const double om = out.best_free_params.at(1);
    const double c0 = std::cos(2 * M_PI / 3);
    CHECK(std::abs(std::cos(th) - c0) <= 1e-6);
    CHECK(std::abs(std::cos(om) - c0) <= 1e-6);
  }
}

TEST_CASE("block positivity search") {
  SUBCASE("normalized swap is block positive") {
    DenseOperator v2{QuditSpace{2, 2}, 0.5 * swap_operator(2).matrix()};
    auto r = oracle_block_positive(v2, 1e-9, 5);
    CHECK(r.positive);
    CHECK(std::abs(r.best_value) <= 1e-9);  // zero at orthogonal vectors
  }
  SUBCASE("werner line flips at the local positivity edge") {
    for (int d : {2, 3}) {
      const double edge = -1.0 / (d - 1);
      CHECK(oracle_block_positive(werner_operator({d, edge + 1e-3}), 1e-9, 7)
                .positive);
      CHECK_FALSE(
          oracle_block_positive(werner_operator({d, edge - 1e-3}), 1e-9, 7)
              .positive);
    }
  }
  SUBCASE("shifted singlet projector is not block positive") {
    cmat singlet = 0.5 * (cmat::Identity(4, 4) - swap_operator(2).matrix());
    DenseOperator m{QuditSpace{2, 2},
                    singlet - 0.01 * cmat::Identity(4, 4)};
    auto r = oracle_block_positive(m, 1e-9, 11);
    CHECK_FALSE(r.positive);
    CHECK(r.best_value == doctest::Approx(-0.01).epsilon(1e-6));
  }
}

TEST_CASE("seeded samplers") {
  SUBCASE("density contract and determinism") {
    DenseOperator a = random_density(QuditSpace{2, 2}, 99);
    DenseOperator b = random_density(QuditSpace{2, 2}, 99);
    CHECK(max_abs_diff(a.matrix(), b.matrix()) == 0.0);
    CHECK(std::abs(a.trace() - cplx(1.0)) <= 1e-12);
    CHECK(min_eigenvalue(a) >= -1e-12);
    DenseOperator c = random_density(QuditSpace{2, 2}, 100);
    CHECK(max_abs_diff(a.matrix(), c.matrix()) > 1e-3);
  }
  SUBCASE("cptp sampler contract and determinism") {
    LinearMapRep m = random_cptp(3, 12345);
    CHECK(is_cptp(m));
    CHECK(m.is_trace_preserving(1e-9));
    CHECK(min_eigenvalue(choi(m)) >= -1e-10);
    LinearMapRep m2 = random_cptp(3, 12345);
    CHECK(max_abs_diff(m.action(), m2.action()) == 0.0);
  }
  SUBCASE("haar sampler is unitary") {
    std::mt19937_64 gen(31);
    for (int k = 0; k < 5; ++k) {
      cmat u = random_unitary(3, gen);
      CHECK(max_abs_diff(u * u.adjoint(), cmat::Identity(3, 3)) <= 1e-12);
    }
  }
}

TEST_CASE("agreement extrema oracle") {
  const auto st = oracle_agreement_extrema(2, 2, Cone::State, 50, 7);
  CHECK(st.first >= -1e-12);
  CHECK(st.second <= 2.0 / 3 + 1e-12);
  CHECK(st.second == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(st.first == doctest::Approx(0.0).epsilon(1e-12));

  const auto ch = oracle_agreement_extrema(2, 2, Cone::Channel, 50, 7);
  CHECK(ch.first == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(ch.second == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(oracle_agreement_extrema(2, 3, Cone::Channel, 5, 1),
                       "bipartite only", std::invalid_argument);
}
