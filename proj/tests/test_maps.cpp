#include <doctest.h>

#include <random>

#include "joinlab/brauer.hpp"
#include "joinlab/maps.hpp"
#include "joinlab/oracle.hpp"
#include "test_helpers.hpp"

using namespace joinlab;
using joinlab::testing::max_abs_diff;
using joinlab::testing::random_herm;

namespace {

LinearMapRep random_hp_map(int d, std::mt19937_64& gen) {
  std::uniform_int_distribution<std::uint64_t> u64;
  DenseOperator a = random_density(QuditSpace{d, d}, u64(gen));
  DenseOperator b = random_density(QuditSpace{d, d}, u64(gen));
  DenseOperator j(QuditSpace{d, d}, a.matrix() - 0.3 * b.matrix());
  return inverse_homocorrelation(partial_transpose(j, {0}));
}

}  // namespace

TEST_CASE("depolarizing family") {
  SUBCASE("eta=1 is the identity map") {
    LinearMapRep d1 = depolarizing(2, 1.0);
    CHECK(max_abs_diff(d1.action(), LinearMapRep::identity(2).action()) <=
          1e-15);
  }
  SUBCASE("eta=0 is the constant map") {
    LinearMapRep d0 = depolarizing(2, 0.0);
    CHECK(max_abs_diff(d0.action(),
                       LinearMapRep::completely_depolarizing(2).action()) <=
          1e-15);
  }
  SUBCASE("flags validate") {
    LinearMapRep m = depolarizing(3, 0.4);
    CHECK(m.is_trace_preserving());
    CHECK(m.is_hermiticity_preserving());
  }
  SUBCASE("commutes with unitary conjugation") {
    std::mt19937_64 gen(3);
    LinearMapRep m = depolarizing(3, -0.3);
    for (int k = 0; k < 5; ++k) {
      cmat u = random_unitary(3, gen);
      cmat x = random_herm(3, gen);
      CHECK(max_abs_diff(m.apply(u * x * u.adjoint()),
                         u * m.apply(x) * u.adjoint()) <= 1e-12);
    }
  }
  SUBCASE("lower CPTP endpoint has a zero Choi eigenvalue") {
    LinearMapRep m = depolarizing(3, -1.0 / 8.0);
    CHECK(std::abs(min_eigenvalue(choi(m))) <= 1e-10);
  }
}

TEST_CASE("homocorrelation map") {
  SUBCASE("depolarizing maps to the invariant operator line") {
    for (int d : {2, 3}) {
      for (double eta : {-0.2, 0.0, 0.5, 1.0}) {
        DenseOperator h = homocorrelation(depolarizing(d, eta));
        CHECK(max_abs_diff(h.matrix(), werner_operator({d, eta}).matrix()) <=
              1e-13);
      }
    }
  }
  SUBCASE("identity map gives the normalized swap") {
    DenseOperator h = homocorrelation(LinearMapRep::identity(2));
    CHECK(max_abs_diff(h.matrix(), 0.5 * swap_operator(2).matrix()) <= 1e-15);
  }
  SUBCASE("constant map gives the maximally mixed operator") {
    DenseOperator h = homocorrelation(LinearMapRep::completely_depolarizing(3));
    CHECK(max_abs_diff(h.matrix(), cmat::Identity(9, 9) / 9.0) <= 1e-15);
  }
}

TEST_CASE("choi map") {
  SUBCASE("depolarizing maps to the isotropic line") {
    for (int d : {2, 3}) {
      const double eta = 0.35;
      DenseOperator c = choi(depolarizing(d, eta));
      cmat expect = (1 - eta) * cmat::Identity(d * d, d * d) / double(d * d) +
                    eta * bell_projector(d).matrix();
      CHECK(max_abs_diff(c.matrix(), expect) <= 1e-13);
    }
  }
  SUBCASE("identity map gives the Bell projector") {
    CHECK(max_abs_diff(choi(LinearMapRep::identity(2)).matrix(),
                       bell_projector(2).matrix()) <= 1e-15);
  }
  SUBCASE("choi equals partial transpose of the channel operator") {
    std::mt19937_64 gen(19);
    for (int k = 0; k < 50; ++k) {
      LinearMapRep m = random_hp_map(2 + (k % 2), gen);
      CHECK(max_abs_diff(choi(m).matrix(),
                         partial_transpose(homocorrelation(m), {0}).matrix()) <=
            1e-12);
    }
  }
}

TEST_CASE("inverse homocorrelation") {
  SUBCASE("normalized swap inverts to the identity map") {
    DenseOperator v2{QuditSpace{2, 2}, 0.5 * swap_operator(2).matrix()};
    CHECK(max_abs_diff(inverse_homocorrelation(v2).action(),
                       LinearMapRep::identity(2).action()) <= 1e-15);
  }
  SUBCASE("maximally mixed inverts to the constant map") {
    DenseOperator mm{QuditSpace{3, 3}, cmat::Identity(9, 9) / 9.0};
    CHECK(max_abs_diff(inverse_homocorrelation(mm).action(),
                       LinearMapRep::completely_depolarizing(3).action()) <=
          1e-15);
  }
  SUBCASE("round trip on random trace-one Hermitian operators") {
    std::mt19937_64 gen(29);
    for (int k = 0; k < 50; ++k) {
      cmat h = random_herm(6, gen);
      h /= h.trace();
      DenseOperator m{QuditSpace{2, 3}, h};
      CHECK(max_abs_diff(homocorrelation(inverse_homocorrelation(m)).matrix(),
                         m.matrix()) <= 1e-12);
    }
  }
}

TEST_CASE("correlation expectation") {
  SUBCASE("swap against Z x Z") {
    cmat z(2, 2);
    z << 1, 0, 0, -1;
    DenseOperator v2{QuditSpace{2, 2}, 0.5 * swap_operator(2).matrix()};
    CHECK(correlation_expectation(v2, z, z) == doctest::Approx(1.0));
  }
  SUBCASE("maximally mixed against traceless observables") {
    std::mt19937_64 gen(31);
    cmat a = random_herm(2, gen);
    a -= a.trace() / 2.0 * cmat::Identity(2, 2);
    cmat b = random_herm(2, gen);
    b -= b.trace() / 2.0 * cmat::Identity(2, 2);
    DenseOperator mm{QuditSpace{2, 2}, cmat::Identity(4, 4) / 4.0};
    CHECK(std::abs(correlation_expectation(mm, a, b)) <= 1e-14);
  }
  SUBCASE("dual evaluation identity on random triples") {
    std::mt19937_64 gen(37);
    for (int k = 0; k < 100; ++k) {
      const int d = 2 + (k % 2);
      LinearMapRep m = random_hp_map(d, gen);
      cmat a = random_herm(d, gen), b = random_herm(d, gen);
      const double lhs = correlation_expectation(homocorrelation(m), a, b);
      const double rhs = (m.apply(a) * b).trace().real() / d;
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
  SUBCASE("dimension mismatch is rejected") {
    DenseOperator v2{QuditSpace{2, 2}, swap_operator(2).matrix()};
    CHECK_THROWS_AS(
        correlation_expectation(v2, cmat::Identity(3, 3), cmat::Identity(2, 2)),
        std::invalid_argument);
  }
}

TEST_CASE("channel test") {
  CHECK(is_cptp(depolarizing(2, 0.5)));
  CHECK_FALSE(is_cptp(depolarizing(2, -0.5)));
  CHECK_FALSE(is_cptp(LinearMapRep::transpose_map(2)));
  // Choi of the transpose map is the normalized swap, min eigenvalue -1/d
  CHECK(min_eigenvalue(choi(LinearMapRep::transpose_map(3))) ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("ppt iff the correlations admit a channel") {
  std::mt19937_64 gen(41);
  std::uniform_int_distribution<std::uint64_t> u64;
  int checked = 0;
  for (int k = 0; k < 120; ++k) {
    DenseOperator rho = random_density(QuditSpace{2, 2}, u64(gen));
    const bool ppt = min_eigenvalue(partial_transpose(rho, {0})) >= -1e-10;
    const bool chan = is_cptp(inverse_homocorrelation(rho));
    CHECK(ppt == chan);
    ++checked;
  }
  // Brauer points across all four PPT/NPT x state regions
  for (double eta : {-0.9, -0.3, 0.1, 0.3}) {
    for (double beta : {-0.5, 0.0, 0.4, 0.9}) {
      const BrauerParams p{2, eta, beta};
      if (!is_state_positive(p).positive) continue;
      DenseOperator rho = brauer_operator(p);
      const bool ppt = min_eigenvalue(partial_transpose(rho, {0})) >= -1e-10;
      CHECK(ppt == is_cptp(inverse_homocorrelation(rho)));
      ++checked;
    }
  }
  CHECK(checked > 120);
}
