#include <doctest.h>

#include <random>

#include "joinlab/agreement.hpp"
#include "joinlab/brauer.hpp"
#include "joinlab/maps.hpp"
#include "joinlab/oracle.hpp"
#include "test_helpers.hpp"

using namespace joinlab;
using joinlab::testing::max_abs_diff;

TEST_CASE("agreement povm construction") {
  SUBCASE("two qubits") {
    const AgreementPovm p = agreement_povm(2, 2);
    // e_agree = (2/3) * symmetric projector, trace 2
    CHECK(p.e_agree.trace().real() == doctest::Approx(2.0).epsilon(1e-14));
    cmat expect = (2.0 / 3.0) * 0.5 *
                  (cmat::Identity(4, 4) + swap_operator(2).matrix());
    CHECK(max_abs_diff(p.e_agree.matrix(), expect) <= 1e-14);
  }
  SUBCASE("singlet never agrees") {
    const AgreementPovm p = agreement_povm(2, 2);
    DenseOperator singlet{
        QuditSpace{2, 2},
        0.5 * (cmat::Identity(4, 4) - swap_operator(2).matrix())};
    CHECK(std::abs(agreement_probability(singlet, p)) <= 1e-14);
  }
  SUBCASE("qutrit symmetric dimension") {
    const AgreementPovm p = agreement_povm(3, 2);
    // dim of the symmetric subspace is 6, so tr(e_agree) = 3 * 6 / 6
    DenseOperator sym = symmetric_projector(3, 2);
    CHECK(sym.trace().real() == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(max_abs_diff(p.e_agree.matrix(), 0.5 * sym.matrix()) <= 1e-14);
  }
  SUBCASE("povm completeness and positivity") {
    for (const auto& [d, n] : std::vector<std::pair<int, int>>{
             {2, 2}, {3, 2}, {2, 3}, {2, 4}}) {
      const AgreementPovm p = agreement_povm(d, n);
      CHECK(max_abs_diff(p.e_agree.matrix() + p.e_disagree.matrix(),
                         cmat::Identity(p.e_agree.dim(), p.e_agree.dim())) <=
            1e-12);
      CHECK(min_eigenvalue(p.e_agree) >= -1e-12);
      CHECK(min_eigenvalue(p.e_disagree) >= -1e-12);
    }
  }
  SUBCASE("collective twirl invariance") {
    std::mt19937_64 gen(3);
    const AgreementPovm p = agreement_povm(2, 3);
    for (int k = 0; k < 20; ++k) {
      cmat u = random_unitary(2, gen);
      DenseOperator U{QuditSpace{2}, u};
      DenseOperator coll = kron(kron(U, U), U);
      CHECK(max_abs_diff(
                coll.matrix() * p.e_agree.matrix() * coll.matrix().adjoint(),
                p.e_agree.matrix()) <= 1e-10);
    }
  }
  SUBCASE("dimension cap") {
    CHECK_THROWS_WITH_AS(agreement_povm(2, 13), "agreement_povm: dimension cap exceeded",
                         std::invalid_argument);
    CHECK_NOTHROW(agreement_povm(2, 12));
  }
  SUBCASE("permutation average equals the content formula") {
    // the n > 6 construction switches implementation; check consistency at
    // a size where both paths are cheap
    DenseOperator direct = symmetric_projector(2, 5);
    // projector property and symmetric dimension pin the operator
    CHECK(max_abs_diff(direct.matrix() * direct.matrix(), direct.matrix()) <=
          1e-12);
    CHECK(direct.trace().real() == doctest::Approx(6.0).epsilon(1e-12));
  }
}

TEST_CASE("agreement probability") {
  SUBCASE("werner operators reproduce the alpha parameterization") {
    for (int d : {2, 3}) {
      const AgreementPovm p = agreement_povm(d, 2);
      for (double eta : {-0.8, -0.3, 0.0, 0.2, 1.0}) {
        CHECK(agreement_probability(werner_operator({d, eta}), p) ==
              doctest::Approx(alpha_of_eta(d, eta)).epsilon(1e-13));
      }
    }
  }
  SUBCASE("maximally mixed state") {
    const AgreementPovm p = agreement_povm(2, 3);
    DenseOperator mm{QuditSpace::homogeneous(3, 2),
                     cmat::Identity(8, 8) / 8.0};
    CHECK(agreement_probability(mm, p) ==
          doctest::Approx(p.e_agree.trace().real() / 8.0).epsilon(1e-14));
  }
  SUBCASE("identity channel operator agrees with certainty") {
    const AgreementPovm p = agreement_povm(2, 2);
    DenseOperator v2{QuditSpace{2, 2}, 0.5 * swap_operator(2).matrix()};
    CHECK(agreement_probability(v2, p) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("mismatched spaces rejected") {
    const AgreementPovm p = agreement_povm(2, 2);
    DenseOperator mm{QuditSpace{3, 3}, cmat::Identity(9, 9) / 9.0};
    CHECK_THROWS_AS(agreement_probability(mm, p), std::invalid_argument);
  }
}

TEST_CASE("agreement bounds") {
  CHECK(agreement_bounds(2, 2, AgreementCone::State) ==
        std::pair<double, double>{0.0, 2.0 / 3.0});
  CHECK(agreement_bounds(2, 2, AgreementCone::Channel) ==
        std::pair<double, double>{1.0 / 3.0, 1.0});
  CHECK(agreement_bounds(2, 3, AgreementCone::State).second ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(agreement_bounds(3, 2, AgreementCone::State).second ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_WITH_AS(agreement_bounds(2, 3, AgreementCone::Channel),
                       "bipartite only", std::invalid_argument);
}

TEST_CASE("sampled cone extrema stay inside the closed-form bounds") {
  for (int d : {2, 3}) {
    const auto sb = agreement_bounds(d, 2, AgreementCone::State);
    const auto se = oracle_agreement_extrema(d, 2, Cone::State, 60, 11);
    CHECK(se.first >= sb.first - 1e-9);
    CHECK(se.second <= sb.second + 1e-9);
    CHECK(se.second == doctest::Approx(sb.second).epsilon(1e-12));
    CHECK(se.first == doctest::Approx(sb.first).epsilon(1e-12));

    const auto cb = agreement_bounds(d, 2, AgreementCone::Channel);
    const auto ce = oracle_agreement_extrema(d, 2, Cone::Channel, 60, 13);
    CHECK(ce.first >= cb.first - 1e-9);
    CHECK(ce.second <= cb.second + 1e-9);
    CHECK(ce.first == doctest::Approx(cb.first).epsilon(1e-12));
    CHECK(ce.second == doctest::Approx(cb.second).epsilon(1e-12));
  }
}

TEST_CASE("multiparty bound attained by the normalized symmetric projector") {
  const AgreementPovm p = agreement_povm(2, 3);
  DenseOperator sym = symmetric_projector(2, 3);
  DenseOperator w{sym.space(), sym.matrix() / sym.trace()};
  CHECK(agreement_probability(w, p) == doctest::Approx(0.5).epsilon(1e-12));
  const auto got = oracle_agreement_extrema(2, 3, Cone::State, 40, 3);
  CHECK(got.second == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(got.first >= -1e-12);
}

TEST_CASE("derived task bounds") {
  SUBCASE("closed forms") {
    CHECK(derived_task_bounds(2).cloning_alpha_max ==
          doctest::Approx(5.0 / 6).epsilon(1e-15));
    CHECK(derived_task_bounds(1000000).cloning_alpha_max ==
          doctest::Approx(0.5).epsilon(1e-5));
    REQUIRE(derived_task_bounds(2).sharability_alpha_bound_qubit.has_value());
    CHECK(*derived_task_bounds(2).sharability_alpha_bound_qubit ==
          doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK_FALSE(derived_task_bounds(3).sharability_alpha_bound_qubit.has_value());
  }
  SUBCASE("executable chain reproduces the constants") {
    for (int d = 2; d <= 6; ++d)
      CHECK(cloning_alpha_from_classical_chain(d) ==
            doctest::Approx((d + 3.0) / (2.0 * (d + 1.0))).epsilon(1e-15));
    CHECK(sharability_alpha_from_classical_chain() ==
          doctest::Approx(1.0 / 6).epsilon(1e-15));
  }
  SUBCASE("cloning bound maps to the channel-joinability face") {
    // alpha = 5/6 corresponds to eta = 2/3 through the Werner agreement
    CHECK(eta_of_alpha(2, 5.0 / 6) == doctest::Approx(2.0 / 3).epsilon(1e-15));
  }
}
