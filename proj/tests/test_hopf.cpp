#include <catch2/catch_amalgamated.hpp>

#include "smashcalc/corpus.hpp"
#include "smashcalc/hopf.hpp"

using namespace smashcalc;

namespace {

const Field Q = Field::Q();

Vec covec(Field f, std::initializer_list<long> vals) {
  Vec v;
  for (long x : vals) v.push_back(Scalar(f, x));
  return v;
}

}  // namespace

TEST_CASE("hopf axioms hold across the example corpus") {
  for (const auto& H : {cyclic_group_algebra(Q, 2), cyclic_group_algebra(Q, 3),
                        dual_group_algebra_c2(Q), sweedler_h4(Q),
                        cyclic_group_algebra(Field::Fp(3), 2), sweedler_h4(Field::Fp(5))}) {
    Report rep = verify_hopf(H);
    INFO(rep.text());
    CHECK(rep.all_pass());
  }
}

TEST_CASE("derivable antipode identities: eps(S(h)) = eps(h) and S(1) = 1") {
  for (const auto& H : {cyclic_group_algebra(Q, 2), cyclic_group_algebra(Q, 3),
                        dual_group_algebra_c2(Q), sweedler_h4(Q)}) {
    CHECK(H.antipode() * H.algebra().unit() == H.algebra().unit());
    for (std::size_t i = 0; i < H.dim(); ++i)
      CHECK(H.counit_of(H.antipode().col(i)) == H.counit()[i]);
  }
}

TEST_CASE("a broken antipode is reported with the offending basis element") {
  HopfAlgebra good = cyclic_group_algebra(Q, 2);
  Mat bad = good.antipode();
  bad.at(0, 1) = Scalar::zero(Q);
  bad.at(1, 1) = Scalar::zero(Q);  // S(g) := 0, S(1) stays 1
  HopfAlgebra broken(good.algebra(), good.comul_tensor(), good.counit(), bad);
  Report rep = verify_hopf(broken);
  CHECK_FALSE(rep.all_pass());
  const CheckItem* first = rep.first_failure();
  REQUIRE(first != nullptr);
  CHECK(first->id == "antipode-left");
  CHECK(first->witness == "g");
}

TEST_CASE("sweedler decompositions of the skew primitive of the 4-dim example") {
  HopfAlgebra H4 = sweedler_h4(Q);
  Vec x = H4.algebra().basis_vec(2);

  auto two = H4.sweedler2(x);  // x ⊗ 1 + g ⊗ x
  REQUIRE(two.size() == 2);
  CHECK((two[0].one == 1 && two[0].two == 2 && two[0].coef.is_one()));
  CHECK((two[1].one == 2 && two[1].two == 0 && two[1].coef.is_one()));

  auto three = H4.sweedler3(x);  // x ⊗ 1 ⊗ 1 + g ⊗ x ⊗ 1 + g ⊗ g ⊗ x
  REQUIRE(three.size() == 3);
  CHECK((three[0].one == 1 && three[0].two == 1 && three[0].three == 2));
  CHECK((three[1].one == 1 && three[1].two == 2 && three[1].three == 0));
  CHECK((three[2].one == 2 && three[2].two == 0 && three[2].three == 0));
}

TEST_CASE("antipode powers: involutive for group algebras, order 4 on the 4-dim example") {
  HopfAlgebra C2 = cyclic_group_algebra(Q, 2);
  auto sInv = antipode_power(C2, -1);
  REQUIRE(sInv.has_value());
  CHECK(sInv->matrix == C2.antipode());

  HopfAlgebra H4 = sweedler_h4(Q);
  auto s1 = antipode_power(H4, 1);
  REQUIRE(s1.has_value());
  CHECK_FALSE(s1->multiplicative);
  CHECK(s1->anti_multiplicative);
  CHECK(s1->bijective);

  auto s2 = antipode_power(H4, 2);
  REQUIRE(s2.has_value());
  CHECK(s2->multiplicative);
  Mat expected(Q, 4, 4);
  expected.at(0, 0) = Scalar(Q, 1);
  expected.at(1, 1) = Scalar(Q, 1);
  expected.at(2, 2) = Scalar(Q, -1);  // S²(x) = -x
  expected.at(3, 3) = Scalar(Q, -1);  // S²(gx) = -gx
  CHECK(s2->matrix == expected);

  auto s4 = antipode_power(H4, 4);
  REQUIRE(s4.has_value());
  CHECK(s4->matrix.is_identity());

  auto sNeg = antipode_power(H4, -2);
  REQUIRE(sNeg.has_value());
  CHECK((sNeg->matrix * s2->matrix).is_identity());
}

TEST_CASE("characters are validated eagerly") {
  HopfAlgebra C2 = cyclic_group_algebra(Q, 2);
  CHECK(Character::try_make(C2.algebra(), covec(Q, {1, -1})).has_value());
  CHECK_FALSE(Character::try_make(C2.algebra(), covec(Q, {1, 2})).has_value());   // pi(g)^2 != 1
  CHECK_FALSE(Character::try_make(C2.algebra(), covec(Q, {0, 1})).has_value());   // pi(1) != 1
  CHECK_THROWS_AS(Character(C2.algebra(), covec(Q, {1, 2})), std::invalid_argument);

  HopfAlgebra H4 = sweedler_h4(Q);
  CHECK(Character::try_make(H4.algebra(), covec(Q, {1, -1, 0, 0})).has_value());
  CHECK_FALSE(Character::try_make(H4.algebra(), covec(Q, {1, -1, 1, 0})).has_value());  // x is nilpotent
}

TEST_CASE("winding automorphisms match hand-computed values") {
  HopfAlgebra C2 = cyclic_group_algebra(Q, 2);
  Character sign(C2.algebra(), covec(Q, {1, -1}));
  AlgebraMorphism xi = winding_right(C2, sign);
  CHECK(xi.apply(C2.algebra().basis_vec(1)) == covec(Q, {0, -1}));  // g ↦ -g
  CHECK(winding_left(C2, sign).matrix == xi.matrix);

  AlgebraMorphism eps = winding_right(C2, counit_character(C2));
  CHECK(eps.matrix.is_identity());

  HopfAlgebra H4 = sweedler_h4(Q);
  Character pi(H4.algebra(), covec(Q, {1, -1, 0, 0}));
  AlgebraMorphism xiH = winding_right(H4, pi);
  CHECK(xiH.apply(H4.algebra().basis_vec(1)) == covec(Q, {0, -1, 0, 0}));  // g ↦ -g
  CHECK(xiH.apply(H4.algebra().basis_vec(2)) == covec(Q, {0, 0, 1, 0}));   // x ↦ x·pi(1)
  CHECK(winding_right(H4, counit_character(H4)).matrix.is_identity());
  CHECK(winding_left(H4, counit_character(H4)).matrix.is_identity());
}

TEST_CASE("winding by the S-twisted character inverts, and S-squared commutes") {
  HopfAlgebra H4 = sweedler_h4(Q);
  Character pi(H4.algebra(), covec(Q, {1, -1, 0, 0}));
  Character piS = compose_character(H4.algebra(), pi, H4.antipode());
  Mat prod = winding_right(H4, pi).matrix * winding_right(H4, piS).matrix;
  CHECK(prod.is_identity());

  Mat s2 = H4.antipode() * H4.antipode();
  for (const auto& ch : {counit_character(H4), pi}) {
    Mat w = winding_right(H4, ch).matrix;
    CHECK(w * s2 == s2 * w);
  }
}

TEST_CASE("windings agree on both sides for cocommutative examples") {
  HopfAlgebra C2 = cyclic_group_algebra(Q, 2);
  HopfAlgebra C3 = cyclic_group_algebra(Q, 3);
  HopfAlgebra D2 = dual_group_algebra_c2(Q);
  // all characters of each algebra
  std::vector<std::pair<HopfAlgebra, std::vector<Vec>>> cases = {
      {C2, {covec(Q, {1, 1}), covec(Q, {1, -1})}},
      {C3, {covec(Q, {1, 1, 1})}},
      {D2, {covec(Q, {1, 0}), covec(Q, {0, 1})}},
  };
  for (const auto& [H, covs] : cases)
    for (const auto& c : covs) {
      auto pi = Character::try_make(H.algebra(), c);
      REQUIRE(pi.has_value());
      CHECK(winding_left(H, *pi).matrix == winding_right(H, *pi).matrix);
    }
}

TEST_CASE("twisting-compatibility condition on comultiplication") {
  HopfAlgebra H4 = sweedler_h4(Q);
  HopfAlgebra C2 = cyclic_group_algebra(Q, 2);

  CHECK(check_sigma_condition(H4, identity_morphism(H4.algebra()), 0));
  CHECK(check_sigma_condition(C2, identity_morphism(C2.algebra()), 0));
  CHECK(check_sigma_condition(C2, identity_morphism(C2.algebra()), 1));   // S² = id
  CHECK_FALSE(check_sigma_condition(H4, identity_morphism(H4.algebra()), 1));  // S²(x) = -x

  // sigma = S^{2i} ∘ (right winding) satisfies the condition for every i
  Character pi(H4.algebra(), covec(Q, {1, -1, 0, 0}));
  for (long i : {-1L, 0L, 1L, 2L}) {
    Mat s2i = *H4.antipode_power_matrix(2 * i);
    AlgebraMorphism sigma =
        make_algebra_morphism(H4.algebra(), H4.algebra(), s2i * winding_right(H4, pi).matrix);
    CHECK(sigma.multiplicative);
    CHECK(check_sigma_condition(H4, sigma, i));
  }
}

TEST_CASE("inner witnesses: identity, conjugation, and a commutative refusal") {
  HopfAlgebra H4 = sweedler_h4(Q);
  auto u0 = inner_witness(H4.algebra(), identity_morphism(H4.algebra()));
  REQUIRE(u0.has_value());
  CHECK(*u0 == H4.algebra().unit());

  auto s2 = antipode_power(H4, 2);
  REQUIRE(s2.has_value());
  auto u = inner_witness(H4.algebra(), *s2);
  REQUIRE(u.has_value());
  CHECK(*u == H4.algebra().basis_vec(1));  // u = g: g S²(h) = h g
  for (std::size_t i = 0; i < 4; ++i) {
    Vec h = H4.algebra().basis_vec(i);
    CHECK(H4.algebra().mul(*u, s2->apply(h)) == H4.algebra().mul(h, *u));
  }

  HopfAlgebra C2 = cyclic_group_algebra(Q, 2);
  Mat flip(Q, 2, 2);
  flip.at(0, 0) = Scalar(Q, 1);
  flip.at(1, 1) = Scalar(Q, -1);  // g ↦ -g
  AlgebraMorphism phi = make_algebra_morphism(C2.algebra(), C2.algebra(), flip);
  CHECK(phi.multiplicative);
  CHECK_FALSE(inner_witness(C2.algebra(), phi).has_value());
}

TEST_CASE("inner witness search is exact over small prime fields") {
  Field F3 = Field::Fp(3);
  HopfAlgebra H4 = sweedler_h4(F3);
  auto s2 = antipode_power(H4, 2);
  REQUIRE(s2.has_value());
  auto u = inner_witness(H4.algebra(), *s2);
  REQUIRE(u.has_value());
  CHECK(*u == H4.algebra().basis_vec(1));

  Mat flip = Mat::identity(F3, 2);
  flip.at(1, 1) = Scalar(F3, -1);
  HopfAlgebra C2 = cyclic_group_algebra(F3, 2);
  AlgebraMorphism phi = make_algebra_morphism(C2.algebra(), C2.algebra(), flip);
  CHECK_FALSE(inner_witness(C2.algebra(), phi).has_value());
}
