#include <catch2/catch_amalgamated.hpp>

#include "smashcalc/corpus.hpp"
#include "smashcalc/smash.hpp"

using namespace smashcalc;

namespace {

const CheckItem* find_item(const Report& r, const std::string& id) {
  for (const auto& it : r.items)
    if (it.id == id) return &it;
  return nullptr;
}

const CheckItem& item(const Report& r, const std::string& id) {
  const CheckItem* it = find_item(r, id);
  if (it == nullptr) FAIL("report has no item named " << id);
  static CheckItem dummy;
  return it ? *it : dummy;
}

Vec unit_vec(Field f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = Scalar::one(f);
  return v;
}

}  // namespace

TEST_CASE("module algebra axioms hold across the corpus") {
  Field q = Field::Q();
  struct Named {
    std::string name;
    ModuleAlgebraAction act;
  };
  std::vector<Named> actions;
  actions.push_back({"trivial C2 on k[x]/(x^2)",
                     trivial_action(cyclic_group_algebra(q, 2), truncated_polynomial(q, 2))});
  actions.push_back({"trivial H4 on k[x]/(x^3)",
                     trivial_action(sweedler_h4(q), truncated_polynomial(q, 3))});
  actions.push_back(
      {"sign C2 on k[x]/(x^3)",
       sign_action_c2(cyclic_group_algebra(q, 2), truncated_polynomial(q, 3))});
  actions.push_back({"sign H4 on k[x]/(x^3)",
                     sign_action_h4(sweedler_h4(q), truncated_polynomial(q, 3))});
  actions.push_back(
      {"parity projection on k[x,y] truncated",
       graded_action_dual_c2(dual_group_algebra_c2(q), truncated_polynomial_two_vars(q))});
  actions.push_back({"derivation action of H4", h4_derivation_action(sweedler_h4(q))});
  {
    FinDimAlgebra a2 = path_algebra_a2(q);
    a2.set_grading({0, 0, 1});
    actions.push_back({"sign C2 on path algebra 1->2",
                       sign_action_c2(cyclic_group_algebra(q, 2), a2)});
  }
  Field f5 = Field::Fp(5);
  actions.push_back({"sign H4 on k[x]/(x^3) mod 5",
                     sign_action_h4(sweedler_h4(f5), truncated_polynomial(f5, 3))});

  for (const auto& [name, act] : actions) {
    INFO(name);
    Report rep = check_module_algebra(act);
    INFO(rep.text());
    CHECK(rep.all_pass());
  }
}

TEST_CASE("an affine shift of the sign action breaks measuring and grading") {
  Field q = Field::Q();
  HopfAlgebra c2 = cyclic_group_algebra(q, 2);
  FinDimAlgebra a = truncated_polynomial(q, 2);
  const Scalar one = Scalar::one(q);
  SparseTensor t(q, {2, 2, 2});
  t.set({0, 0, 0}, one);
  t.set({0, 1, 1}, one);
  t.set({1, 0, 0}, one);
  t.set({1, 1, 1}, one);  // g ⇀ x = x + 1: not multiplicative, not graded
  t.set({1, 1, 0}, one);
  ModuleAlgebraAction bad(c2, a, std::move(t));
  Report rep = check_module_algebra(bad);
  CHECK_FALSE(rep.all_pass());
  CHECK(item(rep, "unit-acts-as-identity").pass);
  CHECK(item(rep, "measures-unit").pass);
  CHECK_FALSE(item(rep, "action-multiplicative").pass);
  CHECK(item(rep, "action-multiplicative").witness == "(g)(g) on x");
  CHECK_FALSE(item(rep, "measures-product").pass);
  CHECK_FALSE(item(rep, "preserves-grading").pass);
  CHECK_FALSE(item(rep, "preserves-augmentation-ideal").pass);
  CHECK_THROWS_AS(smash_product(bad), std::invalid_argument);
}

TEST_CASE("the trivial action gives the tensor product algebra") {
  Field q = Field::Q();
  HopfAlgebra c2 = cyclic_group_algebra(q, 2);
  FinDimAlgebra a = truncated_polynomial(q, 2);
  SmashAlgebra s = smash_product(trivial_action(c2, a));
  FinDimAlgebra t = a.tensor(c2.algebra());
  REQUIRE(s.dim() == 4);
  CHECK(s.algebra().mul_tensor() == t.mul_tensor());
  CHECK(s.algebra().unit() == t.unit());
  CHECK(s.algebra().is_commutative());
}

TEST_CASE("a trivial Hopf factor recovers the coefficient algebra") {
  Field q = Field::Q();
  HopfAlgebra triv = cyclic_group_algebra(q, 1);
  FinDimAlgebra a = truncated_polynomial(q, 3);
  SmashAlgebra s = smash_product(trivial_action(triv, a));
  REQUIRE(s.dim() == a.dim());
  CHECK(s.algebra().mul_tensor() == a.mul_tensor());
  CHECK(s.algebra().unit() == a.unit());
}

TEST_CASE("a scalar coefficient algebra recovers the Hopf algebra") {
  Field q = Field::Q();
  HopfAlgebra h4 = sweedler_h4(q);
  SmashAlgebra s = smash_product(trivial_action(h4, scalar_algebra(q)));
  REQUIRE(s.dim() == 4);
  CHECK(s.algebra().mul_tensor() == h4.algebra().mul_tensor());
  CHECK(s.algebra().unit() == h4.algebra().unit());
}

TEST_CASE("smash product by the sign action anti-commutes the generators") {
  Field q = Field::Q();
  HopfAlgebra c2 = cyclic_group_algebra(q, 2);
  FinDimAlgebra a = truncated_polynomial(q, 2);
  SmashAlgebra s = smash_product(sign_action_c2(c2, a));
  REQUIRE(s.dim() == 4);
  Vec g = s.embed_tensor(a.unit(), c2.algebra().basis_vec(1));
  Vec x = s.embed_tensor(a.basis_vec(1), c2.algebra().unit());
  CHECK(s.algebra().mul(g, x) == -s.algebra().mul(x, g));
  CHECK(s.algebra().mul(g, g) == s.algebra().unit());
  CHECK(s.algebra().mul(x, x) == zero_vec(q, 4));
  CHECK_FALSE(s.algebra().is_commutative());
  REQUIRE(s.algebra().grading());
  CHECK((*s.algebra().grading())[s.index(1, 0)] == 1);
  CHECK((*s.algebra().grading())[s.index(0, 1)] == 0);
  REQUIRE(s.algebra().augmentation());
  CHECK(pair(*s.algebra().augmentation(), g) == Scalar::one(q));
  CHECK(pair(*s.algebra().augmentation(), x) == Scalar::zero(q));
}

TEST_CASE("derivation smash of the dimension-4 Hopf algebra has the pinned products") {
  Field q = Field::Q();
  HopfAlgebra h4 = sweedler_h4(q);
  ModuleAlgebraAction act = h4_derivation_action(h4);
  const FinDimAlgebra& a = act.algebra();
  SmashAlgebra s = smash_product(act);
  REQUIRE(s.dim() == 8);
  const FinDimAlgebra& L = s.algebra();
  Vec g = s.embed_tensor(a.unit(), h4.algebra().basis_vec(1));
  Vec xh = s.embed_tensor(a.unit(), h4.algebra().basis_vec(2));
  Vec x = s.embed_tensor(a.basis_vec(1), h4.algebra().unit());

  CHECK(L.mul(g, x) == -L.mul(x, g));
  // (1#xh)(x#1) = (xh ⇀ x)#1 + (g ⇀ x)#xh = 1#1 - x#xh
  Vec expect = s.embed_tensor(a.unit(), h4.algebra().unit()) -
               s.embed_tensor(a.basis_vec(1), h4.algebra().basis_vec(2));
  CHECK(L.mul(xh, x) == expect);
  // (x#1)(1#xh) = x#xh
  CHECK(L.mul(x, xh) == s.embed_tensor(a.basis_vec(1), h4.algebra().basis_vec(2)));
  CHECK(L.mul(xh, xh) == zero_vec(q, 8));
}

TEST_CASE("coefficient and Hopf embeddings generate the smash product") {
  Field q = Field::Q();
  struct Named {
    std::string name;
    ModuleAlgebraAction act;
  };
  std::vector<Named> actions;
  actions.push_back({"derivation action of H4", h4_derivation_action(sweedler_h4(q))});
  actions.push_back(
      {"sign C2 on k[x]/(x^3)",
       sign_action_c2(cyclic_group_algebra(q, 2), truncated_polynomial(q, 3))});
  actions.push_back(
      {"parity projection on k[x,y] truncated",
       graded_action_dual_c2(dual_group_algebra_c2(q), truncated_polynomial_two_vars(q))});
  for (const auto& [name, act] : actions) {
    INFO(name);
    SmashAlgebra s = smash_product(act);
    AlgebraMorphism ea = s.embed_algebra();
    AlgebraMorphism eh = s.embed_hopf();
    CHECK(ea.multiplicative);
    CHECK(eh.multiplicative);
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < act.algebra().dim(); ++i) gens.push_back(ea.matrix.col(i));
    for (std::size_t i = 0; i < act.hopf().dim(); ++i) gens.push_back(eh.matrix.col(i));
    CHECK(subalgebra_closure(s.algebra(), gens).dim() == s.dim());
  }
}

TEST_CASE("equivariant coefficient algebras verify and pin their commutation rule") {
  Field q = Field::Q();
  HopfAlgebra c2 = cyclic_group_algebra(q, 2);
  FinDimAlgebra a = truncated_polynomial(q, 2);
  ModuleAlgebraAction act = sign_action_c2(c2, a);
  DeltaAlgebra d = delta_algebra(act, 0);
  REQUIRE(d.dim() == 8);
  Vec g = d.embed_tensor(a.unit(), a.unit(), c2.algebra().basis_vec(1));
  Vec x_left = d.embed_tensor(a.basis_vec(1), a.unit(), c2.algebra().unit());
  Vec x_right = d.embed_tensor(a.unit(), a.basis_vec(1), c2.algebra().unit());
  // g (x⊗1) = (g⇀x ⊗ g⇀1) g = -(x⊗1) g
  CHECK(d.algebra().mul(g, x_left) ==
        -d.embed_tensor(a.basis_vec(1), a.unit(), c2.algebra().basis_vec(1)));
  CHECK(d.algebra().mul(g, x_right) ==
        -d.embed_tensor(a.unit(), a.basis_vec(1), c2.algebra().basis_vec(1)));
  // the two coefficient legs commute with each other
  CHECK(d.algebra().mul(x_left, x_right) == d.algebra().mul(x_right, x_left));

  AlgebraMorphism env = d.embed_enveloping();
  AlgebraMorphism hop = d.embed_hopf();
  CHECK(env.multiplicative);
  CHECK(hop.multiplicative);
}

TEST_CASE("derivation equivariant algebra has the pinned triple coproduct products") {
  Field q = Field::Q();
  HopfAlgebra h4 = sweedler_h4(q);
  ModuleAlgebraAction act = h4_derivation_action(h4);
  const FinDimAlgebra& a = act.algebra();
  DeltaAlgebra d = delta_algebra(act, 0);
  REQUIRE(d.dim() == 16);
  Vec xh = d.embed_tensor(a.unit(), a.unit(), h4.algebra().basis_vec(2));
  Vec x_left = d.embed_tensor(a.basis_vec(1), a.unit(), h4.algebra().unit());
  // xh (x⊗1) = (xh⇀x ⊗ 1) 1 + (g⇀x ⊗ 1) xh + (g⇀x ⊗ xh⇀1) g
  //          = 1⊗1⊗1 - x⊗1⊗xh
  Vec expect = d.embed_tensor(a.unit(), a.unit(), h4.algebra().unit()) -
               d.embed_tensor(a.basis_vec(1), a.unit(), h4.algebra().basis_vec(2));
  CHECK(d.algebra().mul(xh, x_left) == expect);
}

TEST_CASE("cocommutative Hopf algebras give the same equivariant algebra at every index") {
  Field q = Field::Q();
  HopfAlgebra c2 = cyclic_group_algebra(q, 2);
  ModuleAlgebraAction act = sign_action_c2(c2, truncated_polynomial(q, 2));
  DeltaAlgebra d0(act, 0);
  DeltaAlgebra d1(act, 1);
  CHECK(d0.algebra().mul_tensor() == d1.algebra().mul_tensor());

  HopfAlgebra dual = dual_group_algebra_c2(q);
  ModuleAlgebraAction pact = graded_action_dual_c2(dual, truncated_polynomial(q, 2));
  DeltaAlgebra p0(pact, 0);
  DeltaAlgebra p1(pact, 1);
  CHECK(p0.algebra().mul_tensor() == p1.algebra().mul_tensor());
}

TEST_CASE("the twisted and plain equivariant algebras differ for the derivation action") {
  Field q = Field::Q();
  ModuleAlgebraAction act = h4_derivation_action(sweedler_h4(q));
  DeltaAlgebra d0(act, 0);
  DeltaAlgebra d1(act, 1);
  CHECK_FALSE(d0.algebra().mul_tensor() == d1.algebra().mul_tensor());
  CHECK(d0.verify().all_pass());
  CHECK(d1.verify().all_pass());
}

TEST_CASE("identity suite passes on the corpus contexts") {
  Field q = Field::Q();
  struct Named {
    std::string name;
    ModuleAlgebraAction act;
  };
  std::vector<Named> actions;
  actions.push_back({"trivial C2 on k[x]/(x^2)",
                     trivial_action(cyclic_group_algebra(q, 2), truncated_polynomial(q, 2))});
  actions.push_back(
      {"sign C2 on k[x]/(x^3)",
       sign_action_c2(cyclic_group_algebra(q, 2), truncated_polynomial(q, 3))});
  actions.push_back({"derivation action of H4", h4_derivation_action(sweedler_h4(q))});
  actions.push_back(
      {"parity projection on k[x,y] truncated",
       graded_action_dual_c2(dual_group_algebra_c2(q), truncated_polynomial_two_vars(q))});
  {
    FinDimAlgebra a2 = path_algebra_a2(q);
    a2.set_grading({0, 0, 1});
    actions.push_back({"sign C2 on path algebra 1->2",
                       sign_action_c2(cyclic_group_algebra(q, 2), a2)});
  }
  Field f5 = Field::Fp(5);
  actions.push_back({"derivation action of H4 mod 5", h4_derivation_action(sweedler_h4(f5))});

  for (const auto& [name, act] : actions) {
    INFO(name);
    Report rep = verify_identities(act);
    INFO(rep.text());
    CHECK(rep.all_pass());
  }
}

TEST_CASE("identity suite passes on the sign action of the dimension-4 Hopf algebra") {
  Field q = Field::Q();
  Report rep = verify_identities(sign_action_h4(sweedler_h4(q), truncated_polynomial(q, 3)));
  INFO(rep.text());
  CHECK(rep.all_pass());
}

TEST_CASE("a sign error in the antipode is caught by the identity suite") {
  Field q = Field::Q();
  HopfAlgebra good = sweedler_h4(q);
  Mat s = good.antipode();
  s.at(3, 2) = Scalar::one(q);  // flips S on the nilpotent generator
  HopfAlgebra bad(good.algebra(), good.comul_tensor(), good.counit(), s);
  REQUIRE_FALSE(verify_hopf(bad).all_pass());

  ModuleAlgebraAction ref = h4_derivation_action(good);
  ModuleAlgebraAction act(bad, ref.algebra(), ref.action_tensor());
  REQUIRE(check_module_algebra(act).all_pass());
  Report rep = verify_identities(act);
  CHECK_FALSE(rep.all_pass());
  CHECK(item(rep, "smash-product-law").pass);
  CHECK_FALSE(item(rep, "smash-normal-form").pass);
  CHECK(item(rep, "smash-normal-form").witness == "x#gx");
}

TEST_CASE("a singular antipode fails exactly the inverse-dependent identities") {
  Field q = Field::Q();
  HopfAlgebra good = cyclic_group_algebra(q, 2);
  Mat s(q, 2, 2);
  s.at(0, 0) = Scalar::one(q);
  s.at(0, 1) = Scalar::one(q);  // S(g) := 1, a rank-1 antipode candidate
  HopfAlgebra bad(good.algebra(), good.comul_tensor(), good.counit(), s);
  ModuleAlgebraAction act = trivial_action(bad, truncated_polynomial(q, 2));
  Report rep = verify_identities(act);
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(item(rep, "antipode-invertible").pass);
  CHECK(item(rep, "smash-product-law").pass);
  CHECK_FALSE(item(rep, "smash-normal-form").pass);
  CHECK(item(rep, "smash-normal-form").witness == "antipode not invertible");
  CHECK_FALSE(item(rep, "envelope-smash-law").pass);
  CHECK(item(rep, "delta-plain:commute-left").pass);
  CHECK(find_item(rep, "delta-plain:commute-right") == nullptr);
}

TEST_CASE("the equivariant algebra embeds in the enveloping smash with a retraction") {
  Field q = Field::Q();
  struct Ctx {
    std::string name;
    ModuleAlgebraAction act;
    long index;
  };
  std::vector<Ctx> ctxs;
  ctxs.push_back({"sign C2 on k[x]/(x^2), plain",
                  sign_action_c2(cyclic_group_algebra(q, 2), truncated_polynomial(q, 2)), 0});
  ctxs.push_back({"derivation action of H4, plain", h4_derivation_action(sweedler_h4(q)), 0});
  ctxs.push_back({"derivation action of H4, twisted", h4_derivation_action(sweedler_h4(q)), 1});

  for (const auto& [name, act, index] : ctxs) {
    INFO(name);
    SmashAlgebra s = smash_product(act);
    DeltaAlgebra d = delta_algebra(act, index);
    AlgebraMorphism emb = delta_embedding(d, s);
    REQUIRE(emb.multiplicative);
    REQUIRE(emb.unital);
    REQUIRE(emb.matrix.rank() == d.dim());

    Mat retr = delta_retraction(d, s);
    for (std::size_t e = 0; e < d.dim(); ++e) {
      Vec y = emb.matrix.col(e);
      Vec back = zero_vec(q, d.dim());
      for (std::size_t r = 0; r < y.size(); ++r)
        if (!y[r].is_zero()) back = back + y[r] * retr.col(r);
      REQUIRE(back == d.algebra().basis_vec(e));
    }

    // the embedded image is the subalgebra generated by the two coefficient
    // legs together with the twisted diagonal copies of the Hopf generators
    const HopfAlgebra& H = act.hopf();
    const FinDimAlgebra& A = act.algebra();
    FinDimAlgebra env = s.algebra().enveloping();
    Mat sOdd = *H.antipode_power_matrix(2 * index + 1);
    std::vector<Vec> gens;
    for (std::size_t a = 0; a < A.dim(); ++a)
      for (std::size_t b = 0; b < A.dim(); ++b)
        gens.push_back(tensor_vec(s.embed_tensor(A.basis_vec(a), H.algebra().unit()),
                                  s.embed_tensor(A.basis_vec(b), H.algebra().unit())));
    for (std::size_t h = 0; h < H.dim(); ++h) {
      Vec diag = zero_vec(q, env.dim());
      for (const auto& t : H.sweedler2(H.algebra().basis_vec(h)))
        diag = diag + t.coef * tensor_vec(s.embed_tensor(A.unit(), H.algebra().basis_vec(t.one)),
                                          s.embed_tensor(A.unit(), sOdd.col(t.two)));
      gens.push_back(diag);
    }
    RowSpace image = subalgebra_closure(env, gens);
    REQUIRE(image.dim() == d.dim());
    for (std::size_t e = 0; e < d.dim(); ++e) REQUIRE(image.contains(emb.matrix.col(e)));
  }
}

TEST_CASE("smash products stay exact over prime fields") {
  Field f3 = Field::Fp(3);
  HopfAlgebra c2 = cyclic_group_algebra(f3, 2);
  FinDimAlgebra a = truncated_polynomial(f3, 2);
  SmashAlgebra s = smash_product(sign_action_c2(c2, a));
  Vec g = s.embed_tensor(a.unit(), c2.algebra().basis_vec(1));
  Vec x = s.embed_tensor(a.basis_vec(1), c2.algebra().unit());
  CHECK(s.algebra().mul(g, x) == -s.algebra().mul(x, g));
  CHECK(verify_identities(sign_action_c2(c2, a)).all_pass());
}
