#include <catch2/catch_amalgamated.hpp>

#include "smashcalc/corpus.hpp"
#include "smashcalc/equivariant.hpp"

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

//! The degree-sign automorphism x ↦ -x of k[x]/(x²).
AlgebraMorphism sign_automorphism(const FinDimAlgebra& a) {
  Mat m = Mat::identity(a.field(), a.dim());
  m.at(1, 1) = -Scalar::one(a.field());
  return make_algebra_morphism(a, a, m);
}

//! The radical span{x} of k[x]/(x²) as an equivariant sub-bimodule under the
//! parity sign action (g negates x).
EquivariantBimodule radical_summand(const ModuleAlgebraAction& act) {
  const FinDimAlgebra& a = act.algebra();
  const HopfAlgebra& h = act.hopf();
  REQUIRE(a.dim() == 2);
  REQUIRE(h.dim() == 2);
  Field f = a.field();
  SparseTensor left(f, {2, 1, 1}), right(f, {2, 1, 1}), hact(f, {2, 1, 1});
  left.set({0, 0, 0}, Scalar::one(f));   // 1·x = x, x·x = 0
  right.set({0, 0, 0}, Scalar::one(f));  // x·1 = x
  hact.set({0, 0, 0}, Scalar::one(f));   // 1⇀x = x
  hact.set({1, 0, 0}, -Scalar::one(f));  // g⇀x = -x
  return EquivariantBimodule(act, Bimodule(a, {"x"}, left, right), hact, 0);
}

bool is_signed_permutation(const Mat& m) {
  if (m.rows() != m.cols()) return false;
  Field f = m.field();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t nz = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) {
        ++nz;
        if (m.at(i, j) != Scalar::one(f) && m.at(i, j) != -Scalar::one(f)) return false;
      }
    if (nz != 1) return false;
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::size_t nz = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!m.at(i, j).is_zero()) ++nz;
    if (nz != 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("bimodule axiom report catches a broken action") {
  Field f = Field::Q();
  FinDimAlgebra a = truncated_polynomial(f, 2);
  REQUIRE(check_bimodule(regular_bimodule(a)).all_pass());

  // corrupt the right action so that m·x multiplies as if x² = 1
  SparseTensor bad(f, {2, 2, 2});
  bad.set({0, 0, 0}, Scalar::one(f));
  bad.set({0, 1, 1}, Scalar::one(f));
  bad.set({1, 0, 1}, Scalar::one(f));
  bad.set({1, 1, 0}, Scalar::one(f));  // x·x = 1 instead of 0
  Bimodule broken(a, a.labels(), a.mul_tensor(), bad);
  Report rep = check_bimodule(broken);
  REQUIRE_FALSE(item(rep, "right-action-multiplicative").pass);
  REQUIRE(item(rep, "right-action-multiplicative").witness == "(x)(x)");
  REQUIRE(item(rep, "left-action-multiplicative").pass);
}

TEST_CASE("regular carriers are equivariant at the defining twist index") {
  Field f = Field::Q();
  std::vector<ModuleAlgebraAction> actions = {
      sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2)),
      sign_action_h4(sweedler_h4(f), truncated_polynomial(f, 2)),
      h4_derivation_action(sweedler_h4(f)),
      trivial_action(sweedler_h4(f), truncated_polynomial(f, 3)),
      graded_action_dual_c2(dual_group_algebra_c2(f), truncated_polynomial(f, 3)),
  };
  for (const auto& act : actions) {
    Report rep = check_equivariant(regular_equivariant(act, 0));
    INFO(rep.text());
    REQUIRE(rep.all_pass());
    REQUIRE(item(rep, "sandwich-compatibility").pass);
    REQUIRE(item(rep, "twisted-envelope-module-law").pass);
  }
}

TEST_CASE("declared twist index matters exactly when the action sees the antipode square") {
  Field f = Field::Q();

  // Non-cocommutative H with an action through the nilpotent part: the
  // sandwich identity fails as soon as the declared index is off by one.
  {
    ModuleAlgebraAction deriv = h4_derivation_action(sweedler_h4(f));
    Report rep = check_equivariant(regular_equivariant(deriv, 1));
    REQUIRE_FALSE(rep.all_pass());
    REQUIRE_FALSE(item(rep, "sandwich-compatibility").pass);
    REQUIRE_FALSE(item(rep, "sandwich-compatibility").witness.empty());
    REQUIRE_FALSE(item(rep, "twisted-envelope-module-law").pass);
  }
  // Cocommutative H: all indices coincide.
  {
    ModuleAlgebraAction sgn = sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2));
    REQUIRE(check_equivariant(regular_equivariant(sgn, 1)).all_pass());
  }
  // Trivial H-action: every index works.
  {
    ModuleAlgebraAction triv = trivial_action(sweedler_h4(f), truncated_polynomial(f, 2));
    for (long i : {0L, 1L, 2L}) REQUIRE(check_equivariant(regular_equivariant(triv, i)).all_pass());
  }
}

TEST_CASE("twisted carriers are equivariant iff the twist commutes with the action") {
  Field f = Field::Q();
  FinDimAlgebra a = truncated_polynomial(f, 2);
  {
    ModuleAlgebraAction sgn = sign_action_c2(cyclic_group_algebra(f, 2), a);
    EquivariantBimodule d = twisted_equivariant(sgn, sign_automorphism(a), 0);
    REQUIRE(check_equivariant(d).all_pass());
  }
  {
    // the derivation action does not commute with the sign automorphism
    ModuleAlgebraAction deriv = h4_derivation_action(sweedler_h4(f));
    EquivariantBimodule d =
        twisted_equivariant(deriv, sign_automorphism(deriv.algebra()), 0);
    Report rep = check_equivariant(d);
    REQUIRE_FALSE(item(rep, "sandwich-compatibility").pass);
  }
}

TEST_CASE("smash of the regular carrier with the identity twist is the regular bimodule") {
  Field f = Field::Q();
  std::vector<ModuleAlgebraAction> actions = {
      sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2)),
      h4_derivation_action(sweedler_h4(f)),
  };
  for (const auto& act : actions) {
    SmashAlgebra smash = smash_product(act);
    SmashBimodule sb = smash_bimodule(regular_equivariant(act, 0),
                                      identity_morphism(act.hopf().algebra()), smash);
    Bimodule reg = regular_bimodule(smash.algebra());
    REQUIRE(sb.bim.left_tensor() == reg.left_tensor());
    REQUIRE(sb.bim.right_tensor() == reg.right_tensor());
  }
}

TEST_CASE("trivial action gives the outer tensor bimodule") {
  Field f = Field::Q();
  ModuleAlgebraAction triv = trivial_action(sweedler_h4(f), truncated_polynomial(f, 2));
  const FinDimAlgebra& a = triv.algebra();
  const FinDimAlgebra& h = triv.hopf().algebra();
  SmashAlgebra smash = smash_product(triv);
  SmashBimodule sb =
      smash_bimodule(regular_equivariant(triv, 0), identity_morphism(h), smash);
  for (std::size_t ai = 0; ai < a.dim(); ++ai)
    for (std::size_t hi = 0; hi < h.dim(); ++hi) {
      Vec r = smash.algebra().basis_vec(smash.index(ai, hi));
      REQUIRE(sb.bim.left_matrix(r) ==
              Mat::kron(a.left_mult(a.basis_vec(ai)), h.left_mult(h.basis_vec(hi))));
      REQUIRE(sb.bim.right_matrix(r) ==
              Mat::kron(a.right_mult(a.basis_vec(ai)), h.right_mult(h.basis_vec(hi))));
    }
}

TEST_CASE("smash bimodule laws verify for a twisted carrier") {
  Field f = Field::Q();
  FinDimAlgebra a = truncated_polynomial(f, 2);
  ModuleAlgebraAction sgn = sign_action_c2(cyclic_group_algebra(f, 2), a);
  SmashAlgebra smash = smash_product(sgn);
  SmashBimodule sb = smash_bimodule(twisted_equivariant(sgn, sign_automorphism(a), 0),
                                    identity_morphism(sgn.hopf().algebra()), smash);
  Report rep = check_smash_bimodule(sb);
  INFO(rep.text());
  REQUIRE(rep.all_pass());
  REQUIRE(item(rep, "coefficient-sandwich-law").pass);
  REQUIRE(item(rep, "hopf-sandwich-law").pass);
  REQUIRE(item(rep, "basis-rewriting").pass);
}

TEST_CASE("smash bimodule construction rejects bad preconditions") {
  Field f = Field::Q();
  ModuleAlgebraAction deriv = h4_derivation_action(sweedler_h4(f));
  SmashAlgebra smash = smash_product(deriv);
  AlgebraMorphism s2 = *antipode_power(deriv.hopf(), 2);

  // twist incompatible with index 0 on a non-cocommutative H
  REQUIRE_THROWS_AS(smash_bimodule(regular_equivariant(deriv, 0), s2, smash),
                    std::invalid_argument);
  // carrier not equivariant at the declared index
  REQUIRE_THROWS_AS(
      smash_bimodule(regular_equivariant(deriv, 1), s2, smash),
      std::invalid_argument);
  // mismatched action
  ModuleAlgebraAction other = trivial_action(sweedler_h4(f), truncated_polynomial(f, 2));
  REQUIRE_THROWS_AS(smash_bimodule(regular_equivariant(other, 0),
                                   identity_morphism(deriv.hopf().algebra()), smash),
                    std::invalid_argument);
}

TEST_CASE("flip smash mirrors the bimodule and round-trips to the identity") {
  Field f = Field::Q();
  struct Case {
    ModuleAlgebraAction act;
    EquivariantBimodule d;
    AlgebraMorphism sigma;
  };
  ModuleAlgebraAction sgn2 = sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2));
  ModuleAlgebraAction deriv = h4_derivation_action(sweedler_h4(f));
  ModuleAlgebraAction sgn4 = sign_action_h4(sweedler_h4(f), truncated_polynomial(f, 2));
  std::vector<Case> cases;
  cases.push_back({sgn2, twisted_equivariant(sgn2, sign_automorphism(sgn2.algebra()), 0),
                   identity_morphism(sgn2.hopf().algebra())});
  cases.push_back({deriv, regular_equivariant(deriv, 0),
                   identity_morphism(deriv.hopf().algebra())});
  cases.push_back({sgn4, regular_equivariant(sgn4, 1), *antipode_power(sgn4.hopf(), 2)});

  for (auto& c : cases) {
    SmashAlgebra smash = smash_product(c.act);
    FlipSmash fs = flip_smash(c.d, c.sigma, smash);
    REQUIRE((fs.iso * fs.inverse).is_identity());
    REQUIRE((fs.inverse * fs.iso).is_identity());
    REQUIRE(fs.mirrored.mirrored);
    Report rep = check_smash_bimodule(fs.mirrored);
    INFO(rep.text());
    REQUIRE(rep.all_pass());
  }

  // over kC₂ the flip is a signed permutation, and with a trivial action the
  // plain unsigned swap
  {
    SmashAlgebra smash = smash_product(sgn2);
    FlipSmash fs = flip_smash(regular_equivariant(sgn2, 0),
                              identity_morphism(sgn2.hopf().algebra()), smash);
    REQUIRE(is_signed_permutation(fs.iso));
  }
  {
    ModuleAlgebraAction triv = trivial_action(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2));
    SmashAlgebra smash = smash_product(triv);
    FlipSmash fs = flip_smash(regular_equivariant(triv, 0),
                              identity_morphism(triv.hopf().algebra()), smash);
    std::size_t nd = 2, nh = 2;
    for (std::size_t d = 0; d < nd; ++d)
      for (std::size_t l = 0; l < nh; ++l)
        REQUIRE(fs.iso.at(l * nd + d, d * nh + l) == Scalar::one(f));
  }
}

TEST_CASE("dual of the regular carrier is right multiplication") {
  Field f = Field::Q();
  std::vector<ModuleAlgebraAction> actions = {
      sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2)),
      h4_derivation_action(sweedler_h4(f)),
  };
  for (const auto& act : actions) {
    const FinDimAlgebra& a = act.algebra();
    EquivariantBimodule d = regular_equivariant(act, 0);
    EquivariantDual dl = equivariant_dual(d, DualSide::left);
    REQUIRE(dl.module.dim() == a.dim());
    REQUIRE(dl.module.index() == 0);

    // identify c ∈ A with the map m ↦ m·c and transport all three structures
    RowSpace span(f, a.dim() * a.dim());
    for (const auto& g : dl.maps) span.add(detail::flatten(g));
    Mat iso(f, dl.module.dim(), a.dim());
    for (std::size_t c = 0; c < a.dim(); ++c) {
      auto coords = span.coordinates(detail::flatten(a.right_mult(a.basis_vec(c))));
      REQUIRE(coords.has_value());
      for (std::size_t k = 0; k < dl.module.dim(); ++k) iso.at(k, c) = (*coords)[k];
    }
    REQUIRE(iso.rank() == a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r) {
      Vec er = a.basis_vec(r);
      REQUIRE(dl.module.bimodule().left_matrix(er) * iso == iso * a.left_mult(er));
      REQUIRE(dl.module.bimodule().right_matrix(er) * iso == iso * a.right_mult(er));
    }
    for (std::size_t h = 0; h < act.hopf().dim(); ++h) {
      Vec eh = act.hopf().algebra().basis_vec(h);
      REQUIRE(dl.module.h_matrix(eh) * iso == iso * act.act_matrix(eh));
    }
  }
}

TEST_CASE("dual construction needs an invertible antipode") {
  Field f = Field::Q();
  HopfAlgebra h4 = sweedler_h4(f);
  Mat s = h4.antipode();
  for (std::size_t r = 0; r < 4; ++r) s.at(r, 1) = r == 0 ? Scalar::one(f) : Scalar::zero(f);
  HopfAlgebra broken(h4.algebra(), h4.comul_tensor(), h4.counit(), s);
  ModuleAlgebraAction triv = trivial_action(broken, truncated_polynomial(f, 2));
  REQUIRE_THROWS_AS(equivariant_dual(regular_equivariant(triv, 0), DualSide::left),
                    std::runtime_error);
}

TEST_CASE("double dual evaluation recovers an invertible carrier") {
  Field f = Field::Q();
  std::vector<EquivariantBimodule> carriers;
  {
    ModuleAlgebraAction sgn = sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2));
    carriers.push_back(twisted_equivariant(sgn, sign_automorphism(sgn.algebra()), 0));
  }
  {
    ModuleAlgebraAction deriv = h4_derivation_action(sweedler_h4(f));
    carriers.push_back(regular_equivariant(deriv, 0));
  }
  for (const auto& d : carriers) {
    DoubleDual dd = double_dual_evaluation(d);
    REQUIRE(dd.second.module.index() == d.index());
    REQUIRE(dd.evaluation.rows() == d.dim());
    REQUIRE(dd.evaluation.cols() == d.dim());
    REQUIRE(dd.evaluation.rank() == d.dim());
    const FinDimAlgebra& a = d.action().algebra();
    for (std::size_t r = 0; r < a.dim(); ++r) {
      Vec er = a.basis_vec(r);
      REQUIRE(dd.evaluation * d.bimodule().left_matrix(er) ==
              dd.second.module.bimodule().left_matrix(er) * dd.evaluation);
      REQUIRE(dd.evaluation * d.bimodule().right_matrix(er) ==
              dd.second.module.bimodule().right_matrix(er) * dd.evaluation);
    }
    for (std::size_t h = 0; h < d.action().hopf().dim(); ++h) {
      Vec eh = d.action().hopf().algebra().basis_vec(h);
      REQUIRE(dd.evaluation * d.h_matrix(eh) ==
              dd.second.module.h_matrix(eh) * dd.evaluation);
    }
  }
}

TEST_CASE("tensoring with the regular carrier is the identity up to canonical iso") {
  Field f = Field::Q();
  ModuleAlgebraAction sgn = sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2));
  const FinDimAlgebra& a = sgn.algebra();
  EquivariantBimodule d = twisted_equivariant(sgn, sign_automorphism(a), 0);
  TensorEquivariant t = tensor_equivariant(d, regular_equivariant(sgn, 0));
  REQUIRE(t.module.dim() == d.dim());
  REQUIRE(t.module.index() == 0);

  Mat iso(f, t.module.dim(), d.dim());
  for (std::size_t m = 0; m < d.dim(); ++m) {
    Vec img = t.projection * tensor_vec(d.bimodule().basis_vec(m), a.unit());
    for (std::size_t k = 0; k < t.module.dim(); ++k) iso.at(k, m) = img[k];
  }
  REQUIRE(iso.rank() == d.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    Vec er = a.basis_vec(r);
    REQUIRE(iso * d.bimodule().left_matrix(er) == t.module.bimodule().left_matrix(er) * iso);
    REQUIRE(iso * d.bimodule().right_matrix(er) == t.module.bimodule().right_matrix(er) * iso);
  }
  for (std::size_t h = 0; h < sgn.hopf().dim(); ++h) {
    Vec eh = sgn.hopf().algebra().basis_vec(h);
    REQUIRE(iso * d.h_matrix(eh) == t.module.h_matrix(eh) * iso);
  }
}

TEST_CASE("tensor of two sign twists contracts to the regular carrier") {
  Field f = Field::Q();
  ModuleAlgebraAction sgn = sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2));
  const FinDimAlgebra& a = sgn.algebra();
  AlgebraMorphism mu = sign_automorphism(a);
  EquivariantBimodule d = twisted_equivariant(sgn, mu, 0);
  TensorEquivariant t = tensor_equivariant(d, d);
  REQUIRE(t.module.dim() == a.dim());

  // d⊗d' ↦ d·μ(d') identifies the result with the regular carrier since μ²=id
  Mat phi(f, a.dim(), a.dim() * a.dim());
  for (std::size_t m1 = 0; m1 < a.dim(); ++m1)
    for (std::size_t m2 = 0; m2 < a.dim(); ++m2) {
      Vec v = a.mul(a.basis_vec(m1), mu.apply(a.basis_vec(m2)));
      for (std::size_t p = 0; p < a.dim(); ++p) phi.at(p, m1 * a.dim() + m2) = v[p];
    }
  Mat iso = phi * t.section;
  REQUIRE(iso.rank() == a.dim());
  Bimodule reg = regular_bimodule(a);
  for (std::size_t r = 0; r < a.dim(); ++r) {
    Vec er = a.basis_vec(r);
    REQUIRE(iso * t.module.bimodule().left_matrix(er) == reg.left_matrix(er) * iso);
    REQUIRE(iso * t.module.bimodule().right_matrix(er) == reg.right_matrix(er) * iso);
  }
  for (std::size_t h = 0; h < sgn.hopf().dim(); ++h) {
    Vec eh = sgn.hopf().algebra().basis_vec(h);
    REQUIRE(iso * t.module.h_matrix(eh) == sgn.act_matrix(eh) * iso);
  }
}

TEST_CASE("tensor associativity square commutes") {
  Field f = Field::Q();
  ModuleAlgebraAction sgn = sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2));
  EquivariantBimodule d = twisted_equivariant(sgn, sign_automorphism(sgn.algebra()), 0);
  std::size_t n1 = d.dim(), n3 = d.dim();

  TensorEquivariant t12 = tensor_equivariant(d, d);
  TensorEquivariant lhs = tensor_equivariant(t12.module, d);
  TensorEquivariant t23 = tensor_equivariant(d, d);
  TensorEquivariant rhs = tensor_equivariant(d, t23.module);
  REQUIRE(lhs.module.dim() == rhs.module.dim());
  REQUIRE(lhs.module.index() == rhs.module.index());

  Mat m = rhs.projection * Mat::kron(Mat::identity(f, n1), t23.projection) *
          Mat::kron(t12.section, Mat::identity(f, n3)) * lhs.section;
  REQUIRE(m.rows() == m.cols());
  REQUIRE(m.rank() == m.rows());
  const FinDimAlgebra& a = sgn.algebra();
  for (std::size_t r = 0; r < a.dim(); ++r) {
    Vec er = a.basis_vec(r);
    REQUIRE(m * lhs.module.bimodule().left_matrix(er) ==
            rhs.module.bimodule().left_matrix(er) * m);
    REQUIRE(m * lhs.module.bimodule().right_matrix(er) ==
            rhs.module.bimodule().right_matrix(er) * m);
  }
  for (std::size_t h = 0; h < sgn.hopf().dim(); ++h) {
    Vec eh = sgn.hopf().algebra().basis_vec(h);
    REQUIRE(m * lhs.module.h_matrix(eh) == rhs.module.h_matrix(eh) * m);
  }
}

TEST_CASE("tensor over mismatched actions or indices is rejected") {
  Field f = Field::Q();
  FinDimAlgebra a = truncated_polynomial(f, 2);
  ModuleAlgebraAction sgn = sign_action_c2(cyclic_group_algebra(f, 2), a);
  ModuleAlgebraAction triv = trivial_action(cyclic_group_algebra(f, 2), a);
  REQUIRE_THROWS_AS(tensor_equivariant(regular_equivariant(sgn, 0), regular_equivariant(triv, 0)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(direct_sum_equivariant(regular_equivariant(sgn, 0), regular_equivariant(sgn, 1)),
                    std::invalid_argument);
}

TEST_CASE("smash tensor factorization matches the composed twist") {
  Field f = Field::Q();

  // trivial action: pure bookkeeping
  {
    ModuleAlgebraAction triv = trivial_action(sweedler_h4(f), truncated_polynomial(f, 2));
    SmashAlgebra smash = smash_product(triv);
    AlgebraMorphism id = identity_morphism(triv.hopf().algebra());
    EquivariantBimodule d = regular_equivariant(triv, 0);
    TensorSmashIso ts = tensor_smash_iso(d, id, d, id, smash);
    REQUIRE(ts.report.all_pass());
    REQUIRE(ts.rhs.bim.dim() == ts.base.module.dim() * triv.hopf().dim());
    REQUIRE(ts.lhs.bim.dim() == ts.rhs.bim.dim());
  }

  // rank-1 sign twists over kC₂: the isomorphism is a signed permutation
  {
    ModuleAlgebraAction sgn = sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2));
    SmashAlgebra smash = smash_product(sgn);
    AlgebraMorphism id = identity_morphism(sgn.hopf().algebra());
    EquivariantBimodule d = twisted_equivariant(sgn, sign_automorphism(sgn.algebra()), 0);
    TensorSmashIso ts = tensor_smash_iso(d, id, d, id, smash);
    REQUIRE(ts.report.all_pass());
    REQUIRE(is_signed_permutation(ts.iso));
    REQUIRE(ts.composed.matrix.is_identity());
  }

  // D ⊗ its left dual: the right-hand side is an invertible bimodule of the
  // same dimension as Λ (the regular bimodule in disguise)
  {
    ModuleAlgebraAction sgn = sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2));
    SmashAlgebra smash = smash_product(sgn);
    AlgebraMorphism id = identity_morphism(sgn.hopf().algebra());
    EquivariantBimodule d = twisted_equivariant(sgn, sign_automorphism(sgn.algebra()), 0);
    EquivariantDual dl = equivariant_dual(d, DualSide::left);
    TensorSmashIso ts = tensor_smash_iso(d, id, dl.module, id, smash);
    REQUIRE(ts.rhs.bim.dim() == smash.dim());
    REQUIRE(check_invertible_bimodule(ts.rhs.bim).invertible);
  }
}

TEST_CASE("invertibility certificates separate invertible and defective carriers") {
  Field f = Field::Q();
  ModuleAlgebraAction sgn = sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2));
  const FinDimAlgebra& a = sgn.algebra();

  {
    InvertibilityCertificate cert = check_invertible_bimodule(regular_bimodule(a));
    REQUIRE(cert.invertible);
    REQUIRE(cert.inverse.has_value());
    REQUIRE(cert.inverse->dim() == a.dim());
    REQUIRE(cert.ev_left.rank() == a.dim());
    REQUIRE(cert.ev_right.rank() == a.dim());
  }
  {
    InvertibilityCertificate cert =
        check_invertible_bimodule(twisted_bimodule(a, sign_automorphism(a)));
    REQUIRE(cert.invertible);
  }
  {
    // rank-2 free bimodule over the ground field: evaluation has the wrong size
    FinDimAlgebra k = scalar_algebra(f);
    Bimodule dsum = direct_sum_bimodule(regular_bimodule(k), regular_bimodule(k));
    InvertibilityCertificate cert = check_invertible_bimodule(dsum);
    REQUIRE_FALSE(cert.invertible);
    REQUIRE_FALSE(item(cert.report, "left-evaluation-bijective").pass);
    REQUIRE_FALSE(item(cert.report, "right-evaluation-bijective").pass);
    REQUIRE_FALSE(cert.inverse.has_value());
  }
  {
    // regular ⊕ radical: defective on both sides
    EquivariantBimodule d =
        direct_sum_equivariant(regular_equivariant(sgn, 0), radical_summand(sgn));
    REQUIRE(check_equivariant(d).all_pass());
    InvertibilityCertificate cert = check_invertible_bimodule(d.bimodule());
    REQUIRE_FALSE(cert.invertible);
    REQUIRE_FALSE(item(cert.report, "left-evaluation-bijective").pass);
  }
}

TEST_CASE("invertibility transfers across the smash construction") {
  Field f = Field::Q();
  struct Case {
    ModuleAlgebraAction act;
    EquivariantBimodule d;
    AlgebraMorphism sigma;
    bool expect;
  };
  ModuleAlgebraAction sgn2 = sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2));
  ModuleAlgebraAction deriv = h4_derivation_action(sweedler_h4(f));
  ModuleAlgebraAction sgn4 = sign_action_h4(sweedler_h4(f), truncated_polynomial(f, 2));
  std::vector<Case> cases;
  cases.push_back({sgn2, regular_equivariant(sgn2, 0),
                   identity_morphism(sgn2.hopf().algebra()), true});
  cases.push_back({sgn2, twisted_equivariant(sgn2, sign_automorphism(sgn2.algebra()), 0),
                   identity_morphism(sgn2.hopf().algebra()), true});
  cases.push_back({deriv, regular_equivariant(deriv, 0),
                   identity_morphism(deriv.hopf().algebra()), true});
  cases.push_back({sgn4, regular_equivariant(sgn4, 1), *antipode_power(sgn4.hopf(), 2), true});
  cases.push_back({sgn2,
                   direct_sum_equivariant(regular_equivariant(sgn2, 0), radical_summand(sgn2)),
                   identity_morphism(sgn2.hopf().algebra()), false});

  for (auto& c : cases) {
    SmashAlgebra smash = smash_product(c.act);
    InvertibilityTransfer tr = invertibility_transfer(c.d, c.sigma, smash);
    INFO(tr.carrier.report.text());
    INFO(tr.smashed.report.text());
    REQUIRE(tr.agree);
    REQUIRE(tr.bimodule_invertible == c.expect);
    REQUIRE(tr.smash_invertible == c.expect);
  }
}

TEST_CASE("equivariant machinery is exact over a prime field") {
  Field f = Field::Fp(5);
  ModuleAlgebraAction sgn = sign_action_c2(cyclic_group_algebra(f, 2), truncated_polynomial(f, 2));
  SmashAlgebra smash = smash_product(sgn);
  EquivariantBimodule d = twisted_equivariant(sgn, sign_automorphism(sgn.algebra()), 0);
  REQUIRE(check_equivariant(d).all_pass());
  InvertibilityTransfer tr =
      invertibility_transfer(d, identity_morphism(sgn.hopf().algebra()), smash);
  REQUIRE(tr.agree);
  REQUIRE(tr.bimodule_invertible);
  DoubleDual dd = double_dual_evaluation(d);
  REQUIRE(dd.evaluation.rank() == d.dim());
}
