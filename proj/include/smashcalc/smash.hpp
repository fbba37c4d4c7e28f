#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smashcalc/hopf.hpp"

namespace smashcalc {

//! An action tensor h ⊗ a ↦ h ⇀ a making A a module algebra over H.  The
//! axioms (unit action, multiplicativity in H, measuring of the product and
//! unit, and the declared grading/augmentation side conditions) are checked
//! by check_module_algebra, not silently assumed.
class ModuleAlgebraAction {
 public:
  ModuleAlgebraAction() = default;
  ModuleAlgebraAction(HopfAlgebra H, FinDimAlgebra A, SparseTensor action)
      : H_(std::move(H)), A_(std::move(A)), act_(std::move(action)) {
    if (!(H_.field() == A_.field()))
      throw std::invalid_argument("module algebra: field mismatch");
    if (act_.arity() != 3) throw std::invalid_argument("module algebra: action tensor arity");
    const auto& d = act_.dims();
    if (d[0] != H_.dim() || d[1] != A_.dim() || d[2] != A_.dim())
      throw std::invalid_argument("module algebra: action tensor shape");
  }

  const HopfAlgebra& hopf() const { return H_; }
  const FinDimAlgebra& algebra() const { return A_; }
  const SparseTensor& action_tensor() const { return act_; }
  const Field& field() const { return A_.field(); }

  //! e_h ⇀ e_a for basis indices.
  Vec act_basis(std::size_t h, std::size_t a) const {
    Vec r = zero_vec(field(), A_.dim());
    act_.for_prefix({static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(a)},
                    [&](const SparseTensor::Index& idx, const Scalar& c) { r[idx[2]] = c; });
    return r;
  }

  //! h ⇀ a for arbitrary elements.
  Vec act(const Vec& h, const Vec& a) const {
    Vec r = zero_vec(field(), A_.dim());
    for (std::uint32_t i = 0; i < H_.dim(); ++i) {
      if (h[i].is_zero()) continue;
      for (std::uint32_t j = 0; j < A_.dim(); ++j) {
        if (a[j].is_zero()) continue;
        act_.for_prefix({i, j}, [&](const SparseTensor::Index& idx, const Scalar& c) {
          r[idx[2]] += h[i] * a[j] * c;
        });
      }
    }
    return r;
  }

  //! Matrix of a ↦ h ⇀ a.
  Mat act_matrix(const Vec& h) const {
    Mat m(field(), A_.dim(), A_.dim());
    for (std::uint32_t i = 0; i < H_.dim(); ++i) {
      if (h[i].is_zero()) continue;
      act_.for_prefix({i}, [&](const SparseTensor::Index& idx, const Scalar& c) {
        m.at(idx[2], idx[1]) += h[i] * c;
      });
    }
    return m;
  }

 private:
  HopfAlgebra H_;
  FinDimAlgebra A_;
  SparseTensor act_;
};

//! Axiom report for a candidate module-algebra action.
inline Report check_module_algebra(const ModuleAlgebraAction& act) {
  Report rep;
  const HopfAlgebra& H = act.hopf();
  const FinDimAlgebra& A = act.algebra();

  {
    bool ok = true;
    std::string w;
    for (std::size_t a = 0; a < A.dim() && ok; ++a)
      if (act.act(H.algebra().unit(), A.basis_vec(a)) != A.basis_vec(a)) {
        ok = false;
        w = A.labels()[a];
      }
    rep.add("unit-acts-as-identity", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t h = 0; h < H.dim() && ok; ++h)
      for (std::size_t k = 0; k < H.dim() && ok; ++k)
        for (std::size_t a = 0; a < A.dim() && ok; ++a) {
          Vec lhs = act.act(H.algebra().mul(H.algebra().basis_vec(h), H.algebra().basis_vec(k)),
                            A.basis_vec(a));
          Vec rhs = act.act(H.algebra().basis_vec(h), act.act_basis(k, a));
          if (lhs != rhs) {
            ok = false;
            w = "(" + H.labels()[h] + ")(" + H.labels()[k] + ") on " + A.labels()[a];
          }
        }
    rep.add("action-multiplicative", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t h = 0; h < H.dim() && ok; ++h)
      if (act.act(H.algebra().basis_vec(h), A.unit()) != H.counit()[h] * A.unit()) {
        ok = false;
        w = H.labels()[h];
      }
    rep.add("measures-unit", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t h = 0; h < H.dim() && ok; ++h)
      for (std::size_t a = 0; a < A.dim() && ok; ++a)
        for (std::size_t b = 0; b < A.dim() && ok; ++b) {
          Vec lhs = act.act(H.algebra().basis_vec(h), A.mul(A.basis_vec(a), A.basis_vec(b)));
          Vec rhs = zero_vec(A.field(), A.dim());
          for (const auto& t : H.sweedler2(H.algebra().basis_vec(h)))
            rhs = rhs + t.coef * A.mul(act.act_basis(t.one, a), act.act_basis(t.two, b));
          if (lhs != rhs) {
            ok = false;
            w = H.labels()[h] + " on (" + A.labels()[a] + ")(" + A.labels()[b] + ")";
          }
        }
    rep.add("measures-product", ok, w);
  }

  if (A.grading()) {
    bool ok = true;
    std::string w;
    for (const auto& [idx, c] : act.action_tensor().entries()) {
      (void)c;
      if ((*A.grading())[idx[1]] != (*A.grading())[idx[2]]) {
        ok = false;
        w = H.labels()[idx[0]] + " moves " + A.labels()[idx[1]] + " to " + A.labels()[idx[2]];
        break;
      }
    }
    rep.add("preserves-grading", ok, w);
  }

  if (A.augmentation()) {
    bool ok = true;
    std::string w;
    Mat p = Mat::from_rows(A.field(), {*A.augmentation()}, A.dim());
    std::vector<Vec> ideal = p.nullspace();
    for (std::size_t h = 0; h < H.dim() && ok; ++h)
      for (const auto& v : ideal)
        if (!pair(*A.augmentation(), act.act(H.algebra().basis_vec(h), v)).is_zero()) {
          ok = false;
          w = H.labels()[h];
          break;
        }
    rep.add("preserves-augmentation-ideal", ok, w);
  }
  return rep;
}

//! The smash product Λ = A # H on the basis (A-index, H-index), ordered
//! lexicographically, with product (a#h)(b#k) = a(h₁⇀b) # h₂k.
class SmashAlgebra {
 public:
  SmashAlgebra() = default;
  explicit SmashAlgebra(ModuleAlgebraAction action) : act_(std::move(action)) {
    const FinDimAlgebra& A = act_.algebra();
    const HopfAlgebra& H = act_.hopf();
    std::size_t na = A.dim(), nh = H.dim(), n = na * nh;
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t h = 0; h < nh; ++h) labels.push_back(A.labels()[a] + "#" + H.labels()[h]);

    SparseTensor mul(A.field(), {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n),
                                 static_cast<std::uint32_t>(n)});
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t h = 0; h < nh; ++h) {
        auto terms = H.sweedler2(H.algebra().basis_vec(h));
        for (std::size_t b = 0; b < na; ++b)
          for (std::size_t k = 0; k < nh; ++k) {
            for (const auto& t : terms) {
              Vec left = A.mul(A.basis_vec(a), act_.act_basis(t.one, b));
              auto right = H.algebra().mul_basis(t.two, k);
              for (std::size_t p = 0; p < na; ++p) {
                if (left[p].is_zero()) continue;
                for (const auto& [q, ch] : right)
                  mul.add({static_cast<std::uint32_t>(a * nh + h),
                           static_cast<std::uint32_t>(b * nh + k),
                           static_cast<std::uint32_t>(p * nh + q)},
                          t.coef * left[p] * ch);
              }
            }
          }
      }
    Vec unit = tensor_vec(A.unit(), H.algebra().unit());
    lambda_ = FinDimAlgebra(A.field(), std::move(labels), std::move(mul), std::move(unit));
    if (A.grading()) {
      std::vector<long> degs(n);
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t h = 0; h < nh; ++h) degs[a * nh + h] = (*A.grading())[a];
      lambda_.set_grading(std::move(degs));
    }
    if (A.augmentation()) lambda_.set_augmentation(tensor_vec(*A.augmentation(), H.counit()));
  }

  const FinDimAlgebra& algebra() const { return lambda_; }
  const ModuleAlgebraAction& action() const { return act_; }
  std::size_t dim() const { return lambda_.dim(); }

  std::size_t index(std::size_t a, std::size_t h) const { return a * act_.hopf().dim() + h; }
  //! a ⊗ h as an element of Λ.
  Vec embed_tensor(const Vec& a, const Vec& h) const { return tensor_vec(a, h); }

  //! A → Λ, a ↦ a # 1.
  AlgebraMorphism embed_algebra() const {
    const FinDimAlgebra& A = act_.algebra();
    std::vector<Vec> cols;
    for (std::size_t a = 0; a < A.dim(); ++a)
      cols.push_back(embed_tensor(A.basis_vec(a), act_.hopf().algebra().unit()));
    auto phi = make_algebra_morphism(A, lambda_, Mat::from_cols(A.field(), cols, lambda_.dim()));
    if (!phi.valid()) throw std::runtime_error("smash: coefficient algebra does not embed");
    return phi;
  }
  //! H → Λ, h ↦ 1 # h.
  AlgebraMorphism embed_hopf() const {
    const HopfAlgebra& H = act_.hopf();
    std::vector<Vec> cols;
    for (std::size_t h = 0; h < H.dim(); ++h)
      cols.push_back(embed_tensor(act_.algebra().unit(), H.algebra().basis_vec(h)));
    auto phi =
        make_algebra_morphism(H.algebra(), lambda_, Mat::from_cols(H.field(), cols, lambda_.dim()));
    if (!phi.valid()) throw std::runtime_error("smash: Hopf algebra does not embed");
    return phi;
  }

 private:
  ModuleAlgebraAction act_;
  FinDimAlgebra lambda_;
};

//! Construct and fully verify Λ = A # H.  Throws when the action fails its
//! axioms or the resulting product is not associative/unital.
inline SmashAlgebra smash_product(const ModuleAlgebraAction& action) {
  Report pre = check_module_algebra(action);
  if (!pre.all_pass())
    throw std::invalid_argument("smash_product: invalid action (" + pre.first_failure()->id +
                                " at " + pre.first_failure()->witness + ")");
  SmashAlgebra s(action);
  Report rep = s.algebra().verify();
  if (!rep.all_pass())
    throw std::runtime_error("smash_product: verification failed (" + rep.first_failure()->id + ")");
  return s;
}

//! The algebra on A ⊗ A ⊗ H whose left modules are the equivariant
//! A-bimodules of twist index i: the product is
//! (a⊗b⊗h)(a'⊗b'⊗k) = a(h₁⇀a') ⊗ (S^{2i}(h₃)⇀b')b ⊗ h₂k.
class DeltaAlgebra {
 public:
  DeltaAlgebra() = default;
  DeltaAlgebra(ModuleAlgebraAction action, long i) : act_(std::move(action)), i_(i) {
    const FinDimAlgebra& A = act_.algebra();
    const HopfAlgebra& H = act_.hopf();
    auto s2i = H.antipode_power_matrix(2 * i);
    if (!s2i)
      throw std::invalid_argument("delta_algebra: negative index needs an invertible antipode");
    std::size_t na = A.dim(), nh = H.dim(), n = na * na * nh;
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < na; ++b)
        for (std::size_t h = 0; h < nh; ++h)
          labels.push_back(A.labels()[a] + "|" + A.labels()[b] + "#" + H.labels()[h]);

    SparseTensor mul(A.field(), {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n),
                                 static_cast<std::uint32_t>(n)});
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < na; ++b)
        for (std::size_t h = 0; h < nh; ++h) {
          auto terms = H.sweedler3(H.algebra().basis_vec(h));
          std::size_t src = (a * na + b) * nh + h;
          for (std::size_t a2 = 0; a2 < na; ++a2)
            for (std::size_t b2 = 0; b2 < na; ++b2)
              for (std::size_t k = 0; k < nh; ++k) {
                std::size_t other = (a2 * na + b2) * nh + k;
                for (const auto& t : terms) {
                  Vec left = A.mul(A.basis_vec(a), act_.act_basis(t.one, a2));
                  Vec right = A.mul(act_.act(s2i->col(t.three), A.basis_vec(b2)), A.basis_vec(b));
                  auto hk = H.algebra().mul_basis(t.two, k);
                  for (std::size_t p = 0; p < na; ++p) {
                    if (left[p].is_zero()) continue;
                    for (std::size_t q = 0; q < na; ++q) {
                      if (right[q].is_zero()) continue;
                      for (const auto& [r, ch] : hk)
                        mul.add({static_cast<std::uint32_t>(src), static_cast<std::uint32_t>(other),
                                 static_cast<std::uint32_t>((p * na + q) * nh + r)},
                                t.coef * left[p] * right[q] * ch);
                    }
                  }
                }
              }
        }
    Vec unit = tensor_vec(tensor_vec(A.unit(), A.unit()), H.algebra().unit());
    delta_ = FinDimAlgebra(A.field(), std::move(labels), std::move(mul), std::move(unit));
  }

  const FinDimAlgebra& algebra() const { return delta_; }
  const ModuleAlgebraAction& action() const { return act_; }
  long twist_index() const { return i_; }
  std::size_t dim() const { return delta_.dim(); }

  std::size_t index(std::size_t a, std::size_t b, std::size_t h) const {
    std::size_t na = act_.algebra().dim();
    return (a * na + b) * act_.hopf().dim() + h;
  }
  //! a ⊗ b ⊗ h as an element.
  Vec embed_tensor(const Vec& a, const Vec& b, const Vec& h) const {
    return tensor_vec(tensor_vec(a, b), h);
  }

  //! A ⊗ A^op → Δ_i, (a ⊗ b) ↦ a ⊗ b ⊗ 1.
  AlgebraMorphism embed_enveloping() const {
    const FinDimAlgebra& A = act_.algebra();
    FinDimAlgebra ae = A.enveloping();
    std::vector<Vec> cols;
    for (std::size_t a = 0; a < A.dim(); ++a)
      for (std::size_t b = 0; b < A.dim(); ++b)
        cols.push_back(embed_tensor(A.basis_vec(a), A.basis_vec(b), act_.hopf().algebra().unit()));
    auto phi = make_algebra_morphism(ae, delta_, Mat::from_cols(A.field(), cols, delta_.dim()));
    if (!phi.valid()) throw std::runtime_error("delta: enveloping algebra does not embed");
    return phi;
  }
  //! H → Δ_i, h ↦ 1 ⊗ 1 ⊗ h.
  AlgebraMorphism embed_hopf() const {
    const HopfAlgebra& H = act_.hopf();
    const FinDimAlgebra& A = act_.algebra();
    std::vector<Vec> cols;
    for (std::size_t h = 0; h < H.dim(); ++h)
      cols.push_back(embed_tensor(A.unit(), A.unit(), H.algebra().basis_vec(h)));
    auto phi =
        make_algebra_morphism(H.algebra(), delta_, Mat::from_cols(H.field(), cols, delta_.dim()));
    if (!phi.valid()) throw std::runtime_error("delta: Hopf algebra does not embed");
    return phi;
  }

  //! Associativity, unit, and the two commutation identities
  //! h(a⊗b) = (h₁⇀a ⊗ S^{2i}(h₃)⇀b)h₂ and, when S is invertible,
  //! (a⊗b)h = h₂(S^{-1}(h₁)⇀a ⊗ S^{2i+1}(h₃)⇀b).
  Report verify() const {
    Report rep = delta_.verify();
    const FinDimAlgebra& A = act_.algebra();
    const HopfAlgebra& H = act_.hopf();
    Mat s2i = *H.antipode_power_matrix(2 * i_);

    {
      bool ok = true;
      std::string w;
      for (std::size_t h = 0; h < H.dim() && ok; ++h)
        for (std::size_t a = 0; a < A.dim() && ok; ++a)
          for (std::size_t b = 0; b < A.dim() && ok; ++b) {
            Vec lhs = delta_.mul(embed_tensor(A.unit(), A.unit(), H.algebra().basis_vec(h)),
                                 embed_tensor(A.basis_vec(a), A.basis_vec(b),
                                              H.algebra().unit()));
            Vec rhs = zero_vec(A.field(), delta_.dim());
            for (const auto& t : H.sweedler3(H.algebra().basis_vec(h)))
              rhs = rhs + t.coef * embed_tensor(act_.act_basis(t.one, a),
                                                act_.act(s2i.col(t.three), A.basis_vec(b)),
                                                H.algebra().basis_vec(t.two));
            if (lhs != rhs) {
              ok = false;
              w = H.labels()[h] + " * (" + A.labels()[a] + "|" + A.labels()[b] + ")";
            }
          }
      rep.add("commute-left", ok, w);
    }

    auto sInv = H.antipode_power_matrix(-1);
    if (sInv) {
      Mat sOdd = *H.antipode_power_matrix(2 * i_ + 1);
      bool ok = true;
      std::string w;
      for (std::size_t h = 0; h < H.dim() && ok; ++h)
        for (std::size_t a = 0; a < A.dim() && ok; ++a)
          for (std::size_t b = 0; b < A.dim() && ok; ++b) {
            Vec lhs = delta_.mul(embed_tensor(A.basis_vec(a), A.basis_vec(b), H.algebra().unit()),
                                 embed_tensor(A.unit(), A.unit(), H.algebra().basis_vec(h)));
            Vec rhs = zero_vec(A.field(), delta_.dim());
            for (const auto& t : H.sweedler3(H.algebra().basis_vec(h))) {
              Vec cell = embed_tensor(act_.act(sInv->col(t.one), A.basis_vec(a)),
                                      act_.act(sOdd.col(t.three), A.basis_vec(b)),
                                      H.algebra().unit());
              rhs = rhs + t.coef * delta_.mul(embed_tensor(A.unit(), A.unit(),
                                                           H.algebra().basis_vec(t.two)),
                                              cell);
            }
            if (lhs != rhs) {
              ok = false;
              w = "(" + A.labels()[a] + "|" + A.labels()[b] + ") * " + H.labels()[h];
            }
          }
      rep.add("commute-right", ok, w);
    }
    return rep;
  }

 private:
  ModuleAlgebraAction act_;
  long i_ = 0;
  FinDimAlgebra delta_;
};

//! Construct Δ_i and enforce its verification report.
inline DeltaAlgebra delta_algebra(const ModuleAlgebraAction& action, long i) {
  DeltaAlgebra d(action, i);
  Report rep = d.verify();
  if (!rep.all_pass())
    throw std::runtime_error("delta_algebra: verification failed (" + rep.first_failure()->id +
                             " at " + rep.first_failure()->witness + ")");
  return d;
}

//! H ⊗ H^op as a Hopf algebra: componentwise coproduct and counit, antipode
//! S ⊗ S^{-1}.  Its module algebras include A ⊗ A^op via
//! (h⊗k) ⇀ (a⊗b) = (h⇀a) ⊗ (S^{-1}(k)⇀b), and the smash product for that
//! action is the enveloping algebra of A # H.
inline HopfAlgebra hopf_enveloping(const HopfAlgebra& H) {
  auto sInv = H.antipode_power_matrix(-1);
  if (!sInv) throw std::invalid_argument("hopf_enveloping: antipode must be invertible");
  std::size_t n = H.dim();
  FinDimAlgebra alg = H.algebra().tensor(H.algebra().opposite());
  auto u32 = [](std::size_t x) { return static_cast<std::uint32_t>(x); };
  SparseTensor comul(H.field(), {u32(n * n), u32(n * n), u32(n * n)});
  for (const auto& [ia, ca] : H.comul_tensor().entries())
    for (const auto& [ib, cb] : H.comul_tensor().entries())
      comul.add({u32(ia[0] * n + ib[0]), u32(ia[1] * n + ib[1]), u32(ia[2] * n + ib[2])}, ca * cb);
  Vec counit = tensor_vec(H.counit(), H.counit());
  Mat antipode = Mat::kron(H.antipode(), *sInv);
  return HopfAlgebra(std::move(alg), std::move(comul), std::move(counit), std::move(antipode));
}

//! The action of H ⊗ H^op on A ⊗ A^op described above.
inline ModuleAlgebraAction enveloping_action(const ModuleAlgebraAction& act) {
  const HopfAlgebra& H = act.hopf();
  const FinDimAlgebra& A = act.algebra();
  auto sInv = H.antipode_power_matrix(-1);
  if (!sInv) throw std::invalid_argument("enveloping_action: antipode must be invertible");
  std::size_t nh = H.dim(), na = A.dim();
  auto u32 = [](std::size_t x) { return static_cast<std::uint32_t>(x); };
  SparseTensor t(H.field(), {u32(nh * nh), u32(na * na), u32(na * na)});
  for (std::size_t h = 0; h < nh; ++h)
    for (std::size_t k = 0; k < nh; ++k)
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b) {
          Vec left = act.act_basis(h, a);
          Vec right = act.act(sInv->col(k), A.basis_vec(b));
          for (std::size_t p = 0; p < na; ++p) {
            if (left[p].is_zero()) continue;
            for (std::size_t q = 0; q < na; ++q)
              if (!right[q].is_zero())
                t.add({u32(h * nh + k), u32(a * na + b), u32(p * na + q)}, left[p] * right[q]);
          }
        }
  return ModuleAlgebraAction(hopf_enveloping(H), A.enveloping(), std::move(t));
}

//! The embedding Δ_i → Λ ⊗ Λ^op, (a⊗b)h ↦ (a⊗b)(h₁ ⊗ S^{2i+1}(h₂)),
//! verified multiplicative and injective (a two-sided retraction exists).
inline AlgebraMorphism delta_embedding(const DeltaAlgebra& delta, const SmashAlgebra& smash) {
  const HopfAlgebra& H = delta.action().hopf();
  const FinDimAlgebra& A = delta.action().algebra();
  const FinDimAlgebra& L = smash.algebra();
  auto sOdd = H.antipode_power_matrix(2 * delta.twist_index() + 1);
  if (!sOdd) throw std::invalid_argument("delta_embedding: antipode must be invertible");
  FinDimAlgebra env = L.enveloping();
  std::vector<Vec> cols(delta.dim());
  for (std::size_t a = 0; a < A.dim(); ++a)
    for (std::size_t b = 0; b < A.dim(); ++b)
      for (std::size_t h = 0; h < H.dim(); ++h) {
        Vec lhsEnv = tensor_vec(smash.embed_tensor(A.basis_vec(a), H.algebra().unit()),
                                smash.embed_tensor(A.basis_vec(b), H.algebra().unit()));
        Vec img = zero_vec(A.field(), env.dim());
        for (const auto& t : H.sweedler2(H.algebra().basis_vec(h))) {
          Vec rhsEnv = tensor_vec(smash.embed_tensor(A.unit(), H.algebra().basis_vec(t.one)),
                                  smash.embed_tensor(A.unit(), sOdd->col(t.two)));
          img = img + t.coef * env.mul(lhsEnv, rhsEnv);
        }
        cols[delta.index(a, b, h)] = img;
      }
  auto phi = make_algebra_morphism(delta.algebra(), env,
                                   Mat::from_cols(A.field(), cols, env.dim()));
  if (!phi.multiplicative || !phi.unital)
    throw std::runtime_error("delta_embedding: not an algebra morphism");
  if (phi.matrix.rank() != delta.dim())
    throw std::runtime_error("delta_embedding: not injective");
  return phi;
}

//! The linear retraction Λ ⊗ Λ^op → Δ_i, ah ⊗ bk ↦ a ⊗ S^{-1}(k)⇀b ⊗ h;
//! composed with delta_embedding it is the identity of Δ_i.
inline Mat delta_retraction(const DeltaAlgebra& delta, const SmashAlgebra& smash) {
  const HopfAlgebra& H = delta.action().hopf();
  const FinDimAlgebra& A = delta.action().algebra();
  auto sInv = H.antipode_power_matrix(-1);
  if (!sInv) throw std::invalid_argument("delta_retraction: antipode must be invertible");
  std::size_t nL = smash.dim();
  Mat m(A.field(), delta.dim(), nL * nL);
  for (std::size_t a = 0; a < A.dim(); ++a)
    for (std::size_t h = 0; h < H.dim(); ++h)
      for (std::size_t b = 0; b < A.dim(); ++b)
        for (std::size_t k = 0; k < H.dim(); ++k) {
          Vec img = delta.embed_tensor(A.basis_vec(a),
                                       delta.action().act(sInv->col(k), A.basis_vec(b)),
                                       H.algebra().basis_vec(h));
          std::size_t src = smash.index(a, h) * nL + smash.index(b, k);
          for (std::size_t r = 0; r < delta.dim(); ++r)
            if (!img[r].is_zero()) m.at(r, src) = img[r];
        }
  return m;
}

//! Evaluate the full identity suite tying Λ, Λ ⊗ Λ^op, Δ_0 and Δ_1 to the
//! action: the smash product law, the normal form pulling scalars across H,
//! the commutation rules in the enveloping algebra and in both Δ's, the
//! enveloping smash presentation of Λ^e, and the twisting compatibility of
//! the antipode square.  Requires a valid action; identities that need an
//! invertible antipode fail with that witness when S is singular.
inline Report verify_identities(const ModuleAlgebraAction& action) {
  Report pre = check_module_algebra(action);
  if (!pre.all_pass())
    throw std::invalid_argument("verify_identities: invalid action (" + pre.first_failure()->id +
                                ")");
  Report rep;
  const HopfAlgebra& H = action.hopf();
  const FinDimAlgebra& A = action.algebra();
  SmashAlgebra smash(action);
  const FinDimAlgebra& L = smash.algebra();
  FinDimAlgebra env = L.enveloping();
  auto sInv = H.antipode_power_matrix(-1);
  rep.add("antipode-invertible", sInv.has_value(), sInv ? "" : "antipode matrix is singular");

  {
    bool ok = true;
    std::string w;
    for (std::size_t a = 0; a < A.dim() && ok; ++a)
      for (std::size_t h = 0; h < H.dim() && ok; ++h)
        for (std::size_t b = 0; b < A.dim() && ok; ++b)
          for (std::size_t k = 0; k < H.dim() && ok; ++k) {
            Vec lhs = L.mul(L.basis_vec(smash.index(a, h)), L.basis_vec(smash.index(b, k)));
            Vec rhs = zero_vec(A.field(), L.dim());
            for (const auto& t : H.sweedler2(H.algebra().basis_vec(h)))
              rhs = rhs + t.coef * smash.embed_tensor(
                                       A.mul(A.basis_vec(a), action.act_basis(t.one, b)),
                                       H.algebra().mul(H.algebra().basis_vec(t.two),
                                                       H.algebra().basis_vec(k)));
            if (lhs != rhs) {
              ok = false;
              w = L.labels()[smash.index(a, h)] + " * " + L.labels()[smash.index(b, k)];
            }
          }
    rep.add("smash-product-law", ok, w);
  }

  {
    bool ok = sInv.has_value();
    std::string w = ok ? "" : "antipode not invertible";
    for (std::size_t a = 0; a < A.dim() && ok; ++a)
      for (std::size_t h = 0; h < H.dim() && ok; ++h) {
        Vec rhs = zero_vec(A.field(), L.dim());
        for (const auto& t : H.sweedler2(H.algebra().basis_vec(h)))
          rhs = rhs + t.coef * L.mul(smash.embed_tensor(A.unit(), H.algebra().basis_vec(t.two)),
                                     smash.embed_tensor(action.act(sInv->col(t.one),
                                                                   A.basis_vec(a)),
                                                        H.algebra().unit()));
        if (rhs != L.basis_vec(smash.index(a, h))) {
          ok = false;
          w = L.labels()[smash.index(a, h)];
        }
      }
    rep.add("smash-normal-form", ok, w);
  }

  auto envElem = [&](const Vec& u, const Vec& v) { return tensor_vec(u, v); };
  auto envHH = [&](std::size_t h, std::size_t k) {
    return envElem(smash.embed_tensor(A.unit(), H.algebra().basis_vec(h)),
                   smash.embed_tensor(A.unit(), H.algebra().basis_vec(k)));
  };
  auto envAA = [&](const Vec& a, const Vec& b) {
    return envElem(smash.embed_tensor(a, H.algebra().unit()),
                   smash.embed_tensor(b, H.algebra().unit()));
  };

  {
    bool ok = sInv.has_value();
    std::string w = ok ? "" : "antipode not invertible";
    for (std::size_t h = 0; h < H.dim() && ok; ++h)
      for (std::size_t k = 0; k < H.dim() && ok; ++k) {
        auto hTerms = H.sweedler2(H.algebra().basis_vec(h));
        auto kTerms = H.sweedler2(H.algebra().basis_vec(k));
        for (std::size_t a = 0; a < A.dim() && ok; ++a)
          for (std::size_t b = 0; b < A.dim() && ok; ++b) {
            Vec lhs = env.mul(envHH(h, k), envAA(A.basis_vec(a), A.basis_vec(b)));
            Vec rhs = zero_vec(A.field(), env.dim());
            for (const auto& th : hTerms)
              for (const auto& tk : kTerms) {
                Vec moved = envAA(action.act_basis(th.one, a),
                                  action.act(sInv->col(tk.one), A.basis_vec(b)));
                rhs = rhs + th.coef * tk.coef * env.mul(moved, envHH(th.two, tk.two));
              }
            if (lhs != rhs) {
              ok = false;
              w = "(" + H.labels()[h] + "|" + H.labels()[k] + ") * (" + A.labels()[a] + "|" +
                  A.labels()[b] + ")";
            }
          }
      }
    rep.add("envelope-commute-left", ok, w);
  }

  {
    bool ok = sInv.has_value();
    std::string w = ok ? "" : "antipode not invertible";
    for (std::size_t h = 0; h < H.dim() && ok; ++h)
      for (std::size_t k = 0; k < H.dim() && ok; ++k) {
        auto hTerms = H.sweedler2(H.algebra().basis_vec(h));
        auto kTerms = H.sweedler2(H.algebra().basis_vec(k));
        for (std::size_t a = 0; a < A.dim() && ok; ++a)
          for (std::size_t b = 0; b < A.dim() && ok; ++b) {
            Vec lhs = env.mul(envAA(A.basis_vec(a), A.basis_vec(b)), envHH(h, k));
            Vec rhs = zero_vec(A.field(), env.dim());
            for (const auto& th : hTerms)
              for (const auto& tk : kTerms) {
                Vec moved = envAA(action.act(sInv->col(th.one), A.basis_vec(a)),
                                  action.act_basis(tk.one, b));
                rhs = rhs + th.coef * tk.coef * env.mul(envHH(th.two, tk.two), moved);
              }
            if (lhs != rhs) {
              ok = false;
              w = "(" + A.labels()[a] + "|" + A.labels()[b] + ") * (" + H.labels()[h] + "|" +
                  H.labels()[k] + ")";
            }
          }
      }
    rep.add("envelope-commute-right", ok, w);
  }

  if (sInv) {
    HopfAlgebra He = hopf_enveloping(H);
    ModuleAlgebraAction actE = enveloping_action(action);
    bool ok = true;
    std::string w;
    std::size_t nh = H.dim();
    for (std::size_t h = 0; h < nh && ok; ++h)
      for (std::size_t k = 0; k < nh && ok; ++k)
        for (std::size_t a = 0; a < A.dim() && ok; ++a)
          for (std::size_t b = 0; b < A.dim() && ok; ++b) {
            Vec lhs = env.mul(envHH(h, k), envAA(A.basis_vec(a), A.basis_vec(b)));
            Vec rhs = zero_vec(A.field(), env.dim());
            for (const auto& t : He.sweedler2(He.algebra().basis_vec(h * nh + k))) {
              Vec moved = actE.act_basis(t.one, a * A.dim() + b);
              Vec movedEnv = zero_vec(A.field(), env.dim());
              for (std::size_t p = 0; p < A.dim(); ++p)
                for (std::size_t q = 0; q < A.dim(); ++q)
                  if (!moved[p * A.dim() + q].is_zero())
                    movedEnv = movedEnv + moved[p * A.dim() + q] *
                                              envAA(A.basis_vec(p), A.basis_vec(q));
              rhs = rhs + t.coef * env.mul(movedEnv, envHH(t.two / nh, t.two % nh));
            }
            if (lhs != rhs) {
              ok = false;
              w = "(" + H.labels()[h] + "|" + H.labels()[k] + ") * (" + A.labels()[a] + "|" +
                  A.labels()[b] + ")";
            }
          }
    rep.add("envelope-smash-law", ok, w);
  } else {
    rep.add("envelope-smash-law", false, "antipode not invertible");
  }

  DeltaAlgebra d0(action, 0);
  rep.merge(d0.verify(), "delta-plain:");
  DeltaAlgebra d1(action, 1);
  rep.merge(d1.verify(), "delta-twisted:");

  if (sInv) {
    ModuleAlgebraAction actE = enveloping_action(action);
    std::size_t nh = H.dim(), na = A.dim();
    Mat s2 = *H.antipode_power_matrix(2);
    auto embedAE = [&](const Vec& v) {
      Vec r = zero_vec(A.field(), d0.dim());
      for (std::size_t p = 0; p < na; ++p)
        for (std::size_t q = 0; q < na; ++q)
          if (!v[p * na + q].is_zero())
            r = r + v[p * na + q] * d0.embed_tensor(A.basis_vec(p), A.basis_vec(q),
                                                    H.algebra().unit());
      return r;
    };
    auto embedH = [&](const Vec& h) { return d0.embed_tensor(A.unit(), A.unit(), h); };

    {
      bool ok = true;
      std::string w;
      for (std::size_t h = 0; h < nh && ok; ++h)
        for (std::size_t a = 0; a < na && ok; ++a)
          for (std::size_t b = 0; b < na && ok; ++b) {
            Vec lhs = d0.algebra().mul(embedH(H.algebra().basis_vec(h)),
                                       d0.embed_tensor(A.basis_vec(a), A.basis_vec(b),
                                                       H.algebra().unit()));
            Vec rhs = zero_vec(A.field(), d0.dim());
            for (const auto& t : H.sweedler3(H.algebra().basis_vec(h))) {
              Vec he = zero_vec(A.field(), nh * nh);
              for (std::size_t s = 0; s < nh; ++s) {
                Scalar c = H.antipode().at(s, t.three);
                if (!c.is_zero()) he[t.one * nh + s] += c;
              }
              Vec moved = actE.act(he, tensor_vec(A.basis_vec(a), A.basis_vec(b)));
              rhs = rhs + t.coef * d0.algebra().mul(embedAE(moved),
                                                    embedH(H.algebra().basis_vec(t.two)));
            }
            if (lhs != rhs) {
              ok = false;
              w = H.labels()[h] + " * (" + A.labels()[a] + "|" + A.labels()[b] + ")";
            }
          }
      rep.add("envelope-action-form-left", ok, w);
    }

    {
      bool ok = true;
      std::string w;
      for (std::size_t h = 0; h < nh && ok; ++h)
        for (std::size_t a = 0; a < na && ok; ++a)
          for (std::size_t b = 0; b < na && ok; ++b) {
            Vec lhs = d0.algebra().mul(d0.embed_tensor(A.basis_vec(a), A.basis_vec(b),
                                                       H.algebra().unit()),
                                       embedH(H.algebra().basis_vec(h)));
            Vec rhs = zero_vec(A.field(), d0.dim());
            for (const auto& t : H.sweedler3(H.algebra().basis_vec(h))) {
              Vec he = zero_vec(A.field(), nh * nh);
              for (std::size_t s = 0; s < nh; ++s) {
                Scalar cs = sInv->at(s, t.one);
                if (cs.is_zero()) continue;
                for (std::size_t u = 0; u < nh; ++u) {
                  Scalar cu = s2.at(u, t.three);
                  if (!cu.is_zero()) he[s * nh + u] += cs * cu;
                }
              }
              Vec moved = actE.act(he, tensor_vec(A.basis_vec(a), A.basis_vec(b)));
              rhs = rhs + t.coef * d0.algebra().mul(embedH(H.algebra().basis_vec(t.two)),
                                                    embedAE(moved));
            }
            if (lhs != rhs) {
              ok = false;
              w = "(" + A.labels()[a] + "|" + A.labels()[b] + ") * " + H.labels()[h];
            }
          }
      rep.add("envelope-action-form-right", ok, w);
    }
  } else {
    rep.add("envelope-action-form-left", false, "antipode not invertible");
    rep.add("envelope-action-form-right", false, "antipode not invertible");
  }

  {
    auto s2 = antipode_power(H, 2);
    rep.add("twist-compatibility-identity",
            check_sigma_condition(H, identity_morphism(H.algebra()), 0), "");
    rep.add("twist-compatibility-antipode-square", s2 && check_sigma_condition(H, *s2, 1), "");
  }
  return rep;
}

}  // namespace smashcalc
