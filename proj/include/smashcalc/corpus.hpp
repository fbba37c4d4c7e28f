#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "smashcalc/hopf.hpp"
#include "smashcalc/smash.hpp"

namespace smashcalc {

//! Ready-made small algebras and Hopf algebras used throughout the tests,
//! demos and shipped workspaces.  All are given by explicit structure
//! constants so every axiom remains machine-checkable.

namespace detail {
inline std::uint32_t u32(std::size_t x) { return static_cast<std::uint32_t>(x); }
}  // namespace detail

//! The ground field as a one-dimensional algebra.
inline FinDimAlgebra scalar_algebra(Field f) {
  SparseTensor mul(f, {1, 1, 1});
  mul.set({0, 0, 0}, Scalar::one(f));
  FinDimAlgebra a(f, {"1"}, mul, {Scalar::one(f)});
  a.set_grading({0});
  a.set_augmentation({Scalar::one(f)});
  return a;
}

//! Group algebra of the cyclic group of order n, with its standard Hopf
//! structure: Δ(g^i) = g^i ⊗ g^i, ε(g^i) = 1, S(g^i) = g^{-i}.
inline HopfAlgebra cyclic_group_algebra(Field f, std::size_t n) {
  using detail::u32;
  if (n == 0) throw std::invalid_argument("cyclic_group_algebra: order must be positive");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back(i == 0 ? "1" : (i == 1 ? "g" : "g" + std::to_string(i)));
  SparseTensor mul(f, {u32(n), u32(n), u32(n)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mul.set({u32(i), u32(j), u32((i + j) % n)}, Scalar::one(f));
  Vec unit = zero_vec(f, n);
  unit[0] = Scalar::one(f);
  FinDimAlgebra alg(f, std::move(labels), std::move(mul), std::move(unit));

  SparseTensor comul(f, {u32(n), u32(n), u32(n)});
  for (std::size_t i = 0; i < n; ++i) comul.set({u32(i), u32(i), u32(i)}, Scalar::one(f));
  Vec counit(n, Scalar::one(f));
  Mat antipode(f, n, n);
  for (std::size_t i = 0; i < n; ++i) antipode.at((n - i) % n, i) = Scalar::one(f);
  return HopfAlgebra(std::move(alg), std::move(comul), std::move(counit), std::move(antipode));
}

//! The dual of the order-2 group algebra, presented on the idempotent basis
//! d0, d1: pointwise product, Δ(d_i) = Σ_{j+k=i} d_j ⊗ d_k, ε = evaluation at
//! the identity, S = id.
inline HopfAlgebra dual_group_algebra_c2(Field f) {
  SparseTensor mul(f, {2, 2, 2});
  mul.set({0, 0, 0}, Scalar::one(f));
  mul.set({1, 1, 1}, Scalar::one(f));
  FinDimAlgebra alg(f, {"d0", "d1"}, mul, {Scalar::one(f), Scalar::one(f)});

  SparseTensor comul(f, {2, 2, 2});
  comul.set({0, 0, 0}, Scalar::one(f));
  comul.set({0, 1, 1}, Scalar::one(f));
  comul.set({1, 0, 1}, Scalar::one(f));
  comul.set({1, 1, 0}, Scalar::one(f));
  Vec counit = {Scalar::one(f), Scalar::zero(f)};
  Mat antipode = Mat::identity(f, 2);
  return HopfAlgebra(std::move(alg), std::move(comul), std::move(counit), std::move(antipode));
}

//! Sweedler's four-dimensional Hopf algebra on the basis 1, g, x, gx with
//! g² = 1, x² = 0, xg = -gx, Δ(g) = g⊗g, Δ(x) = x⊗1 + g⊗x, S(x) = -gx.
//! It is neither commutative nor cocommutative and S has order 4.
inline HopfAlgebra sweedler_h4(Field f) {
  if (f.p == 2) throw std::invalid_argument("sweedler_h4: needs characteristic != 2");
  const Scalar one = Scalar::one(f), neg = -Scalar::one(f);
  // basis indices: 0 = 1, 1 = g, 2 = x, 3 = gx
  SparseTensor mul(f, {4, 4, 4});
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, Scalar c) {
    mul.set({detail::u32(i), detail::u32(j), detail::u32(k)}, c);
  };
  for (std::size_t j = 0; j < 4; ++j) set(0, j, j, one);  // 1 · b = b
  set(1, 0, 1, one);                                      // g · 1
  set(2, 0, 2, one);                                      // x · 1
  set(3, 0, 3, one);                                      // gx · 1
  set(1, 1, 0, one);                                      // g g = 1
  set(1, 2, 3, one);                                      // g x = gx
  set(1, 3, 2, one);                                      // g gx = x
  set(2, 1, 3, neg);                                      // x g = -gx
  set(3, 1, 2, neg);                                      // gx g = -x
  Vec unit = zero_vec(f, 4);
  unit[0] = one;
  FinDimAlgebra alg(f, {"1", "g", "x", "gx"}, mul, unit);

  SparseTensor comul(f, {4, 4, 4});
  comul.set({0, 0, 0}, one);  // Δ(1) = 1 ⊗ 1
  comul.set({1, 1, 1}, one);  // Δ(g) = g ⊗ g
  comul.set({2, 2, 0}, one);  // Δ(x) = x ⊗ 1 + g ⊗ x
  comul.set({2, 1, 2}, one);
  comul.set({3, 3, 1}, one);  // Δ(gx) = gx ⊗ g + 1 ⊗ gx
  comul.set({3, 0, 3}, one);
  Vec counit = {one, one, Scalar::zero(f), Scalar::zero(f)};
  Mat antipode(f, 4, 4);
  antipode.at(0, 0) = one;   // S(1) = 1
  antipode.at(1, 1) = one;   // S(g) = g
  antipode.at(3, 2) = neg;   // S(x) = -gx
  antipode.at(2, 3) = one;   // S(gx) = x
  return HopfAlgebra(std::move(alg), std::move(comul), std::move(counit), std::move(antipode));
}

//! Truncated polynomial algebra k[x]/(x^n), graded with deg x = 1 and
//! augmented by evaluation at 0.
inline FinDimAlgebra truncated_polynomial(Field f, std::size_t n) {
  using detail::u32;
  if (n == 0) throw std::invalid_argument("truncated_polynomial: need n >= 1");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x" + std::to_string(i)));
  SparseTensor mul(f, {u32(n), u32(n), u32(n)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) mul.set({u32(i), u32(j), u32(i + j)}, Scalar::one(f));
  Vec unit = zero_vec(f, n);
  unit[0] = Scalar::one(f);
  FinDimAlgebra a(f, std::move(labels), std::move(mul), std::move(unit));
  std::vector<long> degs(n);
  for (std::size_t i = 0; i < n; ++i) degs[i] = static_cast<long>(i);
  a.set_grading(std::move(degs));
  Vec aug = zero_vec(f, n);
  aug[0] = Scalar::one(f);
  a.set_augmentation(std::move(aug));
  return a;
}

//! Path algebra of the quiver 1 → 2 on the basis e1, e2, a, with paths
//! composing right to left (so e2 · a = a = a · e1).  Hereditary, not
//! self-injective: the standing example of a non-Calabi-Yau smooth algebra.
inline FinDimAlgebra path_algebra_a2(Field f) {
  const Scalar one = Scalar::one(f);
  SparseTensor mul(f, {3, 3, 3});
  mul.set({0, 0, 0}, one);  // e1 e1 = e1
  mul.set({1, 1, 1}, one);  // e2 e2 = e2
  mul.set({1, 2, 2}, one);  // e2 a = a
  mul.set({2, 0, 2}, one);  // a e1 = a
  Vec unit = {one, one, Scalar::zero(f)};
  return FinDimAlgebra(f, {"e1", "e2", "a"}, mul, unit);
}

//! Truncated polynomial algebra k[x, y] in two commuting variables with all
//! monomials of total degree > 2 set to zero; basis 1, x, y, x2, xy, y2.
inline FinDimAlgebra truncated_polynomial_two_vars(Field f) {
  using detail::u32;
  const Scalar one = Scalar::one(f);
  std::vector<std::string> labels = {"1", "x", "y", "x2", "xy", "y2"};
  // degrees of (dx, dy) per basis element
  std::vector<std::pair<long, long>> deg = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  auto find = [&](long dx, long dy) -> long {
    for (std::size_t i = 0; i < deg.size(); ++i)
      if (deg[i].first == dx && deg[i].second == dy) return static_cast<long>(i);
    return -1;
  };
  SparseTensor mul(f, {6, 6, 6});
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      long t = find(deg[i].first + deg[j].first, deg[i].second + deg[j].second);
      if (t >= 0) mul.set({u32(i), u32(j), u32(t)}, one);
    }
  Vec unit = zero_vec(f, 6);
  unit[0] = one;
  FinDimAlgebra a(f, std::move(labels), std::move(mul), std::move(unit));
  std::vector<long> degs;
  for (const auto& [dx, dy] : deg) degs.push_back(dx + dy);
  a.set_grading(std::move(degs));
  Vec aug = zero_vec(f, 6);
  aug[0] = one;
  a.set_augmentation(std::move(aug));
  return a;
}

//! The trivial action h ⇀ a = ε(h) a, valid for any H and A; the smash
//! product collapses to the plain tensor product algebra.
inline ModuleAlgebraAction trivial_action(const HopfAlgebra& H, const FinDimAlgebra& A) {
  using detail::u32;
  SparseTensor t(H.field(), {u32(H.dim()), u32(A.dim()), u32(A.dim())});
  for (std::size_t h = 0; h < H.dim(); ++h) {
    if (H.counit()[h].is_zero()) continue;
    for (std::size_t a = 0; a < A.dim(); ++a) t.set({u32(h), u32(a), u32(a)}, H.counit()[h]);
  }
  return ModuleAlgebraAction(H, A, std::move(t));
}

//! Group algebra of the order-2 group acting on a graded algebra with the
//! generator negating odd-degree basis elements.
inline ModuleAlgebraAction sign_action_c2(const HopfAlgebra& C2, const FinDimAlgebra& A) {
  using detail::u32;
  if (C2.dim() != 2) throw std::invalid_argument("sign_action_c2: need the order-2 group algebra");
  if (!A.grading()) throw std::invalid_argument("sign_action_c2: need a graded algebra");
  const Field f = A.field();
  SparseTensor t(f, {2, u32(A.dim()), u32(A.dim())});
  for (std::size_t a = 0; a < A.dim(); ++a) {
    t.set({0, u32(a), u32(a)}, Scalar::one(f));
    bool odd = ((*A.grading())[a] % 2 + 2) % 2 == 1;
    t.set({1, u32(a), u32(a)}, odd ? -Scalar::one(f) : Scalar::one(f));
  }
  return ModuleAlgebraAction(C2, A, std::move(t));
}

//! The four-dimensional Hopf algebra with basis 1, g, x, gx acting on a
//! graded algebra through its group-like part only: g flips the sign of
//! odd-degree elements and the nilpotent part acts by zero.
inline ModuleAlgebraAction sign_action_h4(const HopfAlgebra& H4, const FinDimAlgebra& A) {
  using detail::u32;
  if (H4.dim() != 4) throw std::invalid_argument("sign_action_h4: need the dimension-4 algebra");
  if (!A.grading()) throw std::invalid_argument("sign_action_h4: need a graded algebra");
  const Field f = A.field();
  SparseTensor t(f, {4, u32(A.dim()), u32(A.dim())});
  for (std::size_t a = 0; a < A.dim(); ++a) {
    t.set({0, u32(a), u32(a)}, Scalar::one(f));
    bool odd = ((*A.grading())[a] % 2 + 2) % 2 == 1;
    t.set({1, u32(a), u32(a)}, odd ? -Scalar::one(f) : Scalar::one(f));
  }
  return ModuleAlgebraAction(H4, A, std::move(t));
}

//! The dual of the order-2 group algebra acting on a graded algebra: the
//! idempotent d0 projects onto even degrees and d1 onto odd degrees.
inline ModuleAlgebraAction graded_action_dual_c2(const HopfAlgebra& D, const FinDimAlgebra& A) {
  using detail::u32;
  if (D.dim() != 2) throw std::invalid_argument("graded_action_dual_c2: need dimension 2");
  if (!A.grading()) throw std::invalid_argument("graded_action_dual_c2: need a graded algebra");
  const Field f = A.field();
  SparseTensor t(f, {2, u32(A.dim()), u32(A.dim())});
  for (std::size_t a = 0; a < A.dim(); ++a) {
    bool odd = ((*A.grading())[a] % 2 + 2) % 2 == 1;
    t.set({odd ? 1u : 0u, u32(a), u32(a)}, Scalar::one(f));
  }
  return ModuleAlgebraAction(D, A, std::move(t));
}

//! The dimension-4 Hopf algebra acting on k[x]/(x^2) with its group-like
//! generator negating x and its nilpotent generator acting as the
//! twisted derivative sending x to 1.  The target carries no grading or
//! augmentation: the derivative respects neither.
inline ModuleAlgebraAction h4_derivation_action(const HopfAlgebra& H4) {
  if (H4.dim() != 4)
    throw std::invalid_argument("h4_derivation_action: need the dimension-4 algebra");
  const Field f = H4.field();
  const Scalar one = Scalar::one(f);
  std::vector<std::string> labels = {"1", "x"};
  SparseTensor mul(f, {2, 2, 2});
  mul.set({0, 0, 0}, one);
  mul.set({0, 1, 1}, one);
  mul.set({1, 0, 1}, one);
  Vec unit = {one, Scalar::zero(f)};
  FinDimAlgebra A(f, std::move(labels), std::move(mul), std::move(unit));
  SparseTensor t(f, {4, 2, 2});
  t.set({0, 0, 0}, one);  // 1 ⇀ 1 = 1
  t.set({0, 1, 1}, one);  // 1 ⇀ x = x
  t.set({1, 0, 0}, one);  // g ⇀ 1 = 1
  t.set({1, 1, 1}, -one); // g ⇀ x = -x
  t.set({2, 1, 0}, one);  // nilpotent generator ⇀ x = 1
  t.set({3, 1, 0}, one);  // (g · nilpotent) ⇀ x = 1
  return ModuleAlgebraAction(H4, A, std::move(t));
}

}  // namespace smashcalc
