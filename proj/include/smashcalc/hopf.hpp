#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "smashcalc/algebra.hpp"

namespace smashcalc {

//! A finite-dimensional Hopf algebra given by exact structure constants.
//! The comultiplication tensor stores Δ(e_i) = Σ comul(i, j, k) e_j ⊗ e_k,
//! the counit is a covector, the antipode a matrix in the chosen basis.
class HopfAlgebra {
 public:
  HopfAlgebra() = default;
  HopfAlgebra(FinDimAlgebra alg, SparseTensor comul, Vec counit, Mat antipode)
      : alg_(std::move(alg)),
        comul_(std::move(comul)),
        counit_(std::move(counit)),
        antipode_(std::move(antipode)) {
    if (comul_.arity() != 3) throw std::invalid_argument("hopf: comul tensor must have arity 3");
    const auto& d = comul_.dims();
    if (d[0] != dim() || d[1] != dim() || d[2] != dim())
      throw std::invalid_argument("hopf: comul dimension mismatch");
    if (counit_.size() != dim()) throw std::invalid_argument("hopf: counit size mismatch");
    if (antipode_.rows() != dim() || antipode_.cols() != dim())
      throw std::invalid_argument("hopf: antipode shape mismatch");
  }

  const FinDimAlgebra& algebra() const { return alg_; }
  const Field& field() const { return alg_.field(); }
  std::size_t dim() const { return alg_.dim(); }
  const std::vector<std::string>& labels() const { return alg_.labels(); }
  const SparseTensor& comul_tensor() const { return comul_; }
  const Vec& counit() const { return counit_; }
  const Mat& antipode() const { return antipode_; }

  //! Δ as a dim² × dim matrix; row j·dim + k carries the e_j ⊗ e_k
  //! coefficient, matching the index convention of FinDimAlgebra::tensor.
  Mat comul_matrix() const {
    std::size_t m = dim();
    Mat c(field(), m * m, m);
    for (const auto& [idx, v] : comul_.entries()) c.at(idx[1] * m + idx[2], idx[0]) += v;
    return c;
  }

  Vec comul_apply(const Vec& h) const {
    std::size_t m = dim();
    Vec r = zero_vec(field(), m * m);
    for (const auto& [idx, v] : comul_.entries())
      if (!h[idx[0]].is_zero()) r[idx[1] * m + idx[2]] += h[idx[0]] * v;
    return r;
  }

  Scalar counit_of(const Vec& h) const { return pair(counit_, h); }

  //! One Sweedler summand of Δ(h): coefficient times e_{one} ⊗ e_{two}.
  struct SweedlerTerm {
    Scalar coef;
    std::size_t one, two;
  };
  //! One summand of (Δ ⊗ id)Δ(h): coefficient times e_{one} ⊗ e_{two} ⊗ e_{three}.
  struct SweedlerTerm3 {
    Scalar coef;
    std::size_t one, two, three;
  };

  //! Δ(h) as a deterministic, zero-free list of basis tensor summands.
  std::vector<SweedlerTerm> sweedler2(const Vec& h) const {
    std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
    for (const auto& [idx, v] : comul_.entries()) {
      if (h[idx[0]].is_zero()) continue;
      auto key = std::make_pair(static_cast<std::size_t>(idx[1]), static_cast<std::size_t>(idx[2]));
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(key, h[idx[0]] * v);
      else
        it->second += h[idx[0]] * v;
    }
    std::vector<SweedlerTerm> out;
    for (const auto& [key, c] : acc)
      if (!c.is_zero()) out.push_back({c, key.first, key.second});
    return out;
  }

  //! (Δ ⊗ id)Δ(h) as a deterministic, zero-free list; under coassociativity
  //! this is the unique three-fold Sweedler decomposition h₁ ⊗ h₂ ⊗ h₃.
  std::vector<SweedlerTerm3> sweedler3(const Vec& h) const {
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar> acc;
    for (const auto& t : sweedler2(h)) {
      for (const auto& [idx, v] : comul_.entries()) {
        if (idx[0] != t.one) continue;
        auto key = std::make_tuple(static_cast<std::size_t>(idx[1]),
                                   static_cast<std::size_t>(idx[2]), t.two);
        auto it = acc.find(key);
        if (it == acc.end())
          acc.emplace(key, t.coef * v);
        else
          it->second += t.coef * v;
      }
    }
    std::vector<SweedlerTerm3> out;
    for (const auto& [key, c] : acc)
      if (!c.is_zero()) out.push_back({c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
    return out;
  }

  //! The matrix of S^n; negative powers require an invertible antipode.
  std::optional<Mat> antipode_power_matrix(long n) const {
    Mat p = Mat::identity(field(), dim());
    if (n >= 0) {
      for (long t = 0; t < n; ++t) p = antipode_ * p;
      return p;
    }
    auto inv = antipode_.inverse();
    if (!inv) return std::nullopt;
    for (long t = 0; t < -n; ++t) p = *inv * p;
    return p;
  }

  bool antipode_invertible() const { return antipode_.inverse().has_value(); }

 private:
  FinDimAlgebra alg_;
  SparseTensor comul_;
  Vec counit_;
  Mat antipode_;
};

//! Full axiom check: underlying algebra laws, coassociativity, counit laws,
//! Δ and ε being algebra morphisms, and the antipode axiom on both sides.
//! Each failing item carries the first offending basis element as witness.
inline Report verify_hopf(const HopfAlgebra& H) {
  Report rep;
  const FinDimAlgebra& A = H.algebra();
  std::size_t m = H.dim();
  rep.merge(A.verify(), "algebra:");

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < m && ok; ++i) {
      // (Δ ⊗ id)Δ(e_i) is sweedler3; accumulate (id ⊗ Δ)Δ(e_i) the same way.
      std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar> rhs;
      for (const auto& t : H.sweedler2(A.basis_vec(i)))
        for (const auto& [idx, v] : H.comul_tensor().entries()) {
          if (idx[0] != t.two) continue;
          auto key = std::make_tuple(t.one, static_cast<std::size_t>(idx[1]),
                                     static_cast<std::size_t>(idx[2]));
          auto it = rhs.find(key);
          if (it == rhs.end())
            rhs.emplace(key, t.coef * v);
          else
            it->second += t.coef * v;
        }
      std::erase_if(rhs, [](const auto& kv) { return kv.second.is_zero(); });
      std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar> lhs;
      for (const auto& t : H.sweedler3(A.basis_vec(i)))
        lhs.emplace(std::make_tuple(t.one, t.two, t.three), t.coef);
      if (lhs != rhs) {
        ok = false;
        w = H.labels()[i];
      }
    }
    rep.add("coassociativity", ok, w);
  }

  {
    bool left = true, right = true;
    std::string wl, wr;
    for (std::size_t i = 0; i < m; ++i) {
      Vec el = zero_vec(H.field(), m), er = zero_vec(H.field(), m);
      for (const auto& t : H.sweedler2(A.basis_vec(i))) {
        el[t.two] += t.coef * H.counit()[t.one];  // (ε ⊗ id)Δ
        er[t.one] += t.coef * H.counit()[t.two];  // (id ⊗ ε)Δ
      }
      if (left && el != A.basis_vec(i)) {
        left = false;
        wl = H.labels()[i];
      }
      if (right && er != A.basis_vec(i)) {
        right = false;
        wr = H.labels()[i];
      }
    }
    rep.add("counit-left", left, wl);
    rep.add("counit-right", right, wr);
  }

  {
    AlgebraMorphism delta = make_algebra_morphism(A, A.tensor(A), H.comul_matrix());
    rep.add("comul-multiplicative", delta.multiplicative, "");
    rep.add("comul-unital", delta.unital, "");
  }

  {
    bool ok = H.counit_of(A.unit()).is_one();
    std::string w = ok ? "" : "eps(1) != 1";
    for (std::size_t i = 0; i < m && ok; ++i)
      for (std::size_t j = 0; j < m && ok; ++j) {
        Scalar lhs = H.counit_of(A.mul(A.basis_vec(i), A.basis_vec(j)));
        if (lhs != H.counit()[i] * H.counit()[j]) {
          ok = false;
          w = "(" + H.labels()[i] + ")(" + H.labels()[j] + ")";
        }
      }
    rep.add("counit-multiplicative", ok, w);
  }

  {
    bool left = true, right = true;
    std::string wl, wr;
    for (std::size_t i = 0; i < m; ++i) {
      Vec sl = zero_vec(H.field(), m), sr = zero_vec(H.field(), m);
      for (const auto& t : H.sweedler2(A.basis_vec(i))) {
        sl = sl + t.coef * A.mul(H.antipode().col(t.one), A.basis_vec(t.two));
        sr = sr + t.coef * A.mul(A.basis_vec(t.one), H.antipode().col(t.two));
      }
      Vec target = H.counit()[i] * A.unit();
      if (left && sl != target) {
        left = false;
        wl = H.labels()[i];
      }
      if (right && sr != target) {
        right = false;
        wr = H.labels()[i];
      }
    }
    rep.add("antipode-left", left, wl);
    rep.add("antipode-right", right, wr);
  }
  return rep;
}

//! A multiplicative, unit-preserving linear form on an algebra.  Validity is
//! established eagerly at construction so every consumer holds a certificate.
class Character {
 public:
  static std::optional<Character> try_make(const FinDimAlgebra& a, Vec covector) {
    if (covector.size() != a.dim()) return std::nullopt;
    if (!pair(covector, a.unit()).is_one()) return std::nullopt;
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) {
        Scalar lhs = pair(covector, a.mul(a.basis_vec(i), a.basis_vec(j)));
        if (lhs != covector[i] * covector[j]) return std::nullopt;
      }
    return Character(std::move(covector));
  }

  Character(const FinDimAlgebra& a, Vec covector) {
    auto c = try_make(a, std::move(covector));
    if (!c) throw std::invalid_argument("character: not a unital algebra map to the ground field");
    pi_ = std::move(c->pi_);
  }

  const Vec& covector() const { return pi_; }
  Scalar at(std::size_t i) const { return pi_[i]; }
  Scalar operator()(const Vec& v) const { return pair(pi_, v); }
  std::size_t dim() const { return pi_.size(); }

  bool operator==(const Character& o) const { return pi_ == o.pi_; }
  bool operator!=(const Character& o) const { return !(*this == o); }

 private:
  explicit Character(Vec pi) : pi_(std::move(pi)) {}
  Vec pi_;
};

inline Character counit_character(const HopfAlgebra& H) {
  return Character(H.algebra(), H.counit());
}

//! π ∘ φ for a linear endomap φ given by its matrix.
inline Character compose_character(const FinDimAlgebra& a, const Character& pi, const Mat& phi) {
  return Character(a, phi.transpose() * pi.covector());
}

namespace detail {
//! Raw matrix of the right winding map e_i ↦ Σ Δ-terms π(e_k) e_j (no checks).
inline Mat winding_right_matrix(const HopfAlgebra& H, const Vec& pi) {
  Mat m(H.field(), H.dim(), H.dim());
  for (const auto& [idx, c] : H.comul_tensor().entries()) m.at(idx[1], idx[0]) += c * pi[idx[2]];
  return m;
}
inline Mat winding_left_matrix(const HopfAlgebra& H, const Vec& pi) {
  Mat m(H.field(), H.dim(), H.dim());
  for (const auto& [idx, c] : H.comul_tensor().entries()) m.at(idx[2], idx[0]) += c * pi[idx[1]];
  return m;
}
}  // namespace detail

//! Right winding automorphism h ↦ h₁ π(h₂).  Postconditions verified: the
//! map is a unital algebra automorphism, composing with the S-twisted
//! character inverts it, and it commutes with S².
inline AlgebraMorphism winding_right(const HopfAlgebra& H, const Character& pi) {
  Mat m = detail::winding_right_matrix(H, pi.covector());
  AlgebraMorphism phi = make_algebra_morphism(H.algebra(), H.algebra(), m);
  if (!phi.multiplicative || !phi.unital)
    throw std::runtime_error("winding_right: result is not an algebra morphism (inconsistent Hopf data)");
  Mat inv = detail::winding_right_matrix(H, H.antipode().transpose() * pi.covector());
  if (!(phi.matrix * inv).is_identity() || !(inv * phi.matrix).is_identity())
    throw std::runtime_error("winding_right: S-twisted character does not invert the winding");
  Mat s2 = H.antipode() * H.antipode();
  if (phi.matrix * s2 != s2 * phi.matrix)
    throw std::runtime_error("winding_right: winding does not commute with the antipode square");
  return phi;
}

//! Left winding automorphism h ↦ π(h₁) h₂, with the mirrored postconditions.
inline AlgebraMorphism winding_left(const HopfAlgebra& H, const Character& pi) {
  Mat m = detail::winding_left_matrix(H, pi.covector());
  AlgebraMorphism phi = make_algebra_morphism(H.algebra(), H.algebra(), m);
  if (!phi.multiplicative || !phi.unital)
    throw std::runtime_error("winding_left: result is not an algebra morphism (inconsistent Hopf data)");
  Mat inv = detail::winding_left_matrix(H, H.antipode().transpose() * pi.covector());
  if (!(phi.matrix * inv).is_identity() || !(inv * phi.matrix).is_identity())
    throw std::runtime_error("winding_left: S-twisted character does not invert the winding");
  Mat s2 = H.antipode() * H.antipode();
  if (phi.matrix * s2 != s2 * phi.matrix)
    throw std::runtime_error("winding_left: winding does not commute with the antipode square");
  return phi;
}

//! S^n as a verified morphism (multiplicative for even n, anti-multiplicative
//! for odd n); std::nullopt when n < 0 and the antipode matrix is singular.
inline std::optional<AlgebraMorphism> antipode_power(const HopfAlgebra& H, long n) {
  auto m = H.antipode_power_matrix(n);
  if (!m) return std::nullopt;
  return make_algebra_morphism(H.algebra(), H.algebra(), *m);
}

//! Whether Δ(σ(h)) = S^{2i}(h₁) ⊗ σ(h₂) holds identically; when the inverses
//! exist the companion identity Δ(σ⁻¹(h)) = S^{−2i}(h₁) ⊗ σ⁻¹(h₂) is checked
//! too.  This is the compatibility a twisting automorphism must satisfy for
//! the twisted bimodule constructions.
inline bool check_sigma_condition(const HopfAlgebra& H, const AlgebraMorphism& sigma, long i) {
  auto s2i = H.antipode_power_matrix(2 * i);
  if (!s2i)
    throw std::invalid_argument("check_sigma_condition: negative index needs an invertible antipode");
  Mat C = H.comul_matrix();
  if (C * sigma.matrix != Mat::kron(*s2i, sigma.matrix) * C) return false;
  auto sNeg = H.antipode_power_matrix(-2 * i);
  auto sigInv = sigma.matrix.inverse();
  if (sNeg && sigInv && C * *sigInv != Mat::kron(*sNeg, *sigInv) * C) return false;
  return true;
}

//! First invertible element of span(basis) \ {0}, or std::nullopt if none
//! exists.  det(left-multiplication) is a polynomial of degree ≤ dim(A) in
//! each coordinate, so a nonzero such polynomial cannot vanish on a grid
//! with dim(A)+1 points per coordinate; exhausting the grid (clamped to the
//! field size, which makes it the whole space over small prime fields) is
//! therefore an exact decision procedure, not a heuristic.
inline std::optional<Vec> find_invertible_combination(const FinDimAlgebra& A,
                                                      const std::vector<Vec>& basis) {
  if (basis.empty()) return std::nullopt;
  const Field f = A.field();
  std::size_t m = basis.size();
  std::uint64_t points = static_cast<std::uint64_t>(A.dim()) + 1;
  if (f.p != 0 && f.p < points) points = f.p;
  double total = 1.0;
  for (std::size_t i = 0; i < m; ++i) total *= static_cast<double>(points);
  if (total > 4.0e6)
    throw std::runtime_error("find_invertible_combination: search grid too large");

  std::vector<std::uint64_t> t(m, 0);
  while (true) {
    bool all_zero = true;
    for (auto v : t)
      if (v) {
        all_zero = false;
        break;
      }
    if (!all_zero) {
      Vec u = zero_vec(f, A.dim());
      for (std::size_t i = 0; i < m; ++i)
        if (t[i]) u = u + Scalar(f, static_cast<long>(t[i])) * basis[i];
      if (A.try_inverse(u)) return u;
    }
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      if (++t[pos] < points) break;
      t[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
  }
}

//! A unit u with u φ(h) = h u for all h — i.e. a certificate that φ is the
//! inner automorphism conj(u).  The linear conditions are imposed on a
//! generating set (which suffices: both sides are multiplicative in h), and
//! the invertible-point search on the solution space is exact.
inline std::optional<Vec> inner_witness(const FinDimAlgebra& A, const AlgebraMorphism& phi) {
  std::vector<std::size_t> gens = A.generators();
  if (gens.empty()) return A.unit();  // A = k·1, where only the identity is unital
  std::vector<Vec> rows;
  rows.reserve(gens.size() * A.dim());
  for (std::size_t g : gens) {
    Mat diff = A.right_mult(phi.apply(A.basis_vec(g))) - A.left_mult(A.basis_vec(g));
    for (std::size_t r = 0; r < diff.rows(); ++r) rows.push_back(diff.row(r));
  }
  Mat stacked = Mat::from_rows(A.field(), rows, A.dim());
  return find_invertible_combination(A, stacked.nullspace());
}

}  // namespace smashcalc
