#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smashcalc/linalg.hpp"
#include "smashcalc/report.hpp"

namespace smashcalc {

//! A finite-dimensional associative unital algebra given by exact structure
//! constants: e_i · e_j = Σ_k mul(i,j,k) e_k.  Optionally graded (degree per
//! basis element) and/or augmented (a recorded algebra map to the ground
//! field whose kernel is the augmentation ideal).
class FinDimAlgebra {
 public:
  FinDimAlgebra() = default;
  FinDimAlgebra(Field f, std::vector<std::string> labels, SparseTensor mul, Vec unit)
      : f_(f), labels_(std::move(labels)), mul_(std::move(mul)), unit_(std::move(unit)) {
    if (mul_.arity() != 3) throw std::invalid_argument("algebra: mul tensor must have arity 3");
    const auto& d = mul_.dims();
    if (d[0] != dim() || d[1] != dim() || d[2] != dim() || unit_.size() != dim())
      throw std::invalid_argument("algebra: dimension mismatch");
  }

  const Field& field() const { return f_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const SparseTensor& mul_tensor() const { return mul_; }
  const Vec& unit() const { return unit_; }

  const std::optional<std::vector<long>>& grading() const { return grading_; }
  void set_grading(std::vector<long> degs) {
    if (degs.size() != dim()) throw std::invalid_argument("algebra: grading size");
    grading_ = std::move(degs);
  }
  //! Augmentation: a recorded algebra map to k (validity is part of verify()).
  const std::optional<Vec>& augmentation() const { return augmentation_; }
  void set_augmentation(Vec covector) {
    if (covector.size() != dim()) throw std::invalid_argument("algebra: augmentation size");
    augmentation_ = std::move(covector);
  }

  Vec basis_vec(std::size_t i) const {
    Vec v = zero_vec(f_, dim());
    v[i] = Scalar::one(f_);
    return v;
  }

  Vec mul(const Vec& a, const Vec& b) const {
    Vec r = zero_vec(f_, dim());
    for (std::uint32_t i = 0; i < dim(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::uint32_t j = 0; j < dim(); ++j) {
        if (b[j].is_zero()) continue;
        mul_.for_prefix({i, j},
                        [&](const SparseTensor::Index& idx, const Scalar& c) {
                          r[idx[2]] += a[i] * b[j] * c;
                        });
      }
    }
    return r;
  }

  //! e_i · e_j as a sparse list of (basis index, coefficient) pairs.
  std::vector<std::pair<std::size_t, Scalar>> mul_basis(std::size_t i, std::size_t j) const {
    std::vector<std::pair<std::size_t, Scalar>> out;
    mul_.for_prefix({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)},
                    [&](const SparseTensor::Index& idx, const Scalar& c) {
                      out.emplace_back(idx[2], c);
                    });
    return out;
  }

  //! Matrix of left multiplication by a.
  Mat left_mult(const Vec& a) const {
    Mat m(f_, dim(), dim());
    for (std::uint32_t i = 0; i < dim(); ++i) {
      if (a[i].is_zero()) continue;
      mul_.for_prefix({i}, [&](const SparseTensor::Index& idx, const Scalar& c) {
        m.at(idx[2], idx[1]) += a[i] * c;
      });
    }
    return m;
  }
  //! Matrix of right multiplication by a.
  Mat right_mult(const Vec& a) const {
    Mat m(f_, dim(), dim());
    for (const auto& [idx, c] : mul_.entries())
      if (!a[idx[1]].is_zero()) m.at(idx[2], idx[0]) += a[idx[1]] * c;
    return m;
  }

  bool is_invertible(const Vec& a) const {
    auto inv = left_mult(a).inverse();
    return inv.has_value();
  }
  std::optional<Vec> try_inverse(const Vec& a) const {
    auto li = left_mult(a).solve(unit_);  // a * x = 1
    if (!li) return std::nullopt;
    if (mul(*li, a) != unit_) return std::nullopt;  // two-sided
    return li;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i + 1; j < dim(); ++j)
        if (mul(basis_vec(i), basis_vec(j)) != mul(basis_vec(j), basis_vec(i))) return false;
    return true;
  }

  //! Associativity, two-sided unit, and declared grading/augmentation laws.
  Report verify() const {
    Report rep;
    bool assoc = true;
    std::string w;
    // sparse accumulation keeps the triple sweep linear in the number of
    // structure constants actually hit, instead of materializing dense
    // vectors dim^3 times
    for (std::size_t i = 0; i < dim() && assoc; ++i)
      for (std::size_t j = 0; j < dim() && assoc; ++j) {
        auto ij = mul_basis(i, j);
        for (std::size_t k = 0; k < dim() && assoc; ++k) {
          std::map<std::size_t, Scalar> lhs, rhs;
          for (const auto& [p, c] : ij)
            for (const auto& [r, d] : mul_basis(p, k)) {
              auto it = lhs.try_emplace(r, Scalar::zero(f_)).first;
              it->second += c * d;
            }
          for (const auto& [q, c] : mul_basis(j, k))
            for (const auto& [r, d] : mul_basis(i, q)) {
              auto it = rhs.try_emplace(r, Scalar::zero(f_)).first;
              it->second += c * d;
            }
          std::erase_if(lhs, [](const auto& e) { return e.second.is_zero(); });
          std::erase_if(rhs, [](const auto& e) { return e.second.is_zero(); });
          if (lhs != rhs) {
            assoc = false;
            w = "(" + labels_[i] + ")(" + labels_[j] + ")(" + labels_[k] + ")";
          }
        }
      }
    rep.add("associativity", assoc, w);

    bool unit_ok = true;
    w.clear();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (mul(unit_, basis_vec(i)) != basis_vec(i) || mul(basis_vec(i), unit_) != basis_vec(i)) {
        unit_ok = false;
        w = labels_[i];
        break;
      }
    }
    rep.add("two-sided-unit", unit_ok, w);

    if (grading_) {
      bool graded = true;
      w.clear();
      for (const auto& [idx, c] : mul_.entries()) {
        (void)c;
        if ((*grading_)[idx[0]] + (*grading_)[idx[1]] != (*grading_)[idx[2]]) {
          graded = false;
          w = labels_[idx[0]] + "*" + labels_[idx[1]] + " -> " + labels_[idx[2]];
          break;
        }
      }
      for (std::size_t i = 0; i < dim() && graded; ++i)
        if (!unit_[i].is_zero() && (*grading_)[i] != 0) {
          graded = false;
          w = "unit has degree " + std::to_string((*grading_)[i]);
        }
      rep.add("grading", graded, w);
    }
    if (augmentation_) {
      bool aug = true;
      w.clear();
      const Vec& p = *augmentation_;
      auto apply = [&](const Vec& v) {
        Scalar s = Scalar::zero(f_);
        for (std::size_t i = 0; i < dim(); ++i) s += p[i] * v[i];
        return s;
      };
      if (!apply(unit_).is_one()) {
        aug = false;
        w = "p(1) != 1";
      }
      for (std::size_t i = 0; i < dim() && aug; ++i)
        for (std::size_t j = 0; j < dim() && aug; ++j)
          if (apply(mul(basis_vec(i), basis_vec(j))) != apply(basis_vec(i)) * apply(basis_vec(j))) {
            aug = false;
            w = "p not multiplicative at (" + labels_[i] + "," + labels_[j] + ")";
          }
      rep.add("augmentation", aug, w);
    }
    return rep;
  }

  //! Deterministic small generating set (indices into the basis, the unit
  //! span is implicit).  Greedy: scan the basis in order, keep elements that
  //! enlarge the generated unital subalgebra.
  std::vector<std::size_t> generators() const {
    if (gens_cache_) return *gens_cache_;
    std::vector<std::size_t> gens;
    RowSpace span(f_, dim());
    span.add(unit_);
    for (std::size_t i = 0; i < dim() && span.dim() < dim(); ++i) {
      if (span.contains(basis_vec(i))) continue;
      gens.push_back(i);
      // close under multiplication
      span.add(basis_vec(i));
      bool grew = true;
      while (grew && span.dim() < dim()) {
        grew = false;
        auto basis = span.basis();
        for (const auto& u : basis)
          for (const auto& v : basis)
            if (span.add(mul(u, v))) grew = true;
      }
    }
    gens_cache_ = gens;
    return gens;
  }

  FinDimAlgebra opposite() const {
    SparseTensor m(f_, {static_cast<std::uint32_t>(dim()), static_cast<std::uint32_t>(dim()),
                        static_cast<std::uint32_t>(dim())});
    for (const auto& [idx, c] : mul_.entries()) m.set({idx[1], idx[0], idx[2]}, c);
    FinDimAlgebra op(f_, labels_, m, unit_);
    if (grading_) op.set_grading(*grading_);
    if (augmentation_) op.set_augmentation(*augmentation_);
    return op;
  }

  //! Tensor product algebra; basis index (i, j) ↦ i * dim(other) + j.
  FinDimAlgebra tensor(const FinDimAlgebra& other) const {
    if (!(f_ == other.f_)) throw std::invalid_argument("tensor: field mismatch");
    std::size_t n = dim(), m = other.dim();
    std::vector<std::string> labels;
    labels.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) labels.push_back(labels_[i] + "|" + other.labels_[j]);
    std::uint32_t nm = static_cast<std::uint32_t>(n * m);
    SparseTensor mul(f_, {nm, nm, nm});
    for (const auto& [ia, ca] : mul_.entries())
      for (const auto& [ib, cb] : other.mul_.entries())
        mul.set({static_cast<std::uint32_t>(ia[0] * m + ib[0]),
                 static_cast<std::uint32_t>(ia[1] * m + ib[1]),
                 static_cast<std::uint32_t>(ia[2] * m + ib[2])},
                ca * cb);
    Vec unit = zero_vec(f_, n * m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (!unit_[i].is_zero() && !other.unit_[j].is_zero()) unit[i * m + j] = unit_[i] * other.unit_[j];
    FinDimAlgebra t(f_, std::move(labels), std::move(mul), std::move(unit));
    if (grading_ && other.grading_) {
      std::vector<long> degs(n * m);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) degs[i * m + j] = (*grading_)[i] + (*other.grading_)[j];
      t.set_grading(std::move(degs));
    }
    return t;
  }

  //! The enveloping algebra A ⊗ A^op; index (i, j) ↦ i * dim + j, and the
  //! left module action on A it induces is a(-)b.
  FinDimAlgebra enveloping() const { return tensor(opposite()); }

  std::string describe(const Vec& v) const {
    std::string out;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (v[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += v[i].str() + "*" + labels_[i];
    }
    return out.empty() ? "0" : out;
  }

 private:
  Field f_ = Field::Q();
  std::vector<std::string> labels_;
  SparseTensor mul_;
  Vec unit_;
  std::optional<std::vector<long>> grading_;
  std::optional<Vec> augmentation_;
  mutable std::optional<std::vector<std::size_t>> gens_cache_;
};

//! A linear map between two algebras, carried as a matrix (columns = images
//! of source basis vectors) together with the verification flags the
//! constructor computed.  Anti-multiplicative maps (φ(ab) = φ(b)φ(a), e.g.
//! odd antipode powers) are first-class citizens.
struct AlgebraMorphism {
  Mat matrix;
  bool multiplicative = false;
  bool anti_multiplicative = false;
  bool unital = false;
  bool bijective = false;

  bool valid() const { return (multiplicative || anti_multiplicative) && unital; }
  Vec apply(const Vec& v) const { return matrix * v; }
};

inline AlgebraMorphism make_algebra_morphism(const FinDimAlgebra& src, const FinDimAlgebra& dst,
                                             Mat m) {
  if (m.rows() != dst.dim() || m.cols() != src.dim())
    throw std::invalid_argument("morphism: shape mismatch");
  AlgebraMorphism phi{std::move(m), true, true, false, false};
  std::vector<Vec> img(src.dim());
  for (std::size_t i = 0; i < src.dim(); ++i) img[i] = phi.matrix.col(i);
  for (std::size_t i = 0; i < src.dim() && (phi.multiplicative || phi.anti_multiplicative); ++i)
    for (std::size_t j = 0; j < src.dim(); ++j) {
      Vec lhs = phi.matrix * src.mul(src.basis_vec(i), src.basis_vec(j));
      if (phi.multiplicative && lhs != dst.mul(img[i], img[j])) phi.multiplicative = false;
      if (phi.anti_multiplicative && lhs != dst.mul(img[j], img[i])) phi.anti_multiplicative = false;
      if (!phi.multiplicative && !phi.anti_multiplicative) break;
    }
  phi.unital = (phi.matrix * src.unit() == dst.unit());
  phi.bijective = src.dim() == dst.dim() && phi.matrix.rank() == src.dim();
  return phi;
}

inline AlgebraMorphism identity_morphism(const FinDimAlgebra& a) {
  return AlgebraMorphism{Mat::identity(a.field(), a.dim()), true, a.is_commutative(), true, true};
}

inline AlgebraMorphism compose(const FinDimAlgebra& a, const FinDimAlgebra& b,
                               const FinDimAlgebra& c, const AlgebraMorphism& g,
                               const AlgebraMorphism& f) {
  // g : b -> c after f : a -> b
  return make_algebra_morphism(a, c, g.matrix * f.matrix);
}

//! Span of the unital subalgebra generated by the given elements.
inline RowSpace subalgebra_closure(const FinDimAlgebra& a, const std::vector<Vec>& gens) {
  RowSpace span(a.field(), a.dim());
  span.add(a.unit());
  for (const auto& g : gens) span.add(g);
  bool grew = true;
  while (grew && span.dim() < a.dim()) {
    grew = false;
    auto basis = span.basis();
    for (const auto& u : basis)
      for (const auto& v : basis)
        if (span.add(a.mul(u, v))) grew = true;
  }
  return span;
}

//! Covector applied to a coordinate vector.
inline Scalar pair(const Vec& covector, const Vec& v) {
  if (covector.size() != v.size()) throw std::invalid_argument("pair: size mismatch");
  Scalar s = Scalar::zero(v.empty() ? Field::Q() : v[0].field());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!covector[i].is_zero() && !v[i].is_zero()) s += covector[i] * v[i];
  return s;
}

}  // namespace smashcalc
