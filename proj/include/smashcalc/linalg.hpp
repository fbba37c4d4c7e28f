#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "smashcalc/scalar.hpp"

namespace smashcalc {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(Field f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

inline Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec: size mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
inline Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec: size mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}
inline Vec operator-(const Vec& a) {
  Vec r = a;
  for (auto& x : r) x = -x;
  return r;
}
//! Elementary tensor a ⊗ b as a coordinate vector, index (i, j) ↦ i·|b| + j.
inline Vec tensor_vec(const Vec& a, const Vec& b) {
  Field f = a.empty() ? (b.empty() ? Field::Q() : b[0].field()) : a[0].field();
  Vec r(a.size() * b.size(), Scalar::zero(f));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i * b.size() + j] = a[i] * b[j];
  }
  return r;
}

inline Vec operator*(const Scalar& c, const Vec& a) {
  Vec r = a;
  for (auto& x : r) x *= c;
  return r;
}
inline bool is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](const Scalar& x) { return x.is_zero(); });
}

//! Dense exact matrix.  All elimination routines pivot on the first nonzero
//! entry in (row, column)-lexicographic order, so every result — ranks,
//! solutions, nullspace bases — is deterministic.
class Mat {
 public:
  Mat() : rows_(0), cols_(0), f_(Field::Q()) {}
  Mat(Field f, std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), f_(f), a_(rows * cols, Scalar::zero(f)) {}

  static Mat identity(Field f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
  }
  static Mat from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("Mat: row length");
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }
  static Mat from_cols(Field f, const std::vector<Vec>& cols, std::size_t rows) {
    Mat m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("Mat: col length");
      for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return f_; }

  Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec row(std::size_t i) const {
    Vec r(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    return r;
  }
  Vec col(std::size_t j) const {
    Vec c = zero_vec(f_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  Mat transpose() const {
    Mat t(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols_ != y.rows_ || !(x.f_ == y.f_)) throw std::invalid_argument("Mat: bad product");
    Mat r(x.f_, x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Scalar& xv = x.at(i, k);
        if (xv.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) {
          const Scalar& yv = y.at(k, j);
          if (!yv.is_zero()) r.at(i, j) += xv * yv;
        }
      }
    return r;
  }
  friend Vec operator*(const Mat& x, const Vec& v) {
    if (x.cols_ != v.size()) throw std::invalid_argument("Mat: bad apply");
    Vec r = zero_vec(x.f_, x.rows_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k)
        if (!x.at(i, k).is_zero() && !v[k].is_zero()) r[i] += x.at(i, k) * v[k];
    return r;
  }
  friend Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("Mat: bad sum");
    Mat r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
    return r;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("Mat: bad diff");
    Mat r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
    return r;
  }
  friend Mat operator*(const Scalar& c, const Mat& x) {
    Mat r = x;
    for (auto& v : r.a_) v *= c;
    return r;
  }
  bool operator==(const Mat& y) const {
    return rows_ == y.rows_ && cols_ == y.cols_ && a_ == y.a_;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& x) { return x.is_zero(); });
  }
  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (at(i, j) != (i == j ? Scalar::one(f_) : Scalar::zero(f_))) return false;
    return true;
  }

  //! Kronecker product; index (i ⊗ j) maps to i * y.rows + j.
  static Mat kron(const Mat& x, const Mat& y) {
    Mat r(x.f_, x.rows_ * y.rows_, x.cols_ * y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t j = 0; j < x.cols_; ++j) {
        if (x.at(i, j).is_zero()) continue;
        for (std::size_t k = 0; k < y.rows_; ++k)
          for (std::size_t l = 0; l < y.cols_; ++l)
            if (!y.at(k, l).is_zero())
              r.at(i * y.rows_ + k, j * y.cols_ + l) = x.at(i, j) * y.at(k, l);
      }
    return r;
  }

  struct Echelon;
  Echelon rref() const;
  std::size_t rank() const;

  //! Solve M x = b; returns the canonical solution with every free variable
  //! set to zero, or nullopt when inconsistent.
  std::optional<Vec> solve(const Vec& b) const;

  //! Solve M X = B column by column (one elimination pass).
  std::optional<Mat> solve_many(const Mat& b) const;

  //! Canonical nullspace basis, one vector per free column, ordered by the
  //! free column index.
  std::vector<Vec> nullspace() const;

  std::optional<Mat> inverse() const;

  Scalar det() const {
    if (rows_ != cols_) throw std::invalid_argument("det: not square");
    Mat m = *this;
    Scalar d = Scalar::one(f_);
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t sel = c;
      while (sel < rows_ && m.at(sel, c).is_zero()) ++sel;
      if (sel == rows_) return Scalar::zero(f_);
      if (sel != c) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(c, j));
        d = -d;
      }
      d *= m.at(c, c);
      Scalar inv = m.at(c, c).inverse();
      for (std::size_t r = c + 1; r < rows_; ++r) {
        if (m.at(r, c).is_zero()) continue;
        Scalar factor = m.at(r, c) * inv;
        for (std::size_t j = c; j < cols_; ++j) m.at(r, j) -= factor * m.at(c, j);
      }
    }
    return d;
  }

 private:
  std::size_t rows_, cols_;
  Field f_;
  std::vector<Scalar> a_;
};

struct Mat::Echelon {
  Mat reduced;                      // reduced row-echelon form
  std::vector<std::size_t> pivots;  // pivot column per pivot row
  std::size_t rank = 0;
};

inline Mat::Echelon Mat::rref() const {
  Echelon e{*this, {}, 0};
  Mat& m = e.reduced;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols_ && pr < rows_; ++c) {
    std::size_t sel = pr;
    while (sel < rows_ && m.at(sel, c).is_zero()) ++sel;
    if (sel == rows_) continue;
    if (sel != pr)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(pr, j));
    Scalar inv = m.at(pr, c).inverse();
    for (std::size_t j = c; j < cols_; ++j) m.at(pr, j) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr || m.at(r, c).is_zero()) continue;
      Scalar factor = m.at(r, c);
      for (std::size_t j = c; j < cols_; ++j) m.at(r, j) -= factor * m.at(pr, j);
    }
    e.pivots.push_back(c);
    ++pr;
  }
  e.rank = e.pivots.size();
  return e;
}

inline std::size_t Mat::rank() const { return rref().rank; }

inline std::optional<Vec> Mat::solve(const Vec& b) const {
  auto sols = solve_many(Mat::from_cols(f_, {b}, rows_));
  if (!sols) return std::nullopt;
  return sols->col(0);
}

inline std::optional<Mat> Mat::solve_many(const Mat& b) const {
  if (b.rows() != rows_) throw std::invalid_argument("solve: shape mismatch");
  Mat aug(f_, rows_, cols_ + b.cols());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug.at(i, cols_ + j) = b.at(i, j);
  }
  Echelon e = aug.rref();
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    if (e.pivots[k] >= cols_) return std::nullopt;  // pivot in RHS: inconsistent
  Mat x(f_, cols_, b.cols());
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    for (std::size_t j = 0; j < b.cols(); ++j)
      x.at(e.pivots[k], j) = e.reduced.at(k, cols_ + j);
  return x;
}

inline std::vector<Vec> Mat::nullspace() const {
  Echelon e = rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t fcol = 0; fcol < cols_; ++fcol) {
    if (is_pivot[fcol]) continue;
    Vec v = zero_vec(f_, cols_);
    v[fcol] = Scalar::one(f_);
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
      v[e.pivots[k]] = -e.reduced.at(k, fcol);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<Mat> Mat::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  auto x = solve_many(Mat::identity(f_, rows_));
  if (!x) return std::nullopt;
  if (!((*this) * *x).is_identity()) return std::nullopt;  // singular: solve() padded free vars
  return x;
}

//! Incremental row space in reduced echelon form; the workhorse behind span
//! checks, greedy generator selection and submodule closures.
class RowSpace {
 public:
  explicit RowSpace(Field f, std::size_t width) : f_(f), width_(width) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t width() const { return width_; }

  //! Reduce v against the current rows; the residual is zero iff v lies in
  //! the span.
  Vec reduce(Vec v) const {
    for (const auto& [piv, row] : rows_) {
      if (v[piv].is_zero()) continue;
      Scalar c = v[piv];
      for (std::size_t j = 0; j < width_; ++j) v[j] -= c * row[j];
    }
    return v;
  }
  bool contains(const Vec& v) const { return is_zero(reduce(v)); }

  //! Insert v; returns true when the dimension grew.
  bool add(const Vec& v) {
    Vec r = reduce(v);
    std::size_t piv = 0;
    while (piv < width_ && r[piv].is_zero()) ++piv;
    if (piv == width_) return false;
    Scalar inv = r[piv].inverse();
    for (auto& x : r) x *= inv;
    for (auto& [p, row] : rows_) {
      if (row[piv].is_zero()) continue;
      Scalar c = row[piv];
      for (std::size_t j = 0; j < width_; ++j) row[j] -= c * r[j];
    }
    rows_.emplace(piv, std::move(r));
    return true;
  }

  //! Canonical basis (rows of the reduced echelon form, by pivot column).
  std::vector<Vec> basis() const {
    std::vector<Vec> b;
    b.reserve(rows_.size());
    for (const auto& [piv, row] : rows_) b.push_back(row);
    return b;
  }

  //! Coordinates of v in terms of basis(), or nullopt if v is outside.
  std::optional<Vec> coordinates(const Vec& v) const {
    Vec coords = zero_vec(f_, rows_.size());
    Vec r = v;
    std::size_t k = 0;
    for (const auto& [piv, row] : rows_) {
      if (!r[piv].is_zero()) {
        Scalar c = r[piv];
        coords[k] = c;
        for (std::size_t j = 0; j < width_; ++j) r[j] -= c * row[j];
      }
      ++k;
    }
    if (!is_zero(r)) return std::nullopt;
    return coords;
  }

 private:
  Field f_;
  std::size_t width_;
  std::map<std::size_t, Vec> rows_;  // pivot column -> unit-pivot reduced row
};

//! Sparse exact tensor: no stored entry is zero, every index is in range.
class SparseTensor {
 public:
  using Index = std::vector<std::uint32_t>;

  SparseTensor() : f_(Field::Q()) {}
  SparseTensor(Field f, std::vector<std::uint32_t> dims) : f_(f), dims_(std::move(dims)) {}

  const Field& field() const { return f_; }
  std::size_t arity() const { return dims_.size(); }
  const std::vector<std::uint32_t>& dims() const { return dims_; }
  const std::map<Index, Scalar>& entries() const { return e_; }
  bool empty() const { return e_.empty(); }

  void set(const Index& idx, const Scalar& v) {
    check(idx);
    if (!(v.field() == f_)) throw std::invalid_argument("SparseTensor: field mismatch");
    if (v.is_zero())
      e_.erase(idx);
    else
      e_[idx] = v;
  }

  //! Visit the entries whose leading coordinates equal the given prefix.
  //! Keys are ordered lexicographically, so this is a contiguous range scan.
  template <typename F>
  void for_prefix(const Index& prefix, F&& fn) const {
    Index lo = prefix;
    lo.resize(dims_.size(), 0);
    for (auto it = e_.lower_bound(lo); it != e_.end(); ++it) {
      bool match = true;
      for (std::size_t i = 0; i < prefix.size(); ++i)
        if (it->first[i] != prefix[i]) {
          match = false;
          break;
        }
      if (!match) break;
      fn(it->first, it->second);
    }
  }
  void add(const Index& idx, const Scalar& v) { set(idx, at(idx) + v); }
  Scalar at(const Index& idx) const {
    check(idx);
    auto it = e_.find(idx);
    return it == e_.end() ? Scalar::zero(f_) : it->second;
  }

  bool operator==(const SparseTensor& o) const {
    return f_ == o.f_ && dims_ == o.dims_ && e_ == o.e_;
  }

  static SparseTensor from_matrix(const Mat& m) {
    SparseTensor t(m.field(), {static_cast<std::uint32_t>(m.rows()),
                               static_cast<std::uint32_t>(m.cols())});
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m.at(i, j).is_zero())
          t.set({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}, m.at(i, j));
    return t;
  }
  Mat to_matrix() const {
    if (arity() != 2) throw std::invalid_argument("SparseTensor: not a matrix");
    Mat m(f_, dims_[0], dims_[1]);
    for (const auto& [idx, v] : e_) m.at(idx[0], idx[1]) = v;
    return m;
  }
  static SparseTensor from_vector(const Vec& v, Field f) {
    SparseTensor t(f, {static_cast<std::uint32_t>(v.size())});
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) t.set({static_cast<std::uint32_t>(i)}, v[i]);
    return t;
  }
  Vec to_vector() const {
    if (arity() != 1) throw std::invalid_argument("SparseTensor: not a vector");
    Vec v = zero_vec(f_, dims_[0]);
    for (const auto& [idx, s] : e_) v[idx[0]] = s;
    return v;
  }

 private:
  void check(const Index& idx) const {
    if (idx.size() != dims_.size()) throw std::invalid_argument("SparseTensor: arity mismatch");
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (idx[i] >= dims_[i]) throw std::out_of_range("SparseTensor: index out of range");
  }

  Field f_;
  std::vector<std::uint32_t> dims_;
  std::map<Index, Scalar> e_;
};

//! Exact linear solve on sparse inputs: M x = b, or nullopt when
//! inconsistent.  Deterministic: free variables are zero under the
//! lexicographic pivot order.
inline std::optional<Vec> solve_linear(const SparseTensor& m, const SparseTensor& b) {
  if (m.arity() != 2 || b.arity() != 1) throw std::invalid_argument("solve_linear: arity");
  if (!(m.field() == b.field())) throw std::invalid_argument("solve_linear: field mismatch");
  if (m.dims()[0] != b.dims()[0]) throw std::invalid_argument("solve_linear: shape mismatch");
  return m.to_matrix().solve(b.to_vector());
}

inline std::size_t rank(const SparseTensor& m) {
  if (m.arity() != 2) throw std::invalid_argument("rank: arity");
  return m.to_matrix().rank();
}

}  // namespace smashcalc
