#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace smashcalc {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

//! Ground field descriptor: the rationals (p == 0) or a prime field F_p.
//! Primes are restricted to p < 2^31 so that products fit in uint64_t
//! before reduction.
struct Field {
  std::uint32_t p = 0;

  static Field Q() { return Field{0}; }
  static Field Fp(std::uint32_t prime) {
    if (prime < 2 || prime >= (1u << 31)) throw std::invalid_argument("Field: bad prime");
    for (std::uint64_t d = 2; d * d <= prime; ++d)
      if (prime % d == 0) throw std::invalid_argument("Field: modulus not prime");
    return Field{prime};
  }

  bool rational() const { return p == 0; }
  std::uint32_t characteristic() const { return p; }
  bool operator==(const Field&) const = default;

  std::string name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
};

//! An exact scalar tagged with its field.  Q values are reduced fractions
//! with positive denominator (guaranteed by the boost backend); F_p values
//! are canonical representatives in [0, p).  Mixed-field arithmetic throws.
class Scalar {
 public:
  Scalar() : f_{0}, q_(0), m_(0) {}
  Scalar(Field f, long n) : f_(f) {
    if (f_.rational())
      q_ = n;
    else
      m_ = reduce_signed(n);
  }
  static Scalar from_rational(BigRat v) {
    Scalar s;
    s.f_ = Field::Q();
    s.q_ = std::move(v);
    return s;
  }
  static Scalar from_mod(Field f, std::uint64_t v) {
    if (f.rational()) throw std::invalid_argument("Scalar: from_mod needs F_p");
    Scalar s;
    s.f_ = f;
    s.m_ = v % f.p;
    return s;
  }
  //! Parse "a" or "a/b" in the given field (in F_p, "/" is modular division).
  static Scalar parse(Field f, const std::string& text);

  static Scalar zero(Field f) { return Scalar(f, 0); }
  static Scalar one(Field f) { return Scalar(f, 1); }

  const Field& field() const { return f_; }
  bool is_zero() const { return f_.rational() ? q_.is_zero() : m_ == 0; }
  bool is_one() const { return f_.rational() ? q_ == 1 : m_ == 1; }

  //! The rational value (field must be Q).
  const BigRat& rat() const {
    require(f_.rational(), "Scalar: not a rational");
    return q_;
  }
  //! The canonical representative in [0,p) (field must be F_p).
  std::uint64_t mod() const {
    require(!f_.rational(), "Scalar: not a prime-field element");
    return m_;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.match(b);
    if (a.f_.rational()) return from_rational(a.q_ + b.q_);
    return from_mod(a.f_, a.m_ + b.m_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    a.match(b);
    if (a.f_.rational()) return from_rational(a.q_ - b.q_);
    return from_mod(a.f_, a.m_ + a.f_.p - b.m_);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.match(b);
    if (a.f_.rational()) return from_rational(a.q_ * b.q_);
    return from_mod(a.f_, a.m_ * b.m_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar operator-() const {
    if (f_.rational()) return from_rational(-q_);
    return from_mod(f_, f_.p - m_);
  }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("Scalar: division by zero");
    if (f_.rational()) return from_rational(1 / q_);
    // Fermat: p is prime, m != 0.
    std::uint64_t r = 1, base = m_, e = f_.p - 2;
    while (e) {
      if (e & 1) r = r * base % f_.p;
      base = base * base % f_.p;
      e >>= 1;
    }
    return from_mod(f_, r);
  }

  bool operator==(const Scalar& b) const {
    if (!(f_ == b.f_)) return false;
    return f_.rational() ? q_ == b.q_ : m_ == b.m_;
  }
  bool operator!=(const Scalar& b) const { return !(*this == b); }
  //! Total order used only for deterministic bookkeeping.
  bool operator<(const Scalar& b) const {
    match(b);
    return f_.rational() ? q_ < b.q_ : m_ < b.m_;
  }

  std::string str() const {
    if (f_.rational()) return q_.str();
    return std::to_string(m_);
  }

 private:
  static void require(bool ok, const char* msg) {
    if (!ok) throw std::logic_error(msg);
  }
  void match(const Scalar& b) const { require(f_ == b.f_, "Scalar: field mismatch"); }
  std::uint64_t reduce_signed(long n) const {
    long long m = static_cast<long long>(n) % static_cast<long long>(f_.p);
    if (m < 0) m += f_.p;
    return static_cast<std::uint64_t>(m);
  }

  Field f_;
  BigRat q_;
  std::uint64_t m_;
};

inline Scalar Scalar::parse(Field f, const std::string& text) {
  auto slash = text.find('/');
  auto parse_int = [&](const std::string& part) -> Scalar {
    if (part.empty()) throw std::invalid_argument("Scalar: empty numeral");
    if (f.rational()) return from_rational(BigRat(BigInt(part)));
    BigInt v(part);
    BigInt m = v % f.p;
    if (m < 0) m += f.p;
    return from_mod(f, m.convert_to<std::uint64_t>());
  };
  if (slash == std::string::npos) return parse_int(text);
  return parse_int(text.substr(0, slash)) / parse_int(text.substr(slash + 1));
}

}  // namespace smashcalc
