#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "smashcalc/linalg.hpp"

using namespace smashcalc;

namespace {

Scalar q(long n, long d = 1) { return Scalar::parse(Field::Q(), std::to_string(n) + "/" + std::to_string(d)); }

Mat random_matrix(Field f, std::size_t r, std::size_t c, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> dist(-6, 6);
  Mat m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(f, dist(gen));
  return m;
}

}  // namespace

TEST_CASE("scalar arithmetic is exact and canonical") {
  Field Q = Field::Q();
  CHECK(q(1, 2) + q(1, 3) == q(5, 6));
  CHECK((q(2, 4)).str() == "1/2");  // reduced form
  CHECK(q(-3, -6).str() == "1/2");  // positive denominator
  CHECK(q(7) * q(0) == Scalar::zero(Q));
  CHECK(q(3, 4).inverse() == q(4, 3));
  CHECK_THROWS(q(1) / q(0));

  Field F7 = Field::Fp(7);
  Scalar a = Scalar(F7, -3);
  CHECK(a.mod() == 4);  // canonical representative in [0,p)
  CHECK((a * Scalar(F7, 2)).mod() == 1);
  CHECK(Scalar(F7, 3).inverse().mod() == 5);
  CHECK(Scalar::parse(F7, "1/3").mod() == 5);
  CHECK_THROWS(Field::Fp(6));
  CHECK_THROWS(a + q(1));  // field mismatch
}

TEST_CASE("sparse tensors store no zeros and bound-check indices") {
  SparseTensor t(Field::Q(), {2, 3});
  t.set({0, 1}, q(5));
  t.set({0, 1}, q(0));
  CHECK(t.entries().empty());
  t.add({1, 2}, q(2));
  t.add({1, 2}, q(-2));
  CHECK(t.entries().empty());
  CHECK_THROWS(t.set({2, 0}, q(1)));
  CHECK_THROWS(t.set({0, 0, 0}, q(1)));
  CHECK_THROWS(t.set({0, 0}, Scalar(Field::Fp(5), 1)));
}

TEST_CASE("solve_linear: identity, inconsistent, and verified F7 instance") {
  Field Q = Field::Q();

  SECTION("identity matrix returns e1") {
    auto m = SparseTensor::from_matrix(Mat::identity(Q, 3));
    Vec e1 = zero_vec(Q, 3);
    e1[0] = q(1);
    auto x = solve_linear(m, SparseTensor::from_vector(e1, Q));
    REQUIRE(x);
    CHECK(*x == e1);
  }

  SECTION("inconsistent row returns none") {
    Mat m(Q, 2, 2);
    m.at(0, 0) = q(1);
    m.at(0, 1) = q(1);
    Vec b = {q(2), q(1)};
    auto x = solve_linear(SparseTensor::from_matrix(m), SparseTensor::from_vector(b, Q));
    CHECK_FALSE(x);
  }

  SECTION("random 5x5 invertible over F7, solution verified by substitution") {
    Field F7 = Field::Fp(7);
    Mat m = random_matrix(F7, 5, 5, 20260816);
    REQUIRE(m.rank() == 5);  // this seed yields an invertible instance
    Vec b = {Scalar(F7, 1), Scalar(F7, 4), Scalar(F7, 2), Scalar(F7, 6), Scalar(F7, 3)};
    auto x = m.solve(b);
    REQUIRE(x);
    CHECK(m * *x == b);
  }

  SECTION("shape and field mismatches throw") {
    auto m = SparseTensor::from_matrix(Mat::identity(Q, 3));
    CHECK_THROWS(solve_linear(m, SparseTensor::from_vector(zero_vec(Q, 2), Q)));
    CHECK_THROWS(solve_linear(m, SparseTensor(Field::Fp(5), {3})));
  }
}

TEST_CASE("rank: zero, identity, outer product, transpose invariance") {
  Field Q = Field::Q();
  CHECK(rank(SparseTensor(Q, {4, 5})) == 0);
  CHECK(rank(SparseTensor::from_matrix(Mat::identity(Q, 6))) == 6);

  // outer product of two nonzero vectors has rank 1
  Vec u = {q(1), q(2), q(-3)};
  Vec v = {q(2), q(0), q(5), q(1)};
  Mat outer(Q, 3, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) outer.at(i, j) = u[i] * v[j];
  CHECK(outer.rank() == 1);
  CHECK(outer.transpose().rank() == 1);

  Mat m = random_matrix(Q, 4, 6, 7);
  CHECK(m.rank() == m.transpose().rank());
}

TEST_CASE("rank(MN) <= min(rank M, rank N) on deterministic samples") {
  for (std::uint32_t seed : {1u, 2u, 3u, 4u}) {
    Field f = seed % 2 ? Field::Q() : Field::Fp(7);
    Mat m = random_matrix(f, 4, 5, seed);
    Mat n = random_matrix(f, 5, 3, seed + 100);
    CHECK((m * n).rank() <= std::min(m.rank(), n.rank()));
  }
}

TEST_CASE("solve then substitute reproduces b whenever a solution exists") {
  for (std::uint32_t seed : {11u, 12u, 13u}) {
    Field f = seed % 2 ? Field::Fp(5) : Field::Q();
    Mat m = random_matrix(f, 4, 6, seed);  // wide: solutions exist for b in column span
    Vec y = random_matrix(f, 6, 1, seed + 50).col(0);
    Vec b = m * y;
    auto x = m.solve(b);
    REQUIRE(x);
    CHECK(m * *x == b);
  }
}

TEST_CASE("nullspace, inverse, determinant") {
  Field Q = Field::Q();
  Mat m = random_matrix(Q, 3, 5, 42);
  auto ns = m.nullspace();
  CHECK(ns.size() == 5 - m.rank());
  for (const auto& v : ns) CHECK(is_zero(m * v));

  Mat a(Q, 2, 2);
  a.at(0, 0) = q(2);
  a.at(0, 1) = q(1);
  a.at(1, 0) = q(5);
  a.at(1, 1) = q(3);
  CHECK(a.det() == q(1));
  auto inv = a.inverse();
  REQUIRE(inv);
  CHECK((*inv * a).is_identity());

  Mat sing(Q, 2, 2);
  sing.at(0, 0) = q(1);
  sing.at(1, 0) = q(1);
  CHECK_FALSE(sing.inverse());
  CHECK(sing.det() == q(0));
}

TEST_CASE("row space supports greedy span bookkeeping") {
  Field Q = Field::Q();
  RowSpace s(Q, 3);
  CHECK(s.add({q(1), q(1), q(0)}));
  CHECK(s.add({q(0), q(1), q(1)}));
  CHECK_FALSE(s.add({q(1), q(2), q(1)}));  // dependent
  CHECK(s.dim() == 2);
  CHECK(s.contains({q(2), q(3), q(1)}));
  CHECK_FALSE(s.contains({q(0), q(0), q(1)}));

  auto coords = s.coordinates({q(2), q(3), q(1)});
  REQUIRE(coords);
  auto basis = s.basis();
  Vec rebuilt = (*coords)[0] * basis[0] + (*coords)[1] * basis[1];
  CHECK(rebuilt == Vec{q(2), q(3), q(1)});
}
