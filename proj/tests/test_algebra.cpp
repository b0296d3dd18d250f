#include <doctest.h>

#include <set>

#include "suppvar/errors.hpp"
#include "suppvar/field.hpp"
#include "suppvar/linalg.hpp"
#include "suppvar/polynomial.hpp"
#include "test_util.hpp"

using namespace suppvar;
using suppvar::testing::Rng;

namespace {

std::vector<Field> test_fields() {
  return {Field(2), Field(3), Field(5), Field(7), Field(2, 2), Field(2, 3), Field(3, 2), Field(5, 2), Field(7, 3)};
}

// |column span| = q^rank; enumerates every combination of columns.
std::size_t rank_by_enumeration(const Field& f, const ScalarMatrix& m) {
  std::set<Vector> span;
  std::uint64_t combos = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) combos *= f.size();
  for (std::uint64_t idx = 0; idx < combos; ++idx) {
    Vector v(m.rows(), 0);
    std::uint64_t rest = idx;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Scalar c = static_cast<Scalar>(rest % f.size());
      rest /= f.size();
      for (std::size_t i = 0; i < m.rows(); ++i) v[i] = f.add(v[i], f.mul(c, m(i, j)));
    }
    span.insert(v);
  }
  std::size_t r = 0;
  for (std::size_t size = span.size(); size > 1; size /= f.size()) ++r;
  return r;
}

}  // namespace

TEST_CASE("extension moduli are irreducible and primitive") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (std::uint32_t e : {2u, 3u}) {
      auto mod = conway_polynomial(p, e);
      REQUIRE(mod.size() == e + 1);
      CHECK(mod.back() == 1);
      // Degree <= 3: irreducible iff no root in F_p.
      for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t value = 0;
        for (std::size_t k = mod.size(); k-- > 0;) value = (value * x + mod[k]) % p;
        CHECK(value != 0);
      }
      Field f(p, e);
      const Scalar t = p;  // the class of the indeterminate
      const std::uint32_t order = f.size() - 1;
      CHECK(f.pow(t, order) == 1);
      for (std::uint32_t l = 2; l <= order; ++l)
        if (order % l == 0 && is_prime(l)) CHECK(f.pow(t, order / l) != 1);
    }
  CHECK_THROWS_AS(conway_polynomial(11, 2), UnsupportedError);
}

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (const Field& f : {Field(2, 2), Field(3, 2), Field(2, 3), Field(5)}) {
    for (Scalar a = 0; a < f.size(); ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (Scalar b = 0; b < f.size(); ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (Scalar c = 0; c < f.size(); ++c) {
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        }
      }
    }
  }
  CHECK_THROWS_AS(Field(4), InputError);
  CHECK_THROWS_AS(Field(2).inv(0), InputError);
  CHECK(Field(2, 2).name() == "F_{2^2}");
}

TEST_CASE("rank examples") {
  Field f2(2), f5(5);
  CHECK(rank(f2, ScalarMatrix::identity(3)) == 3);
  CHECK(rank(f2, ScalarMatrix(4, 2)) == 0);
  ScalarMatrix m(2, 2);
  m(0, 0) = 1, m(0, 1) = 2, m(1, 0) = 2, m(1, 1) = 4;
  CHECK(rank(f5, m) == 1);
  CHECK(rank_by_enumeration(f5, m) == 1);
}

TEST_CASE("rank agrees with span enumeration on small random matrices") {
  Rng rng(11);
  for (const Field& f : {Field(2), Field(3), Field(2, 2)})
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
      ScalarMatrix m = suppvar::testing::random_matrix(rng, f, rows, cols);
      CHECK(rank(f, m) == rank_by_enumeration(f, m));
    }
}

TEST_CASE("rank plus nullity equals column count, nullspace and solve are exact") {
  Rng rng(7);
  for (const Field& f : test_fields())
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
      ScalarMatrix m = suppvar::testing::random_matrix(rng, f, rows, cols);
      // Sparsify some matrices so that low ranks occur.
      if (trial % 3 == 0)
        for (std::size_t i = 0; i < rows; ++i)
          for (std::size_t j = 0; j < cols; ++j)
            if (rng() % 2) m(i, j) = 0;
      auto kernel = nullspace(f, m);
      CHECK(rank(f, m) + kernel.size() == cols);
      for (const auto& v : kernel) CHECK(is_zero_vector(apply(f, m, v)));
      Vector x(cols);
      for (auto& c : x) c = suppvar::testing::random_scalar(rng, f);
      Vector b = apply(f, m, x);
      auto sol = solve(f, m, b);
      REQUIRE(sol);
      CHECK(apply(f, m, *sol) == b);
    }
}

TEST_CASE("solve rejects vectors outside the column space") {
  Field f(3);
  ScalarMatrix m(2, 1);
  m(0, 0) = 1;
  Vector b = {0, 1};
  CHECK_FALSE(solve(f, m, b));
}

TEST_CASE("span builder tracks membership") {
  Field f(5);
  SpanBuilder span(f, 3);
  CHECK(span.insert(Vector{1, 2, 0}));
  CHECK(span.insert(Vector{0, 1, 1}));
  CHECK_FALSE(span.insert(Vector{2, 0, 1}));  // 2*(1,2,0) - 4*(0,1,1) mod 5
  CHECK(span.contains(Vector{1, 3, 1}));
  CHECK_FALSE(span.contains(Vector{0, 0, 1}));
  CHECK(span.dimension() == 2);
}

TEST_CASE("polynomial evaluation examples") {
  auto r2 = make_ring(2, {2, 2});
  Field f2(2);
  CHECK(parse_polynomial("x1^2 + x2", r2).evaluate(f2, Vector{1, 1}) == 0);
  CHECK(parse_polynomial("0", r2).evaluate(f2, Vector{1, 0}) == 0);
  auto r5 = make_ring(5, {2, 2});
  CHECK(parse_polynomial("x1*x2", r5).evaluate(Field(5), Vector{2, 3}) == 1);
  CHECK_THROWS_AS(parse_polynomial("x1", r5).evaluate(Field(5), Vector{1}), InputError);
}

TEST_CASE("evaluation is a ring homomorphism") {
  Rng rng(3);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto ring = make_ring(p, {1, 1, 2});
    for (std::uint32_t e : {1u, 2u}) {
      Field f(p, e);
      for (int trial = 0; trial < 30; ++trial) {
        Polynomial a = suppvar::testing::random_homogeneous(rng, ring, static_cast<int>(rng() % 4));
        Polynomial b = suppvar::testing::random_homogeneous(rng, ring, static_cast<int>(rng() % 4));
        Vector pt = {suppvar::testing::random_scalar(rng, f), suppvar::testing::random_scalar(rng, f),
                     suppvar::testing::random_scalar(rng, f)};
        CHECK((a * b).evaluate(f, pt) == f.mul(a.evaluate(f, pt), b.evaluate(f, pt)));
        CHECK((a + b).evaluate(f, pt) == f.add(a.evaluate(f, pt), b.evaluate(f, pt)));
      }
    }
  }
}

TEST_CASE("polynomial parsing and printing") {
  auto ring = make_ring(5, {1, 1, 1});
  Polynomial p = parse_polynomial("3*x1^2*x2 + x3 - 1", ring);
  CHECK(p.term_count() == 3);
  CHECK(p.constant_term() == 4);
  CHECK(parse_polynomial(p.to_string(), ring) == p);
  CHECK(parse_polynomial(" 7 * x1 ", ring) == parse_polynomial("2*x1", ring));
  CHECK(parse_polynomial("x1 - x1", ring).is_zero());
  CHECK_FALSE(p.is_homogeneous());
  CHECK(parse_polynomial("x1*x2 + x3^2", ring).degree() == 2);
  CHECK_THROWS_AS(parse_polynomial("x4", ring), InputError);
  CHECK_THROWS_AS(parse_polynomial("x1 +* x2", ring), InputError);
  CHECK_THROWS_AS(parse_polynomial("y1", ring), InputError);
}

TEST_CASE("monomial basis examples") {
  auto r2 = make_ring(2, {2, 2});
  auto b4 = monomial_basis(4, *r2);
  CHECK(b4 == std::vector<Exponent>{{2, 0}, {1, 1}, {0, 2}});
  CHECK(monomial_basis(3, *r2).empty());
  auto r3 = make_ring(2, {2, 2, 2});
  CHECK(monomial_basis(2, *r3).size() == 3);
  CHECK_THROWS_AS(monomial_basis(2, *make_ring(2, {2, -2})), UnsupportedError);
}

TEST_CASE("monomial counts match the Hilbert series") {
  const std::vector<std::vector<int>> degree_sets = {{1}, {2, 2}, {1, 2}, {2, 2, 2}, {1, 2, 3}, {2, 2, 2, 2}, {1, 1, 3, 4}};
  for (const auto& degrees : degree_sets) {
    auto ring = make_ring(3, degrees);
    // Coefficients of Π (1 - t^{d_i})^{-1}, by the standard coin-change recursion.
    std::vector<std::size_t> series(21, 0);
    series[0] = 1;
    for (int d : degrees)
      for (int k = d; k <= 20; ++k) series[k] += series[k - d];
    for (int k = 0; k <= 20; ++k) CHECK(monomial_basis(k, *ring).size() == series[k]);
  }
}
