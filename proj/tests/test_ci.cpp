#include <doctest.h>

#include "suppvar/ci.hpp"
#include "suppvar/errors.hpp"
#include "suppvar/homology.hpp"
#include "test_util.hpp"

using namespace suppvar;
using suppvar::testing::Rng;

namespace {

CIPtr group_algebra(std::uint32_t p, std::size_t r) {
  CISpec spec;
  spec.p = p;
  spec.exponents.assign(r, p);
  return make_ci(spec);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

HomologyTable homology(const ComplexOverR& m, int lo, int hi) {
  return complex_homology(m.ring->field(), m.space, m.d, lo, hi);
}

LambdaModule exterior_algebra_r1(std::uint32_t p) {
  LambdaModule n;
  n.field = Field(p);
  n.space.degrees = {-1, 0};  // basis ξ, 1
  n.d = ScalarMatrix(2, 2);
  ScalarMatrix xi(2, 2);
  xi(0, 1) = 1;
  n.xi = {xi};
  return n;
}

}  // namespace

TEST_CASE("complete intersection presentations") {
  auto ke = group_algebra(2, 2);
  CHECK(ke->dim() == 4);
  CHECK(ke->default_constants());
  CHECK(ke->residue(0, 0, 0) == 1);
  CHECK(ke->residue(1, 1, 1) == 1);
  CHECK(ke->residue(0, 1, 0) == 0);

  auto c3 = group_algebra(3, 1);
  CHECK(c3->dim() == 3);
  CHECK(c3->residue(0, 0, 0) == 0);
  CHECK(c3->constant(0, 0, 0).to_string() == "z1");

  CISpec bad;
  bad.p = 2;
  bad.exponents = {2, 1};
  CHECK_THROWS_AS(build_ci(bad), InputError);

  CISpec mixed;
  mixed.p = 5;
  mixed.exponents = {2, 3, 4};
  auto r = make_ci(mixed);
  CHECK(r->dim() == 24);
  // Multiplication is commutative and associative on basis triples.
  for (std::size_t a = 0; a < r->dim(); ++a)
    for (std::size_t b = 0; b < r->dim(); ++b) {
      CHECK(r->product_index(a, b) == r->product_index(b, a));
      for (std::size_t c = 0; c < r->dim(); c += 5) {
        auto ab = r->product_index(a, b), bc = r->product_index(b, c);
        auto left = ab ? r->product_index(*ab, c) : std::nullopt;
        auto right = bc ? r->product_index(a, *bc) : std::nullopt;
        CHECK(left == right);
      }
    }
}

TEST_CASE("custom structure constants") {
  CISpec spec;
  spec.p = 3;
  spec.exponents = {2, 2};
  // f1 = z1^2 + z2^2, f2 = z1^2 - z2^2 generate (z1^2, z2^2) in odd characteristic.
  spec.constants[{0, 0, 0}] = "1";
  spec.constants[{0, 1, 0}] = "0";
  spec.constants[{1, 1, 0}] = "1";
  spec.constants[{0, 0, 1}] = "1";
  spec.constants[{0, 1, 1}] = "0";
  spec.constants[{1, 1, 1}] = "-1";
  auto r = make_ci(spec);
  CHECK_FALSE(r->default_constants());
  CHECK(r->relation(0).to_string() == "z1^2 + z2^2");
  auto v = v_r_pipeline(trivial_module(r));
  CHECK(v.points.size() == 8);

  CISpec incomplete = spec;
  incomplete.constants.erase({1, 1, 1});
  CHECK_THROWS_AS(build_ci(incomplete), InputError);

  CISpec singular = spec;
  singular.constants[{1, 1, 1}] = "1";  // f1 = f2
  CHECK_THROWS_AS(build_ci(singular), InputError);

  CISpec outside = spec;
  outside.constants[{0, 1, 1}] = "1";  // adds z1*z2, not in (z1^2, z2^2)
  CHECK_THROWS_AS(build_ci(outside), InputError);
}

TEST_CASE("sample modules validate") {
  Rng rng(4);
  for (auto r : {group_algebra(2, 2), group_algebra(3, 1), group_algebra(3, 2)}) {
    CHECK_FALSE(validate(trivial_module(r)));
    CHECK_FALSE(validate(free_module(r)));
    CHECK_FALSE(validate(syzygy_of_k(r)));
    CHECK_FALSE(validate(inflated_line(r, 0)));
    CHECK(syzygy_of_k(r).dim() == r->dim() - 1);
    for (int trial = 0; trial < 5; ++trial) CHECK_FALSE(validate(suppvar::testing::random_ci_module(rng, r)));
    Vector a = r->element(parse_polynomial("z1", r->zring()));
    CHECK_FALSE(validate(multiplication_complex(r, a)));
  }
  auto r = group_algebra(2, 1);
  ScalarMatrix z(1, 1);
  z(0, 0) = 1;
  auto wrong = complex_from_blocks(r, 0, {1}, {}, {{z}});
  CHECK(validate(wrong));
  CHECK_THROWS_AS(require_valid(wrong), InputError);
}

TEST_CASE("Koszul complex") {
  auto r = group_algebra(2, 1);
  KoszulModule k = koszul(r);
  CHECK(k.complex.dim() == 4);
  CHECK_FALSE(validate(k.complex));
  CHECK_FALSE(check_k_module(k));
  auto h = homology(k.complex, -1, 0);
  CHECK(h.dims == std::vector<std::size_t>{1, 1});
  for (auto ring : {group_algebra(3, 2), group_algebra(2, 3)}) {
    KoszulModule kk = koszul(ring);
    CHECK(kk.complex.dim() == (std::size_t{1} << ring->nvars()) * ring->dim());
    CHECK_FALSE(validate(kk.complex));
  }
}

TEST_CASE("t functor") {
  auto r = group_algebra(2, 1);
  KoszulModule k = koszul(r);
  KoszulModule t = t_functor(free_module(r));
  CHECK(t.complex.d == k.complex.d);
  CHECK(t.complex.space.degrees == k.complex.space.degrees);
  KoszulModule tk = t_functor(trivial_module(r));
  CHECK(homology(tk.complex, -1, 0).total() == 2);
  Rng rng(8);
  auto r2 = group_algebra(3, 2);
  for (int trial = 0; trial < 3; ++trial) {
    ComplexOverR m = suppvar::testing::random_ci_module(rng, r2);
    KoszulModule tm = t_functor(m);
    CHECK(tm.complex.dim() == 4 * m.dim());
    CHECK_FALSE(validate(tm.complex));
    CHECK_FALSE(check_k_module(tm));
  }
}

TEST_CASE("the exterior algebra maps into K") {
  auto r1 = group_algebra(2, 1);
  auto w = lambda_to_K(koszul(r1));
  REQUIRE(w.size() == 1);
  CHECK_FALSE(is_zero_vector(w[0]));

  auto r2 = group_algebra(2, 2);
  LambdaModule n = restrict_i(t_functor(trivial_module(r2)), *r2);
  CHECK_FALSE(validate(n));
  const Field& f = n.field;
  CHECK(add(f, multiply(f, n.xi[0], n.xi[1]), multiply(f, n.xi[1], n.xi[0])).is_zero());

  // p = 3: w_1 = z1^2 y1 and its square acts by zero.
  auto r3 = group_algebra(3, 1);
  LambdaModule n3 = restrict_i(t_functor(free_module(r3)), *r3);
  CHECK(multiply(n3.field, n3.xi[0], n3.xi[0]).is_zero());
  CHECK_FALSE(n3.xi[0].is_zero());
}

TEST_CASE("quasi-isomorphism from the exterior algebra") {
  auto r = group_algebra(2, 2);
  auto rep = check_quasi_iso(r, -2, 0);
  CHECK(rep.ok);
  CHECK(rep.koszul_dims == std::vector<std::size_t>{1, 2, 1});
  auto r3 = group_algebra(2, 3);
  CHECK(check_quasi_iso(r3, -3, 0).koszul_dims == std::vector<std::size_t>{1, 3, 3, 1});
  auto beyond = check_quasi_iso(r, -5, -3);
  CHECK(beyond.ok);
  CHECK(beyond.koszul_dims == std::vector<std::size_t>{0, 0, 0});
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t rr = 1; rr <= 3; ++rr) {
      auto q = check_quasi_iso(group_algebra(p, rr), -static_cast<int>(rr), 0);
      CHECK(q.ok);
      CHECK(q.w_classes_span);
      for (std::size_t n = 0; n <= rr; ++n) CHECK(q.koszul_dims[rr - n] == binomial(rr, n));
    }
}

TEST_CASE("BGG functor examples") {
  auto s1 = make_ring(2, {2});
  LambdaModule k;
  k.field = Field(2);
  k.space.degrees = {0};
  k.d = ScalarMatrix(1, 1);
  k.xi = {ScalarMatrix(1, 1)};
  FreeDGModule hk = bgg_h(k, s1);
  CHECK(hk == FreeDGModule(s1, {{"n1", 0}}, PolyMatrix(s1, 1, 1)));

  for (std::uint32_t p : {2u, 3u}) {
    LambdaModule lam = exterior_algebra_r1(p);
    FreeDGModule h = bgg_h(lam, make_ring(p, {2}));
    CHECK(h.rank() == 2);
    CHECK_FALSE(validate(h));
    CHECK(homology_dims(h, -6, 6).total() == 1);
  }

  // Non-anticommuting operators make d^2 != 0.
  LambdaModule bad;
  bad.field = Field(3);
  bad.space.degrees = {-2, -1, 0};
  bad.d = ScalarMatrix(3, 3);
  ScalarMatrix a(3, 3), b(3, 3);
  a(1, 2) = 1, a(0, 1) = 1;
  b(1, 2) = 1, b(0, 1) = 1;
  bad.xi = {a, b};
  CHECK(validate(bad));
  CHECK_FALSE(exterior_relations(bad).anticommutator);
  CHECK_THROWS_AS(bgg_h(bad, make_ring(3, {2, 2})), InputError);
}

TEST_CASE("exterior relations on the strict model") {
  Rng rng(12);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto r = group_algebra(p, 2);
    for (const auto& m : {trivial_module(r), syzygy_of_k(r), suppvar::testing::random_ci_module(rng, r)}) {
      LambdaModule n = restrict_i(t_functor(m), *r);
      RelationReport rep = exterior_relations(n);
      CHECK(rep.anticommutator);
      CHECK_FALSE(validate(bgg_h(n, theta_ring(*r))));
      // In characteristic 2 the literal reading 2ξ_hξ_i = 0 is automatic.
      if (p == 2) CHECK(rep.literal);
    }
    // On K itself w_1 w_2 != 0, so the literal reading fails in odd characteristic.
    RelationReport k = exterior_relations(restrict_i(t_functor(free_module(r)), *r));
    CHECK(k.anticommutator);
    CHECK(k.literal == (p == 2));
  }
}

TEST_CASE("pipeline variety of the residue field is everything") {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t r = 1; r <= 2; ++r) {
      auto ring = group_algebra(p, r);
      auto v = v_r_pipeline(trivial_module(ring));
      CHECK(v.contains_origin);
      CHECK(v.points.size() == point_count(Field(p), r) - 1);
    }
}

TEST_CASE("pipeline varieties of free and inflated modules") {
  auto r = group_algebra(2, 2);
  auto free = v_r_pipeline(free_module(r));
  CHECK(free.points.empty());
  CHECK(free.contains_origin);
  auto line = v_r_pipeline(inflated_line(r, 1));
  REQUIRE(line.points.size() == 1);
  CHECK(is_conical(line, *theta_ring(*r)));
}
