#include <doctest.h>

#include "suppvar/ci.hpp"
#include "suppvar/errors.hpp"
#include "suppvar/resolution.hpp"
#include "test_util.hpp"

using namespace suppvar;
using suppvar::testing::Rng;

namespace {

CIPtr ci(std::uint32_t p, std::vector<unsigned> exponents) {
  CISpec spec;
  spec.p = p;
  spec.exponents = std::move(exponents);
  return make_ci(spec);
}

// Coefficients of (1+t)^r / (1-t^2)^r up to t^n.
std::vector<std::size_t> ext_series(std::size_t r, int n) {
  std::vector<long> c(static_cast<std::size_t>(n) + 1, 0);
  c[0] = 1;
  for (std::size_t k = 0; k < r; ++k) {
    for (int i = n; i >= 1; --i) c[i] += c[i - 1];  // times (1 + t)
    for (int i = 2; i <= n; ++i) c[i] += c[i - 2];  // divided by (1 - t^2)
  }
  return {c.begin(), c.end()};
}

ExtOptions up_to(int n) {
  ExtOptions o;
  o.n_max = n;
  return o;
}

std::vector<Point> locus(const std::vector<Polynomial>& polys, const Field& f, std::size_t r) {
  std::vector<Point> out;
  for (std::uint64_t i = 1; i < point_count(f, r); ++i) {
    Point p = point_at(f, r, i);
    if (vanishes_at(polys, f, p)) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("minimal resolution of k and its Eisenbud operators") {
  auto r = ci(2, {2, 2});
  auto res = resolve_residue_field(r, 6);
  CHECK(res.ranks == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7});
  auto ops = eisenbud_operators(res);
  CHECK(ops.size() == 2);
  CHECK_FALSE(check_chain_maps(res, ops));
  auto r3 = ci(3, {3, 2});
  auto res3 = resolve_residue_field(r3, 5);
  CHECK_FALSE(check_chain_maps(res3, eisenbud_operators(res3)));
}

TEST_CASE("Ext of the residue field of a group algebra follows the forced series") {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t r = 1; r <= 2; ++r) {
      auto ring = ci(p, std::vector<unsigned>(r, p));
      auto ext = ext_oracle(trivial_module(ring), up_to(10));
      CHECK(ext.lo == 0);
      CHECK(ext.dims == ext_series(r, 10));
    }
}

TEST_CASE("Ext examples") {
  auto r = ci(3, {3});
  CHECK(ext_oracle(trivial_module(r), up_to(5)).dims == std::vector<std::size_t>{1, 1, 1, 1, 1, 1});
  auto ke = ci(2, {2, 2});
  CHECK(ext_oracle(free_module(ke), up_to(6)).dims == std::vector<std::size_t>{1, 0, 0, 0, 0, 0, 0});
  CHECK(ext_oracle(trivial_module(ke), up_to(0)).dims == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(ext_oracle(trivial_module(ke), up_to(13)), InputError);
  // A two-term complex starts in degree -1.
  Vector z1 = ke->element(parse_polynomial("z1", ke->zring()));
  auto ext = ext_oracle(multiplication_complex(ke, z1), up_to(4));
  CHECK(ext.lo == -1);
}

TEST_CASE("adjunction holds on the module matrix") {
  Rng rng(77);
  const std::vector<std::pair<std::uint32_t, std::vector<unsigned>>> rings = {
      {2, {2}}, {2, {2, 2}}, {3, {3}}, {3, {3, 3}}, {5, {5}}, {2, {2, 3}}, {3, {2, 2}}};
  for (const auto& [p, e] : rings) {
    auto r = ci(p, e);
    std::vector<ComplexOverR> modules = {trivial_module(r), free_module(r), inflated_line(r, e.size() - 1),
                                         syzygy_of_k(r), suppvar::testing::random_ci_module(rng, r),
                                         suppvar::testing::random_ci_module(rng, r)};
    Vector z1 = r->element(parse_polynomial("z1", r->zring()));
    modules.push_back(multiplication_complex(r, z1));
    for (const auto& m : modules) {
      auto rep = adjunction_check(m, up_to(8));
      CHECK(rep.ok);
      CHECK(rep.ext == rep.homology);
    }
  }
}

TEST_CASE("annihilator examples") {
  auto r = ci(2, {2, 2});
  ExtOptions o = up_to(10);
  auto k = ann_theta(trivial_module(r), 3, o);
  CHECK(k.all().empty());
  CHECK(k.stable);
  auto free = ann_theta(free_module(r), 2, o);
  REQUIRE(free.by_degree.size() == 3);
  CHECK(free.by_degree[1].size() == 2);
  auto line = ann_theta(inflated_line(r, 1), 2, o);
  CHECK(line.by_degree[1].size() == 1);
}

TEST_CASE("annihilator vanishing locus matches the pipeline variety") {
  Rng rng(5);
  for (const auto& [p, e] : std::vector<std::pair<std::uint32_t, std::vector<unsigned>>>{
           {2, {2, 2}}, {3, {3, 3}}, {2, {2, 4}}}) {
    auto r = ci(p, e);
    std::vector<ComplexOverR> modules = {trivial_module(r), free_module(r), inflated_line(r, 0), inflated_line(r, 1),
                                         syzygy_of_k(r)};
    for (const auto& m : modules) {
      auto ann = ann_theta(m, 3, up_to(10));
      auto v = v_r_pipeline(m);
      CHECK(locus(ann.all(), v.field, r->nvars()) == v.points);
    }
    // Random modules: the locus contains the variety.
    for (int trial = 0; trial < 2; ++trial) {
      auto m = suppvar::testing::random_ci_module(rng, r);
      auto ann = ann_theta(m, 2, up_to(8));
      auto v = v_r_pipeline(m);
      auto l = locus(ann.all(), v.field, r->nvars());
      CHECK(std::includes(l.begin(), l.end(), v.points.begin(), v.points.end()));
    }
  }
}
