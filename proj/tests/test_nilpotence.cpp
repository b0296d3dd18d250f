#include <doctest.h>

#include "suppvar/errors.hpp"
#include "suppvar/homology.hpp"
#include "suppvar/nilpotence.hpp"
#include "test_util.hpp"

using namespace suppvar;
using suppvar::testing::Rng;

namespace {

RingPtr s2() { return make_ring(2, {2, 2}); }

// s viewed as a morphism S → Σ^{-|s|}S, i.e. onto the free module on a generator of degree -|s|.
DGMorphism form_map(const Polynomial& s) {
  const RingPtr& r = s.ring();
  PolyMatrix m(r, 1, 1);
  m.set(0, 0, s);
  return DGMorphism(FreeDGModule::free(r), FreeDGModule::free(r, -*s.degree()), m);
}

FreeDGModule cone_x1(const RingPtr& r) {
  return cone(multiplication_morphism(FreeDGModule::free(r), parse_polynomial("x1", r)));
}

NilpotenceOptions with(std::size_t n_max, bool override_hypothesis = false) {
  NilpotenceOptions o;
  o.n_max = n_max;
  o.override_hypothesis = override_hypothesis;
  return o;
}

}  // namespace

TEST_CASE("fiberwise vanishing examples") {
  auto r = s2();
  DGMorphism x1 = form_map(parse_polynomial("x1", r));
  auto v = support_points(cone_x1(r));
  auto ok = fiberwise_vanishing(x1, v);
  CHECK(ok.vanishes);
  CHECK(ok.points_checked == 1);
  CHECK(ok.origin_checked);

  auto id = fiberwise_vanishing(identity_morphism(FreeDGModule::free(r)), support_points(FreeDGModule::free(r)));
  CHECK_FALSE(id.vanishes);
  CHECK(id.fails_at_origin);

  VarietySet empty;
  CHECK(fiberwise_vanishing(identity_morphism(FreeDGModule::free(r)), empty).vanishes);

  auto at_point = fiberwise_vanishing(x1, support_points(FreeDGModule::free(r)));
  CHECK_FALSE(at_point.vanishes);
  REQUIRE(at_point.failing_point);
  CHECK(*at_point.failing_point == Point{1, 0});
}

TEST_CASE("x1 is nilpotent on its own cone with a verified witness") {
  auto r = s2();
  DGMorphism x1 = form_map(parse_polynomial("x1", r));
  FreeDGModule g = cone_x1(r);
  auto rep = nilpotence_search(x1, g);
  REQUIRE(rep.status == NilpotenceReport::Status::Found);
  CHECK(*rep.n_found == 1);
  CHECK(rep.witness_verified);
  REQUIRE(rep.hom);
  // Re-verify the witness independently of the search.
  CHECK(suppvar::apply(rep.hom->differential(), rep.witness) == rep.cycle);
  CHECK(unit_image(twisted_power_adjoint(x1, g, 1)) == rep.cycle);
  REQUIRE(rep.monotone);
  CHECK(*rep.monotone);
}

TEST_CASE("zero morphism vanishes at n = 1") {
  auto r = s2();
  DGMorphism zero = form_map(parse_polynomial("x2", r));
  zero = DGMorphism(zero.source(), zero.target(), PolyMatrix(r, 1, 1));
  auto rep = nilpotence_search(zero, FreeDGModule::free(r));
  CHECK(rep.status == NilpotenceReport::Status::Found);
  CHECK(*rep.n_found == 1);
  CHECK(rep.witness_verified);
}

TEST_CASE("identity exhausts when forced past the hypothesis") {
  auto r = s2();
  DGMorphism id = identity_morphism(FreeDGModule::free(r));
  CHECK_THROWS_AS(nilpotence_search(id, FreeDGModule::free(r)), InputError);
  auto rep = nilpotence_search(id, FreeDGModule::free(r), with(3, true));
  CHECK(rep.status == NilpotenceReport::Status::Exhausted);
  CHECK(rep.steps.size() == 3);
  CHECK_FALSE(rep.hypothesis.vanishes);
}

TEST_CASE("rank limit aborts the search") {
  auto r = s2();
  FreeDGModule g = cone_x1(r);
  auto x1 = form_map(parse_polynomial("x1", r));
  NilpotenceOptions o = with(5);
  o.rank_limit = 1;
  auto rep = nilpotence_search(x1, g, o);
  CHECK(rep.status == NilpotenceReport::Status::Aborted);
}

TEST_CASE("searches from non-unit sources are rejected") {
  auto r = s2();
  FreeDGModule g = cone_x1(r);
  CHECK_THROWS_AS(nilpotence_search(identity_morphism(g), g), InputError);
}

TEST_CASE("nilpotence on random modules: witnesses and monotonicity") {
  Rng rng(13);
  auto r = s2();
  int found = 0;
  for (int trial = 0; trial < 30 && found < 8; ++trial) {
    FreeDGModule g = suppvar::testing::random_module(rng, r, 4);
    DGMorphism f = form_map(suppvar::testing::random_nonzero_form(rng, r, 1));
    auto v = support_points(g);
    if (!fiberwise_vanishing(f, v).vanishes) continue;
    auto rep = nilpotence_search(f, g, with(3));
    if (rep.status != NilpotenceReport::Status::Found) continue;
    ++found;
    CHECK(rep.witness_verified);
    CHECK(suppvar::apply(rep.hom->differential(), rep.witness) == rep.cycle);
    if (rep.monotone) CHECK(*rep.monotone);
  }
  CHECK(found >= 3);
}

TEST_CASE("necessity probe: failing the hypothesis prevents vanishing") {
  Rng rng(29);
  auto r = s2();
  int probes = 0;
  for (int trial = 0; trial < 200 && probes < 10; ++trial) {
    FreeDGModule g = suppvar::testing::random_module(rng, r, 3);
    DGMorphism f = form_map(suppvar::testing::random_nonzero_form(rng, r, 2));
    auto hyp = fiberwise_vanishing(f, support_points(g));
    if (hyp.vanishes || hyp.fails_at_origin) continue;
    ++probes;
    auto rep = nilpotence_search(f, g, with(3, true));
    CHECK(rep.status == NilpotenceReport::Status::Exhausted);
  }
  CHECK(probes == 10);
}
