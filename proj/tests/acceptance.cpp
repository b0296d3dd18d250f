// Acceptance checks: one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "suppvar/ci.hpp"
#include "suppvar/cli.hpp"
#include "suppvar/homology.hpp"
#include "suppvar/io.hpp"
#include "suppvar/nilpotence.hpp"
#include "suppvar/resolution.hpp"
#include "suppvar/support.hpp"
#include "test_util.hpp"

using namespace suppvar;
using suppvar::testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CIPtr ci(std::uint32_t p, std::vector<unsigned> exponents) {
  CISpec spec;
  spec.p = p;
  spec.exponents = std::move(exponents);
  return make_ci(spec);
}

SupportOptions level(std::uint32_t e, unsigned workers = 1) {
  SupportOptions o;
  o.extension = e;
  o.workers = workers;
  return o;
}

bool same(const VarietySet& a, const VarietySet& b) {
  return a.points == b.points && a.contains_origin == b.contains_origin;
}

std::vector<Point> sorted_union(std::vector<Point> a, const std::vector<Point>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<Point> sorted_intersection(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

Outcome support_realizability() {
  auto start = Clock::now();
  Outcome o;
  std::size_t cases = 0;
  for (std::uint32_t p : {2u, 3u}) {
    auto r = make_ring(p, {2, 2});
    for (const auto& gens : std::vector<std::vector<std::string>>{{"0"}, {"x1"}, {"x2"}, {"x1", "x2"}, {"x1 + x2"}}) {
      std::vector<Polynomial> ideal;
      for (const auto& g : gens) ideal.push_back(parse_polynomial(g, r));
      for (std::uint32_t e : {1u, 2u}) {
        VarietySet v = support_points(realize(r, ideal), level(e));
        std::vector<Point> locus;
        for (std::uint64_t i = 1; i < point_count(v.field, 2); ++i) {
          Point pt = point_at(v.field, 2, i);
          if (vanishes_at(ideal, v.field, pt)) locus.push_back(pt);
        }
        ++cases;
        if (locus != v.points || !v.contains_origin) {
          o.pass = false;
          o.detail = "mismatch for an ideal with " + std::to_string(gens.size()) + " generators over F_" +
                     std::to_string(p) + "^" + std::to_string(e);
          return o;
        }
      }
    }
  }
  double t = seconds_since(start);
  o.pass = t < 5.0;
  o.detail = std::to_string(cases) + " ideal/field cases equal their vanishing loci in " + std::to_string(t) + " s";
  return o;
}

Outcome kunneth() {
  auto start = Clock::now();
  Rng rng(2024);
  auto r = make_ring(2, {2, 2});
  for (int trial = 0; trial < 20; ++trial) {
    FreeDGModule m = suppvar::testing::random_module(rng, r, 6), n = suppvar::testing::random_module(rng, r, 6);
    VarietySet vm = support_points(m), vn = support_points(n), vt = support_points(tensor(m, n));
    if (vt.points != sorted_intersection(vm.points, vn.points) ||
        vt.contains_origin != (vm.contains_origin && vn.contains_origin))
      return {false, "pair " + std::to_string(trial) + " violates Supp(M⊗N) = Supp M ∩ Supp N"};
  }
  double t = seconds_since(start);
  return {t < 30.0, "20 random pairs of rank <= 6 over F_2 in " + std::to_string(t) + " s"};
}

Outcome sum_and_shift() {
  Rng rng(7);
  auto r = make_ring(2, {2, 2});
  for (int trial = 0; trial < 20; ++trial) {
    FreeDGModule m = suppvar::testing::random_module(rng, r, 6), n = suppvar::testing::random_module(rng, r, 6);
    VarietySet vm = support_points(m), vn = support_points(n), vs = support_points(direct_sum(m, n));
    if (vs.points != sorted_union(vm.points, vn.points) || vs.contains_origin != (vm.contains_origin || vn.contains_origin))
      return {false, "instance " + std::to_string(trial) + " violates the union rule"};
    const int s = static_cast<int>(rng() % 9) - 4;
    if (!same(support_points(shift(m, s)), vm)) return {false, "instance " + std::to_string(trial) + " not shift invariant"};
  }
  return {true, "20 random instances: union and shift invariance exact"};
}

Outcome koszul_homology() {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t r = 1; r <= 3; ++r) {
      auto ring = ci(p, std::vector<unsigned>(r, p));
      KoszulModule k = koszul(ring);
      HomologyTable h = complex_homology(ring->field(), k.complex.space, k.complex.d, -static_cast<int>(r) - 1, 1);
      for (std::size_t n = 0; n <= r; ++n)
        if (h.at(-static_cast<int>(n)) != binomial(r, n))
          return {false, "p = " + std::to_string(p) + ", r = " + std::to_string(r) + ", n = " + std::to_string(n)};
      if (h.at(1) != 0 || h.at(-static_cast<int>(r) - 1) != 0) return {false, "homology outside [-r, 0]"};
    }
  return {true, "dim H^{-n}(K) = binom(r, n) for p in {2,3,5}, r <= 3"};
}

Outcome ext_series() {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t r = 1; r <= 2; ++r) {
      std::vector<long> c(11, 0);
      c[0] = 1;
      for (std::size_t k = 0; k < r; ++k) {
        for (int i = 10; i >= 1; --i) c[i] += c[i - 1];
        for (int i = 2; i <= 10; ++i) c[i] += c[i - 2];
      }
      ExtOptions o;
      o.n_max = 10;
      ExtTable ext = ext_oracle(trivial_module(ci(p, std::vector<unsigned>(r, p))), o);
      for (int n = 0; n <= 10; ++n)
        if (ext.at(n) != static_cast<std::size_t>(c[n]))
          return {false, "p = " + std::to_string(p) + ", r = " + std::to_string(r) + ", n = " + std::to_string(n)};
    }
  return {true, "Ext_kE(k,k) matches (1+t)^r/(1-t^2)^r for n <= 10, p in {2,3,5}, r <= 2"};
}

Outcome adjunction() {
  Rng rng(99);
  std::size_t checked = 0;
  const std::vector<std::pair<std::uint32_t, std::vector<unsigned>>> rings = {
      {2, {2}}, {2, {2, 2}}, {3, {3}}, {3, {3, 3}}, {5, {5}}, {5, {5, 5}}, {2, {2, 4}}};
  for (const auto& [p, e] : rings) {
    auto r = ci(p, e);
    std::vector<ComplexOverR> modules = {trivial_module(r), free_module(r), inflated_line(r, 0), syzygy_of_k(r),
                                         suppvar::testing::random_ci_module(rng, r),
                                         suppvar::testing::random_ci_module(rng, r)};
    for (const auto& m : modules) {
      ExtOptions o;
      o.n_max = 8;
      AdjunctionReport rep = adjunction_check(m, o);
      ++checked;
      if (!rep.ok) return {false, "disagreement over " + r->describe()};
    }
  }
  return {true, std::to_string(checked) + " module/ring pairs agree for n <= 8 (" + std::to_string(rings.size()) +
                    " rings, 6 modules each)"};
}

Outcome pipeline_varieties() {
  double worst = 0;
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t r = 1; r <= 2; ++r) {
      auto start = Clock::now();
      auto ring = ci(p, std::vector<unsigned>(r, p));
      VarietySet k = v_r_pipeline(trivial_module(ring));
      if (!k.contains_origin || k.points.size() != point_count(Field(p), r) - 1)
        return {false, "V_R(k) is not everything over " + ring->describe()};
      VarietySet free = v_r_pipeline(free_module(ring));
      if (!free.contains_origin || !free.points.empty()) return {false, "V_R(R) is not the origin over " + ring->describe()};
      worst = std::max(worst, seconds_since(start));
    }
  auto start = Clock::now();
  auto ke = ci(2, {2, 2});
  for (std::size_t i = 0; i < 2; ++i) {
    ComplexOverR line = inflated_line(ke, i);
    VarietySet f2 = v_r_pipeline(line, level(1));
    VarietySet f4 = v_r_pipeline(line, level(2));
    if (f2.points.size() != 1 || f4.points.size() != 3) return {false, "inflated line is not 1-dimensional"};
    if (!is_conical(f4, *theta_ring(*ke))) return {false, "inflated line variety over F_4 is not conical"};
    std::set<Point> span;
    for (const auto& pt : f2.points)
      for (Scalar lambda = 1; lambda < f4.field.size(); ++lambda) {
        Point scaled = pt;
        for (auto& c : scaled) c = f4.field.mul(lambda, c);
        span.insert(scaled);
      }
    if (std::vector<Point>(span.begin(), span.end()) != f4.points) return {false, "F_4 points are not the F_4-span"};
  }
  worst = std::max(worst, seconds_since(start));
  return {worst < 10.0, "V_R(k) full, V_R(R) = origin for p in {2,3,5}, r <= 2; inflated lines span correctly over F_4; "
                        "slowest ring " + std::to_string(worst) + " s"};
}

Outcome nilpotence() {
  auto r = make_ring(2, {2, 2});
  PolyMatrix m(r, 1, 1);
  m.set(0, 0, parse_polynomial("x1", r));
  DGMorphism x1(FreeDGModule::free(r), FreeDGModule::free(r, -2), m);
  FreeDGModule g = cone(multiplication_morphism(FreeDGModule::free(r), parse_polynomial("x1", r)));
  NilpotenceReport rep = nilpotence_search(x1, g);
  if (rep.status != NilpotenceReport::Status::Found || *rep.n_found != 1) return {false, "x1 on cone(x1) not found at n = 1"};
  if (!rep.hom || suppvar::apply(rep.hom->differential(), rep.witness) != rep.cycle)
    return {false, "witness boundary does not reproduce the cycle"};
  NilpotenceOptions o;
  o.n_max = 3;
  o.override_hypothesis = true;
  NilpotenceReport id = nilpotence_search(identity_morphism(FreeDGModule::free(r)), FreeDGModule::free(r), o);
  if (id.status != NilpotenceReport::Status::Exhausted || id.steps.size() != 3)
    return {false, "identity did not exhaust at n_max = 3"};
  return {true, "x1 on cone(x1): n = 1, d(witness) = cycle; identity exhausts at n_max = 3"};
}

std::string cli_output(const std::vector<std::string>& args, int& code) {
  std::vector<const char*> argv = {"suppvar"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str() + err.str();
}

Outcome determinism(Clock::time_point suite_start) {
  for (const char* fixture : {"cone_x1.json", "bad_differential.json", "ke_pipeline.json", "nilpotence.json", "tour.json"}) {
    int c1 = 0, c8 = 0;
    std::string one = cli_output({"run", fixture, "--workers", "1"}, c1);
    std::string eight = cli_output({"run", fixture, "--workers", "8"}, c8);
    if (one != eight || c1 != c8) return {false, std::string("CLI output differs for ") + fixture};
  }
  // Library-level enumeration of the random instances of the other criteria.
  Rng rng(2024);
  auto r = make_ring(2, {2, 2});
  for (int trial = 0; trial < 20; ++trial) {
    FreeDGModule m = suppvar::testing::random_module(rng, r, 6);
    for (std::uint32_t e : {1u, 2u}) {
      std::string a = to_json(support_points(m, level(e, 1))).dump();
      std::string b = to_json(support_points(m, level(e, 8))).dump();
      if (a != b) return {false, "support enumeration depends on the worker count"};
    }
  }
  double t = seconds_since(suite_start);
  return {t < 120.0, "fixtures and random supports byte-identical with 1 and 8 workers; suite took " + std::to_string(t) + " s"};
}

}  // namespace

int main() {
  auto suite_start = Clock::now();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"support realizability", support_realizability},
      {"Kunneth/intersection", kunneth},
      {"sum/shift", sum_and_shift},
      {"Koszul homology", koszul_homology},
      {"Ext of kE", ext_series},
      {"BGG adjunction", adjunction},
      {"pipeline varieties", pipeline_varieties},
      {"nilpotence", nilpotence},
      {"determinism", [&] { return determinism(suite_start); }},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << index << " " << name << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
