#include "suppvar/nilpotence.hpp"

#include "suppvar/errors.hpp"
#include "suppvar/homology.hpp"
#include "suppvar/linalg.hpp"

namespace suppvar {

namespace {

// Is u in the image of d (both already specialized to a field)?
bool in_image(const Field& field, const ScalarMatrix& d, const Vector& u) {
  if (is_zero_vector(u)) return true;
  return solve(field, d, u).has_value();
}

}  // namespace

FiberwiseResult fiberwise_vanishing(const DGMorphism& f, const VarietySet& v) {
  PolyVector image = unit_image(f);
  const FreeDGModule& x = f.target();
  const std::size_t n = x.rank();
  const Field& field = v.field;
  FiberwiseResult out;
  if (v.contains_origin) {
    out.origin_checked = true;
    ScalarMatrix d(n, n);
    Vector u(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = image[j].constant_term();
      for (const auto& [i, poly] : x.differential().column(j)) d(i, j) = poly.constant_term();
    }
    if (!in_image(x.ring()->field(), d, u)) {
      out.vanishes = false;
      out.fails_at_origin = true;
      return out;
    }
  }
  for (const auto& p : v.points) {
    ++out.points_checked;
    ScalarMatrix d(n, n);
    Vector u(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = image[j].evaluate(field, p);
      for (const auto& [i, poly] : x.differential().column(j)) d(i, j) = poly.evaluate(field, p);
    }
    if (!in_image(field, d, u)) {
      out.vanishes = false;
      out.failing_point = p;
      return out;
    }
  }
  return out;
}

DGMorphism twisted_power_adjoint(const DGMorphism& f, const FreeDGModule& g, std::size_t n) {
  return adjoint_to_unit(tensor_morphism(identity_morphism(g), tensor_power(f, n)));
}

NilpotenceReport nilpotence_search(const DGMorphism& f, const FreeDGModule& g, const NilpotenceOptions& options) {
  require_valid(f);
  require_valid(g);
  if (!(*f.source().ring() == *g.ring())) throw InputError("morphism and G live over different rings");
  unit_image(f);  // rejects sources other than S

  NilpotenceReport rep;
  VarietySet v = support_points(g, options.support);
  rep.hypothesis = fiberwise_vanishing(f, v);
  if (!rep.hypothesis.vanishes && !options.override_hypothesis) {
    std::string where = "the origin";
    if (rep.hypothesis.failing_point) {
      where = "(";
      for (std::size_t i = 0; i < rep.hypothesis.failing_point->size(); ++i)
        where += (i ? "," : "") + std::to_string((*rep.hypothesis.failing_point)[i]);
      where += ")";
    }
    throw InputError("fiberwise hypothesis fails: k(p) ⊗ f != 0 at " + where + " in the support of G");
  }

  auto step = [&](std::size_t n, NilpotenceStep& s) -> std::optional<DGMorphism> {
    std::size_t xr = 1;
    for (std::size_t k = 0; k < n; ++k) {
      xr *= f.target().rank();
      if (xr * g.rank() > options.rank_limit) break;
    }
    s.n = n;
    s.rank = xr * g.rank();
    if (s.rank > options.rank_limit) return std::nullopt;
    return twisted_power_adjoint(f, g, n);
  };

  for (std::size_t n = 1; n <= options.n_max; ++n) {
    NilpotenceStep s;
    auto adj = step(n, s);
    rep.steps.push_back(s);
    if (!adj) {
      rep.status = NilpotenceReport::Status::Aborted;
      return rep;
    }
    const FreeDGModule& hom = adj->target();
    PolyVector c = unit_image(*adj);
    auto w = boundary_preimage(hom, c, 0);
    rep.steps.back().vanishes = w.has_value();
    if (!w) continue;

    rep.status = NilpotenceReport::Status::Found;
    rep.n_found = n;
    rep.hom = hom;
    rep.cycle = c;
    rep.witness = *w;
    PolyVector dw = suppvar::apply(hom.differential(), *w);
    rep.witness_verified = dw == c;
    if (!rep.witness_verified) throw ConsistencyError("nilpotence witness failed to re-verify");
    NilpotenceStep next;
    if (auto adj2 = step(n + 1, next)) rep.monotone = is_homologous_zero(adj2->target(), unit_image(*adj2), 0);
    return rep;
  }
  rep.status = NilpotenceReport::Status::Exhausted;
  return rep;
}

}  // namespace suppvar
