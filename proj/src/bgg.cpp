#include <sstream>

#include "suppvar/ci.hpp"
#include "suppvar/errors.hpp"

namespace suppvar {

namespace {

std::string pair_name(std::size_t h, std::size_t i) {
  return "(xi" + std::to_string(h + 1) + ", xi" + std::to_string(i + 1) + ")";
}

}  // namespace

std::optional<std::string> validate(const LambdaModule& n) {
  const Field& f = n.field;
  const std::size_t dim = n.space.dim();
  if (n.d.rows() != dim || n.d.cols() != dim) return "differential has the wrong shape";
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if (n.d(i, j) != 0 && n.space.degrees[i] != n.space.degrees[j] + 1) return "d does not raise degree by 1";
      for (std::size_t k = 0; k < n.xi.size(); ++k)
        if (n.xi[k](i, j) != 0 && n.space.degrees[i] != n.space.degrees[j] - 1) {
          return "xi" + std::to_string(k + 1) + " does not lower degree by 1";
        }
    }
  if (!multiply(f, n.d, n.d).is_zero()) return "d^2 != 0";
  for (std::size_t k = 0; k < n.xi.size(); ++k) {
    if (!add(f, multiply(f, n.d, n.xi[k]), multiply(f, n.xi[k], n.d)).is_zero()) {
      return "d xi" + std::to_string(k + 1) + " + xi" + std::to_string(k + 1) + " d != 0";
    }
  }
  RelationReport rel = exterior_relations(n);
  if (!rel.anticommutator) {
    return "exterior relation fails for " + pair_name(rel.anticommutator_failure->first, rel.anticommutator_failure->second);
  }
  return std::nullopt;
}

LambdaModule restrict_i(const KoszulModule& t, const CIPresentation& ring) {
  LambdaModule n;
  n.field = ring.field();
  n.space = t.complex.space;
  n.d = t.complex.d;
  n.xi = w_actions(t, ring);
  return n;
}

RelationReport exterior_relations(const LambdaModule& n) {
  const Field& f = n.field;
  RelationReport rep;
  for (std::size_t h = 0; h < n.xi.size(); ++h)
    for (std::size_t i = h; i < n.xi.size(); ++i) {
      ScalarMatrix hi = multiply(f, n.xi[h], n.xi[i]);
      ScalarMatrix anti = h == i ? hi : add(f, hi, multiply(f, n.xi[i], n.xi[h]));
      if (!anti.is_zero() && rep.anticommutator) {
        rep.anticommutator = false;
        rep.anticommutator_failure = {h, i};
      }
      ScalarMatrix literal = h == i ? hi : scale(f, hi, 2 % f.characteristic());
      if (!literal.is_zero() && rep.literal) {
        rep.literal = false;
        rep.literal_failure = {h, i};
      }
    }
  return rep;
}

RingPtr theta_ring(const CIPresentation& ring, const std::string& prefix) {
  return make_ring(ring.characteristic(), std::vector<int>(ring.nvars(), 2), prefix);
}

FreeDGModule bgg_h(const LambdaModule& n, const RingPtr& s) {
  if (s->nvars() != n.xi.size()) throw InputError("polynomial ring must have one variable per xi");
  if (s->characteristic() != n.field.characteristic()) throw InputError("field mismatch between S and N");
  for (int d : s->degrees())
    if (d != 2) throw InputError("bgg_h needs deg x_j = 2");
  const std::size_t dim = n.space.dim();
  std::vector<Generator> gens;
  for (std::size_t k = 0; k < dim; ++k) gens.push_back({"n" + std::to_string(k + 1), n.space.degrees[k]});
  PolyMatrix d(s, dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if (n.d(i, j) != 0) d.add_to(i, j, Polynomial::constant(s, n.d(i, j)));
      for (std::size_t k = 0; k < n.xi.size(); ++k)
        if (n.xi[k](i, j) != 0) d.add_to(i, j, Polynomial::variable(s, k).scaled(n.xi[k](i, j)));
    }
  FreeDGModule h(s, std::move(gens), std::move(d));
  if (auto v = validate(h)) {
    std::ostringstream msg;
    msg << "h(N) fails to be a DG module (" << v->message << ")";
    RelationReport rel = exterior_relations(n);
    if (!rel.anticommutator) {
      msg << "; N violates the exterior relation for "
          << pair_name(rel.anticommutator_failure->first, rel.anticommutator_failure->second);
    }
    throw InputError(msg.str());
  }
  return h;
}

FreeDGModule pipeline_module(const ComplexOverR& m) {
  KoszulModule t = t_functor(m);
  LambdaModule n = restrict_i(t, *m.ring);
  return bgg_h(n, theta_ring(*m.ring));
}

VarietySet v_r_pipeline(const ComplexOverR& m, const SupportOptions& options) {
  return support_points(pipeline_module(m), options);
}

}  // namespace suppvar
