#include <algorithm>
#include <bit>
#include <tuple>

#include "suppvar/ci.hpp"
#include "suppvar/errors.hpp"

namespace suppvar {

namespace {

int popcount(unsigned mask) { return std::popcount(mask); }

}  // namespace

ScalarMatrix polynomial_action(const Field& f, const Polynomial& c, const std::vector<ScalarMatrix>& z,
                               std::size_t n) {
  ScalarMatrix out(n, n);
  for (const auto& [e, coeff] : c.terms()) {
    ScalarMatrix term = ScalarMatrix::identity(n);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) term = multiply(f, z[i], term);
    out = add(f, out, scale(f, term, coeff));
  }
  return out;
}

KoszulModule t_functor(const ComplexOverR& m) {
  require_valid(m);
  const CIPresentation& R = *m.ring;
  const Field& f = R.field();
  const std::size_t r = R.nvars();
  const unsigned subsets = 1u << r;
  const std::size_t n = m.dim();

  std::vector<std::tuple<int, unsigned, std::size_t>> order;
  for (unsigned s = 0; s < subsets; ++s)
    for (std::size_t v = 0; v < n; ++v) order.emplace_back(m.space.degrees[v] - popcount(s), s, v);
  std::sort(order.begin(), order.end());

  KoszulModule t;
  t.complex.ring = m.ring;
  std::vector<std::size_t> position(subsets * n);
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto [deg, s, v] = order[k];
    t.complex.space.degrees.push_back(deg);
    t.labels.emplace_back(s, v);
    position[s * n + v] = k;
  }
  const std::size_t total = order.size();
  auto pos = [&](unsigned s, std::size_t v) { return position[s * n + v]; };

  t.complex.d = ScalarMatrix(total, total);
  t.complex.z.assign(r, ScalarMatrix(total, total));
  t.y.assign(r, ScalarMatrix(total, total));
  for (std::size_t col = 0; col < total; ++col) {
    const auto [s, v] = t.labels[col];
    // d(y_S ⊗ v) = Σ_t (-1)^{t-1} z_{s_t} y_{S - s_t} ⊗ v + (-1)^{|S|} y_S ⊗ dv
    int t_index = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (!(s & (1u << i))) continue;
      const Scalar sign = (t_index++ % 2 == 0) ? 1 : f.neg(1);
      const unsigned rest = s & ~(1u << i);
      for (std::size_t u = 0; u < n; ++u) {
        const Scalar c = m.z[i](u, v);
        if (c == 0) continue;
        Scalar& entry = t.complex.d(pos(rest, u), col);
        entry = f.add(entry, f.mul(sign, c));
      }
    }
    const Scalar dsign = (popcount(s) % 2 == 0) ? 1 : f.neg(1);
    for (std::size_t u = 0; u < n; ++u) {
      if (m.d(u, v) == 0) continue;
      Scalar& entry = t.complex.d(pos(s, u), col);
      entry = f.add(entry, f.mul(dsign, m.d(u, v)));
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t u = 0; u < n; ++u)
        if (m.z[i](u, v) != 0) t.complex.z[i](pos(s, u), col) = m.z[i](u, v);
      if (s & (1u << i)) continue;
      const int before = popcount(s & ((1u << i) - 1));
      t.y[i](pos(s | (1u << i), v), col) = (before % 2 == 0) ? 1 : f.neg(1);
    }
  }
  return t;
}

KoszulModule koszul(const CIPtr& ring) { return t_functor(free_module(ring)); }

std::optional<std::string> check_k_module(const KoszulModule& t) {
  if (auto v = validate(t.complex)) return v;
  const Field& f = t.complex.ring->field();
  const auto& d = t.complex.d;
  const std::size_t r = t.y.size();
  for (std::size_t i = 0; i < r; ++i) {
    ScalarMatrix lhs = add(f, multiply(f, d, t.y[i]), multiply(f, t.y[i], d));
    if (!(lhs == t.complex.z[i])) return "d y" + std::to_string(i + 1) + " + y" + std::to_string(i + 1) + " d != z" +
                                          std::to_string(i + 1);
    for (std::size_t j = i; j < r; ++j) {
      ScalarMatrix anti = add(f, multiply(f, t.y[i], t.y[j]), multiply(f, t.y[j], t.y[i]));
      if (!anti.is_zero()) return "y" + std::to_string(i + 1) + " and y" + std::to_string(j + 1) + " do not anticommute";
      if (!(multiply(f, t.complex.z[j], t.y[i]) == multiply(f, t.y[i], t.complex.z[j]))) {
        return "z" + std::to_string(j + 1) + " does not commute with y" + std::to_string(i + 1);
      }
    }
    if (!multiply(f, t.y[i], t.y[i]).is_zero()) return "y" + std::to_string(i + 1) + "^2 != 0";
  }
  return std::nullopt;
}

std::vector<ScalarMatrix> w_actions(const KoszulModule& t, const CIPresentation& R) {
  const Field& f = R.field();
  const std::size_t r = R.nvars();
  const std::size_t n = t.complex.dim();
  std::vector<ScalarMatrix> out;
  for (std::size_t j = 0; j < r; ++j) {
    ScalarMatrix w(n, n);
    for (std::size_t h = 0; h < r; ++h)
      for (std::size_t i = h; i < r; ++i) {
        const Polynomial& c = R.constant(h, i, j);
        if (c.is_zero()) continue;
        ScalarMatrix term = multiply(f, polynomial_action(f, c, t.complex.z, n), multiply(f, t.complex.z[h], t.y[i]));
        w = add(f, w, term);
      }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<Vector> lambda_to_K(const KoszulModule& k) {
  const CIPresentation& R = *k.complex.ring;
  const Field& f = R.field();
  auto ws = w_actions(k, R);
  // The unit y_∅ ⊗ 1 of K.
  std::size_t unit = 0;
  while (unit < k.labels.size() && !(k.labels[unit].first == 0 && k.labels[unit].second == 0)) ++unit;
  if (unit == k.labels.size()) throw InputError("lambda_to_K expects the Koszul complex K = t(R)");
  std::vector<Vector> out;
  for (std::size_t j = 0; j < ws.size(); ++j) {
    Vector w = ws[j].column(unit);
    if (!is_zero_vector(apply(f, k.complex.d, w))) {
      throw ConsistencyError("w_" + std::to_string(j + 1) +
                             " is not a cycle: the structure constants are inconsistent with the relations");
    }
    out.push_back(std::move(w));
  }
  return out;
}

QuasiIsoReport check_quasi_iso(const CIPtr& ring, int lo, int hi) {
  const Field& f = ring->field();
  const std::size_t r = ring->nvars();
  KoszulModule k = koszul(ring);
  QuasiIsoReport rep;
  rep.lo = lo;
  rep.hi = hi;
  HomologyTable h = complex_homology(f, k.complex.space, k.complex.d, lo, hi);
  rep.koszul_dims = h.dims;
  for (int n = lo; n <= hi; ++n) {
    std::size_t b = 0;
    if (n <= 0 && -n <= static_cast<int>(r)) {
      b = 1;
      for (int i = 0; i < -n; ++i) b = b * (r - static_cast<std::size_t>(i)) / static_cast<std::size_t>(i + 1);
    }
    rep.exterior_dims.push_back(b);
  }
  auto ws = lambda_to_K(k);
  // Boundaries in degree -1 plus the w_j must gain exactly r dimensions.
  std::vector<Vector> boundaries;
  for (std::size_t c : k.complex.space.positions(-2)) boundaries.push_back(k.complex.d.column(c));
  SpanBuilder span(f, k.complex.dim());
  for (const auto& b : boundaries) span.insert(b);
  const std::size_t before = span.dimension();
  for (const auto& w : ws) span.insert(w);
  const std::size_t h1 = complex_homology(f, k.complex.space, k.complex.d, -1, -1).at(-1);
  rep.w_classes_span = span.dimension() - before == r && h1 == r;
  rep.ok = rep.koszul_dims == rep.exterior_dims && rep.w_classes_span;
  return rep;
}

}  // namespace suppvar
