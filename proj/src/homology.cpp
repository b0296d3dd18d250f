#include "suppvar/homology.hpp"

#include <numeric>

#include "suppvar/errors.hpp"

namespace suppvar {

std::size_t HomologyTable::total() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }

GradedPiece::GradedPiece(const FreeDGModule& m, int n) : degree_(n), index_(m.rank()) {
  const GradedRing& ring = *m.ring();
  if (!ring.positively_graded() && ring.nvars() > 0) {
    throw UnsupportedError("graded pieces need all ring generators in positive degree");
  }
  for (std::size_t i = 0; i < m.rank(); ++i) {
    const int d = n - m.generators()[i].degree;
    if (d < 0) continue;
    std::vector<Exponent> monomials;
    if (ring.nvars() == 0) {
      if (d == 0) monomials.emplace_back();
    } else {
      monomials = monomial_basis(d, ring);
    }
    for (auto& e : monomials) {
      index_[i].emplace(e, basis_.size());
      basis_.emplace_back(i, std::move(e));
    }
  }
}

std::optional<std::size_t> GradedPiece::index_of(std::size_t gen, const Exponent& e) const {
  if (gen >= index_.size()) return std::nullopt;
  auto it = index_[gen].find(e);
  if (it == index_[gen].end()) return std::nullopt;
  return it->second;
}

Vector GradedPiece::coordinates(const PolyVector& v) const {
  Vector out(basis_.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (const auto& [e, c] : v[i].terms()) {
      auto k = index_of(i, e);
      if (!k) throw InputError("vector has a component outside degree " + std::to_string(degree_));
      out[*k] = c;
    }
  return out;
}

PolyVector GradedPiece::vector(const RingPtr& ring, std::size_t rank, std::span<const Scalar> coords) const {
  PolyVector out = zero_vector(ring, rank);
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if (coords[k] != 0) out[basis_[k].first].add_term(basis_[k].second, coords[k]);
  return out;
}

ScalarMatrix differential_block(const FreeDGModule& m, const GradedPiece& from, const GradedPiece& to) {
  const Field& f = m.ring()->field();
  ScalarMatrix block(to.size(), from.size());
  for (std::size_t k = 0; k < from.size(); ++k) {
    const auto& [j, mono] = from[k];
    for (const auto& [i, poly] : m.differential().column(j))
      for (const auto& [e, c] : poly.terms()) {
        Exponent sum = mono;
        for (std::size_t v = 0; v < sum.size(); ++v) sum[v] += e[v];
        auto row = to.index_of(i, sum);
        if (!row) throw ConsistencyError("differential leaves the expected graded piece");
        block(*row, k) = f.add(block(*row, k), c);
      }
  }
  return block;
}

HomologyTable homology_dims(const FreeDGModule& m, int lo, int hi) {
  HomologyTable table;
  table.lo = lo;
  table.hi = hi;
  if (hi < lo) return table;
  const Field& f = m.ring()->field();
  std::vector<GradedPiece> pieces;
  for (int n = lo - 1; n <= hi + 1; ++n) pieces.emplace_back(m, n);
  // ranks[k] = rank of d: piece k → piece k+1
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k + 1 < pieces.size(); ++k) {
    ranks.push_back(rank(f, differential_block(m, pieces[k], pieces[k + 1])));
  }
  for (int n = lo; n <= hi; ++n) {
    const std::size_t k = static_cast<std::size_t>(n - lo + 1);
    table.dims.push_back(pieces[k].size() - ranks[k] - ranks[k - 1]);
  }
  return table;
}

std::optional<PolyVector> boundary_preimage(const FreeDGModule& m, const PolyVector& c, int n) {
  if (c.size() != m.rank()) throw InputError("cycle length does not match the module rank");
  if (!is_zero(suppvar::apply(m.differential(), c))) throw InputError("boundary test needs a cycle, but d(c) != 0");
  const Field& f = m.ring()->field();
  GradedPiece below(m, n - 1);
  GradedPiece here(m, n);
  Vector target = here.coordinates(c);
  auto x = solve(f, differential_block(m, below, here), target);
  if (!x) return std::nullopt;
  return below.vector(m.ring(), m.rank(), *x);
}

bool is_homologous_zero(const FreeDGModule& m, const PolyVector& c, int n) {
  return boundary_preimage(m, c, n).has_value();
}

}  // namespace suppvar
