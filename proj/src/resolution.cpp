#include "suppvar/resolution.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "suppvar/errors.hpp"

namespace suppvar {

namespace {

// z^a * u for u in a free module of the given rank.
void add_monomial_times(const CIPresentation& R, std::size_t a, std::span<const Scalar> u, Scalar c, Vector& out) {
  const Field& f = R.field();
  const std::size_t n = R.dim();
  for (std::size_t block = 0; block * n < u.size(); ++block)
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar v = u[block * n + k];
      if (v == 0) continue;
      if (auto idx = R.product_index(a, k)) {
        Scalar& slot = out[block * n + *idx];
        slot = f.add(slot, f.mul(c, v));
      }
    }
}

std::span<const Scalar> block_of(const Vector& v, std::size_t block, std::size_t n) {
  return std::span<const Scalar>(v).subspan(block * n, n);
}

}  // namespace

ScalarMatrix free_map_matrix(const CIPresentation& R, std::size_t target_rank, const std::vector<Vector>& images) {
  const std::size_t n = R.dim();
  ScalarMatrix out(target_rank * n, images.size() * n);
  for (std::size_t g = 0; g < images.size(); ++g)
    for (std::size_t a = 0; a < n; ++a) {
      Vector col(target_rank * n, 0);
      add_monomial_times(R, a, images[g], 1, col);
      for (std::size_t i = 0; i < col.size(); ++i) out(i, g * n + a) = col[i];
    }
  return out;
}

MinimalResolution resolve_residue_field(const CIPtr& ring, std::size_t length) {
  const CIPresentation& R = *ring;
  const Field& f = R.field();
  const std::size_t n = R.dim();
  MinimalResolution res{ring, {1}, {{}}};
  std::vector<Vector> kernel;
  for (std::size_t a = 1; a < n; ++a) {
    Vector e(n, 0);
    e[a] = 1;
    kernel.push_back(std::move(e));
  }
  for (std::size_t level = 1; level <= length; ++level) {
    const std::size_t ambient = res.ranks[level - 1] * n;
    SpanBuilder span(f, ambient);
    for (const auto& v : kernel)
      for (std::size_t i = 0; i < R.nvars(); ++i) {
        Exponent e(R.nvars(), 0);
        e[i] = 1;
        Vector zv(ambient, 0);
        add_monomial_times(R, *R.index_of(e), v, 1, zv);
        span.insert(zv);
      }
    std::vector<Vector> gens;
    for (const auto& v : kernel)
      if (span.insert(v)) gens.push_back(v);
    res.ranks.push_back(gens.size());
    res.images.push_back(gens);
    if (level < length) kernel = nullspace(f, free_map_matrix(R, res.ranks[level - 1], gens));
  }
  return res;
}

ChainOperators eisenbud_operators(const MinimalResolution& res) {
  const CIPresentation& R = *res.ring;
  const Field& f = R.field();
  const std::size_t r = R.nvars();
  const std::size_t n = R.dim();
  const std::size_t len = res.length();
  ChainOperators mono(r, std::vector<std::vector<Vector>>(len + 1));

  auto entry = [&](std::size_t level, std::size_t g, std::size_t block) {
    return R.lift(block_of(res.images[level][g], block, n));
  };
  for (std::size_t level = 2; level <= len; ++level) {
    const std::size_t target_rank = res.ranks[level - 2];
    for (std::size_t k = 0; k < r; ++k) mono[k][level].assign(res.ranks[level], Vector(target_rank * n, 0));
    for (std::size_t g = 0; g < res.ranks[level]; ++g) {
      for (std::size_t g2 = 0; g2 < target_rank; ++g2) {
        Polynomial product(R.zring());
        for (std::size_t g1 = 0; g1 < res.ranks[level - 1]; ++g1) {
          Polynomial right = entry(level, g, g1);
          if (right.is_zero()) continue;
          product += entry(level - 1, g1, g2) * right;
        }
        for (const auto& [e, c] : product.terms()) {
          std::size_t k = 0;
          while (k < r && e[k] < R.exponents()[k]) ++k;
          if (k == r) throw ConsistencyError("lifted d^2 has a term outside the defining ideal");
          Exponent q = e;
          q[k] = static_cast<std::uint16_t>(q[k] - R.exponents()[k]);
          if (auto idx = R.index_of(q)) {
            Scalar& slot = mono[k][level][g][g2 * n + *idx];
            slot = f.add(slot, c);
          }
        }
      }
    }
  }
  if (R.default_constants()) return mono;

  // Operators for the relations f_j: t_j = Σ_k (Ā^{-1})_{kj} t_k^{monomial}.
  ScalarMatrix inverse(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    Vector e(r, 0);
    e[j] = 1;
    auto col = solve(f, R.relation_matrix(), e);
    for (std::size_t k = 0; k < r; ++k) inverse(k, j) = (*col)[k];
  }
  ChainOperators out(r, std::vector<std::vector<Vector>>(len + 1));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t level = 2; level <= len; ++level) {
      out[j][level].assign(res.ranks[level], Vector(res.ranks[level - 2] * n, 0));
      for (std::size_t g = 0; g < res.ranks[level]; ++g)
        for (std::size_t k = 0; k < r; ++k) {
          if (inverse(k, j) == 0) continue;
          Vector& dst = out[j][level][g];
          const Vector& src = mono[k][level][g];
          for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = f.add(dst[i], f.mul(inverse(k, j), src[i]));
        }
    }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> check_chain_maps(const MinimalResolution& res,
                                                                    const ChainOperators& ops) {
  const CIPresentation& R = *res.ring;
  const Field& f = R.field();
  for (std::size_t k = 0; k < ops.size(); ++k)
    for (std::size_t level = 3; level <= res.length(); ++level) {
      ScalarMatrix lhs = multiply(f, free_map_matrix(R, res.ranks[level - 3], res.images[level - 2]),
                                  free_map_matrix(R, res.ranks[level - 2], ops[k][level]));
      ScalarMatrix rhs = multiply(f, free_map_matrix(R, res.ranks[level - 3], ops[k][level - 1]),
                                  free_map_matrix(R, res.ranks[level - 1], res.images[level]));
      if (!(lhs == rhs)) return std::make_pair(k, level);
    }
  return std::nullopt;
}

namespace {

// Hom_R(F, M) with Hom^N = ⊕_n Hom_R(F_n, M^{N-n}); a basis element (n, g, q) sends the
// generator e_g of F_n to the basis vector q of M and the other generators to zero.
class HomComplex {
 public:
  HomComplex(const MinimalResolution& res, const ComplexOverR& m) : res_(res), m_(m), R_(*res.ring) {
    for (std::size_t a = 0; a < R_.dim(); ++a)
      actions_.push_back(polynomial_action(R_.field(), Polynomial::monomial(R_.zring(), R_.basis()[a]), m.z, m.dim()));
  }

  std::size_t dim(int N) { return index(N).size(); }

  // D φ = d_M φ - (-1)^N φ d_F
  ScalarMatrix differential(int N) {
    const Field& f = R_.field();
    const auto& src = basis(N);
    const auto& dst = index(N + 1);
    ScalarMatrix out(dst.size(), src.size());
    const Scalar sign = (N % 2 == 0) ? f.neg(1) : 1;
    for (std::size_t col = 0; col < src.size(); ++col) {
      const auto [n, g, q] = src[col];
      for (std::size_t row = 0; row < m_.dim(); ++row)
        if (m_.d(row, q) != 0) out(dst.at({n, g, row}), col) = f.add(out(dst.at({n, g, row}), col), m_.d(row, q));
      if (n + 1 > res_.length()) continue;
      for (std::size_t g1 = 0; g1 < res_.ranks[n + 1]; ++g1) {
        Vector v = act(block_of(res_.images[n + 1][g1], g, R_.dim()), q);
        for (std::size_t row = 0; row < v.size(); ++row)
          if (v[row] != 0) {
            auto it = dst.find({n + 1, g1, row});
            if (it == dst.end()) throw ConsistencyError("Hom complex truncated too early");
            out(it->second, col) = f.add(out(it->second, col), f.mul(sign, v[row]));
          }
      }
    }
    return out;
  }

  // φ ↦ φ ∘ t for a degree-2 chain operator t on F.
  ScalarMatrix precompose(int N, const std::vector<std::vector<Vector>>& op) {
    const Field& f = R_.field();
    const auto& src = basis(N);
    const auto& dst = index(N + 2);
    ScalarMatrix out(dst.size(), src.size());
    for (std::size_t col = 0; col < src.size(); ++col) {
      const auto [n, g, q] = src[col];
      if (n + 2 > res_.length()) throw ConsistencyError("resolution too short for the θ-action");
      for (std::size_t g2 = 0; g2 < res_.ranks[n + 2]; ++g2) {
        Vector v = act(block_of(op[n + 2][g2], g, R_.dim()), q);
        for (std::size_t row = 0; row < v.size(); ++row)
          if (v[row] != 0) out(dst.at({n + 2, g2, row}), col) = f.add(out(dst.at({n + 2, g2, row}), col), v[row]);
      }
    }
    return out;
  }

 private:
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;

  const std::vector<Key>& basis(int N) {
    index(N);
    return bases_[N];
  }

  const std::map<Key, std::size_t>& index(int N) {
    auto it = indices_.find(N);
    if (it != indices_.end()) return it->second;
    std::vector<Key> keys;
    for (std::size_t n = 0; n <= res_.length(); ++n) {
      auto positions = m_.space.positions(N - static_cast<int>(n));
      for (std::size_t g = 0; g < res_.ranks[n]; ++g)
        for (std::size_t q : positions) keys.emplace_back(n, g, q);
    }
    std::map<Key, std::size_t> idx;
    for (std::size_t k = 0; k < keys.size(); ++k) idx.emplace(keys[k], k);
    bases_[N] = std::move(keys);
    return indices_.emplace(N, std::move(idx)).first->second;
  }

  // r · (basis vector q of M) for r ∈ R given by coordinates.
  Vector act(std::span<const Scalar> r, std::size_t q) const {
    const Field& f = R_.field();
    Vector out(m_.dim(), 0);
    for (std::size_t a = 0; a < r.size(); ++a) {
      if (r[a] == 0) continue;
      for (std::size_t row = 0; row < m_.dim(); ++row) {
        const Scalar v = actions_[a](row, q);
        if (v != 0) out[row] = f.add(out[row], f.mul(r[a], v));
      }
    }
    return out;
  }

  const MinimalResolution& res_;
  const ComplexOverR& m_;
  const CIPresentation& R_;
  std::vector<ScalarMatrix> actions_;
  std::map<int, std::vector<Key>> bases_;
  std::map<int, std::map<Key, std::size_t>> indices_;
};

struct Cohomology {
  std::vector<Vector> classes;  // cycle representatives of a basis of H
  ScalarMatrix frame;           // [independent boundaries | classes]
  std::size_t boundary_dim = 0;

  Vector coordinates(const Field& f, const Vector& cycle) const {
    if (classes.empty()) return {};
    auto x = solve(f, frame, cycle);
    if (!x) throw ConsistencyError("θ-action left the cycle space");
    return Vector(x->begin() + static_cast<std::ptrdiff_t>(boundary_dim), x->end());
  }
};

Cohomology cohomology(const Field& f, const ScalarMatrix& d_out, const ScalarMatrix& d_in, std::size_t dim) {
  Cohomology h;
  SpanBuilder span(f, dim);
  std::vector<Vector> columns;
  for (std::size_t j = 0; j < d_in.cols(); ++j) {
    Vector b = d_in.column(j);
    if (span.insert(b)) columns.push_back(std::move(b));
  }
  h.boundary_dim = columns.size();
  for (auto& z : nullspace(f, d_out))
    if (span.insert(z)) {
      columns.push_back(z);
      h.classes.push_back(std::move(z));
    }
  h.frame = ScalarMatrix::from_columns(dim, columns);
  return h;
}

void check_bounds(const ExtOptions& options) {
  if (options.n_max < 0) throw InputError("n_max must be nonnegative");
  if (options.n_max > options.bound) {
    throw InputError("n_max = " + std::to_string(options.n_max) + " exceeds the configured bound " +
                     std::to_string(options.bound));
  }
}

std::size_t resolution_length(const ComplexOverR& m, int n_max) {
  return static_cast<std::size_t>(std::max(2, n_max + 1 - m.space.lo()));
}

}  // namespace

ExtTable ext_oracle(const ComplexOverR& m, const ExtOptions& options) {
  check_bounds(options);
  require_valid(m);
  const Field& f = m.ring->field();
  ExtTable t;
  t.lo = std::min(0, m.space.lo());
  t.hi = options.n_max;
  MinimalResolution res = resolve_residue_field(m.ring, resolution_length(m, options.n_max));
  HomComplex hom(res, m);
  std::map<int, std::size_t> ranks;
  auto rank_at = [&](int N) {
    auto it = ranks.find(N);
    if (it != ranks.end()) return it->second;
    return ranks[N] = rank(f, hom.differential(N));
  };
  for (int N = t.lo; N <= t.hi; ++N) t.dims.push_back(hom.dim(N) - rank_at(N) - rank_at(N - 1));
  return t;
}

AdjunctionReport adjunction_check(const ComplexOverR& m, const ExtOptions& options) {
  AdjunctionReport rep;
  ExtTable ext = ext_oracle(m, options);
  rep.lo = ext.lo;
  rep.hi = ext.hi;
  rep.ext = ext.dims;
  const int r = static_cast<int>(m.ring->nvars());
  HomologyTable h = homology_dims(pipeline_module(m), ext.lo - r, ext.hi - r);
  rep.homology = h.dims;
  rep.ok = rep.ext == rep.homology;
  return rep;
}

std::vector<Polynomial> AnnihilatorReport::all() const {
  std::vector<Polynomial> out;
  for (const auto& level : by_degree) out.insert(out.end(), level.begin(), level.end());
  return out;
}

namespace {

std::vector<std::vector<Polynomial>> annihilator_spaces(const ComplexOverR& m, int d_max, int n_max,
                                                        const RingPtr& theta) {
  const CIPresentation& R = *m.ring;
  const Field& f = R.field();
  const std::size_t r = R.nvars();
  const int lo = std::min(0, m.space.lo());
  MinimalResolution res = resolve_residue_field(m.ring, resolution_length(m, n_max));
  ChainOperators ops = eisenbud_operators(res);
  if (auto bad = check_chain_maps(res, ops)) {
    throw ConsistencyError("Eisenbud operator t_" + std::to_string(bad->first + 1) + " is not a chain map at level " +
                           std::to_string(bad->second));
  }
  HomComplex hom(res, m);
  std::map<int, Cohomology> ext;
  for (int N = lo; N <= n_max; ++N) ext[N] = cohomology(f, hom.differential(N), hom.differential(N - 1), hom.dim(N));
  std::map<std::pair<std::size_t, int>, ScalarMatrix> action;
  auto theta_at = [&](std::size_t k, int N) -> const ScalarMatrix& {
    auto key = std::make_pair(k, N);
    auto it = action.find(key);
    if (it == action.end()) it = action.emplace(key, hom.precompose(N, ops[k])).first;
    return it->second;
  };

  std::vector<std::vector<Polynomial>> out;
  for (int d = 0; d <= d_max; ++d) {
    std::vector<Exponent> monomials = d == 0 ? std::vector<Exponent>{Exponent(r, 0)} : monomial_basis(2 * d, *theta);
    std::vector<Vector> rows;  // transposed condition matrix, one vector per monomial
    std::vector<std::vector<Scalar>> columns(monomials.size());
    for (int N = lo; N + 2 * d <= n_max; ++N)
      for (const auto& c : ext[N].classes)
        for (std::size_t a = 0; a < monomials.size(); ++a) {
          Vector v = c;
          int cur = N;
          for (std::size_t k = 0; k < r; ++k)
            for (unsigned rep = 0; rep < monomials[a][k]; ++rep) {
              v = apply(f, theta_at(k, cur), v);
              cur += 2;
            }
          Vector coords = ext[cur].coordinates(f, v);
          columns[a].insert(columns[a].end(), coords.begin(), coords.end());
        }
    const std::size_t conditions = columns.empty() ? 0 : columns[0].size();
    ScalarMatrix system = ScalarMatrix::from_columns(conditions, columns);
    std::vector<Polynomial> level;
    for (const auto& x : nullspace(f, system)) {
      Polynomial p(theta);
      for (std::size_t a = 0; a < monomials.size(); ++a)
        if (x[a] != 0) p.add_term(monomials[a], x[a]);
      level.push_back(std::move(p));
    }
    out.push_back(std::move(level));
  }
  return out;
}

bool same_span(const Field& f, const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  if (a.size() != b.size()) return false;
  std::map<Exponent, std::size_t> index;
  for (const auto* list : {&a, &b})
    for (const auto& p : *list)
      for (const auto& [e, c] : p.terms()) index.emplace(e, index.size());
  auto vec = [&](const Polynomial& p) {
    Vector v(index.size(), 0);
    for (const auto& [e, c] : p.terms()) v[index.at(e)] = c;
    return v;
  };
  SpanBuilder span(f, index.size());
  for (const auto& p : a) span.insert(vec(p));
  for (const auto& p : b)
    if (!span.contains(vec(p))) return false;
  return true;
}

}  // namespace

AnnihilatorReport ann_theta(const ComplexOverR& m, int d_max, const ExtOptions& options) {
  check_bounds(options);
  require_valid(m);
  if (d_max < 0) throw InputError("d_max must be nonnegative");
  AnnihilatorReport rep;
  rep.n_max = options.n_max;
  rep.d_max = d_max;
  rep.theta = theta_ring(*m.ring, "th");
  rep.by_degree = annihilator_spaces(m, d_max, options.n_max, rep.theta);
  if (options.n_max >= 2) {
    auto previous = annihilator_spaces(m, d_max, options.n_max - 2, rep.theta);
    rep.stable = true;
    for (int d = 0; d <= d_max; ++d)
      rep.stable = rep.stable && same_span(m.ring->field(), rep.by_degree[static_cast<std::size_t>(d)],
                                           previous[static_cast<std::size_t>(d)]);
  }
  return rep;
}

bool vanishes_at(const std::vector<Polynomial>& polys, const Field& field, std::span<const Scalar> point) {
  return std::all_of(polys.begin(), polys.end(), [&](const Polynomial& p) { return p.evaluate(field, point) == 0; });
}

}  // namespace suppvar
