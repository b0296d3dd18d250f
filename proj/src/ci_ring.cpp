#include "suppvar/ci.hpp"

#include <algorithm>
#include <sstream>

#include "suppvar/errors.hpp"

namespace suppvar {

namespace {

ScalarMatrix submatrix(const ScalarMatrix& m, const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols) {
  ScalarMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

ScalarMatrix block_diagonal(const std::vector<ScalarMatrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ScalarMatrix out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

ScalarMatrix commutator(const Field& f, const ScalarMatrix& a, const ScalarMatrix& b) {
  return add(f, multiply(f, a, b), scale(f, multiply(f, b, a), f.neg(1)));
}

ScalarMatrix matrix_power(const Field& f, const ScalarMatrix& a, unsigned n) {
  ScalarMatrix out = ScalarMatrix::identity(a.rows());
  for (unsigned k = 0; k < n; ++k) out = multiply(f, out, a);
  return out;
}

}  // namespace

CIPresentation::CIPresentation(std::uint32_t p, std::vector<unsigned> exponents)
    : field_(p), exponents_(std::move(exponents)) {}

std::optional<std::size_t> CIPresentation::index_of(const Exponent& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Polynomial& CIPresentation::constant(std::size_t h, std::size_t i, std::size_t j) const {
  if (h > i) std::swap(h, i);
  return constants_.at(h).at(i).at(j);
}

Vector CIPresentation::element(const Polynomial& f) const {
  Vector out(dim(), 0);
  for (const auto& [e, c] : f.terms()) {
    auto k = index_of(e);
    if (k) out[*k] = field_.add(out[*k], c);
  }
  return out;
}

Polynomial CIPresentation::lift(std::span<const Scalar> element) const {
  Polynomial out(zring_);
  for (std::size_t k = 0; k < element.size(); ++k)
    if (element[k] != 0) out.add_term(basis_[k], element[k]);
  return out;
}

std::optional<std::size_t> CIPresentation::product_index(std::size_t a, std::size_t b) const {
  Exponent e = basis_[a];
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] += basis_[b][i];
    if (e[i] >= exponents_[i]) return std::nullopt;
  }
  return index_of(e);
}

ScalarMatrix CIPresentation::multiplication(std::span<const Scalar> b) const {
  ScalarMatrix out(dim(), dim());
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t k = 0; k < dim(); ++k) {
      if (b[k] == 0) continue;
      if (auto idx = product_index(a, k)) out(*idx, a) = field_.add(out(*idx, a), b[k]);
    }
  return out;
}

std::string CIPresentation::describe() const {
  std::ostringstream out;
  out << "k[";
  for (std::size_t i = 0; i < nvars(); ++i) out << (i ? "," : "") << "z" << i + 1;
  out << "]/(";
  for (std::size_t j = 0; j < nvars(); ++j) out << (j ? ", " : "") << relations_[j].to_string();
  out << ") over " << field_.name();
  return out.str();
}

CIPresentation build_ci(const CISpec& spec) {
  const std::size_t r = spec.exponents.size();
  if (r == 0) throw InputError("complete intersection needs at least one variable");
  for (unsigned e : spec.exponents)
    if (e < 2) throw InputError("exponent " + std::to_string(e) + " < 2: the relation would not lie in (z)^2");
  if (!is_prime(spec.p)) throw InputError(std::to_string(spec.p) + " is not prime");
  CIPresentation R(spec.p, spec.exponents);
  const Field& f = R.field_;
  R.zring_ = make_ring(spec.p, std::vector<int>(r, 1), "z");

  Exponent a(r, 0);
  while (true) {
    R.index_.emplace(a, R.basis_.size());
    R.basis_.push_back(a);
    std::size_t i = r;
    while (i > 0 && ++a[i - 1] == spec.exponents[i - 1]) a[--i] = 0;
    if (i == 0) break;
  }
  for (std::size_t i = 0; i < r; ++i) {
    ScalarMatrix z(R.dim(), R.dim());
    for (std::size_t k = 0; k < R.dim(); ++k) {
      Exponent e = R.basis_[k];
      if (++e[i] < spec.exponents[i]) z(*R.index_of(e), k) = 1;
    }
    R.z_action_.push_back(std::move(z));
  }

  auto reduce = [&](const Polynomial& p) { return R.lift(R.element(p)); };
  R.constants_.assign(r, std::vector<std::vector<Polynomial>>(r, std::vector<Polynomial>(r, Polynomial(R.zring_))));
  R.default_constants_ = spec.constants.empty();
  if (R.default_constants_) {
    for (std::size_t j = 0; j < r; ++j) {
      Exponent e(r, 0);
      e[j] = static_cast<std::uint16_t>(spec.exponents[j] - 2);
      R.constants_[j][j][j] = reduce(Polynomial::monomial(R.zring_, e));
    }
  } else {
    for (const auto& [key, text] : spec.constants) {
      auto [h, i, j] = key;
      if (h > i || i >= r || j >= r) throw InputError("structure constant index out of range (need h <= i < r)");
      R.constants_[h][i][j] = reduce(parse_polynomial(text, R.zring_));
    }
    if (spec.constants.size() != r * r * (r + 1) / 2) {
      throw InputError("structure constant table must list c_{hi,j} for every h <= i and every j");
    }
  }

  R.abar_ = ScalarMatrix(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    Polynomial fj(R.zring_);
    for (std::size_t h = 0; h < r; ++h)
      for (std::size_t i = h; i < r; ++i)
        fj += R.constants_[h][i][j] * Polynomial::variable(R.zring_, h) * Polynomial::variable(R.zring_, i);
    for (const auto& [e, c] : fj.terms()) {
      bool inside = false;
      for (std::size_t k = 0; k < r && !inside; ++k) inside = e[k] >= spec.exponents[k];
      if (!inside) {
        throw InputError("relation f_" + std::to_string(j + 1) + " = " + fj.to_string() +
                         " does not lie in the monomial ideal (z_i^e_i)");
      }
    }
    for (std::size_t k = 0; k < r; ++k) {
      Exponent e(r, 0);
      e[k] = static_cast<std::uint16_t>(spec.exponents[k]);
      R.abar_(j, k) = fj.coefficient(e);
    }
    R.relations_.push_back(std::move(fj));
  }
  if (rank(f, R.abar_) != r) {
    throw InputError("relations f_j do not generate the ideal (z_i^e_i): their leading matrix is singular");
  }

  // The multiplication table comes from exponent addition; check it anyway.
  const std::size_t n = R.dim();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto xy = R.product_index(x, y);
      if (xy != R.product_index(y, x)) throw InputError("multiplication table is not commutative");
      for (std::size_t z = 0; z < n; ++z) {
        auto yz = R.product_index(y, z);
        auto left = xy ? R.product_index(*xy, z) : std::nullopt;
        auto right = yz ? R.product_index(x, *yz) : std::nullopt;
        if (left != right) throw InputError("multiplication table is not associative");
      }
    }
  return R;
}

CIPtr make_ci(const CISpec& spec) { return std::make_shared<const CIPresentation>(build_ci(spec)); }

std::size_t GradedOperators::dim_at(int n) const {
  return static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), n));
}

std::vector<std::size_t> GradedOperators::positions(int n) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < degrees.size(); ++k)
    if (degrees[k] == n) out.push_back(k);
  return out;
}

ComplexOverR complex_from_blocks(const CIPtr& ring, int lo, const std::vector<std::size_t>& dims,
                                 const std::vector<ScalarMatrix>& differentials,
                                 const std::vector<std::vector<ScalarMatrix>>& actions) {
  const std::size_t len = dims.size();
  if (differentials.size() + 1 != len && !(len == 0 && differentials.empty())) {
    throw InputError("complex needs one differential between each pair of consecutive degrees");
  }
  if (actions.size() != len) throw InputError("complex needs z-actions for every degree");
  ComplexOverR m{ring, {}, {}, {}};
  std::vector<std::size_t> offset(len + 1, 0);
  for (std::size_t k = 0; k < len; ++k) {
    offset[k + 1] = offset[k] + dims[k];
    for (std::size_t c = 0; c < dims[k]; ++c) m.space.degrees.push_back(lo + static_cast<int>(k));
  }
  const std::size_t n = offset[len];
  m.d = ScalarMatrix(n, n);
  for (std::size_t k = 0; k + 1 < len; ++k) {
    const ScalarMatrix& b = differentials[k];
    if (b.rows() != dims[k + 1] || b.cols() != dims[k]) {
      throw InputError("differential from degree " + std::to_string(lo + static_cast<int>(k)) + " has shape " +
                       std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ", expected " +
                       std::to_string(dims[k + 1]) + "x" + std::to_string(dims[k]));
    }
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m.d(offset[k + 1] + i, offset[k] + j) = b(i, j);
  }
  for (std::size_t i = 0; i < ring->nvars(); ++i) {
    std::vector<ScalarMatrix> blocks;
    for (std::size_t k = 0; k < len; ++k) {
      if (actions[k].size() != ring->nvars()) throw InputError("each degree needs one action matrix per z_i");
      const ScalarMatrix& b = actions[k][i];
      if (b.rows() != dims[k] || b.cols() != dims[k]) throw InputError("z-action matrix has the wrong shape");
      blocks.push_back(b);
    }
    m.z.push_back(block_diagonal(blocks));
  }
  return m;
}

std::optional<std::string> validate(const ComplexOverR& m) {
  const CIPresentation& R = *m.ring;
  const Field& f = R.field();
  const std::size_t n = m.dim();
  if (!std::is_sorted(m.space.degrees.begin(), m.space.degrees.end())) return "basis is not sorted by degree";
  if (m.d.rows() != n || m.d.cols() != n) return "differential has the wrong shape";
  if (m.z.size() != R.nvars()) return "need one action matrix per z_i";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (m.d(i, j) != 0 && m.space.degrees[i] != m.space.degrees[j] + 1) {
        return "differential entry (" + std::to_string(i) + ", " + std::to_string(j) + ") does not raise degree by 1";
      }
      for (std::size_t v = 0; v < m.z.size(); ++v)
        if (m.z[v](i, j) != 0 && m.space.degrees[i] != m.space.degrees[j]) {
          return "z" + std::to_string(v + 1) + " does not preserve degree";
        }
    }
  if (!multiply(f, m.d, m.d).is_zero()) return "d^2 != 0";
  for (std::size_t a = 0; a < m.z.size(); ++a) {
    if (m.z[a].rows() != n || m.z[a].cols() != n) return "z-action has the wrong shape";
    if (!matrix_power(f, m.z[a], R.exponents()[a]).is_zero()) {
      return "z" + std::to_string(a + 1) + "^" + std::to_string(R.exponents()[a]) + " does not act by zero";
    }
    if (!commutator(f, m.z[a], m.d).is_zero()) return "z" + std::to_string(a + 1) + " does not commute with d";
    for (std::size_t b = a + 1; b < m.z.size(); ++b)
      if (!commutator(f, m.z[a], m.z[b]).is_zero()) {
        return "z" + std::to_string(a + 1) + " and z" + std::to_string(b + 1) + " do not commute";
      }
  }
  return std::nullopt;
}

void require_valid(const ComplexOverR& m) {
  if (auto v = validate(m)) throw InputError("invalid complex over R: " + *v);
}

HomologyTable complex_homology(const Field& field, const GradedOperators& space, const ScalarMatrix& d, int lo,
                               int hi) {
  HomologyTable t;
  t.lo = lo;
  t.hi = hi;
  auto block_rank = [&](int n) {
    return rank(field, submatrix(d, space.positions(n + 1), space.positions(n)));
  };
  for (int n = lo; n <= hi; ++n) t.dims.push_back(space.dim_at(n) - block_rank(n) - block_rank(n - 1));
  return t;
}

namespace {

ComplexOverR concentrated(const CIPtr& ring, std::vector<ScalarMatrix> z) {
  const std::size_t n = z.empty() ? 0 : z[0].rows();
  ComplexOverR m{ring, {std::vector<int>(n, 0)}, ScalarMatrix(n, n), std::move(z)};
  return m;
}

// Restriction of operators on an ambient space to an invariant subspace with the given basis.
std::vector<ScalarMatrix> restrict_actions(const Field& f, const std::vector<ScalarMatrix>& ops,
                                           const std::vector<Vector>& basis, std::size_t ambient) {
  ScalarMatrix b = ScalarMatrix::from_columns(ambient, basis);
  std::vector<ScalarMatrix> out;
  for (const auto& op : ops) {
    ScalarMatrix res(basis.size(), basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      auto x = solve(f, b, apply(f, op, basis[k]));
      if (!x) throw ConsistencyError("subspace is not invariant");
      for (std::size_t i = 0; i < basis.size(); ++i) res(i, k) = (*x)[i];
    }
    out.push_back(std::move(res));
  }
  return out;
}

std::vector<ScalarMatrix> free_actions(const CIPresentation& R, std::size_t n) {
  std::vector<ScalarMatrix> out;
  for (std::size_t i = 0; i < R.nvars(); ++i) out.push_back(block_diagonal(std::vector<ScalarMatrix>(n, R.z_action(i))));
  return out;
}

std::vector<Vector> invariant_span(const Field& f, const std::vector<ScalarMatrix>& ops,
                                   const std::vector<Vector>& generators, std::size_t ambient) {
  SpanBuilder span(f, ambient);
  std::vector<Vector> basis;
  for (const auto& g : generators) {
    if (g.size() != ambient) throw InputError("generator has the wrong length");
    if (span.insert(g)) basis.push_back(g);
  }
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (const auto& op : ops) {
      Vector v = apply(f, op, basis[k]);
      if (span.insert(v)) basis.push_back(std::move(v));
    }
  return basis;
}

}  // namespace

ComplexOverR trivial_module(const CIPtr& ring) {
  return concentrated(ring, std::vector<ScalarMatrix>(ring->nvars(), ScalarMatrix(1, 1)));
}

ComplexOverR free_module(const CIPtr& ring) { return concentrated(ring, free_actions(*ring, 1)); }

ComplexOverR inflated_line(const CIPtr& ring, std::size_t i) {
  if (i >= ring->nvars()) throw InputError("inflated line: variable index out of range");
  const std::size_t n = ring->exponents()[i];
  std::vector<ScalarMatrix> z(ring->nvars(), ScalarMatrix(n, n));
  for (std::size_t k = 0; k + 1 < n; ++k) z[i](k + 1, k) = 1;
  return concentrated(ring, std::move(z));
}

ComplexOverR syzygy_of_k(const CIPtr& ring) {
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < ring->nvars(); ++i) gens.push_back(ring->element(Polynomial::variable(ring->zring(), i)));
  return submodule_of_free(ring, 1, gens);
}

ComplexOverR submodule_of_free(const CIPtr& ring, std::size_t n, const std::vector<Vector>& generators) {
  const Field& f = ring->field();
  auto ops = free_actions(*ring, n);
  auto basis = invariant_span(f, ops, generators, n * ring->dim());
  return concentrated(ring, restrict_actions(f, ops, basis, n * ring->dim()));
}

ComplexOverR quotient_of_free(const CIPtr& ring, std::size_t n, const std::vector<Vector>& generators) {
  const Field& f = ring->field();
  const std::size_t ambient = n * ring->dim();
  auto ops = free_actions(*ring, n);
  auto sub = invariant_span(f, ops, generators, ambient);
  SpanBuilder span(f, ambient);
  for (const auto& v : sub) span.insert(v);
  std::vector<Vector> complement;
  for (std::size_t k = 0; k < ambient; ++k) {
    Vector e(ambient, 0);
    e[k] = 1;
    if (span.insert(e)) complement.push_back(std::move(e));
  }
  std::vector<Vector> all = sub;
  all.insert(all.end(), complement.begin(), complement.end());
  ScalarMatrix basis = ScalarMatrix::from_columns(ambient, all);
  std::vector<ScalarMatrix> z;
  for (const auto& op : ops) {
    ScalarMatrix res(complement.size(), complement.size());
    for (std::size_t k = 0; k < complement.size(); ++k) {
      auto x = solve(f, basis, apply(f, op, complement[k]));
      for (std::size_t i = 0; i < complement.size(); ++i) res(i, k) = (*x)[sub.size() + i];
    }
    z.push_back(std::move(res));
  }
  if (complement.empty()) z.assign(ring->nvars(), ScalarMatrix(0, 0));
  return concentrated(ring, std::move(z));
}

ComplexOverR multiplication_complex(const CIPtr& ring, std::span<const Scalar> a) {
  const std::size_t n = ring->dim();
  std::vector<std::vector<ScalarMatrix>> actions(2);
  for (std::size_t i = 0; i < ring->nvars(); ++i) {
    actions[0].push_back(ring->z_action(i));
    actions[1].push_back(ring->z_action(i));
  }
  return complex_from_blocks(ring, -1, {n, n}, {ring->multiplication(a)}, actions);
}

}  // namespace suppvar
