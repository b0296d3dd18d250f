#include "suppvar/dg_module.hpp"

#include <algorithm>
#include <sstream>

#include "suppvar/errors.hpp"

namespace suppvar {

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {}

Polynomial PolyMatrix::at(std::size_t i, std::size_t j) const {
  const auto& col = cols_.at(j);
  auto it = col.find(i);
  return it == col.end() ? Polynomial(ring_) : it->second;
}

void PolyMatrix::set(std::size_t i, std::size_t j, Polynomial value) {
  if (i >= rows_ || j >= cols_.size()) throw InputError("matrix index out of range");
  if (value.is_zero()) {
    cols_[j].erase(i);
  } else {
    cols_[j].insert_or_assign(i, std::move(value));
  }
}

void PolyMatrix::add_to(std::size_t i, std::size_t j, const Polynomial& value) {
  if (value.is_zero()) return;
  if (i >= rows_ || j >= cols_.size()) throw InputError("matrix index out of range");
  auto& col = cols_[j];
  auto it = col.find(i);
  if (it == col.end()) {
    col.emplace(i, value);
    return;
  }
  it->second += value;
  if (it->second.is_zero()) col.erase(it);
}

bool PolyMatrix::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](const Column& c) { return c.empty(); });
}

bool PolyMatrix::operator==(const PolyMatrix& other) const { return rows_ == other.rows_ && cols_ == other.cols_; }

void PolyMatrix::place(const PolyMatrix& block, std::size_t row, std::size_t col, Scalar factor) {
  for (std::size_t j = 0; j < block.cols(); ++j)
    for (const auto& [i, f] : block.column(j)) add_to(row + i, col + j, factor == 1 ? f : f.scaled(factor));
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("polynomial matrix product: dimension mismatch");
  PolyMatrix c(a.ring(), a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (const auto& [k, bkj] : b.column(j))
      for (const auto& [i, aik] : a.column(k)) c.add_to(i, j, aik * bkj);
  return c;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("polynomial matrix sum: dimension mismatch");
  PolyMatrix c = a;
  c.place(b, 0, 0);
  return c;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) { return a + scaled(b, a.ring()->field().neg(1)); }

PolyMatrix scaled(const PolyMatrix& a, Scalar c) {
  PolyMatrix out(a.ring(), a.rows(), a.cols());
  out.place(a, 0, 0, c);
  return out;
}

PolyMatrix identity_matrix(const RingPtr& ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Polynomial::constant(ring, 1));
  return m;
}

PolyVector apply(const PolyMatrix& m, const PolyVector& v) {
  if (v.size() != m.cols()) throw InputError("polynomial matrix-vector product: dimension mismatch");
  PolyVector out = zero_vector(m.ring(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (v[j].is_zero()) continue;
    for (const auto& [i, f] : m.column(j)) out[i] += f * v[j];
  }
  return out;
}

PolyVector zero_vector(const RingPtr& ring, std::size_t n) { return PolyVector(n, Polynomial(ring)); }

bool is_zero(const PolyVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Polynomial& f) { return f.is_zero(); });
}

std::string to_string(const PolyVector& v) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i].to_string();
  out << "]";
  return out.str();
}

FreeDGModule::FreeDGModule(RingPtr ring, std::vector<Generator> generators, PolyMatrix differential)
    : ring_(std::move(ring)), generators_(std::move(generators)), d_(std::move(differential)) {
  if (d_.rows() != generators_.size() || d_.cols() != generators_.size()) {
    throw InputError("differential must be a square matrix of size equal to the number of generators");
  }
}

FreeDGModule FreeDGModule::free(const RingPtr& ring, int degree, std::string name) {
  return FreeDGModule(ring, {Generator{std::move(name), degree}}, PolyMatrix(ring, 1, 1));
}

FreeDGModule FreeDGModule::zero(const RingPtr& ring) { return FreeDGModule(ring, {}, PolyMatrix(ring, 0, 0)); }

int FreeDGModule::min_degree() const {
  int m = 0;
  for (std::size_t i = 0; i < generators_.size(); ++i) m = i ? std::min(m, generators_[i].degree) : generators_[i].degree;
  return m;
}

int FreeDGModule::max_degree() const {
  int m = 0;
  for (std::size_t i = 0; i < generators_.size(); ++i) m = i ? std::max(m, generators_[i].degree) : generators_[i].degree;
  return m;
}

DGMorphism::DGMorphism(FreeDGModule source, FreeDGModule target, PolyMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank()) {
    throw InputError("morphism matrix must be (rank target) x (rank source)");
  }
}

namespace {

std::string describe_entry(const FreeDGModule& m, std::size_t i, std::size_t j) {
  std::ostringstream out;
  out << "entry (" << i << ", " << j << ") [" << m.generators()[i].name << " <- " << m.generators()[j].name << "]";
  return out.str();
}

std::optional<Violation> check_homogeneous(const PolyMatrix& mat, const std::vector<Generator>& rows,
                                           const std::vector<Generator>& cols, int offset, const char* what) {
  for (std::size_t j = 0; j < mat.cols(); ++j)
    for (const auto& [i, f] : mat.column(j)) {
      const int expected = cols[j].degree + offset - rows[i].degree;
      if (!f.is_homogeneous() || *f.degree() != expected) {
        std::ostringstream msg;
        msg << what << " entry (" << i << ", " << j << ") = " << f.to_string() << " must be homogeneous of degree "
            << expected << " (deg " << cols[j].name << " = " << cols[j].degree << ", deg " << rows[i].name << " = "
            << rows[i].degree << ")";
        return Violation{Violation::Kind::Homogeneity, i, j, expected, msg.str()};
      }
    }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> validate(const FreeDGModule& m) {
  if (!m.ring()->supports_dg_modules()) {
    return Violation{Violation::Kind::Ring, 0, 0, 0,
                     "ring generators must all have even degree unless p = 2"};
  }
  if (auto v = check_homogeneous(m.differential(), m.generators(), m.generators(), 1, "differential")) return v;
  PolyMatrix sq = m.differential() * m.differential();
  for (std::size_t j = 0; j < sq.cols(); ++j)
    if (!sq.column(j).empty()) {
      const auto& [i, f] = *sq.column(j).begin();
      return Violation{Violation::Kind::SquareZero, i, j, 0,
                       "d^2 != 0: " + describe_entry(m, i, j) + " of d^2 is " + f.to_string()};
    }
  return std::nullopt;
}

std::optional<Violation> validate(const DGMorphism& f) {
  if (!(*f.source().ring() == *f.target().ring())) return Violation{Violation::Kind::Ring, 0, 0, 0, "ring mismatch"};
  if (auto v = validate(f.source())) return v;
  if (auto v = validate(f.target())) return v;
  if (auto v = check_homogeneous(f.matrix(), f.target().generators(), f.source().generators(), 0, "morphism"))
    return v;
  PolyMatrix diff = f.target().differential() * f.matrix() - f.matrix() * f.source().differential();
  for (std::size_t j = 0; j < diff.cols(); ++j)
    if (!diff.column(j).empty()) {
      const auto& [i, g] = *diff.column(j).begin();
      std::ostringstream msg;
      msg << "not a chain map: (d f - f d) entry (" << i << ", " << j << ") is " << g.to_string();
      return Violation{Violation::Kind::NotChainMap, i, j, 0, msg.str()};
    }
  return std::nullopt;
}

void require_valid(const FreeDGModule& m) {
  if (auto v = validate(m)) throw InputError("invalid DG module: " + v->message);
}

void require_valid(const DGMorphism& f) {
  if (auto v = validate(f)) throw InputError("invalid morphism: " + v->message);
}

FreeDGModule shift(const FreeDGModule& m, int s) {
  std::vector<Generator> gens = m.generators();
  for (auto& g : gens) g.degree -= s;
  PolyMatrix d = (s % 2 == 0) ? m.differential() : scaled(m.differential(), m.ring()->field().neg(1));
  return FreeDGModule(m.ring(), std::move(gens), std::move(d));
}

namespace {

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!(*a == *b)) throw InputError("operands live over different rings");
}

}  // namespace

FreeDGModule direct_sum(const FreeDGModule& a, const FreeDGModule& b) {
  require_same_ring(a.ring(), b.ring());
  std::vector<Generator> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  PolyMatrix d(a.ring(), gens.size(), gens.size());
  d.place(a.differential(), 0, 0);
  d.place(b.differential(), a.rank(), a.rank());
  return FreeDGModule(a.ring(), std::move(gens), std::move(d));
}

FreeDGModule tensor(const FreeDGModule& a, const FreeDGModule& b) {
  require_same_ring(a.ring(), b.ring());
  const Field& f = a.ring()->field();
  const std::size_t nb = b.rank();
  std::vector<Generator> gens;
  gens.reserve(a.rank() * nb);
  for (const auto& ga : a.generators())
    for (const auto& gb : b.generators()) gens.push_back({ga.name + "." + gb.name, ga.degree + gb.degree});
  PolyMatrix d(a.ring(), gens.size(), gens.size());
  for (std::size_t ia = 0; ia < a.rank(); ++ia) {
    for (std::size_t ib = 0; ib < nb; ++ib) {
      const std::size_t col = ia * nb + ib;
      for (const auto& [ra, poly] : a.differential().column(ia)) d.add_to(ra * nb + ib, col, poly);
      const Scalar sign = (a.generators()[ia].degree % 2 == 0) ? 1 : f.neg(1);
      for (const auto& [rb, poly] : b.differential().column(ib)) d.add_to(ia * nb + rb, col, poly.scaled(sign));
    }
  }
  return FreeDGModule(a.ring(), std::move(gens), std::move(d));
}

FreeDGModule dual(const FreeDGModule& m) {
  const Field& f = m.ring()->field();
  std::vector<Generator> gens;
  for (const auto& g : m.generators()) gens.push_back({g.name + "*", -g.degree});
  PolyMatrix d(m.ring(), m.rank(), m.rank());
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (const auto& [j, poly] : m.differential().column(i)) {
      // d_{ji} of M becomes entry (i, j) of the dual.
      const Scalar sign = (m.generators()[j].degree % 2 == 0) ? f.neg(1) : 1;
      d.add_to(i, j, poly.scaled(sign));
    }
  return FreeDGModule(m.ring(), std::move(gens), std::move(d));
}

FreeDGModule cone(const DGMorphism& f) {
  const FreeDGModule& src = f.source();
  const FreeDGModule& tgt = f.target();
  require_same_ring(src.ring(), tgt.ring());
  std::vector<Generator> gens;
  for (const auto& g : src.generators()) gens.push_back({g.name + "'", g.degree - 1});
  gens.insert(gens.end(), tgt.generators().begin(), tgt.generators().end());
  PolyMatrix d(src.ring(), gens.size(), gens.size());
  d.place(src.differential(), 0, 0, src.ring()->field().neg(1));
  d.place(f.matrix(), src.rank(), 0);
  d.place(tgt.differential(), src.rank(), src.rank());
  return FreeDGModule(src.ring(), std::move(gens), std::move(d));
}

DGMorphism identity_morphism(const FreeDGModule& m) { return DGMorphism(m, m, identity_matrix(m.ring(), m.rank())); }

DGMorphism zero_morphism(const FreeDGModule& source, const FreeDGModule& target) {
  return DGMorphism(source, target, PolyMatrix(source.ring(), target.rank(), source.rank()));
}

DGMorphism multiplication_morphism(const FreeDGModule& m, const Polynomial& s) {
  auto deg = s.degree();
  if (!deg) throw InputError("multiplication morphism needs a nonzero homogeneous polynomial, got " + s.to_string());
  FreeDGModule src = shift(m, -*deg);
  PolyMatrix mat(m.ring(), m.rank(), m.rank());
  for (std::size_t i = 0; i < m.rank(); ++i) mat.set(i, i, s);
  return DGMorphism(std::move(src), m, std::move(mat));
}

DGMorphism tensor_morphism(const DGMorphism& f, const DGMorphism& g) {
  FreeDGModule src = tensor(f.source(), g.source());
  FreeDGModule tgt = tensor(f.target(), g.target());
  const std::size_t gs = g.source().rank();
  const std::size_t gt = g.target().rank();
  PolyMatrix mat(src.ring(), tgt.rank(), src.rank());
  for (std::size_t a = 0; a < f.source().rank(); ++a)
    for (std::size_t b = 0; b < gs; ++b)
      for (const auto& [ra, pf] : f.matrix().column(a))
        for (const auto& [rb, pg] : g.matrix().column(b)) mat.add_to(ra * gt + rb, a * gs + b, pf * pg);
  return DGMorphism(std::move(src), std::move(tgt), std::move(mat));
}

DGMorphism tensor_power(const DGMorphism& f, std::size_t n) {
  if (n == 0) throw InputError("tensor_power needs n >= 1");
  DGMorphism result = f;
  for (std::size_t k = 1; k < n; ++k) result = tensor_morphism(result, f);
  return result;
}

PolyVector unit_image(const DGMorphism& f) {
  const auto& src = f.source();
  if (src.rank() != 1 || src.generators()[0].degree != 0) {
    throw InputError("expected a morphism out of S (rank one, generator in degree 0)");
  }
  PolyVector v = zero_vector(f.target().ring(), f.target().rank());
  for (const auto& [i, poly] : f.matrix().column(0)) v[i] = poly;
  return v;
}

DGMorphism adjoint_to_unit(const DGMorphism& f) {
  const FreeDGModule& F = f.source();
  const FreeDGModule& X = f.target();
  FreeDGModule hom = tensor(X, dual(F));
  const std::size_t nf = F.rank();
  PolyMatrix mat(X.ring(), hom.rank(), 1);
  for (std::size_t j = 0; j < nf; ++j)
    for (const auto& [i, poly] : f.matrix().column(j)) mat.add_to(i * nf + j, 0, poly);
  return DGMorphism(FreeDGModule::free(X.ring()), std::move(hom), std::move(mat));
}

}  // namespace suppvar
