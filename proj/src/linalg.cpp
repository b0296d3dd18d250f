#include "suppvar/linalg.hpp"

#include <algorithm>

#include "suppvar/errors.hpp"

namespace suppvar {

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ScalarMatrix ScalarMatrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
  ScalarMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw InputError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vector ScalarMatrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

bool ScalarMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
}

namespace {

// row_i <- row_i - c * row_k, starting at column `from`.
void eliminate(const Field& f, std::span<Scalar> target, std::span<const Scalar> source, Scalar c,
               std::size_t from) {
  if (f.is_prime()) {
    const std::uint64_t p = f.characteristic();
    const std::uint64_t negc = (p - c) % p;
    for (std::size_t j = from; j < target.size(); ++j) {
      if (source[j] == 0) continue;
      target[j] = static_cast<Scalar>((target[j] + negc * source[j]) % p);
    }
    return;
  }
  for (std::size_t j = from; j < target.size(); ++j) {
    if (source[j] == 0) continue;
    target[j] = f.sub(target[j], f.mul(c, source[j]));
  }
}

void normalize(const Field& f, std::span<Scalar> row, std::size_t from) {
  Scalar inv = f.inv(row[from]);
  if (inv == 1) return;
  for (std::size_t j = from; j < row.size(); ++j)
    if (row[j] != 0) row[j] = f.mul(row[j], inv);
}

}  // namespace

Echelon row_reduce(const Field& field, ScalarMatrix m) {
  Echelon out;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t sel = pivot_row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pivot_row) std::swap_ranges(m.row(sel).begin(), m.row(sel).end(), m.row(pivot_row).begin());
    normalize(field, m.row(pivot_row), col);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == pivot_row || m(i, col) == 0) continue;
      eliminate(field, m.row(i), m.row(pivot_row), m(i, col), col);
    }
    out.pivots.push_back(col);
    ++pivot_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Field& field, const ScalarMatrix& input) {
  if (input.empty()) return 0;
  // Eliminate along the shorter side.
  ScalarMatrix m = input.rows() <= input.cols() ? input : transpose(input);
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r) std::swap_ranges(m.row(sel).begin(), m.row(sel).end(), m.row(r).begin());
    normalize(field, m.row(r), col);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, col) == 0) continue;
      eliminate(field, m.row(i), m.row(r), m(i, col), col);
    }
    ++r;
  }
  return r;
}

std::vector<Vector> nullspace(const Field& field, const ScalarMatrix& m) {
  Echelon ech = row_reduce(field, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = field.neg(ech.reduced(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Field& field, const ScalarMatrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw InputError("solve: right-hand side has wrong length");
  ScalarMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Echelon ech = row_reduce(field, std::move(aug));
  if (!ech.pivots.empty() && ech.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols(), 0);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) x[ech.pivots[r]] = ech.reduced(r, m.cols());
  return x;
}

ScalarMatrix multiply(const Field& field, const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product: dimension mismatch");
  ScalarMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Scalar aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) == 0) continue;
        c(i, j) = field.add(c(i, j), field.mul(aik, b(k, j)));
      }
    }
  return c;
}

ScalarMatrix add(const Field& field, const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix sum: dimension mismatch");
  ScalarMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = field.add(a(i, j), b(i, j));
  return c;
}

ScalarMatrix scale(const Field& field, const ScalarMatrix& a, Scalar s) {
  ScalarMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = field.mul(a(i, j), s);
  return c;
}

ScalarMatrix transpose(const ScalarMatrix& a) {
  ScalarMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Vector apply(const Field& field, const ScalarMatrix& a, std::span<const Scalar> v) {
  if (v.size() != a.cols()) throw InputError("matrix-vector product: dimension mismatch");
  Vector out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Scalar acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && v[j] != 0) acc = field.add(acc, field.mul(a(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

ScalarMatrix hconcat(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows() != b.rows()) throw InputError("hconcat: row count mismatch");
  ScalarMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

Vector SpanBuilder::reduce(std::span<const Scalar> v) const {
  Vector w(v.begin(), v.end());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Scalar c = w[pivots_[r]];
    if (c != 0) eliminate(field_, w, rows_[r], c, pivots_[r]);
  }
  return w;
}

bool SpanBuilder::insert(std::span<const Scalar> v) {
  if (v.size() != ambient_) throw InputError("SpanBuilder: vector has wrong length");
  Vector w = reduce(v);
  auto it = std::find_if(w.begin(), w.end(), [](Scalar s) { return s != 0; });
  if (it == w.end()) return false;
  std::size_t piv = static_cast<std::size_t>(it - w.begin());
  normalize(field_, w, piv);
  rows_.push_back(std::move(w));
  pivots_.push_back(piv);
  return true;
}

bool SpanBuilder::contains(std::span<const Scalar> v) const {
  Vector w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](Scalar s) { return s == 0; });
}

bool is_zero_vector(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

}  // namespace suppvar
