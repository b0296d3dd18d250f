#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "suppvar/field.hpp"

namespace suppvar {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix of field elements. The field is supplied to each operation.
class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static ScalarMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static ScalarMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Scalar operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector column(std::size_t j) const;

  bool is_zero() const;
  bool operator==(const ScalarMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form together with the pivot column of each nonzero row.
struct Echelon {
  ScalarMatrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon row_reduce(const Field& field, ScalarMatrix m);
std::size_t rank(const Field& field, const ScalarMatrix& m);
/// Basis of {v : m v = 0}, one vector per free column, in increasing free-column order.
std::vector<Vector> nullspace(const Field& field, const ScalarMatrix& m);
/// Some x with m x = b, or nullopt when b is outside the column space.
std::optional<Vector> solve(const Field& field, const ScalarMatrix& m, std::span<const Scalar> b);

ScalarMatrix multiply(const Field& field, const ScalarMatrix& a, const ScalarMatrix& b);
ScalarMatrix add(const Field& field, const ScalarMatrix& a, const ScalarMatrix& b);
ScalarMatrix scale(const Field& field, const ScalarMatrix& a, Scalar c);
ScalarMatrix transpose(const ScalarMatrix& a);
Vector apply(const Field& field, const ScalarMatrix& a, std::span<const Scalar> v);
bool is_zero_vector(std::span<const Scalar> v);
/// [a | b], same row count.
ScalarMatrix hconcat(const ScalarMatrix& a, const ScalarMatrix& b);

/// Incrementally maintained row-echelon basis of a subspace of F^n. Used wherever
/// vectors are tested for membership in a growing span.
class SpanBuilder {
 public:
  SpanBuilder(const Field& field, std::size_t ambient) : field_(field), ambient_(ambient) {}

  /// Adds v; returns true when it enlarged the span.
  bool insert(std::span<const Scalar> v);
  bool contains(std::span<const Scalar> v) const;
  std::size_t dimension() const { return rows_.size(); }

 private:
  Vector reduce(std::span<const Scalar> v) const;

  Field field_;
  std::size_t ambient_;
  std::vector<Vector> rows_;  // each row normalized with leading 1 at pivots_[i]
  std::vector<std::size_t> pivots_;
};

}  // namespace suppvar
