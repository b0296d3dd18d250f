#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "suppvar/polynomial.hpp"

namespace suppvar {

/// Sparse matrix of polynomials over one ring, stored column by column.
class PolyMatrix {
 public:
  using Column = std::map<std::size_t, Polynomial>;

  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  const Column& column(std::size_t j) const { return cols_.at(j); }

  Polynomial at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Polynomial value);
  void add_to(std::size_t i, std::size_t j, const Polynomial& value);

  bool is_zero() const;
  bool operator==(const PolyMatrix& other) const;

  /// Places `block` with its (0,0) entry at (row, col).
  void place(const PolyMatrix& block, std::size_t row, std::size_t col, Scalar factor = 1);

 private:
  RingPtr ring_;
  std::size_t rows_;
  std::vector<Column> cols_;
};

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix scaled(const PolyMatrix& a, Scalar c);
PolyMatrix identity_matrix(const RingPtr& ring, std::size_t n);

using PolyVector = std::vector<Polynomial>;

PolyVector apply(const PolyMatrix& m, const PolyVector& v);
PolyVector zero_vector(const RingPtr& ring, std::size_t n);
bool is_zero(const PolyVector& v);
std::string to_string(const PolyVector& v);

struct Generator {
  std::string name;
  int degree = 0;
  bool operator==(const Generator&) const = default;
};

/// Finite free DG module over a graded polynomial ring with zero differential.
///
/// The differential is a square polynomial matrix; entry (i, j) is the coefficient of
/// generator i in d(generator j). Upper grading: d raises total degree by one, so a nonzero
/// entry (i, j) is homogeneous of degree deg(gen_j) + 1 - deg(gen_i).
/// Construction does not validate; call validate().
class FreeDGModule {
 public:
  FreeDGModule(RingPtr ring, std::vector<Generator> generators, PolyMatrix differential);

  /// Rank-one module S with its generator in degree `degree` (so S itself when degree = 0).
  static FreeDGModule free(const RingPtr& ring, int degree = 0, std::string name = "1");
  static FreeDGModule zero(const RingPtr& ring);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return generators_.size(); }
  const std::vector<Generator>& generators() const { return generators_; }
  const PolyMatrix& differential() const { return d_; }
  int min_degree() const;
  int max_degree() const;

  bool operator==(const FreeDGModule& o) const { return generators_ == o.generators_ && d_ == o.d_; }

 private:
  RingPtr ring_;
  std::vector<Generator> generators_;
  PolyMatrix d_;
};

/// Degree-zero map between free DG modules; entry (i, j) is the coefficient of target
/// generator i in the image of source generator j.
class DGMorphism {
 public:
  DGMorphism(FreeDGModule source, FreeDGModule target, PolyMatrix matrix);

  const FreeDGModule& source() const { return source_; }
  const FreeDGModule& target() const { return target_; }
  const PolyMatrix& matrix() const { return matrix_; }

 private:
  FreeDGModule source_;
  FreeDGModule target_;
  PolyMatrix matrix_;
};

struct Violation {
  enum class Kind { Shape, Ring, Homogeneity, SquareZero, NotChainMap };
  Kind kind;
  std::size_t row = 0;
  std::size_t col = 0;
  int expected_degree = 0;
  std::string message;
};

/// Checks shape, homogeneity and d∘d = 0 as polynomial identities. Returns the first problem.
std::optional<Violation> validate(const FreeDGModule& m);
/// Checks both modules, homogeneity of the matrix and d∘f = f∘d.
std::optional<Violation> validate(const DGMorphism& f);
/// Throws InputError carrying the violation message.
void require_valid(const FreeDGModule& m);
void require_valid(const DGMorphism& f);

/// Σ^s M: generator degrees decrease by s, differential multiplied by (-1)^s.
FreeDGModule shift(const FreeDGModule& m, int s);
FreeDGModule direct_sum(const FreeDGModule& a, const FreeDGModule& b);
/// Generators are the pairs (a_i, b_j) in row-major order; Koszul sign rule
/// d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db.
FreeDGModule tensor(const FreeDGModule& a, const FreeDGModule& b);
/// Dual module Hom_S(M, S): generator e_j^* in degree -deg(e_j), with
/// d(e_j^*) = -(-1)^{deg e_j} Σ_i d_{ji} e_i^*.
FreeDGModule dual(const FreeDGModule& m);
/// cone(f) = Σ source ⊕ target with differential [[-d_src, 0], [f, d_tgt]].
FreeDGModule cone(const DGMorphism& f);

DGMorphism identity_morphism(const FreeDGModule& m);
DGMorphism zero_morphism(const FreeDGModule& source, const FreeDGModule& target);
/// Multiplication by a homogeneous s as a morphism Σ^{-|s|} M → M.
DGMorphism multiplication_morphism(const FreeDGModule& m, const Polynomial& s);
DGMorphism tensor_morphism(const DGMorphism& f, const DGMorphism& g);
/// f^{⊗n}: source^{⊗n} → target^{⊗n}. For a source of rank one in degree 0 the source
/// power is identified with S again.
DGMorphism tensor_power(const DGMorphism& f, std::size_t n);
/// Adjoint f': S → Hom_S(F, X) ≅ X ⊗ F^∨ of f: F → X, sending 1 to Σ_j f(e_j) ⊗ e_j^*.
DGMorphism adjoint_to_unit(const DGMorphism& f);
/// The cycle f(1) for a morphism out of S.
PolyVector unit_image(const DGMorphism& f);

}  // namespace suppvar
