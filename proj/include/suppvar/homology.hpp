#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "suppvar/dg_module.hpp"
#include "suppvar/linalg.hpp"

namespace suppvar {

struct HomologyTable {
  int lo = 0;
  int hi = -1;
  std::vector<std::size_t> dims;  // dims[n - lo]

  std::size_t at(int n) const { return n < lo || n > hi ? 0 : dims[static_cast<std::size_t>(n - lo)]; }
  std::size_t total() const;
  bool is_zero() const { return total() == 0; }
};

/// k-basis of the total-degree-n part of a free DG module: pairs (generator i, monomial m)
/// with deg(gen_i) + deg(m) = n, generator-major, monomials in decreasing lex order.
class GradedPiece {
 public:
  GradedPiece(const FreeDGModule& m, int n);

  int degree() const { return degree_; }
  std::size_t size() const { return basis_.size(); }
  const std::pair<std::size_t, Exponent>& operator[](std::size_t k) const { return basis_[k]; }
  std::optional<std::size_t> index_of(std::size_t gen, const Exponent& e) const;

  /// Coordinates of a polynomial vector all of whose terms lie in this piece.
  /// Throws InputError for terms of the wrong degree.
  Vector coordinates(const PolyVector& v) const;
  PolyVector vector(const RingPtr& ring, std::size_t rank, std::span<const Scalar> coords) const;

 private:
  int degree_;
  std::vector<std::pair<std::size_t, Exponent>> basis_;
  std::vector<std::map<Exponent, std::size_t>> index_;
};

/// Matrix of d: M^n → M^{n+1} in the bases of the two pieces.
ScalarMatrix differential_block(const FreeDGModule& m, const GradedPiece& from, const GradedPiece& to);

/// dim_k H^n(M) for lo ≤ n ≤ hi. Needs positive ring degrees (UnsupportedError otherwise).
HomologyTable homology_dims(const FreeDGModule& m, int lo, int hi);

/// Some x in degree n - 1 with d(x) = c, or nullopt when c is not a boundary.
/// c must be a cycle of degree n (InputError otherwise).
std::optional<PolyVector> boundary_preimage(const FreeDGModule& m, const PolyVector& c, int n);
bool is_homologous_zero(const FreeDGModule& m, const PolyVector& c, int n);

}  // namespace suppvar
