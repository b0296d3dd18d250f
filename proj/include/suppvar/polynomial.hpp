#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "suppvar/field.hpp"

namespace suppvar {

/// Exponent vector; fixed length equal to the number of ring generators.
using Exponent = std::vector<std::uint16_t>;

/// Graded polynomial ring k[v_1, ..., v_r] over the prime field F_p, each generator
/// carrying an integer degree. The printed name of generator i is prefix + (i + 1).
class GradedRing {
 public:
  GradedRing(std::uint32_t p, std::vector<int> degrees, std::string prefix = "x");

  std::uint32_t characteristic() const { return field_.characteristic(); }
  const Field& field() const { return field_; }
  std::size_t nvars() const { return degrees_.size(); }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::string& prefix() const { return prefix_; }
  std::string variable_name(std::size_t i) const;

  /// All degrees > 0.
  bool positively_graded() const;
  /// gcd of the absolute generator degrees (0 when r = 0 or all degrees vanish).
  int degree_gcd() const;
  /// The standing hypothesis for DG modules: generators in even degrees, or p = 2.
  bool supports_dg_modules() const;

  int degree_of(const Exponent& e) const;

  bool operator==(const GradedRing& other) const {
    return field_ == other.field_ && degrees_ == other.degrees_ && prefix_ == other.prefix_;
  }

 private:
  Field field_;
  std::vector<int> degrees_;
  std::string prefix_;
};

using RingPtr = std::shared_ptr<const GradedRing>;

RingPtr make_ring(std::uint32_t p, std::vector<int> degrees, std::string prefix = "x");

/// Sparse polynomial with coefficients in the prime field of its ring. Terms are kept in
/// lexicographically decreasing exponent order and never store zero coefficients.
class Polynomial {
 public:
  using Terms = std::map<Exponent, Scalar, std::greater<>>;

  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, std::int64_t c);
  static Polynomial variable(RingPtr ring, std::size_t i);
  static Polynomial monomial(RingPtr ring, Exponent e, Scalar c = 1);

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_homogeneous() const;
  /// Degree of a nonzero homogeneous polynomial; nullopt for zero or inhomogeneous input.
  std::optional<int> degree() const;
  Scalar constant_term() const;
  Scalar coefficient(const Exponent& e) const;

  /// Adds c * monomial(e).
  void add_term(const Exponent& e, Scalar c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial scaled(Scalar c) const;
  /// Multiplies by the monomial with exponent e.
  Polynomial shifted(const Exponent& e) const;
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  /// Value at a point with coordinates in `field` (an extension of the coefficient field).
  Scalar evaluate(const Field& field, std::span<const Scalar> point) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  Terms terms_;
};

/// Parses text such as "3*x1^2*x2 + x3 - 1"; generator names use the ring's prefix.
/// Integer coefficients are reduced modulo p. Throws InputError on malformed text.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

/// All exponent vectors of total degree d, in decreasing lexicographic order.
/// Requires generator degrees all positive or all negative (UnsupportedError otherwise).
std::vector<Exponent> monomial_basis(int d, const GradedRing& ring);

}  // namespace suppvar
