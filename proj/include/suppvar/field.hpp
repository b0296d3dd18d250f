#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace suppvar {

/// A field element of F_{p^e}, encoded as the integer sum a_0 + a_1 p + ... + a_{e-1} p^{e-1}
/// where a_0 + a_1 t + ... is its representative modulo the fixed irreducible polynomial.
/// Elements of the prime subfield are therefore encoded as 0..p-1.
using Scalar = std::uint32_t;

/// Finite field F_{p^e}. Prime fields accept any prime below 2^31; proper extensions are
/// available for p <= 7, e <= 3 via a fixed table of Conway polynomials.
///
/// Copies share the (immutable) arithmetic tables.
class Field {
 public:
  explicit Field(std::uint32_t p, std::uint32_t e = 1);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return e_; }
  std::uint32_t size() const { return q_; }
  bool is_prime() const { return e_ == 1; }

  /// Monic defining polynomial, coefficients from the constant term up (size e + 1).
  const std::vector<std::uint32_t>& modulus() const;

  Scalar add(Scalar a, Scalar b) const {
    if (e_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return tables_->add[a * q_ + b];
  }
  Scalar neg(Scalar a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    return tables_->neg[a];
  }
  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }
  Scalar mul(Scalar a, Scalar b) const {
    if (e_ == 1) return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p_);
    return tables_->mul[a * q_ + b];
  }
  /// Multiplicative inverse; throws InputError on zero.
  Scalar inv(Scalar a) const;
  Scalar pow(Scalar a, std::uint64_t n) const;

  /// Image of an integer in the prime subfield.
  Scalar from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Scalar>(r);
  }

  bool operator==(const Field& other) const { return p_ == other.p_ && e_ == other.e_; }

  /// "F_p" or "F_{p^e}".
  std::string name() const;

 private:
  struct Tables {
    std::vector<std::uint32_t> modulus;
    std::vector<Scalar> add, mul, neg, inv;
  };

  std::uint32_t p_;
  std::uint32_t e_;
  std::uint32_t q_;
  std::shared_ptr<const Tables> tables_;
};

bool is_prime(std::uint64_t n);

/// The Conway polynomial used for F_{p^e}; throws UnsupportedError outside p <= 7, e <= 3.
std::vector<std::uint32_t> conway_polynomial(std::uint32_t p, std::uint32_t e);

}  // namespace suppvar
