#include "suppvar/field.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "suppvar/errors.hpp"

namespace suppvar {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> conway_polynomial(std::uint32_t p, std::uint32_t e) {
  static const std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> table = {
      {{2, 2}, {1, 1, 1}},    {{2, 3}, {1, 1, 0, 1}}, {{3, 2}, {2, 2, 1}}, {{3, 3}, {1, 2, 0, 1}},
      {{5, 2}, {2, 4, 1}},    {{5, 3}, {3, 3, 0, 1}}, {{7, 2}, {3, 6, 1}}, {{7, 3}, {4, 0, 6, 1}},
  };
  auto it = table.find({p, e});
  if (it == table.end()) {
    std::ostringstream msg;
    msg << "no extension table for F_{" << p << "^" << e << "} (supported: p <= 7, e <= 3)";
    throw UnsupportedError(msg.str());
  }
  return it->second;
}

namespace {

using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint32_t v, std::uint32_t p, std::uint32_t e) {
  Digits d(e);
  for (std::uint32_t i = 0; i < e; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

// Product of two residues modulo the monic polynomial `mod` of degree e.
Digits mul_mod(const Digits& a, const Digits& b, const std::vector<std::uint32_t>& mod, std::uint32_t p) {
  const std::size_t e = a.size();
  std::vector<std::uint64_t> prod(2 * e - 1, 0);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  for (std::size_t k = prod.size(); k-- > e;) {
    std::uint64_t c = prod[k];
    if (c == 0) continue;
    // t^k = t^{k-e} * t^e and t^e = -(mod_0 + ... + mod_{e-1} t^{e-1})
    for (std::size_t i = 0; i < e; ++i) prod[k - e + i] = (prod[k - e + i] + (p - mod[i]) % p * c) % p;
    prod[k] = 0;
  }
  Digits out(e);
  for (std::size_t i = 0; i < e; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t e) : p_(p), e_(e), q_(1) {
  if (!suppvar::is_prime(p) || p >= (1u << 31)) {
    throw InputError("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
  }
  if (e == 0) throw InputError("extension degree must be at least 1");
  if (e == 1) {
    q_ = p;
    return;
  }
  auto mod = conway_polynomial(p, e);
  for (std::uint32_t i = 0; i < e; ++i) q_ *= p;

  static std::mutex cache_mutex;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const Tables>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[{p, e}];
  if (!slot) {
    auto t = std::make_shared<Tables>();
    t->modulus = mod;
    t->add.resize(std::size_t{q_} * q_);
    t->mul.resize(std::size_t{q_} * q_);
    t->neg.resize(q_);
    t->inv.assign(q_, 0);
    std::vector<Digits> digits(q_);
    for (std::uint32_t a = 0; a < q_; ++a) digits[a] = to_digits(a, p, e);
    for (std::uint32_t a = 0; a < q_; ++a) {
      Digits n(e);
      for (std::uint32_t i = 0; i < e; ++i) n[i] = (p - digits[a][i]) % p;
      t->neg[a] = from_digits(n, p);
      for (std::uint32_t b = 0; b < q_; ++b) {
        Digits s(e);
        for (std::uint32_t i = 0; i < e; ++i) s[i] = (digits[a][i] + digits[b][i]) % p;
        t->add[a * q_ + b] = from_digits(s, p);
        t->mul[a * q_ + b] = from_digits(mul_mod(digits[a], digits[b], mod, p), p);
      }
    }
    for (std::uint32_t a = 1; a < q_; ++a)
      for (std::uint32_t b = 1; b < q_; ++b)
        if (t->mul[a * q_ + b] == 1) {
          t->inv[a] = b;
          break;
        }
    slot = std::move(t);
  }
  tables_ = slot;
}

const std::vector<std::uint32_t>& Field::modulus() const {
  static const std::vector<std::uint32_t> linear = {0, 1};
  return e_ == 1 ? linear : tables_->modulus;
}

Scalar Field::inv(Scalar a) const {
  if (a == 0) throw InputError("division by zero in " + name());
  if (e_ > 1) return tables_->inv[a];
  // Extended Euclid over the integers.
  std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quot * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quot * new_r);
  }
  if (t < 0) t += p_;
  return static_cast<Scalar>(t);
}

Scalar Field::pow(Scalar a, std::uint64_t n) const {
  Scalar result = 1;
  while (n > 0) {
    if (n & 1) result = mul(result, a);
    a = mul(a, a);
    n >>= 1;
  }
  return result;
}

std::string Field::name() const {
  if (e_ == 1) return "F_" + std::to_string(p_);
  return "F_{" + std::to_string(p_) + "^" + std::to_string(e_) + "}";
}

}  // namespace suppvar
