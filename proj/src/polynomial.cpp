#include "suppvar/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "suppvar/errors.hpp"

namespace suppvar {

GradedRing::GradedRing(std::uint32_t p, std::vector<int> degrees, std::string prefix)
    : field_(p, 1), degrees_(std::move(degrees)), prefix_(std::move(prefix)) {
  if (prefix_.empty()) throw InputError("generator prefix must be nonempty");
}

std::string GradedRing::variable_name(std::size_t i) const { return prefix_ + std::to_string(i + 1); }

bool GradedRing::positively_graded() const {
  return std::all_of(degrees_.begin(), degrees_.end(), [](int d) { return d > 0; });
}

int GradedRing::degree_gcd() const {
  int g = 0;
  for (int d : degrees_) g = std::gcd(g, d < 0 ? -d : d);
  return g;
}

bool GradedRing::supports_dg_modules() const {
  if (characteristic() == 2) return true;
  return std::all_of(degrees_.begin(), degrees_.end(), [](int d) { return d % 2 == 0; });
}

int GradedRing::degree_of(const Exponent& e) const {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * degrees_[i];
  return d;
}

RingPtr make_ring(std::uint32_t p, std::vector<int> degrees, std::string prefix) {
  return std::make_shared<const GradedRing>(p, std::move(degrees), std::move(prefix));
}

Polynomial Polynomial::constant(RingPtr ring, std::int64_t c) {
  Polynomial f(ring);
  f.add_term(Exponent(ring->nvars(), 0), ring->field().from_int(c));
  return f;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  if (i >= ring->nvars()) throw InputError("variable index out of range");
  Exponent e(ring->nvars(), 0);
  e[i] = 1;
  return monomial(std::move(ring), std::move(e), 1);
}

Polynomial Polynomial::monomial(RingPtr ring, Exponent e, Scalar c) {
  if (e.size() != ring->nvars()) throw InputError("exponent length does not match ring");
  Polynomial f(ring);
  f.add_term(e, c);
  return f;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = ring_->degree_of(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return ring_->degree_of(t.first) == d; });
}

std::optional<int> Polynomial::degree() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  return ring_->degree_of(terms_.begin()->first);
}

Scalar Polynomial::constant_term() const { return coefficient(Exponent(ring_->nvars(), 0)); }

Scalar Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void Polynomial::add_term(const Exponent& e, Scalar c) {
  const Field& f = ring_->field();
  c %= f.characteristic();
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = f.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial Polynomial::operator-() const { return scaled(ring_->field().neg(1)); }

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scaled(Scalar c) const {
  Polynomial r(ring_);
  if (c % ring_->characteristic() == 0) return r;
  const Field& f = ring_->field();
  for (const auto& [e, a] : terms_) r.terms_.emplace(e, f.mul(a, c));
  return r;
}

Polynomial Polynomial::shifted(const Exponent& s) const {
  Polynomial r(ring_);
  for (const auto& [e, a] : terms_) {
    Exponent m = e;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint16_t>(m[i] + s[i]);
    r.terms_.emplace(std::move(m), a);
  }
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(ring_);
  const Field& f = ring_->field();
  const std::size_t n = ring_->nvars();
  Exponent m(n);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint16_t>(e1[i] + e2[i]);
      r.add_term(m, f.mul(c1, c2));
    }
  return r;
}

Scalar Polynomial::evaluate(const Field& field, std::span<const Scalar> point) const {
  if (point.size() != ring_->nvars()) {
    throw InputError("evaluation point has " + std::to_string(point.size()) + " coordinates, ring has " +
                     std::to_string(ring_->nvars()) + " generators");
  }
  if (field.characteristic() != ring_->characteristic()) throw InputError("evaluation field has wrong characteristic");
  Scalar acc = 0;
  for (const auto& [e, c] : terms_) {
    Scalar term = c;
    for (std::size_t i = 0; i < e.size() && term != 0; ++i)
      if (e[i] != 0) term = field.mul(term, field.pow(point[i], e[i]));
    acc = field.add(acc, term);
  }
  return acc;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    bool is_const = std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; });
    if (is_const) {
      out << c;
      continue;
    }
    if (c != 1) out << c << "*";
    bool first_var = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_var) out << "*";
      first_var = false;
      out << ring_->variable_name(i);
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial result(ring_);
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Polynomial term = parse_term();
      result += negative ? -term : term;
      skip_ws();
    }
    return result;
  }

 private:
  Polynomial parse_term() {
    Polynomial term = parse_factor();
    skip_ws();
    while (!at_end() && peek() == '*') {
      ++pos_;
      skip_ws();
      term = term * parse_factor();
      skip_ws();
    }
    return term;
  }

  Polynomial parse_factor() {
    if (at_end()) fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::int64_t v = 0;
      const std::int64_t p = ring_->characteristic();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        v = (v * 10 + (peek() - '0')) % p;
        ++pos_;
      }
      return Polynomial::constant(ring_, v);
    }
    if (std::isalpha(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name != ring_->prefix()) fail("unknown generator prefix '" + name + "' (ring uses '" + ring_->prefix() + "')");
      std::size_t digits_start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (digits_start == pos_) fail("generator '" + name + "' needs an index");
      std::size_t index = std::stoul(std::string(text_.substr(digits_start, pos_ - digits_start)));
      if (index == 0 || index > ring_->nvars()) fail("generator index " + std::to_string(index) + " out of range");
      Exponent e(ring_->nvars(), 0);
      skip_ws();
      std::uint16_t power = 1;
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        std::size_t ps = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (ps == pos_) fail("expected exponent after '^'");
        power = static_cast<std::uint16_t>(std::stoul(std::string(text_.substr(ps, pos_ - ps))));
      }
      e[index - 1] = power;
      return Polynomial::monomial(ring_, std::move(e), 1);
    }
    fail(std::string("unexpected character '") + peek() + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial parse error at offset " + std::to_string(pos_) + " in \"" + std::string(text_) +
                     "\": " + what);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

void enumerate(const std::vector<int>& degrees, std::size_t var, int remaining, Exponent& current,
               std::vector<Exponent>& out) {
  if (var + 1 == degrees.size()) {
    if (remaining % degrees[var] == 0) {
      current[var] = static_cast<std::uint16_t>(remaining / degrees[var]);
      out.push_back(current);
    }
    return;
  }
  for (int k = remaining / degrees[var]; k >= 0; --k) {
    current[var] = static_cast<std::uint16_t>(k);
    enumerate(degrees, var + 1, remaining - k * degrees[var], current, out);
  }
  current[var] = 0;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) { return PolyParser(text, ring).parse(); }

std::vector<Exponent> monomial_basis(int d, const GradedRing& ring) {
  std::vector<int> degrees = ring.degrees();
  const bool all_pos = std::all_of(degrees.begin(), degrees.end(), [](int v) { return v > 0; });
  const bool all_neg = std::all_of(degrees.begin(), degrees.end(), [](int v) { return v < 0; });
  if (!all_pos && !all_neg) {
    throw UnsupportedError("monomial_basis needs generator degrees of a single strict sign");
  }
  if (degrees.empty()) return d == 0 ? std::vector<Exponent>{Exponent{}} : std::vector<Exponent>{};
  if (all_neg) {
    for (int& v : degrees) v = -v;
    d = -d;
  }
  std::vector<Exponent> out;
  if (d < 0) return out;
  Exponent current(degrees.size(), 0);
  enumerate(degrees, 0, d, current, out);
  return out;
}

}  // namespace suppvar
