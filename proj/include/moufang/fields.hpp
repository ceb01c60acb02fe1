#pragma once

// Exact scalar arithmetic: GF(p^k) by residue polynomials, plus exact
// rationals and half-integers for the classical octonions.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace moufang {

namespace detail {

inline bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Coefficient vectors, constant term first. Trailing zeros are trimmed.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime; Fermat is plenty for the sizes we allow.
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

/// Remainder of f modulo g over GF(p); g must be nonzero.
inline Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint32_t lead_inv = inv_mod(g.back(), p);
  while (f.size() >= g.size()) {
    const std::uint64_t c = std::uint64_t{f.back()} * lead_inv % p;
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + (p - c) * g[i]) % p);
    }
    trim(f);
  }
  return f;
}

/// Irreducibility by trial division with every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
      Poly g(d + 1);
      std::uint64_t v = m;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint32_t q = 0;
  Poly modulus;                     // monic, degree k
  std::vector<std::uint32_t> exp;   // exp[i] = g^i, length 2(q-1)
  std::vector<std::uint32_t> log;   // log[x] for x != 0
  std::uint32_t primitive = 0;      // canonically smallest generator of GF(q)^*

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (k == 1) return (a + b) % p;
    std::uint32_t r = 0, scale = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      r += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return r;
  }
  std::uint32_t neg(std::uint32_t a) const {
    if (k == 1) return a == 0 ? 0 : p - a;
    std::uint32_t r = 0, scale = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      r += ((p - a % p) % p) * scale;
      a /= p;
      scale *= p;
    }
    return r;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp[log[a] + log[b]];
  }
  std::uint32_t inv(std::uint32_t a) const { return exp[(q - 1 - log[a]) % (q - 1)]; }
};

/// Polynomial product of two encoded elements, reduced by the modulus.
inline std::uint32_t slow_mul(const FieldData& f, std::uint32_t a, std::uint32_t b) {
  Poly x(f.k), y(f.k);
  for (std::uint32_t i = 0; i < f.k; ++i) {
    x[i] = a % f.p;
    a /= f.p;
    y[i] = b % f.p;
    b /= f.p;
  }
  Poly prod(2 * f.k, 0);
  for (std::uint32_t i = 0; i < f.k; ++i)
    for (std::uint32_t j = 0; j < f.k; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % f.p);
  Poly r = poly_mod(prod, f.modulus, f.p);
  std::uint32_t code = 0;
  for (std::size_t i = r.size(); i-- > 0;) code = code * f.p + r[i];
  return code;
}

inline std::unique_ptr<FieldData> build_field(std::uint32_t p, std::uint32_t k, Poly modulus) {
  auto f = std::make_unique<FieldData>();
  f->p = p;
  f->k = k;
  f->q = 1;
  for (std::uint32_t i = 0; i < k; ++i) f->q *= p;
  f->modulus = std::move(modulus);
  const std::uint32_t q = f->q;
  f->log.assign(q, 0);
  if (q == 2) {
    f->exp = {1, 1};
    f->primitive = 1;
    return f;
  }
  for (std::uint32_t g = 1; g < q; ++g) {
    std::vector<std::uint32_t> powers;
    powers.reserve(q - 1);
    std::uint32_t x = 1;
    do {
      powers.push_back(x);
      x = slow_mul(*f, x, g);
    } while (x != 1 && powers.size() < q);
    if (powers.size() != q - 1) continue;
    f->primitive = g;
    f->exp.resize(2 * (q - 1));
    for (std::uint32_t i = 0; i < 2 * (q - 1); ++i) f->exp[i] = powers[i % (q - 1)];
    for (std::uint32_t i = 0; i < q - 1; ++i) f->log[powers[i]] = i;
    return f;
  }
  throw std::logic_error("field construction: no generator found (modulus not irreducible?)");
}

/// Conway polynomials for the non-prime orders up to 32.
inline std::optional<Poly> builtin_modulus(std::uint32_t p, std::uint32_t k) {
  static const std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> table = {
      {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}}, {{3, 2}, {2, 2, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}}, {{5, 2}, {2, 4, 1}},    {{3, 3}, {1, 2, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
  };
  if (k == 1) return Poly{0, 1};
  auto it = table.find({p, k});
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace detail

class FieldElement;

/// A finite field GF(p^k). Handles are cheap to copy; the underlying tables
/// are interned for the lifetime of the process, so two handles built from
/// the same (p, k, modulus) compare equal.
class Field {
 public:
  static constexpr std::uint32_t max_order = 1u << 20;

  Field() = default;

  static Field make(std::uint32_t p, std::uint32_t k = 1, std::optional<std::vector<std::uint32_t>> modulus = {}) {
    if (!detail::is_prime(p)) throw std::invalid_argument("field: characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) throw std::invalid_argument("field: extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      q *= p;
      if (q > max_order) throw std::invalid_argument("field: order exceeds supported range");
    }
    detail::Poly m;
    if (modulus) {
      m = *modulus;
      for (auto& c : m) {
        if (c >= p) throw std::invalid_argument("field: modulus coefficient out of range");
      }
      detail::trim(m);
      if (m.size() != k + 1) throw std::invalid_argument("field: modulus must have degree k");
      if (m.back() != 1) throw std::invalid_argument("field: modulus must be monic");
      if (!detail::is_irreducible(m, p)) throw std::invalid_argument("field: modulus is reducible");
    } else {
      auto b = detail::builtin_modulus(p, k);
      if (!b) throw std::invalid_argument("field: no built-in modulus for GF(" + std::to_string(q) + ")");
      m = *b;
    }
    return Field(intern(p, k, std::move(m)));
  }

  /// Built-in field of order q (prime, or a prime power up to 32).
  static Field gf(std::uint32_t q) {
    if (q < 2) throw std::invalid_argument("field: order must be at least 2");
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t k = 0;
    std::uint32_t r = q;
    while (r % p == 0) {
      r /= p;
      ++k;
    }
    if (r != 1) throw std::invalid_argument("field: " + std::to_string(q) + " is not a prime power");
    return make(p, k);
  }

  std::uint32_t characteristic() const { return data().p; }
  std::uint32_t degree() const { return data().k; }
  std::uint32_t order() const { return data().q; }
  const std::vector<std::uint32_t>& modulus() const { return data().modulus; }
  bool valid() const { return data_ != nullptr; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement element(std::uint32_t code) const;
  FieldElement from_int(std::int64_t v) const;
  FieldElement from_coefficients(const std::vector<std::uint32_t>& coeffs) const;
  FieldElement primitive_element() const;
  std::vector<FieldElement> elements() const;

  std::string name() const { return "GF(" + std::to_string(order()) + ")"; }

  /// Text form accepted by parse_field.
  std::string spec_string() const {
    if (detail::builtin_modulus(characteristic(), degree()) == modulus()) return "gf(" + std::to_string(order()) + ")";
    std::string s = "gf(" + std::to_string(characteristic()) + "," + std::to_string(degree());
    for (auto c : modulus()) s += "," + std::to_string(c);
    return s + ")";
  }

  friend bool operator==(const Field& a, const Field& b) { return a.data_ == b.data_; }

  const detail::FieldData& data() const {
    if (!data_) throw std::logic_error("field: use of an empty Field handle");
    return *data_;
  }

 private:
  friend class FieldElement;
  explicit Field(const detail::FieldData* d) : data_(d) {}

  static const detail::FieldData* intern(std::uint32_t p, std::uint32_t k, detail::Poly m) {
    static std::mutex mutex;
    static std::map<std::tuple<std::uint32_t, std::uint32_t, detail::Poly>, std::unique_ptr<detail::FieldData>> registry;
    std::lock_guard lock(mutex);
    auto key = std::make_tuple(p, k, m);
    auto it = registry.find(key);
    if (it == registry.end()) it = registry.emplace(key, detail::build_field(p, k, std::move(m))).first;
    return it->second.get();
  }

  const detail::FieldData* data_ = nullptr;
};

/// Element of GF(p^k), stored by its code sum c_i p^i over the residue
/// coefficients. Codes give the canonical total order on a field.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const detail::FieldData* f, std::uint32_t code) : f_(f), code_(code) {}

  std::uint32_t code() const { return code_; }
  Field field() const;
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  std::vector<std::uint32_t> coefficients() const {
    std::vector<std::uint32_t> c(f_->k);
    std::uint32_t v = code_;
    for (auto& x : c) {
      x = v % f_->p;
      v /= f_->p;
    }
    return c;
  }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {a.f_, a.f_->add(a.code_, b.code_)};
  }
  friend FieldElement operator-(FieldElement a) { return {a.f_, a.f_->neg(a.code_)}; }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {a.f_, a.f_->add(a.code_, a.f_->neg(b.code_))};
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {a.f_, a.f_->mul(a.code_, b.code_)};
  }
  friend FieldElement operator/(FieldElement a, FieldElement b) { return a * inv(b); }
  FieldElement& operator+=(FieldElement b) { return *this = *this + b; }
  FieldElement& operator-=(FieldElement b) { return *this = *this - b; }
  FieldElement& operator*=(FieldElement b) { return *this = *this * b; }

  friend FieldElement inv(FieldElement a) {
    if (a.code_ == 0) throw std::domain_error("division by zero in " + a.field().name());
    return {a.f_, a.f_->inv(a.code_)};
  }

  FieldElement pow(std::uint64_t e) const {
    FieldElement r{f_, 1}, b = *this;
    for (; e; e >>= 1) {
      if (e & 1) r = r * b;
      b = b * b;
    }
    return r;
  }

  friend bool operator==(FieldElement a, FieldElement b) { return a.f_ == b.f_ && a.code_ == b.code_; }
  friend bool operator<(FieldElement a, FieldElement b) {
    check_same(a, b);
    return a.code_ < b.code_;
  }

  friend FieldElement zero_like(FieldElement a) { return {a.f_, 0}; }
  friend FieldElement one_like(FieldElement a) { return {a.f_, 1}; }

 private:
  static void check_same(FieldElement a, FieldElement b) {
    if (a.f_ != b.f_) throw std::invalid_argument("field: mismatched scalar domains");
  }

  const detail::FieldData* f_ = nullptr;
  std::uint32_t code_ = 0;
};

inline FieldElement Field::zero() const { return {&data(), 0}; }
inline FieldElement Field::one() const { return {&data(), 1}; }
inline FieldElement Field::element(std::uint32_t code) const {
  if (code >= order()) throw std::out_of_range("field: element code out of range");
  return {&data(), code};
}
inline FieldElement Field::from_int(std::int64_t v) const {
  const std::int64_t p = characteristic();
  return {&data(), static_cast<std::uint32_t>(((v % p) + p) % p)};
}
inline FieldElement Field::from_coefficients(const std::vector<std::uint32_t>& coeffs) const {
  if (coeffs.size() > degree()) throw std::invalid_argument("field: too many coefficients");
  std::uint32_t code = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= characteristic()) throw std::invalid_argument("field: coefficient out of range");
    code = code * characteristic() + coeffs[i];
  }
  return {&data(), code};
}
inline std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out;
  out.reserve(order());
  for (std::uint32_t c = 0; c < order(); ++c) out.emplace_back(&data(), c);
  return out;
}

/// Smallest element (in code order) of multiplicative order q-1.
inline FieldElement Field::primitive_element() const {
  if (order() == 2) throw std::domain_error("primitive_element: GF(2) has no generator to choose; use the q=2 generator set");
  return {&data(), data().primitive};
}

inline Field FieldElement::field() const { return Field(f_); }

/// Square test: Euler's criterion for odd q, always true in characteristic 2.
inline bool is_square(FieldElement x) {
  if (x.is_zero()) throw std::domain_error("is_square: square class of zero is undefined");
  const auto& f = x.field().data();
  if (f.p == 2) return true;
  return x.pow((f.q - 1) / 2).is_one();
}

/// Canonical notation: the integer residue for prime fields, otherwise a
/// polynomial in t such as "2t^2+t+1".
inline std::string to_string(FieldElement x) {
  const auto c = x.coefficients();
  if (c.size() == 1) return std::to_string(c[0]);
  std::string s;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
    if (i >= 1) s += "t";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

inline std::ostream& operator<<(std::ostream& os, FieldElement x) { return os << to_string(x); }

/// Inverse of to_string. Also accepts a plain integer (reduced mod p) and
/// a leading minus sign.
inline FieldElement parse_element(const Field& f, std::string_view text) {
  auto fail = [&] { return std::invalid_argument("cannot parse field element '" + std::string(text) + "'"); };
  bool negate = false;
  if (!text.empty() && text.front() == '-') {
    negate = true;
    text.remove_prefix(1);
  }
  if (text.empty()) throw fail();
  std::vector<std::uint32_t> coeffs(f.degree(), 0);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('+', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view term = text.substr(pos, end - pos);
    if (term.empty()) throw fail();
    std::uint64_t coeff = 1;
    std::size_t power = 0;
    std::size_t tpos = term.find('t');
    std::string_view num = term.substr(0, tpos);
    if (!num.empty()) {
      coeff = 0;
      for (char ch : num) {
        if (ch < '0' || ch > '9') throw fail();
        coeff = coeff * 10 + static_cast<std::uint64_t>(ch - '0');
        if (coeff > (1ull << 40)) throw fail();
      }
    } else if (tpos == std::string_view::npos) {
      throw fail();
    }
    if (tpos != std::string_view::npos) {
      power = 1;
      std::string_view rest = term.substr(tpos + 1);
      if (!rest.empty()) {
        if (rest.front() != '^' || rest.size() < 2) throw fail();
        power = 0;
        for (char ch : rest.substr(1)) {
          if (ch < '0' || ch > '9') throw fail();
          power = power * 10 + static_cast<std::size_t>(ch - '0');
          if (power > 64) throw fail();
        }
      }
    }
    if (power >= f.degree()) throw fail();
    coeffs[power] = static_cast<std::uint32_t>((coeffs[power] + coeff) % f.characteristic());
    pos = end + 1;
    if (end == text.size()) break;
    if (pos == text.size()) throw fail();
  }
  FieldElement x = f.from_coefficients(coeffs);
  return negate ? -x : x;
}

/// Field spec strings: "gf(q)" for built-ins, "gf(p,k,c_0,...,c_k)" with
/// an explicit modulus, constant term first.
inline Field parse_field(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("cannot parse field spec '" + std::string(text) + "'"); };
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (s.size() < 5 || s.rfind("gf(", 0) != 0 || s.back() != ')') throw fail();
  std::vector<std::uint32_t> nums;
  std::string body = s.substr(3, s.size() - 4);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t end = body.find(',', pos);
    if (end == std::string::npos) end = body.size();
    std::string tok = body.substr(pos, end - pos);
    if (tok.empty() || tok.size() > 9 || tok.find_first_not_of("0123456789") != std::string::npos) throw fail();
    nums.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    pos = end + 1;
  }
  if (nums.size() == 1) return Field::gf(nums[0]);
  if (nums.size() == 2) return Field::make(nums[0], nums[1]);
  if (nums.size() != nums[1] + 3) throw fail();
  return Field::make(nums[0], nums[1], std::vector<std::uint32_t>(nums.begin() + 2, nums.end()));
}

// ---------------------------------------------------------------------------
// Exact rationals

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers is intended
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  friend Rational operator+(Rational a, Rational b) { return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_}; }
  friend Rational operator-(Rational a, Rational b) { return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_}; }
  friend Rational operator-(Rational a) { return {-a.num_, a.den_}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
  friend Rational operator/(Rational a, Rational b) { return a * inv(b); }
  friend Rational inv(Rational a) {
    if (a.num_ == 0) throw std::domain_error("rational: division by zero");
    return {a.den_, a.num_};
  }
  friend bool operator==(Rational a, Rational b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator<(Rational a, Rational b) { return a.num_ * b.den_ < b.num_ * a.den_; }
  friend Rational zero_like(Rational) { return {}; }
  friend Rational one_like(Rational) { return {1}; }

  friend std::string to_string(Rational r) {
    return r.den_ == 1 ? std::to_string(r.num_) : std::to_string(r.num_) + "/" + std::to_string(r.den_);
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Element of (1/2)Z. Closed under + and -; a product or inverse that
/// leaves (1/2)Z is reported as a domain error.
class HalfInteger {
 public:
  HalfInteger() = default;
  HalfInteger(std::int64_t n) : twice_(2 * n) {}  // NOLINT
  static HalfInteger halves(std::int64_t h) {
    HalfInteger x;
    x.twice_ = h;
    return x;
  }
  static HalfInteger from_rational(Rational r) {
    if (r.den() == 1) return HalfInteger(r.num());
    if (r.den() == 2) return halves(r.num());
    throw std::domain_error("half-integer: " + to_string(r) + " is not in (1/2)Z");
  }

  std::int64_t numerator() const { return twice_ % 2 == 0 ? twice_ / 2 : twice_; }
  std::int64_t denominator() const { return twice_ % 2 == 0 ? 1 : 2; }
  std::int64_t twice() const { return twice_; }
  Rational to_rational() const { return {numerator(), denominator()}; }

  friend HalfInteger operator+(HalfInteger a, HalfInteger b) { return halves(a.twice_ + b.twice_); }
  friend HalfInteger operator-(HalfInteger a, HalfInteger b) { return halves(a.twice_ - b.twice_); }
  friend HalfInteger operator-(HalfInteger a) { return halves(-a.twice_); }
  friend HalfInteger operator*(HalfInteger a, HalfInteger b) { return from_rational(a.to_rational() * b.to_rational()); }
  friend HalfInteger inv(HalfInteger a) { return from_rational(inv(a.to_rational())); }
  friend bool operator==(HalfInteger a, HalfInteger b) { return a.twice_ == b.twice_; }
  friend bool operator<(HalfInteger a, HalfInteger b) { return a.twice_ < b.twice_; }
  friend HalfInteger zero_like(HalfInteger) { return {}; }
  friend HalfInteger one_like(HalfInteger) { return {1}; }

  friend std::string to_string(HalfInteger x) {
    return x.denominator() == 1 ? std::to_string(x.numerator()) : std::to_string(x.numerator()) + "/2";
  }

 private:
  std::int64_t twice_ = 0;
};

}  // namespace moufang
