#pragma once

// Composition algebras: Zorn vector matrices (the split octonions) and a
// generic Cayley-Dickson doubling, both parametrised by the scalar type.

#include <array>
#include <concepts>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "moufang/fields.hpp"

namespace moufang {

/// Scalars usable by the composition layer: ring operations, inverses and
/// zero/one recoverable from any existing value.
template <class S>
concept Scalar = std::equality_comparable<S> && requires(S a, S b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { inv(a) } -> std::convertible_to<S>;
  { zero_like(a) } -> std::convertible_to<S>;
  { one_like(a) } -> std::convertible_to<S>;
};

template <Scalar S>
using Vec3 = std::array<S, 3>;

template <Scalar S>
S dot(const Vec3<S>& u, const Vec3<S>& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

template <Scalar S>
Vec3<S> cross(const Vec3<S>& u, const Vec3<S>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

template <Scalar S>
Vec3<S> operator+(const Vec3<S>& u, const Vec3<S>& v) {
  return {u[0] + v[0], u[1] + v[1], u[2] + v[2]};
}
template <Scalar S>
Vec3<S> operator-(const Vec3<S>& u, const Vec3<S>& v) {
  return {u[0] - v[0], u[1] - v[1], u[2] - v[2]};
}
template <Scalar S>
Vec3<S> operator-(const Vec3<S>& u) {
  return {-u[0], -u[1], -u[2]};
}
template <Scalar S>
Vec3<S> scale(const S& c, const Vec3<S>& u) {
  return {c * u[0], c * u[1], c * u[2]};
}

/// Zorn vector matrix [a, alpha; beta, b]. Coordinates are ordered
/// (a, alpha_1, alpha_2, alpha_3, beta_1, beta_2, beta_3, b).
template <Scalar S>
struct Zorn {
  S a{};
  Vec3<S> alpha{};
  Vec3<S> beta{};
  S b{};

  static Zorn zero(const S& like) {
    const S z = zero_like(like);
    return {z, {z, z, z}, {z, z, z}, z};
  }
  static Zorn identity(const S& like) {
    Zorn x = zero(like);
    x.a = x.b = one_like(like);
    return x;
  }
  static Zorn from_coords(const std::array<S, 8>& c) {
    return {c[0], {c[1], c[2], c[3]}, {c[4], c[5], c[6]}, c[7]};
  }
  std::array<S, 8> coords() const {
    return {a, alpha[0], alpha[1], alpha[2], beta[0], beta[1], beta[2], b};
  }

  friend bool operator==(const Zorn&, const Zorn&) = default;

  friend Zorn operator+(const Zorn& x, const Zorn& y) { return {x.a + y.a, x.alpha + y.alpha, x.beta + y.beta, x.b + y.b}; }
  friend Zorn operator-(const Zorn& x, const Zorn& y) { return {x.a - y.a, x.alpha - y.alpha, x.beta - y.beta, x.b - y.b}; }
  friend Zorn operator-(const Zorn& x) { return {-x.a, -x.alpha, -x.beta, -x.b}; }
  friend Zorn operator*(const S& c, const Zorn& x) { return {c * x.a, scale(c, x.alpha), scale(c, x.beta), c * x.b}; }

  /// Zorn's product rule.
  friend Zorn operator*(const Zorn& x, const Zorn& y) {
    return {
        x.a * y.a + dot(x.alpha, y.beta),
        scale(x.a, y.alpha) + scale(y.b, x.alpha) - cross(x.beta, y.beta),
        scale(y.a, x.beta) + scale(x.b, y.beta) + cross(x.alpha, y.alpha),
        dot(x.beta, y.alpha) + x.b * y.b,
    };
  }
};

/// The norm: the "determinant" ab - alpha.beta.
template <Scalar S>
S norm(const Zorn<S>& x) {
  return x.a * x.b - dot(x.alpha, x.beta);
}

template <Scalar S>
Zorn<S> conjugate(const Zorn<S>& x) {
  return {x.b, -x.alpha, -x.beta, x.a};
}

/// Polarisation <x,y> = N(x+y) - N(x) - N(y).
template <Scalar S>
S bilinear_polarized(const Zorn<S>& x, const Zorn<S>& y) {
  return norm(x + y) - norm(x) - norm(y);
}

/// Gram matrix of the norm form in the (x_0..x_7) coordinates.
template <Scalar S>
std::array<std::array<S, 8>, 8> gram_matrix(const S& like) {
  const S z = zero_like(like), o = one_like(like);
  std::array<std::array<S, 8>, 8> j;
  for (auto& row : j) row.fill(z);
  j[0][7] = j[7][0] = o;
  for (int i = 1; i <= 3; ++i) j[i][i + 3] = j[i + 3][i] = -o;
  return j;
}

/// <x,y> = x^t J y.
template <Scalar S>
S bilinear(const Zorn<S>& x, const Zorn<S>& y) {
  const auto u = x.coords();
  const auto v = y.coords();
  const auto j = gram_matrix(x.a);
  S acc = zero_like(x.a);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c)
      if (!(j[r][c] == zero_like(x.a))) acc = acc + u[r] * j[r][c] * v[c];
  return acc;
}

/// Lexicographic order on coordinates under the scalar's canonical order.
template <Scalar S>
bool coords_less(const Zorn<S>& x, const Zorn<S>& y) {
  const auto u = x.coords(), v = y.coords();
  for (int i = 0; i < 8; ++i) {
    if (u[i] < v[i]) return true;
    if (v[i] < u[i]) return false;
  }
  return false;
}

namespace detail {

/// First nonzero vector of the null-space basis of the rows (each a 3-vector),
/// obtained from the reduced row echelon form with free variables in index
/// order. The system has at most two equations, so a nonzero solution exists.
template <Scalar S>
Vec3<S> first_null_vector(std::vector<Vec3<S>> rows, const S& like) {
  const S z = zero_like(like), o = one_like(like);
  std::array<int, 3> pivot_row{-1, -1, -1};
  std::size_t r = 0;
  for (int c = 0; c < 3 && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == z) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const S s = inv(rows[r][c]);
    for (auto& e : rows[r]) e = e * s;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == z) continue;
      const S f = rows[i][c];
      for (int k = 0; k < 3; ++k) rows[i][k] = rows[i][k] - f * rows[r][k];
    }
    pivot_row[c] = static_cast<int>(r);
    ++r;
  }
  for (int free = 0; free < 3; ++free) {
    if (pivot_row[free] >= 0) continue;
    Vec3<S> v{z, z, z};
    v[free] = o;
    for (int c = 0; c < 3; ++c)
      if (pivot_row[c] >= 0) v[c] = -rows[pivot_row[c]][free];
    return v;
  }
  throw std::logic_error("first_null_vector: system has full rank");
}

template <Scalar S>
int first_nonzero(const Vec3<S>& v) {
  for (int i = 0; i < 3; ++i)
    if (!(v[i] == zero_like(v[i]))) return i;
  return -1;
}

}  // namespace detail

/// Writes x as a sum u + v of two norm-one elements, following the
/// constructive argument: u = [1, gamma; delta, 1] with gamma.beta (or
/// delta.alpha) hitting a + b - ab + alpha.beta and the other vector taken
/// orthogonal to both constraints; the diagonal case uses a fixed split.
template <Scalar S>
std::pair<Zorn<S>, Zorn<S>> decompose_sum_two_units(const Zorn<S>& x) {
  const S z = zero_like(x.a), o = one_like(x.a);
  const S target = x.a + x.b - x.a * x.b + dot(x.alpha, x.beta);
  Vec3<S> gamma{z, z, z}, delta{z, z, z};
  if (int i = detail::first_nonzero(x.beta); i >= 0) {
    gamma[i] = target * inv(x.beta[i]);
    delta = detail::first_null_vector<S>({gamma, x.alpha}, x.a);
  } else if (int j = detail::first_nonzero(x.alpha); j >= 0) {
    delta[j] = target * inv(x.alpha[j]);
    gamma = detail::first_null_vector<S>({delta, x.beta}, x.a);
  } else {
    Zorn<S> u{x.a, {o, z, z}, {-o, z, z}, z};
    Zorn<S> v{z, {-o, z, z}, {o, z, z}, x.b};
    return {u, v};
  }
  Zorn<S> u{o, gamma, delta, o};
  return {u, x - u};
}

// ---------------------------------------------------------------------------
// Cayley-Dickson doubling

/// An algebra obtained from the scalars by repeated doubling. Elements are
/// coordinate vectors of length dimension(); the coordinates of a double
/// (x, y) are those of x followed by those of y.
template <Scalar S>
class CDAlgebra {
 public:
  using Element = std::vector<S>;

  /// The scalars themselves: dimension 1, trivial conjugation, N(x) = x^2.
  static CDAlgebra base(const S& like) { return CDAlgebra(one_like(like), {}); }

  std::size_t dimension() const { return std::size_t{1} << lambdas_.size(); }
  const std::vector<S>& parameters() const { return lambdas_; }

  Element zero() const { return Element(dimension(), zero_like(one_)); }
  Element unit() const { return basis(0); }
  Element basis(std::size_t i) const {
    Element e = zero();
    e.at(i) = one_;
    return e;
  }

  Element multiply(const Element& x, const Element& y) const {
    check(x);
    check(y);
    return mul(x, y, lambdas_.size());
  }
  Element conjugate(const Element& x) const {
    check(x);
    return conj(x, lambdas_.size());
  }
  S norm(const Element& x) const {
    check(x);
    return nrm(x, lambdas_.size());
  }
  Element add(const Element& x, const Element& y) const {
    Element r(x.size(), zero_like(one_));
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
  }

  template <Scalar T>
  friend CDAlgebra<T> cd_double(const CDAlgebra<T>& base, const T& lambda);

 private:
  CDAlgebra(S one, std::vector<S> lambdas) : one_(std::move(one)), lambdas_(std::move(lambdas)) {}

  void check(const Element& x) const {
    if (x.size() != dimension()) throw std::invalid_argument("cd algebra: element has wrong dimension");
  }

  static Element concat(const Element& a, const Element& b) {
    Element r(a);
    r.insert(r.end(), b.begin(), b.end());
    return r;
  }
  static std::pair<Element, Element> split(const Element& x) {
    const auto h = x.size() / 2;
    return {Element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(h)),
            Element(x.begin() + static_cast<std::ptrdiff_t>(h), x.end())};
  }
  static Element plus(const Element& a, const Element& b) {
    Element r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
    return r;
  }
  static Element times(const S& c, const Element& a) {
    Element r(a);
    for (auto& v : r) v = c * v;
    return r;
  }

  // (x,y)(u,v) = (xu + lambda v*y, vx + y u*), * the conjugation one level down.
  Element mul(const Element& p, const Element& q, std::size_t level) const {
    if (level == 0) return {p[0] * q[0]};
    const S& lambda = lambdas_[level - 1];
    auto [x, y] = split(p);
    auto [u, v] = split(q);
    Element first = plus(mul(x, u, level - 1), times(lambda, mul(conj(v, level - 1), y, level - 1)));
    Element second = plus(mul(v, x, level - 1), mul(y, conj(u, level - 1), level - 1));
    return concat(first, second);
  }
  Element conj(const Element& p, std::size_t level) const {
    if (level == 0) return p;
    auto [x, y] = split(p);
    Element cy(y);
    for (auto& c : cy) c = -c;
    return concat(conj(x, level - 1), cy);
  }
  // (x,y)M = xN - lambda (yN)
  S nrm(const Element& p, std::size_t level) const {
    if (level == 0) return p[0] * p[0];
    auto [x, y] = split(p);
    return nrm(x, level - 1) - lambdas_[level - 1] * nrm(y, level - 1);
  }

  S one_;
  std::vector<S> lambdas_;
};

/// One Cayley-Dickson step with parameter lambda.
template <Scalar S>
CDAlgebra<S> cd_double(const CDAlgebra<S>& base, const S& lambda) {
  if (lambda == zero_like(lambda)) throw std::invalid_argument("cd_double: parameter must be nonzero");
  if (base.dimension() >= 8) throw std::invalid_argument("cd_double: composition algebras stop at dimension 8");
  auto ls = base.lambdas_;
  ls.push_back(lambda);
  return CDAlgebra<S>(base.one_, std::move(ls));
}

using ZornF = Zorn<FieldElement>;

// ---------------------------------------------------------------------------
// Text form "[a|a1,a2,a3|b1,b2,b3|b]"

inline std::string to_string(const Zorn<FieldElement>& x) {
  auto c = x.coords();
  std::string s = "[" + to_string(c[0]) + "|";
  for (int i = 1; i <= 3; ++i) s += to_string(c[i]) + (i < 3 ? "," : "|");
  for (int i = 4; i <= 6; ++i) s += to_string(c[i]) + (i < 6 ? "," : "|");
  return s + to_string(c[7]) + "]";
}

inline Zorn<FieldElement> parse_zorn(const Field& f, std::string_view text) {
  auto fail = [&] { return std::invalid_argument("cannot parse Zorn matrix '" + std::string(text) + "'"); };
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw fail();
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    auto end = s.find_first_of("|,", pos);
    parts.push_back(s.substr(pos, end == std::string::npos ? std::string::npos : end - pos));
    if (end == std::string::npos) break;
    const bool bar = s[end] == '|';
    const std::size_t idx = parts.size();  // separator after token idx-1
    const bool expect_bar = idx == 1 || idx == 4 || idx == 7;
    if (bar != expect_bar) throw fail();
    pos = end + 1;
  }
  if (parts.size() != 8) throw fail();
  std::array<FieldElement, 8> c;
  for (int i = 0; i < 8; ++i) c[i] = parse_element(f, parts[i]);
  return Zorn<FieldElement>::from_coords(c);
}

}  // namespace moufang
