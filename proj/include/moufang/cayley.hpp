#pragma once

// Classical real octonions at half-integer precision, the 240 integral
// units generated by {+-1, +-i, +-j, h} and their quotient by {1,-1}.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "moufang/composition.hpp"
#include "moufang/fields.hpp"
#include "moufang/loops.hpp"
#include "moufang/paige.hpp"

namespace moufang {

/// Coordinates over (1, i, j, k, e, ie, je, ke).
using ClassicalOctonion = std::array<HalfInteger, 8>;

namespace detail {

inline const CDAlgebra<Rational>& classical_algebra() {
  static const CDAlgebra<Rational> a = [] {
    auto c = cd_double(CDAlgebra<Rational>::base(Rational(1)), Rational(-1));
    auto h = cd_double(c, Rational(-1));
    return cd_double(h, Rational(-1));
  }();
  return a;
}

inline std::vector<Rational> to_rational(const ClassicalOctonion& x) {
  std::vector<Rational> r;
  for (const auto& v : x) r.push_back(v.to_rational());
  return r;
}

inline ClassicalOctonion from_rational(const std::vector<Rational>& r) {
  ClassicalOctonion x;
  for (int i = 0; i < 8; ++i) x[i] = HalfInteger::from_rational(r[i]);
  return x;
}

struct OctonionHash {
  std::size_t operator()(const ClassicalOctonion& x) const {
    std::size_t h = 0;
    for (const auto& v : x) h = h * 131 + static_cast<std::size_t>(v.twice() + 7);
    return h;
  }
};

}  // namespace detail

/// Product in the algebra obtained from Q by three doublings with lambda = -1.
inline ClassicalOctonion classical_mul(const ClassicalOctonion& x, const ClassicalOctonion& y) {
  return detail::from_rational(detail::classical_algebra().multiply(detail::to_rational(x), detail::to_rational(y)));
}

inline ClassicalOctonion classical_conjugate(const ClassicalOctonion& x) {
  ClassicalOctonion r = x;
  for (int i = 1; i < 8; ++i) r[i] = -r[i];
  return r;
}

inline Rational classical_norm(const ClassicalOctonion& x) { return detail::classical_algebra().norm(detail::to_rational(x)); }

/// x + conj(x), the first coordinate doubled.
inline Rational classical_trace(const ClassicalOctonion& x) { return (x[0] + x[0]).to_rational(); }

inline ClassicalOctonion classical_basis(int i) {
  ClassicalOctonion x{};
  x.at(i) = HalfInteger(1);
  return x;
}

inline ClassicalOctonion operator-(const ClassicalOctonion& x) {
  ClassicalOctonion r;
  for (int i = 0; i < 8; ++i) r[i] = -x[i];
  return r;
}

/// h = (i + j + k + e)/2.
inline ClassicalOctonion coxeter_h() {
  ClassicalOctonion h{};
  for (int i = 1; i <= 4; ++i) h[i] = HalfInteger::halves(1);
  return h;
}

inline std::string to_string(const ClassicalOctonion& x) {
  std::string s = "(";
  for (int i = 0; i < 8; ++i) s += (i ? "," : "") + to_string(x[i]);
  return s + ")";
}

/// Multiplicative closure of {1, -1, i, -i, j, -j, h}, numbered by
/// discovery order. Throws length_error past 240 elements.
inline std::vector<ClassicalOctonion> generate_unit_integrals() {
  const ClassicalOctonion one = classical_basis(0), i = classical_basis(1), j = classical_basis(2);
  std::vector<ClassicalOctonion> gens{-one, i, -i, j, -j, coxeter_h()};
  auto r = closure(gens, one, classical_mul, 240, std::nullopt, detail::OctonionHash{});
  return r.elements;
}

/// The representative of {x, -x} that is lexicographically larger (first
/// nonzero coordinate positive).
inline ClassicalOctonion sign_canonical(const ClassicalOctonion& x) {
  for (const auto& v : x) {
    if (v.twice() > 0) return x;
    if (v.twice() < 0) return -x;
  }
  return x;
}

/// The 240 units modulo {1, -1} as a 120-element loop; labels are the
/// canonical representatives.
inline FiniteLoop quotient_mod_sign(const std::vector<ClassicalOctonion>& units) {
  std::vector<ClassicalOctonion> reps;
  std::unordered_map<ClassicalOctonion, Index, detail::OctonionHash> index;
  for (const auto& u : units) {
    const auto c = sign_canonical(u);
    if (index.emplace(c, static_cast<Index>(reps.size())).second) reps.push_back(c);
  }
  const std::size_t n = reps.size();
  std::vector<Index> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(sign_canonical(classical_mul(reps[a], reps[b])));
      if (it == index.end()) throw std::logic_error("quotient_mod_sign: units are not closed under multiplication");
      t[a * n + b] = it->second;
    }
  std::vector<std::string> labels;
  for (const auto& r : reps) labels.push_back(to_string(r));
  return FiniteLoop::from_table(std::move(labels), std::move(t));
}

inline FiniteLoop quotient_mod_sign() { return quotient_mod_sign(generate_unit_integrals()); }

struct Paige2Certificate {
  LoopMorphismWitness witness;  // quotient -> M*(2)
  std::size_t generated_by_ijh = 0;
};

/// Verified isomorphism J'/{1,-1} -> M*(2) together with the size of the
/// subloop generated by the images of i, j and h. Throws if none exists.
inline Paige2Certificate certify_paige2_iso(const FiniteLoop& quotient) {
  const auto m2 = paige_loop(2);
  auto w = find_isomorphism(quotient, m2.loop);
  if (!w || !verify_isomorphism(quotient, m2.loop, w->map))
    throw std::logic_error("certify_paige2_iso: no isomorphism with M*(2)");
  std::vector<Index> gens;
  for (const auto& g : {classical_basis(1), classical_basis(2), coxeter_h()}) {
    auto idx = quotient.index_of(to_string(sign_canonical(g)));
    if (!idx) throw std::logic_error("certify_paige2_iso: generator missing from the quotient");
    gens.push_back(*idx);
  }
  return {*w, subloop_generated(quotient, gens).size()};
}

}  // namespace moufang
