#pragma once

// The loop M(q) of norm-one Zorn matrices over GF(q) and the Paige loop
// M*(q) = M(q)/{e,-e}.

#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "moufang/composition.hpp"
#include "moufang/fields.hpp"
#include "moufang/loops.hpp"

namespace moufang {

/// q^3(q^4-1): order of M(q).
inline std::uint64_t unit_loop_order_formula(std::uint64_t q) { return q * q * q * (q * q * q * q - 1); }

/// q^3(q^4-1)/gcd(2,q-1): order of M*(q).
inline std::uint64_t paige_order_formula(std::uint64_t q) { return unit_loop_order_formula(q) / std::gcd<std::uint64_t>(2, q - 1); }

/// Integer encoding of Zorn matrices: base-q digits with x0 most
/// significant, so numeric order is coordinate-lexicographic order.
class ZornCodec {
 public:
  explicit ZornCodec(Field f) : f_(f), q_(f.order()) {}

  const Field& field() const { return f_; }
  std::uint64_t space_size() const {
    std::uint64_t s = 1;
    for (int i = 0; i < 8; ++i) s *= q_;
    return s;
  }

  std::uint64_t encode(const ZornF& x) const {
    std::uint64_t c = 0;
    for (const auto& v : x.coords()) c = c * q_ + v.code();
    return c;
  }
  ZornF decode(std::uint64_t c) const {
    std::array<FieldElement, 8> v;
    for (int i = 7; i >= 0; --i) {
      v[i] = f_.element(static_cast<std::uint32_t>(c % q_));
      c /= q_;
    }
    return ZornF::from_coords(v);
  }
  /// Code of the coordinate-lexicographically smaller of x and -x.
  std::uint64_t canonical(const ZornF& x) const { return std::min(encode(x), encode(-x)); }

 private:
  Field f_;
  std::uint64_t q_;
};

/// A built M(q) or M*(q): the loop plus the Zorn code of every element.
struct PaigeLoop {
  Field field;
  bool projective = true;  // true for M*(q)
  FiniteLoop loop;
  std::vector<std::uint64_t> codes;

  ZornF element(Index i) const { return ZornCodec(field).decode(codes.at(i)); }
  std::optional<Index> index_of(const ZornF& x) const {
    auto c = ZornCodec(field);
    return loop.index_of(to_string(projective ? c.decode(c.canonical(x)) : x));
  }
  std::string name() const { return std::string(projective ? "M*(" : "M(") + std::to_string(field.order()) + ")"; }
};

namespace detail {

/// Code -> index lookup: a dense vector when the coordinate space is small.
class CodeIndex {
 public:
  CodeIndex(const std::vector<std::uint64_t>& codes, std::uint64_t space) {
    if (space <= (1u << 24)) {
      dense_.assign(space, none);
      for (std::size_t i = 0; i < codes.size(); ++i) dense_[codes[i]] = static_cast<Index>(i);
    } else {
      for (std::size_t i = 0; i < codes.size(); ++i) sparse_.emplace(codes[i], static_cast<Index>(i));
    }
  }
  Index at(std::uint64_t code) const {
    Index r = none;
    if (!dense_.empty()) {
      r = dense_[code];
    } else if (auto it = sparse_.find(code); it != sparse_.end()) {
      r = it->second;
    }
    if (r == none) throw std::logic_error("paige: product left the element set");
    return r;
  }

 private:
  static constexpr Index none = static_cast<Index>(-1);
  std::vector<Index> dense_;
  std::unordered_map<std::uint64_t, Index> sparse_;
};

inline PaigeLoop assemble(Field f, bool projective, std::vector<std::uint64_t> codes) {
  ZornCodec codec(f);
  auto idx = std::make_shared<CodeIndex>(codes, codec.space_size());
  auto cs = std::make_shared<const std::vector<std::uint64_t>>(codes);
  auto key = [codec, projective](const ZornF& x) { return projective ? codec.canonical(x) : codec.encode(x); };
  auto mul = [codec, idx, cs, key](Index x, Index y) { return idx->at(key(codec.decode((*cs)[x]) * codec.decode((*cs)[y]))); };
  // Inverse property: x\z = conj(x) z and z/y = z conj(y).
  auto ldiv = [codec, idx, cs, key](Index x, Index z) {
    return idx->at(key(conjugate(codec.decode((*cs)[x])) * codec.decode((*cs)[z])));
  };
  auto rdiv = [codec, idx, cs, key](Index z, Index y) {
    return idx->at(key(codec.decode((*cs)[z]) * conjugate(codec.decode((*cs)[y]))));
  };
  std::vector<std::string> labels;
  labels.reserve(codes.size());
  for (auto c : codes) labels.push_back(to_string(codec.decode(c)));
  const Index e = idx->at(key(ZornF::identity(f.one())));
  PaigeLoop out{f, projective, FiniteLoop::from_functions(std::move(labels), e, mul, ldiv, rdiv), std::move(codes)};
  return out;
}

inline void check_exhaustive(std::uint32_t q) {
  if (q > 5) throw std::invalid_argument("paige: exhaustive enumeration is limited to q <= 5; use closure mode");
}

}  // namespace detail

/// Codes of all norm-one Zorn matrices (canonical representatives only when
/// `projective`), in increasing code order.
inline std::vector<std::uint64_t> enumerate_norm_one(const Field& f, bool projective) {
  ZornCodec codec(f);
  std::vector<std::uint64_t> out;
  const FieldElement one = f.one();
  for (std::uint64_t c = 0; c < codec.space_size(); ++c) {
    ZornF x = codec.decode(c);
    if (!(norm(x) == one)) continue;
    if (projective && codec.canonical(x) != c) continue;
    out.push_back(c);
  }
  return out;
}

/// M(q) by exhaustive enumeration.
inline PaigeLoop unit_loop(std::uint32_t q) {
  detail::check_exhaustive(q);
  Field f = Field::gf(q);
  return detail::assemble(f, false, enumerate_norm_one(f, false));
}

/// M*(q) by exhaustive enumeration.
inline PaigeLoop paige_loop(std::uint32_t q) {
  detail::check_exhaustive(q);
  Field f = Field::gf(q);
  return detail::assemble(f, true, enumerate_norm_one(f, true));
}

/// The three generators of M*(q): for q > 2, [0,e1;-e1,l], [0,e2;-e2,l],
/// [l,0;0,l^-1] with l the canonical primitive element; for q = 2 the
/// triple [1,e1;e1,0], [1,e2;e2,0], [0,e3;e3,1].
inline std::array<ZornF, 3> standard_generators(std::uint32_t q) {
  Field f = Field::gf(q);
  const FieldElement z = f.zero(), o = f.one();
  std::array<ZornF, 3> g;
  if (q == 2) {
    g = {ZornF{o, {o, z, z}, {o, z, z}, z}, ZornF{o, {z, o, z}, {z, o, z}, z}, ZornF{z, {z, z, o}, {z, z, o}, o}};
  } else {
    const FieldElement l = f.primitive_element();
    g = {ZornF{z, {o, z, z}, {-o, z, z}, l}, ZornF{z, {z, o, z}, {z, -o, z}, l}, ZornF{l, {z, z, z}, {z, z, z}, inv(l)}};
  }
  for (const auto& x : g)
    if (!(norm(x) == o)) throw std::logic_error("standard_generators: generator does not have norm one");
  return g;
}

struct PaigeClosure {
  PaigeLoop loop;
  bool stopped_at_universe = false;
  std::optional<std::uint64_t> universe;
};

/// M*(q) generated from explicit generators, without enumerating the whole
/// coordinate space. `universe` (when given) must be the exact order of the
/// ambient M*(q); reaching it ends the closure early.
inline PaigeClosure paige_closure(const Field& f, const std::vector<ZornF>& gens, std::size_t cap,
                                  std::optional<std::uint64_t> universe = std::nullopt) {
  ZornCodec codec(f);
  std::vector<std::uint64_t> g;
  for (const auto& x : gens) {
    if (!(norm(x) == f.one())) throw std::invalid_argument("paige_closure: generators must have norm one");
    g.push_back(codec.canonical(x));
  }
  auto mul = [&](std::uint64_t a, std::uint64_t b) { return codec.canonical(codec.decode(a) * codec.decode(b)); };
  auto r = closure(g, codec.canonical(ZornF::identity(f.one())), mul, cap,
                   universe ? std::optional<std::size_t>(*universe) : std::nullopt);
  return {detail::assemble(f, true, std::move(r.elements)), r.stopped_at_universe, universe};
}

/// Closure of the standard generators. For q <= 5 the universe bound is the
/// exhaustively counted order of M*(q); above that it is the order formula,
/// so the size then reflects the formula rather than an independent count.
inline PaigeClosure paige_loop_from_generators(std::uint32_t q, std::size_t cap = 200000) {
  Field f = Field::gf(q);
  auto g = standard_generators(q);
  std::uint64_t universe = q <= 5 ? enumerate_norm_one(f, true).size() : paige_order_formula(q);
  return paige_closure(f, {g[0], g[1], g[2]}, cap, universe);
}

/// Coordinatewise x -> x^p.
inline ZornF frobenius_map(const ZornF& x) {
  const auto p = x.a.field().characteristic();
  auto c = x.coords();
  for (auto& v : c) v = v.pow(p);
  return ZornF::from_coords(c);
}

}  // namespace moufang
