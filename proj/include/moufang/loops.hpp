#pragma once

// Finite loops: tables or oracles, closure, translations, Mlt/Inn, the
// characteristic subloops, normality, simplicity, Moufang checks and an
// isomorphism search.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "moufang/permgrp.hpp"

namespace moufang {

using Index = std::uint32_t;

/// Default sampling seed for every randomized check.
inline constexpr std::uint64_t default_seed = 0x5EED;

class FiniteLoop {
 public:
  using BinOp = std::function<Index(Index, Index)>;
  static constexpr std::size_t table_limit = 2048;

  FiniteLoop() = default;

  /// Loop from a row-major Cayley table. The neutral element is located and
  /// the Latin-square property is verified.
  static FiniteLoop from_table(std::vector<std::string> labels, std::vector<Index> table) {
    const std::size_t n = labels.size();
    if (n == 0) throw std::invalid_argument("loop: empty element set");
    if (table.size() != n * n) throw std::invalid_argument("loop: table must have n*n entries");
    auto d = std::make_shared<Data>();
    d->n = n;
    d->labels = std::move(labels);
    d->table = std::move(table);
    d->ldiv.assign(n * n, 0);
    d->rdiv.assign(n * n, 0);
    std::vector<char> row(n), col(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::fill(row.begin(), row.end(), 0);
      std::fill(col.begin(), col.end(), 0);
      for (std::size_t y = 0; y < n; ++y) {
        const Index r = d->table[x * n + y], c = d->table[y * n + x];
        if (r >= n || c >= n || row[r] || col[c]) throw std::invalid_argument("loop: table is not a Latin square");
        row[r] = col[c] = 1;
        d->ldiv[x * n + r] = static_cast<Index>(y);  // x\r = y
        d->rdiv[c * n + x] = static_cast<Index>(y);  // c/x = y
      }
    }
    std::optional<Index> e;
    for (std::size_t x = 0; x < n && !e; ++x) {
      bool ok = true;
      for (std::size_t y = 0; y < n && ok; ++y) ok = d->table[x * n + y] == y && d->table[y * n + x] == y;
      if (ok) e = static_cast<Index>(x);
    }
    if (!e) throw std::invalid_argument("loop: table has no neutral element");
    d->neutral = *e;
    d->index_labels();
    return FiniteLoop(std::move(d));
  }

  /// Loop given by multiplication and division oracles; used above the
  /// table threshold. The oracles must be safe for concurrent reads.
  static FiniteLoop from_oracle(std::vector<std::string> labels, Index neutral, BinOp mul, BinOp ldiv, BinOp rdiv) {
    auto d = std::make_shared<Data>();
    d->n = labels.size();
    d->labels = std::move(labels);
    d->neutral = neutral;
    d->mul = std::move(mul);
    d->ldiv_fn = std::move(ldiv);
    d->rdiv_fn = std::move(rdiv);
    d->index_labels();
    return FiniteLoop(std::move(d));
  }

  /// Table when small enough, otherwise an oracle over the given functions.
  static FiniteLoop from_functions(std::vector<std::string> labels, Index neutral, const BinOp& mul, BinOp ldiv,
                                   BinOp rdiv) {
    const std::size_t n = labels.size();
    if (n > table_limit) return from_oracle(std::move(labels), neutral, mul, std::move(ldiv), std::move(rdiv));
    std::vector<Index> t(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) t[x * n + y] = mul(static_cast<Index>(x), static_cast<Index>(y));
    return from_table(std::move(labels), std::move(t));
  }

  std::size_t size() const { return d_->n; }
  Index neutral() const { return d_->neutral; }
  bool has_table() const { return !d_->table.empty(); }
  const std::vector<Index>& table() const { return d_->table; }
  const std::string& label(Index x) const { return d_->labels.at(x); }
  const std::vector<std::string>& labels() const { return d_->labels; }
  std::optional<Index> index_of(const std::string& label) const {
    auto it = d_->by_label.find(label);
    if (it == d_->by_label.end()) return std::nullopt;
    return it->second;
  }

  Index mul(Index x, Index y) const { return has_table() ? d_->table[x * d_->n + y] : d_->mul(x, y); }
  /// x\z: the y with xy = z.
  Index ldiv(Index x, Index z) const { return has_table() ? d_->ldiv[x * d_->n + z] : d_->ldiv_fn(x, z); }
  /// z/y: the x with xy = z.
  Index rdiv(Index z, Index y) const { return has_table() ? d_->rdiv[z * d_->n + y] : d_->rdiv_fn(z, y); }
  Index right_inverse(Index x) const { return ldiv(x, neutral()); }
  Index left_inverse(Index x) const { return rdiv(neutral(), x); }
  /// Two-sided inverse; throws if left and right inverses differ.
  Index inverse(Index x) const {
    const Index r = right_inverse(x);
    if (left_inverse(x) != r) throw std::domain_error("loop: element has no two-sided inverse");
    return r;
  }

  /// Order of x computed through left-nested powers x(x(...x)).
  std::size_t element_order(Index x) const {
    std::size_t k = 1;
    for (Index y = x; y != neutral(); y = mul(x, y)) {
      if (++k > size()) throw std::domain_error("loop: powers of element do not return to the neutral element");
    }
    return k;
  }

 private:
  struct Data {
    std::size_t n = 0;
    Index neutral = 0;
    std::vector<std::string> labels;
    std::unordered_map<std::string, Index> by_label;
    std::vector<Index> table, ldiv, rdiv;
    BinOp mul, ldiv_fn, rdiv_fn;
    void index_labels() {
      by_label.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        if (!by_label.emplace(labels[i], static_cast<Index>(i)).second)
          throw std::invalid_argument("loop: duplicate label '" + labels[i] + "'");
    }
  };
  explicit FiniteLoop(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

// ---------------------------------------------------------------------------
// Cayley table files

inline void write_table(const FiniteLoop& l, std::ostream& out) {
  const std::size_t n = l.size();
  out << n << "\n";
  for (std::size_t i = 0; i < n; ++i) out << (i ? " " : "") << l.label(static_cast<Index>(i));
  out << "\n";
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) out << (y ? " " : "") << l.mul(static_cast<Index>(x), static_cast<Index>(y));
    out << "\n";
  }
}

inline FiniteLoop read_table(std::istream& in) {
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw std::invalid_argument("loop file: bad element count");
  std::vector<std::string> labels(n);
  for (auto& s : labels)
    if (!(in >> s)) throw std::invalid_argument("loop file: missing labels");
  std::vector<Index> t(n * n);
  for (auto& v : t) {
    long long x;
    if (!(in >> x) || x < 0 || static_cast<std::size_t>(x) >= n) throw std::invalid_argument("loop file: bad table entry");
    v = static_cast<Index>(x);
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("loop file: trailing data");
  return FiniteLoop::from_table(std::move(labels), std::move(t));
}

// ---------------------------------------------------------------------------
// Closure

struct ClosureParent {
  static constexpr Index none = static_cast<Index>(-1);
  Index left = none, right = none;  // element = left * right; none for the identity and generators
};

template <class T>
struct ClosureResult {
  std::vector<T> elements;
  std::vector<ClosureParent> parents;
  /// True when the size reached the supplied universe bound and the
  /// saturation sweep was skipped.
  bool stopped_at_universe = false;
};

/// Smallest multiplicatively closed set containing the identity and the
/// generators, numbered in discovery order: identity, generators, the orbit
/// of e under left and right multiplication by generators (breadth first),
/// then a pairwise saturation sweep. If `universe` is given and the set
/// reaches that size, the sweep is skipped: the result is then the whole
/// ambient loop, which the caller must know has exactly `universe` elements.
template <class T, class Mul, class Hash = std::hash<T>>
ClosureResult<T> closure(const std::vector<T>& gens, const T& identity, Mul&& mul, std::size_t cap,
                         std::optional<std::size_t> universe = std::nullopt, Hash hash = Hash{}) {
  if (gens.empty()) throw std::invalid_argument("closure: generator list is empty");
  ClosureResult<T> r;
  std::unordered_map<T, Index, Hash> index(16, hash);
  auto full = [&] { return universe && r.elements.size() >= *universe; };
  auto add = [&](const T& x, ClosureParent p) {
    if (index.count(x)) return;
    if (r.elements.size() >= cap) throw std::length_error("closure: cap of " + std::to_string(cap) + " elements exceeded");
    index.emplace(x, static_cast<Index>(r.elements.size()));
    r.elements.push_back(x);
    r.parents.push_back(p);
  };
  add(identity, {});
  for (const auto& g : gens) add(g, {});
  std::vector<Index> gidx;
  for (const auto& g : gens) gidx.push_back(index.at(g));
  for (std::size_t i = 0; i < r.elements.size() && !full(); ++i)
    for (Index g : gidx) {
      const T left = mul(r.elements[g], r.elements[i]);
      add(left, {g, static_cast<Index>(i)});
      const T right = mul(r.elements[i], r.elements[g]);
      add(right, {static_cast<Index>(i), g});
    }
  if (full()) {
    r.stopped_at_universe = true;
    return r;
  }
  for (std::size_t i = 0; i < r.elements.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      add(mul(r.elements[i], r.elements[j]), {static_cast<Index>(i), static_cast<Index>(j)});
      add(mul(r.elements[j], r.elements[i]), {static_cast<Index>(j), static_cast<Index>(i)});
    }
  return r;
}

/// Subloop of L generated by the given elements, as sorted indices.
inline std::vector<Index> subloop_generated(const FiniteLoop& l, const std::vector<Index>& gens) {
  auto r = closure(gens.empty() ? std::vector<Index>{l.neutral()} : gens, l.neutral(),
                   [&](Index a, Index b) { return l.mul(a, b); }, l.size());
  std::sort(r.elements.begin(), r.elements.end());
  return r.elements;
}

/// Loop structure on a closed subset (sorted indices) of L; labels are kept.
inline FiniteLoop subloop(const FiniteLoop& l, const std::vector<Index>& elems) {
  std::unordered_map<Index, Index> pos;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    pos.emplace(elems[i], static_cast<Index>(i));
    labels.push_back(l.label(elems[i]));
  }
  std::vector<Index> t(elems.size() * elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      auto it = pos.find(l.mul(elems[i], elems[j]));
      if (it == pos.end()) throw std::invalid_argument("subloop: element set is not closed");
      t[i * elems.size() + j] = it->second;
    }
  return FiniteLoop::from_table(std::move(labels), std::move(t));
}

// ---------------------------------------------------------------------------
// Translations and groups

inline Permutation left_translation(const FiniteLoop& l, Index x) {
  return Permutation::from_function(l.size(), [&](Index y) { return l.mul(x, y); });
}
inline Permutation right_translation(const FiniteLoop& l, Index x) {
  return Permutation::from_function(l.size(), [&](Index y) { return l.mul(y, x); });
}

inline PermGroup mlt_group(const FiniteLoop& l) {
  std::vector<Permutation> gens;
  for (Index x = 0; x < l.size(); ++x) {
    if (x == l.neutral()) continue;
    gens.push_back(left_translation(l, x));
    gens.push_back(right_translation(l, x));
  }
  return schreier_sims(gens, l.size());
}

/// Calls f on every defining generator of Inn: L_x L_y L_{yx}^-1,
/// R_x R_y R_{xy}^-1 and R_x L_x^-1 (maps composed left to right).
inline void for_each_inner_generator(const FiniteLoop& l, const std::function<void(const Permutation&)>& f) {
  const std::size_t n = l.size();
  std::vector<Permutation> lt, rt, lti, rti;
  for (Index x = 0; x < n; ++x) {
    lt.push_back(left_translation(l, x));
    rt.push_back(right_translation(l, x));
    lti.push_back(lt.back().inverse());
    rti.push_back(rt.back().inverse());
  }
  for (Index x = 0; x < n; ++x) {
    if (x == l.neutral()) continue;
    for (Index y = 0; y < n; ++y) {
      if (y == l.neutral()) continue;
      f(lt[x] * lt[y] * lti[l.mul(y, x)]);
      f(rt[x] * rt[y] * rti[l.mul(x, y)]);
    }
    f(rt[x] * lti[x]);
  }
}

inline PermGroup inner_mapping_group(const FiniteLoop& l) {
  PermGroup g = schreier_sims({}, l.size());
  std::vector<Permutation> gens;
  // Incremental filtering: only generators outside the current group are kept.
  for_each_inner_generator(l, [&](const Permutation& p) {
    if (p.is_identity() || g.contains(p)) return;
    gens.push_back(p);
    g = schreier_sims(gens, l.size());
  });
  return g;
}

// ---------------------------------------------------------------------------
// Characteristic subloops

inline bool commutes_with_all(const FiniteLoop& l, Index x) {
  for (Index y = 0; y < l.size(); ++y)
    if (l.mul(x, y) != l.mul(y, x)) return false;
  return true;
}

/// x is in the nucleus iff the associator [a,b,c] vanishes whenever x occupies any of the three slots.
inline bool in_nucleus(const FiniteLoop& l, Index x) {
  const Index n = static_cast<Index>(l.size());
  auto assoc = [&](Index a, Index b, Index c) { return l.mul(l.mul(a, b), c) == l.mul(a, l.mul(b, c)); };
  for (Index y = 0; y < n; ++y)
    for (Index z = 0; z < n; ++z)
      if (!assoc(x, y, z) || !assoc(y, x, z) || !assoc(y, z, x)) return false;
  return true;
}

inline std::vector<Index> commutant(const FiniteLoop& l) {
  std::vector<Index> out;
  for (Index x = 0; x < l.size(); ++x)
    if (commutes_with_all(l, x)) out.push_back(x);
  return out;
}

inline std::vector<Index> nucleus(const FiniteLoop& l) {
  std::vector<Index> out;
  for (Index x = 0; x < l.size(); ++x)
    if (in_nucleus(l, x)) out.push_back(x);
  return out;
}

inline std::vector<Index> center(const FiniteLoop& l) {
  std::vector<Index> out;
  for (Index x : commutant(l))
    if (in_nucleus(l, x)) out.push_back(x);
  return out;
}

// ---------------------------------------------------------------------------
// Normality and simplicity

/// Normality tested against every defining generator of Inn.
inline bool is_normal(const FiniteLoop& l, const std::vector<Index>& s) {
  std::vector<char> in(l.size(), 0);
  for (Index x : s) in[x] = 1;
  bool ok = true;
  for_each_inner_generator(l, [&](const Permutation& p) {
    if (!ok) return;
    for (Index x : s)
      if (!in[p(x)]) {
        ok = false;
        return;
      }
  });
  return ok;
}

/// Smallest normal subloop containing X: the class of e in the finest
/// Mlt-invariant partition joining e with X (minimal block via union-find
/// over the translations L_x, R_x).
inline std::vector<Index> normal_closure(const FiniteLoop& l, const std::vector<Index>& x) {
  const std::size_t n = l.size();
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<Index(Index)> find = [&](Index a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::vector<std::pair<Index, Index>> queue;
  auto unite = [&](Index a, Index b) {
    Index ra = find(a), rb = find(b);
    if (ra == rb) return;
    parent[std::max(ra, rb)] = std::min(ra, rb);
    queue.emplace_back(a, b);
  };
  for (Index v : x) unite(l.neutral(), v);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const auto [a, b] = queue[k];
    for (Index t = 0; t < n; ++t) {
      unite(l.mul(t, a), l.mul(t, b));
      unite(l.mul(a, t), l.mul(b, t));
    }
  }
  std::vector<Index> out;
  const Index re = find(l.neutral());
  for (Index v = 0; v < n; ++v)
    if (find(v) == re) out.push_back(v);
  return out;
}

/// Normal closure by the alternating definition: close under the inner
/// generators, then under multiplication, until nothing changes.
inline std::vector<Index> normal_closure_by_inner_maps(const FiniteLoop& l, const std::vector<Index>& x) {
  std::vector<Index> cur = subloop_generated(l, x);
  std::vector<Permutation> inner;
  for_each_inner_generator(l, [&](const Permutation& p) { inner.push_back(p); });
  while (true) {
    std::vector<char> in(l.size(), 0);
    for (Index v : cur) in[v] = 1;
    std::vector<Index> next = cur;
    for (std::size_t k = 0; k < next.size(); ++k)
      for (const auto& p : inner) {
        Index y = p(next[k]);
        if (!in[y]) {
          in[y] = 1;
          next.push_back(y);
        }
      }
    next = subloop_generated(l, next);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

struct SimplicityReport {
  bool simple = true;
  std::size_t checked = 0;
  std::optional<Index> witness;  // element whose normal closure is proper
};

/// Simple iff the normal closure of each non-neutral element is the whole
/// loop. Exhaustive up to 512 elements, otherwise `samples` fixed-seed
/// non-neutral elements.
inline SimplicityReport is_simple(const FiniteLoop& l, std::size_t samples = 100, std::uint64_t seed = default_seed) {
  SimplicityReport rep;
  if (l.size() == 1) {
    rep.simple = false;  // the trivial loop is not counted as simple
    return rep;
  }
  std::vector<Index> candidates;
  if (l.size() <= 512) {
    for (Index x = 0; x < l.size(); ++x)
      if (x != l.neutral()) candidates.push_back(x);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> d(0, static_cast<Index>(l.size() - 1));
    while (candidates.size() < samples) {
      Index x = d(rng);
      if (x != l.neutral()) candidates.push_back(x);
    }
  }
  for (Index x : candidates) {
    ++rep.checked;
    if (normal_closure(l, {x}).size() != l.size()) {
      rep.simple = false;
      rep.witness = x;
      return rep;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Identities

struct Triple {
  Index x, y, z;
};

/// Searches for a triple violating ((xy)x)z = x(y(xz)). Exhaustive up to
/// 512 elements, otherwise `samples` fixed-seed triples.
inline std::optional<Triple> moufang_counterexample(const FiniteLoop& l, std::size_t samples = 100000,
                                                    std::uint64_t seed = default_seed) {
  auto bad = [&](Index x, Index y, Index z) {
    return l.mul(l.mul(l.mul(x, y), x), z) != l.mul(x, l.mul(y, l.mul(x, z)));
  };
  const Index n = static_cast<Index>(l.size());
  if (n <= 512) {
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        for (Index z = 0; z < n; ++z)
          if (bad(x, y, z)) return Triple{x, y, z};
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> d(0, n - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    Index x = d(rng), y = d(rng), z = d(rng);
    if (bad(x, y, z)) return Triple{x, y, z};
  }
  return std::nullopt;
}

inline bool is_moufang(const FiniteLoop& l, std::size_t samples = 100000, std::uint64_t seed = default_seed) {
  return !moufang_counterexample(l, samples, seed).has_value();
}

/// First triple (in index order) with (xy)z != x(yz), if any.
inline std::optional<Triple> associativity_counterexample(const FiniteLoop& l) {
  const Index n = static_cast<Index>(l.size());
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z)
        if (l.mul(l.mul(x, y), z) != l.mul(x, l.mul(y, z))) return Triple{x, y, z};
  return std::nullopt;
}

/// x^a * y^b = (xy)^c for all pairs.
inline bool autotopism_check(const FiniteLoop& l, const Permutation& a, const Permutation& b, const Permutation& c) {
  const Index n = static_cast<Index>(l.size());
  if (a.degree() != n || b.degree() != n || c.degree() != n) throw std::invalid_argument("autotopism_check: degree mismatch");
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      if (l.mul(a(x), b(y)) != c(l.mul(x, y))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Isomorphisms

struct LoopMorphismWitness {
  std::vector<Index> map;  // source index -> target index
};

/// (xy)phi = (x phi)(y phi) for all pairs, and phi bijective.
inline bool verify_isomorphism(const FiniteLoop& a, const FiniteLoop& b, const std::vector<Index>& phi) {
  if (a.size() != b.size() || phi.size() != a.size()) return false;
  std::vector<char> seen(b.size(), 0);
  for (Index v : phi) {
    if (v >= b.size() || seen[v]) return false;
    seen[v] = 1;
  }
  for (Index x = 0; x < a.size(); ++x)
    for (Index y = 0; y < a.size(); ++y)
      if (phi[a.mul(x, y)] != b.mul(phi[x], phi[y])) return false;
  return true;
}

namespace detail {

inline constexpr std::size_t iso_cap = 512;

/// Backtracking over images of a greedy generating set of `a`. Generators
/// are added one at a time so that the generated subloops form a nested
/// chain; each prefix is checked for injectivity and the homomorphism
/// property before descending. `visit` returns false to stop the search.
class IsoSearch {
 public:
  IsoSearch(const FiniteLoop& a, const FiniteLoop& b) : a_(a), b_(b) {
    if (a.size() > iso_cap || b.size() > iso_cap)
      throw std::length_error("isomorphism search is limited to loops of at most 512 elements");
  }

  void run(const std::function<bool(const std::vector<Index>&)>& visit) {
    if (a_.size() != b_.size()) return;
    const std::size_t n = a_.size();
    std::vector<std::size_t> oa(n), ob(n);
    for (Index x = 0; x < n; ++x) {
      oa[x] = a_.element_order(x);
      ob[x] = b_.element_order(x);
    }
    {
      auto sa = oa, sb = ob;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa != sb) return;
    }
    order_a_ = std::move(oa);
    order_b_ = std::move(ob);
    build_chain();
    phi_.assign(n, none);
    used_.assign(n, 0);
    phi_[a_.neutral()] = b_.neutral();
    used_[b_.neutral()] = 1;
    visit_ = &visit;
    stop_ = false;
    descend(0);
  }

  const std::vector<Index>& generators() const { return gens_; }

 private:
  static constexpr Index none = static_cast<Index>(-1);

  void build_chain() {
    const std::size_t n = a_.size();
    std::vector<char> in(n, 0);
    elems_.assign(1, a_.neutral());
    parents_.assign(1, {});
    in[a_.neutral()] = 1;
    level_end_.clear();
    gens_.clear();
    while (elems_.size() < n) {
      // greedy: the candidate whose addition produces the largest subloop
      Index best = none;
      std::size_t best_size = 0;
      for (Index g = 0; g < n; ++g) {
        if (in[g]) continue;
        auto gs = gens_;
        gs.push_back(g);
        const auto sz = subloop_generated(a_, gs).size();
        if (sz > best_size) {
          best_size = sz;
          best = g;
        }
      }
      extend(best, in);
    }
  }

  // Appends generator g and saturates; pairs among older elements are already closed.
  void extend(Index g, std::vector<char>& in) {
    const std::size_t old = elems_.size();
    gens_.push_back(g);
    elems_.push_back(g);
    parents_.push_back({});
    in[g] = 1;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        if (i < old && j < old) continue;
        for (auto [u, v] : {std::pair{i, j}, std::pair{j, i}}) {
          const Index z = a_.mul(elems_[u], elems_[v]);
          if (!in[z]) {
            in[z] = 1;
            elems_.push_back(z);
            parents_.push_back({static_cast<Index>(u), static_cast<Index>(v)});
          }
        }
      }
    level_end_.push_back(elems_.size());
  }

  void descend(std::size_t level) {
    if (stop_) return;
    if (level == gens_.size()) {
      if (!(*visit_)(phi_)) stop_ = true;
      return;
    }
    const std::size_t begin = level == 0 ? 1 : level_end_[level - 1];
    const std::size_t end = level_end_[level];
    const Index g = gens_[level];
    for (Index cand = 0; cand < b_.size() && !stop_; ++cand) {
      if (used_[cand] || order_b_[cand] != order_a_[g]) continue;
      std::vector<Index> assigned;
      bool ok = true;
      for (std::size_t k = begin; k < end && ok; ++k) {
        const Index src = elems_[k];
        const Index img = parents_[k].left == ClosureParent::none
                              ? cand
                              : b_.mul(phi_[elems_[parents_[k].left]], phi_[elems_[parents_[k].right]]);
        if (used_[img]) {
          ok = false;
          break;
        }
        phi_[src] = img;
        used_[img] = 1;
        assigned.push_back(src);
      }
      if (ok) ok = homomorphic_on_prefix(begin, end);
      if (ok) descend(level + 1);
      for (Index src : assigned) {
        used_[phi_[src]] = 0;
        phi_[src] = none;
      }
    }
  }

  // Checks all pairs of the prefix [0, end) that involve an element of [begin, end).
  bool homomorphic_on_prefix(std::size_t begin, std::size_t end) const {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < end; ++j) {
        const Index x = elems_[i], y = elems_[j];
        if (phi_[a_.mul(x, y)] != b_.mul(phi_[x], phi_[y])) return false;
        if (phi_[a_.mul(y, x)] != b_.mul(phi_[y], phi_[x])) return false;
      }
    return true;
  }

  const FiniteLoop& a_;
  const FiniteLoop& b_;
  std::vector<std::size_t> order_a_, order_b_;
  std::vector<Index> gens_, elems_;
  std::vector<ClosureParent> parents_;
  std::vector<std::size_t> level_end_;
  std::vector<Index> phi_;
  std::vector<char> used_;
  const std::function<bool(const std::vector<Index>&)>* visit_ = nullptr;
  bool stop_ = false;
};

}  // namespace detail

inline std::optional<LoopMorphismWitness> find_isomorphism(const FiniteLoop& a, const FiniteLoop& b) {
  detail::IsoSearch s(a, b);
  std::optional<LoopMorphismWitness> out;
  s.run([&](const std::vector<Index>& phi) {
    out = LoopMorphismWitness{phi};
    return false;
  });
  if (out && !verify_isomorphism(a, b, out->map)) throw std::logic_error("find_isomorphism: produced map failed verification");
  return out;
}

/// Number of automorphisms; `visit` (optional) sees each one.
inline std::uint64_t automorphism_count(const FiniteLoop& l,
                                        const std::function<void(const std::vector<Index>&)>& visit = {}) {
  detail::IsoSearch s(l, l);
  std::uint64_t count = 0;
  s.run([&](const std::vector<Index>& phi) {
    ++count;
    if (visit) visit(phi);
    return true;
  });
  return count;
}

// ---------------------------------------------------------------------------
// Group loops

/// Cyclic group Z_n with labels "0".."n-1".
inline FiniteLoop cyclic_group_loop(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic group: order must be positive");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<Index> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) t[x * n + y] = static_cast<Index>((x + y) % n);
  return FiniteLoop::from_table(std::move(labels), std::move(t));
}

/// Loop of the elements of a permutation group, identity first, the rest in
/// image-list order; the product is composition left to right.
inline FiniteLoop group_loop(const std::vector<Permutation>& elements) {
  std::vector<Permutation> el = elements;
  std::sort(el.begin(), el.end());
  const std::size_t n = el.size();
  std::unordered_map<Permutation, Index, PermutationHash> pos;
  for (std::size_t i = 0; i < n; ++i) pos.emplace(el[i], static_cast<Index>(i));
  std::vector<std::string> labels;
  for (const auto& p : el) {
    std::string s;
    for (auto v : p.images()) s += (s.empty() ? "" : ".") + std::to_string(v);
    labels.push_back("(" + s + ")");
  }
  std::vector<Index> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto it = pos.find(el[x] * el[y]);
      if (it == pos.end()) throw std::invalid_argument("group_loop: elements are not closed under composition");
      t[x * n + y] = it->second;
    }
  return FiniteLoop::from_table(std::move(labels), std::move(t));
}

/// The symmetric group S_k as a loop.
inline FiniteLoop symmetric_group_loop(std::size_t k) {
  std::vector<std::uint32_t> img(k);
  std::iota(img.begin(), img.end(), 0u);
  std::vector<Permutation> el;
  do el.emplace_back(img);
  while (std::next_permutation(img.begin(), img.end()));
  return group_loop(el);
}

/// Direct product with labels "a,b" and table entry order (x,y) -> x*|B|+y.
inline FiniteLoop direct_product(const FiniteLoop& a, const FiniteLoop& b) {
  const std::size_t n = a.size() * b.size();
  std::vector<std::string> labels;
  for (Index x = 0; x < a.size(); ++x)
    for (Index y = 0; y < b.size(); ++y) labels.push_back(a.label(x) + "," + b.label(y));
  std::vector<Index> t(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const Index x = static_cast<Index>(a.mul(static_cast<Index>(u / b.size()), static_cast<Index>(v / b.size())));
      const Index y = static_cast<Index>(b.mul(static_cast<Index>(u % b.size()), static_cast<Index>(v % b.size())));
      t[u * n + v] = static_cast<Index>(x * b.size() + y);
    }
  return FiniteLoop::from_table(std::move(labels), std::move(t));
}

}  // namespace moufang
