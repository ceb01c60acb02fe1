#pragma once

// Permutations on {0..n-1} and a deterministic Schreier-Sims engine.
// Maps compose left to right: (p*q)(i) = q(p(i)), i.e. p is applied first.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace moufang {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (auto v : img_) {
      if (v >= img_.size() || seen[v]) throw std::invalid_argument("permutation: image list is not a bijection");
      seen[v] = 1;
    }
  }
  static Permutation identity(std::size_t n) {
    Permutation p;
    p.img_.resize(n);
    std::iota(p.img_.begin(), p.img_.end(), 0u);
    return p;
  }
  /// Builds from a point function without re-validating; callers guarantee bijectivity.
  template <class F>
  static Permutation from_function(std::size_t n, F&& f) {
    Permutation p;
    p.img_.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.img_[i] = static_cast<std::uint32_t>(f(static_cast<std::uint32_t>(i)));
    return p;
  }

  std::size_t degree() const { return img_.size(); }
  std::uint32_t operator()(std::uint32_t i) const { return img_[i]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<std::uint32_t>(i);
    return r;
  }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    check_degree(p, q);
    Permutation r;
    r.img_.resize(p.img_.size());
    for (std::size_t i = 0; i < p.img_.size(); ++i) r.img_[i] = q.img_[p.img_[i]];
    return r;
  }

  Permutation pow(long long e) const {
    Permutation base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Permutation r = identity(img_.size());
    for (; k; k >>= 1) {
      if (k & 1) r = r * base;
      base = base * base;
    }
    return r;
  }

  /// x^y = y^-1 x y
  Permutation conjugate_by(const Permutation& y) const { return y.inverse() * *this * y; }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    std::vector<char> seen(img_.size(), 0);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = 1;
        ++len;
      }
      o = std::lcm(o, len);
    }
    return o;
  }

  /// Smallest moved point, or degree() if none.
  std::size_t first_moved() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return i;
    return img_.size();
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

  static void check_degree(const Permutation& p, const Permutation& q) {
    if (p.img_.size() != q.img_.size()) throw std::invalid_argument("permutation: degree mismatch");
  }

 private:
  std::vector<std::uint32_t> img_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : p.images()) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

inline std::string to_string(const Permutation& p) {
  std::string s = std::to_string(p.degree()) + ":";
  for (auto v : p.images()) s += " " + std::to_string(v);
  return s;
}

inline Permutation parse_permutation(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("permutation: expected 'n: i0 i1 ...'");
  std::istringstream head{std::string(text.substr(0, colon))}, body{std::string(text.substr(colon + 1))};
  std::size_t n = 0;
  if (!(head >> n)) throw std::invalid_argument("permutation: bad degree");
  std::vector<std::uint32_t> img;
  std::uint64_t v;
  while (body >> v) img.push_back(static_cast<std::uint32_t>(v));
  if (!body.eof() || img.size() != n) throw std::invalid_argument("permutation: expected " + std::to_string(n) + " images");
  return Permutation(std::move(img));
}

/// Orbit of a point under a generator list, in breadth-first discovery order.
inline std::vector<std::uint32_t> orbit(std::uint32_t point, const std::vector<Permutation>& gens, std::size_t degree) {
  std::vector<char> seen(degree, 0);
  std::vector<std::uint32_t> out{point};
  seen[point] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      auto y = g(out[i]);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  return out;
}

// ---------------------------------------------------------------------------

/// Permutation group stored as a complete stabilizer chain. Construct with
/// schreier_sims(); afterwards the object is immutable.
class PermGroup {
 public:
  struct Level {
    std::uint32_t base_point = 0;
    std::vector<std::size_t> gens;        // indices into PermGroup::store_
    std::vector<std::uint32_t> orbit;     // BFS order, orbit[0] = base_point
    std::vector<std::int32_t> schreier;   // -1 outside orbit, -2 at the root, else index into gens
  };

  PermGroup() = default;
  explicit PermGroup(std::size_t degree) : n_(degree) {}

  std::size_t degree() const { return n_; }
  const std::vector<Permutation>& generators() const { return input_; }
  std::vector<std::uint32_t> base() const {
    std::vector<std::uint32_t> b;
    for (const auto& l : levels_) b.push_back(l.base_point);
    return b;
  }
  std::size_t base_length() const { return levels_.size(); }
  const Level& level(std::size_t i) const { return levels_.at(i); }

  /// Strong generators of the pointwise stabilizer of the first `depth` base points.
  std::vector<Permutation> strong_generators(std::size_t depth = 0) const {
    std::vector<Permutation> out;
    if (depth >= levels_.size()) return out;
    for (auto gi : levels_[depth].gens) out.push_back(store_[gi]);
    return out;
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& l : levels_) {
      if (o > std::numeric_limits<std::uint64_t>::max() / l.orbit.size())
        throw std::overflow_error("permgrp: group order exceeds 64 bits");
      o *= l.orbit.size();
    }
    return o;
  }

  /// Sifts p through the chain; returns the residue and the level where it stopped.
  std::pair<Permutation, std::size_t> strip(Permutation p, std::size_t from = 0) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const auto& l = levels_[i];
      std::uint32_t pt = p(l.base_point);
      if (l.schreier[pt] == -1) return {std::move(p), i};
      while (pt != l.base_point) {
        const auto& s = inverse_store_[l.gens[static_cast<std::size_t>(l.schreier[pt])]];
        p = p * s;
        pt = s(pt);
      }
    }
    return {std::move(p), levels_.size()};
  }

  bool contains(const Permutation& p) const {
    if (p.degree() != n_) throw std::invalid_argument("permgrp: degree mismatch");
    auto [r, lvl] = strip(p);
    return lvl == levels_.size() && r.is_identity();
  }

  bool is_subgroup_of(const PermGroup& g) const {
    if (g.degree() != n_) throw std::invalid_argument("permgrp: degree mismatch");
    for (const auto& s : input_)
      if (!g.contains(s)) return false;
    return true;
  }

  /// Element with base image base[i] -> orbit_i[choice[i]] (coset representative product).
  Permutation element_from_choices(const std::vector<std::size_t>& choice) const {
    Permutation r = Permutation::identity(n_);
    for (std::size_t i = levels_.size(); i-- > 0;) r = r * transversal(i, levels_[i].orbit[choice[i]]);
    return r;
  }

  template <class Rng>
  Permutation random_element(Rng& rng) const {
    std::vector<std::size_t> c(levels_.size());
    for (std::size_t i = 0; i < levels_.size(); ++i)
      c[i] = std::uniform_int_distribution<std::size_t>(0, levels_[i].orbit.size() - 1)(rng);
    return element_from_choices(c);
  }

  /// Calls f on every element; intended for small groups.
  void for_each_element(const std::function<void(const Permutation&)>& f) const {
    std::vector<std::size_t> c(levels_.size(), 0);
    while (true) {
      f(element_from_choices(c));
      std::size_t i = 0;
      while (i < c.size() && ++c[i] == levels_[i].orbit.size()) c[i++] = 0;
      if (i == c.size()) return;
    }
  }

  std::vector<Permutation> elements(std::uint64_t cap = 1000000) const {
    if (order() > cap) throw std::length_error("permgrp: group too large to enumerate");
    std::vector<Permutation> out;
    out.reserve(order());
    for_each_element([&](const Permutation& p) { out.push_back(p); });
    return out;
  }

  /// Transversal element u with base_point^u = pt at level i.
  Permutation transversal(std::size_t i, std::uint32_t pt) const {
    const auto& l = levels_[i];
    if (l.schreier[pt] == -1) throw std::invalid_argument("permgrp: point outside the basic orbit");
    Permutation u = Permutation::identity(n_);
    // u = s_1 ... s_k; walking back from pt yields s_k first, so prepend.
    std::vector<std::size_t> path;
    while (pt != l.base_point) {
      const auto gi = l.gens[static_cast<std::size_t>(l.schreier[pt])];
      path.push_back(gi);
      pt = inverse_store_[gi](pt);
    }
    for (std::size_t k = path.size(); k-- > 0;) u = u * store_[path[k]];
    return u;
  }

  friend PermGroup schreier_sims(const std::vector<Permutation>& gens, std::size_t degree,
                                 const std::vector<std::uint32_t>& base_prefix);

 private:
  std::size_t add_strong(Permutation p) {
    inverse_store_.push_back(p.inverse());
    store_.push_back(std::move(p));
    return store_.size() - 1;
  }

  void rebuild_orbit(std::size_t i) {
    auto& l = levels_[i];
    l.schreier.assign(n_, -1);
    l.schreier[l.base_point] = -2;
    l.orbit.assign(1, l.base_point);
    for (std::size_t k = 0; k < l.orbit.size(); ++k)
      for (std::size_t g = 0; g < l.gens.size(); ++g) {
        auto y = store_[l.gens[g]](l.orbit[k]);
        if (l.schreier[y] == -1) {
          l.schreier[y] = static_cast<std::int32_t>(g);
          l.orbit.push_back(y);
        }
      }
  }

  void push_level(std::uint32_t point) {
    levels_.push_back({point, {}, {}, {}});
    rebuild_orbit(levels_.size() - 1);
  }

  // Completes the chain below and including level `start`.
  void complete(std::size_t start) {
    std::size_t i = start + 1;
    while (i-- > 0) {
      bool changed = false;
      for (std::size_t k = 0; k < levels_[i].orbit.size() && !changed; ++k) {
        const std::uint32_t beta = levels_[i].orbit[k];
        const Permutation ub = transversal(i, beta);
        for (std::size_t g = 0; g < levels_[i].gens.size(); ++g) {
          const auto& s = store_[levels_[i].gens[g]];
          const std::uint32_t img = s(beta);
          // Schreier generators that coincide with tree edges are trivial.
          if (levels_[i].schreier[img] == static_cast<std::int32_t>(g) && img != levels_[i].base_point &&
              inverse_store_[levels_[i].gens[g]](img) == beta)
            continue;
          Permutation h = ub * s * transversal(i, img).inverse();
          if (h.is_identity()) continue;
          auto [y, j] = strip(std::move(h), i + 1);
          if (y.is_identity()) continue;
          if (j == levels_.size()) push_level(static_cast<std::uint32_t>(y.first_moved()));
          const auto idx = add_strong(std::move(y));
          for (std::size_t l = i + 1; l <= j; ++l) {
            levels_[l].gens.push_back(idx);
            rebuild_orbit(l);
          }
          i = j + 1;
          changed = true;
          break;
        }
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<Permutation> input_;
  std::vector<Permutation> store_, inverse_store_;
  std::vector<Level> levels_;
};

/// Deterministic Schreier-Sims. Base points: the optional prefix, then the
/// smallest point moved by the residue that needs a new level. Each input
/// generator already in the group built so far is skipped.
inline PermGroup schreier_sims(const std::vector<Permutation>& gens, std::size_t degree,
                               const std::vector<std::uint32_t>& base_prefix = {}) {
  PermGroup G(degree);
  for (const auto& g : gens)
    if (g.degree() != degree) throw std::invalid_argument("schreier_sims: degree mismatch");
  G.input_ = gens;
  for (auto b : base_prefix) {
    if (b >= degree) throw std::invalid_argument("schreier_sims: base point out of range");
    G.push_level(b);
  }
  for (const auto& g : gens) {
    auto [y, j] = G.strip(g);
    if (j == G.levels_.size() && y.is_identity()) continue;
    if (j == G.levels_.size()) G.push_level(static_cast<std::uint32_t>(y.first_moved()));
    // g itself fixes the first j base points; add it (not the residue) to keep generators readable.
    const auto idx = G.add_strong(g);
    std::size_t deepest = 0;
    for (std::size_t l = 0; l < G.levels_.size(); ++l) {
      G.levels_[l].gens.push_back(idx);
      G.rebuild_orbit(l);
      deepest = l;
      if (g(G.levels_[l].base_point) != G.levels_[l].base_point) break;
    }
    G.complete(deepest);
  }
  return G;
}

inline PermGroup schreier_sims(const std::vector<Permutation>& gens) {
  if (gens.empty()) return PermGroup(0);
  return schreier_sims(gens, gens.front().degree());
}

/// Kernel of the homomorphism G -> H determined by images[i] for generator i.
/// The assignment is certified by building the graph subgroup on n+m points:
/// it is a homomorphism iff that subgroup has the order of G. The kernel is
/// the pointwise stabilizer of the last m points, restricted to the first n.
inline PermGroup homomorphism_kernel(const PermGroup& g, const std::vector<Permutation>& images) {
  const auto& gens = g.generators();
  if (images.size() != gens.size()) throw std::invalid_argument("homomorphism_kernel: one image per generator required");
  const std::size_t n = g.degree();
  const std::size_t m = images.empty() ? 0 : images.front().degree();
  std::vector<Permutation> graph;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (images[i].degree() != m) throw std::invalid_argument("homomorphism_kernel: image degree mismatch");
    graph.push_back(Permutation::from_function(n + m, [&](std::uint32_t x) {
      return x < n ? gens[i](x) : static_cast<std::uint32_t>(n + images[i](static_cast<std::uint32_t>(x - n)));
    }));
  }
  std::vector<std::uint32_t> prefix(m);
  std::iota(prefix.begin(), prefix.end(), static_cast<std::uint32_t>(n));
  PermGroup d = schreier_sims(graph, n + m, prefix);
  if (d.order() != g.order()) throw std::domain_error("homomorphism_kernel: generator images do not define a homomorphism");
  std::vector<Permutation> kernel_gens;
  for (const auto& s : d.strong_generators(m)) {
    std::vector<std::uint32_t> img(s.images().begin(), s.images().begin() + static_cast<std::ptrdiff_t>(n));
    kernel_gens.emplace_back(std::move(img));
  }
  return schreier_sims(kernel_gens, n);
}

/// Direct sum of permutations on disjoint point sets.
inline Permutation direct_sum(const Permutation& a, const Permutation& b) {
  const auto n = a.degree();
  return Permutation::from_function(n + b.degree(), [&](std::uint32_t x) {
    return x < n ? a(x) : static_cast<std::uint32_t>(n + b(static_cast<std::uint32_t>(x - n)));
  });
}

}  // namespace moufang
