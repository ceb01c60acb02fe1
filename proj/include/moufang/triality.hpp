#pragma once

// 3-nets, collineations and Bol reflections, groups with triality and the
// two directions of the net <-> triality correspondence.
//
// Line classes are numbered 0, 1, 2 internally and 1, 2, 3 in text:
// class 1 = horizontal (Y = c), class 2 = vertical (X = c), class 3 =
// transversal (XY = c). Points of a net built from a loop are x*n + y.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "moufang/fields.hpp"
#include "moufang/loops.hpp"
#include "moufang/permgrp.hpp"

namespace moufang {

struct NetAxiomReport {
  bool ok = true;
  std::string failure;
};

/// A 3-net with n lines per class and n^2 points, stored as the line of
/// each class through each point plus the three meet tables.
class Net3 {
 public:
  using Incidence = std::array<std::vector<Index>, 3>;

  /// Checks the axioms: points lie on one line per class (by construction),
  /// and for each pair of classes, (line through p, line through p) is a
  /// bijection from points onto pairs of lines.
  static NetAxiomReport check_axioms(std::size_t n, const Incidence& line_of) {
    const std::size_t pts = line_of[0].size();
    if (line_of[1].size() != pts || line_of[2].size() != pts) return {false, "classes disagree on the point count"};
    if (pts != n * n) return {false, "point count " + std::to_string(pts) + " is not n^2 = " + std::to_string(n * n)};
    for (int c = 0; c < 3; ++c)
      for (Index l : line_of[c])
        if (l >= n) return {false, "line index out of range in class " + std::to_string(c + 1)};
    for (int c1 = 0; c1 < 3; ++c1)
      for (int c2 = c1 + 1; c2 < 3; ++c2) {
        std::vector<char> seen(n * n, 0);
        for (std::size_t p = 0; p < pts; ++p) {
          const std::size_t key = line_of[c1][p] * n + line_of[c2][p];
          if (seen[key])
            return {false, "lines " + std::to_string(line_of[c1][p]) + " (class " + std::to_string(c1 + 1) + ") and " +
                               std::to_string(line_of[c2][p]) + " (class " + std::to_string(c2 + 1) +
                               ") share more than one point"};
          seen[key] = 1;
        }
      }
    return {};
  }

  static Net3 from_incidence(std::size_t n, Incidence line_of, std::vector<std::string> vertical_labels = {}) {
    auto rep = check_axioms(n, line_of);
    if (!rep.ok) throw std::invalid_argument("net axioms fail: " + rep.failure);
    Net3 net;
    net.n_ = n;
    net.line_of_ = std::move(line_of);
    for (int k = 0; k < 3; ++k) {
      const auto [c1, c2] = pair_classes(k);
      net.meet_[k].assign(n * n, 0);
      for (std::size_t p = 0; p < n * n; ++p) net.meet_[k][net.line_of_[c1][p] * n + net.line_of_[c2][p]] = static_cast<Index>(p);
    }
    if (vertical_labels.empty())
      for (std::size_t i = 0; i < n; ++i) vertical_labels.push_back(std::to_string(i));
    net.labels_ = std::move(vertical_labels);
    return net;
  }

  std::size_t order() const { return n_; }
  std::size_t point_count() const { return n_ * n_; }
  std::size_t line_count() const { return 3 * n_; }
  Index line_of(int cls, Index p) const { return line_of_[cls][p]; }
  /// Line id in the combined numbering cls*n + index.
  Index line_id(int cls, Index line) const { return static_cast<Index>(cls * n_ + line); }

  /// The common point of line a (class c1) and line b (class c2), c1 != c2.
  Index meet(int c1, Index a, int c2, Index b) const {
    if (c1 == c2) throw std::invalid_argument("net: parallel lines do not meet");
    if (c1 > c2) return meet(c2, b, c1, a);
    return meet_[pair_index(c1, c2)][a * n_ + b];
  }
  std::vector<Index> points_on(int cls, Index line) const {
    std::vector<Index> out;
    const int other = cls == 0 ? 1 : 0;
    for (Index b = 0; b < n_; ++b) out.push_back(meet(cls, line, other, b));
    return out;
  }
  const std::vector<std::string>& vertical_labels() const { return labels_; }

 private:
  static std::pair<int, int> pair_classes(int k) { return k == 0 ? std::pair{0, 1} : k == 1 ? std::pair{0, 2} : std::pair{1, 2}; }
  static int pair_index(int c1, int c2) { return c1 == 0 ? (c2 == 1 ? 0 : 1) : 2; }

  std::size_t n_ = 0;
  Incidence line_of_;
  std::array<std::vector<Index>, 3> meet_;
  std::vector<std::string> labels_;
};

/// Net of a loop: horizontal Y = c, vertical X = c, transversal XY = c.
inline Net3 net_from_loop(const FiniteLoop& l, std::size_t cap = 128) {
  const std::size_t n = l.size();
  if (n > cap) throw std::length_error("net_from_loop: loop has more than " + std::to_string(cap) + " elements");
  Net3::Incidence inc;
  for (auto& v : inc) v.resize(n * n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const Index p = x * static_cast<Index>(n) + y;
      inc[0][p] = y;
      inc[1][p] = x;
      inc[2][p] = l.mul(x, y);
    }
  return Net3::from_incidence(n, std::move(inc), l.labels());
}

/// Coordinate loop on the horizontal line through the origin: for points x,
/// y of that line, project y along its transversal onto the vertical line k
/// through the origin, take the point on the vertical through x and the
/// horizontal through that projection, and project back along its
/// transversal. Elements are numbered by the vertical line through them.
inline FiniteLoop coordinate_loop(const Net3& net, Index origin) {
  const std::size_t n = net.order();
  const Index ell = net.line_of(0, origin), k = net.line_of(1, origin);
  std::vector<Index> point_of(n);  // vertical index -> point on ell
  for (Index v = 0; v < n; ++v) point_of[v] = net.meet(0, ell, 1, v);
  std::vector<Index> t(n * n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const Index yk = net.meet(2, net.line_of(2, point_of[y]), 1, k);
      const Index pxy = net.meet(1, x, 0, net.line_of(0, yk));
      const Index prod = net.meet(2, net.line_of(2, pxy), 0, ell);
      t[x * n + y] = net.line_of(1, prod);
    }
  return FiniteLoop::from_table(net.vertical_labels(), std::move(t));
}

// ---------------------------------------------------------------------------
// Collineations

struct Collineation {
  Permutation points;
  Permutation classes;  // on {0,1,2}
};

struct CollineationCheck {
  bool ok = false;
  Permutation classes;
  std::string failure;
};

/// Tests whether a point bijection maps lines to lines and, if so, returns
/// the induced permutation of the line classes.
inline CollineationCheck check_collineation(const Net3& net, const Permutation& pts) {
  const std::size_t n = net.order(), np = net.point_count();
  if (pts.degree() != np) return {false, {}, "degree differs from the point count"};
  std::vector<std::uint32_t> cls(3);
  std::vector<Index> image(n);
  for (int c = 0; c < 3; ++c) {
    bool found = false;
    for (int c2 = 0; c2 < 3 && !found; ++c2) {
      std::fill(image.begin(), image.end(), static_cast<Index>(-1));
      bool ok = true;
      for (Index p = 0; p < np && ok; ++p) {
        Index& slot = image[net.line_of(c, p)];
        const Index target = net.line_of(c2, pts(p));
        if (slot == static_cast<Index>(-1))
          slot = target;
        else if (slot != target)
          ok = false;
      }
      if (ok) {
        cls[c] = static_cast<std::uint32_t>(c2);
        found = true;
      }
    }
    if (!found) return {false, {}, "a line of class " + std::to_string(c + 1) + " is not mapped onto a line"};
  }
  if (cls[0] == cls[1] || cls[0] == cls[2] || cls[1] == cls[2]) return {false, {}, "line classes are not permuted"};
  return {true, Permutation(cls), {}};
}

/// The action of a collineation on the 3n lines (ids cls*n + index).
inline Permutation line_action(const Net3& net, const Collineation& g) {
  const std::size_t n = net.order();
  return Permutation::from_function(3 * n, [&](Index id) {
    const int c = static_cast<int>(id / n);
    const Index line = id % n;
    const int other = c == 0 ? 1 : 0;
    const Index p = net.meet(c, line, other, 0);
    const int c2 = static_cast<int>(g.classes(static_cast<std::uint32_t>(c)));
    return net.line_id(c2, net.line_of(c2, g.points(p)));
  });
}

/// Recovers the point map from a line permutation: p = (line 0) meet (line 1).
inline Permutation point_action(const Net3& net, const Permutation& lines) {
  const std::size_t n = net.order();
  return Permutation::from_function(net.point_count(), [&](Index p) {
    const Index a = lines(net.line_id(0, net.line_of(0, p)));
    const Index b = lines(net.line_id(1, net.line_of(1, p)));
    return net.meet(static_cast<int>(a / n), a % n, static_cast<int>(b / n), b % n);
  });
}

/// Class permutation induced by a line permutation.
inline Permutation class_action(const Net3& net, const Permutation& lines) {
  const std::size_t n = net.order();
  return Permutation(std::vector<std::uint32_t>{lines(net.line_id(0, 0)) / static_cast<std::uint32_t>(n),
                                                lines(net.line_id(1, 0)) / static_cast<std::uint32_t>(n),
                                                lines(net.line_id(2, 0)) / static_cast<std::uint32_t>(n)});
}

/// The point map (x, y) -> (x alpha, y alpha) of a net built from a loop.
inline Permutation diagonal_point_map(const Net3& net, const std::vector<Index>& alpha) {
  const Index n = static_cast<Index>(net.order());
  if (alpha.size() != n) throw std::invalid_argument("diagonal_point_map: map has the wrong size");
  return Permutation::from_function(net.point_count(), [&](Index p) { return alpha[p / n] * n + alpha[p % n]; });
}

/// True when alpha induces a collineation of the loop net that fixes the
/// origin and every line class, which is the case exactly for automorphisms.
inline bool is_direction_preserving_collineation(const Net3& net, const std::vector<Index>& alpha, Index origin) {
  const Permutation p = diagonal_point_map(net, alpha);
  if (p(origin) != origin) return false;
  const auto chk = check_collineation(net, p);
  return chk.ok && chk.classes.is_identity();
}

// ---------------------------------------------------------------------------
// Bol reflections

/// The reflection with axis (cls, line) from its geometric definition:
/// P -> b_j meet b_k, where Q_j = a_j meet axis, Q_k = a_k meet axis, b_j is
/// the j-line through Q_k and b_k the k-line through Q_j.
inline Permutation bol_reflection_geometric(const Net3& net, int cls, Index line) {
  const int j = (cls + 1) % 3, k = (cls + 2) % 3;
  return Permutation::from_function(net.point_count(), [&](Index p) {
    const Index qj = net.meet(j, net.line_of(j, p), cls, line);
    const Index qk = net.meet(k, net.line_of(k, p), cls, line);
    return net.meet(j, net.line_of(j, qk), k, net.line_of(k, qj));
  });
}

/// Point map of the reflection with axis Y = m (cls 0), X = m (cls 1) or
/// XY = m (cls 2) in loop coordinates.
inline Permutation bol_reflection_map(const FiniteLoop& l, int cls, Index m) {
  const Index n = static_cast<Index>(l.size());
  const Index mi = l.inverse(m);
  std::vector<Index> inverse(n);
  for (Index x = 0; x < n; ++x) inverse[x] = l.inverse(x);
  std::vector<std::uint32_t> img(n * n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      Index u, v;
      if (cls == 0) {
        u = l.mul(l.mul(x, y), mi);
        v = l.mul(l.mul(m, inverse[y]), m);
      } else if (cls == 1) {
        u = l.mul(m, l.mul(inverse[x], m));
        v = l.mul(mi, l.mul(x, y));
      } else {
        u = l.mul(m, inverse[y]);
        v = l.mul(inverse[x], m);
      }
      img[x * n + y] = u * n + v;
    }
  try {
    return Permutation(std::move(img));
  } catch (const std::invalid_argument&) {
    throw std::domain_error("bol_reflection: the coordinate map is not a bijection (loop is not Moufang)");
  }
}

/// Bol reflection with axis of class cls (0..2) and constant m, verified to
/// be an involutory collineation fixing its axis and swapping the other two
/// classes. Throws domain_error otherwise.
inline Collineation bol_reflection(const Net3& net, const FiniteLoop& l, int cls, Index m) {
  if (cls < 0 || cls > 2) throw std::invalid_argument("bol_reflection: class must be 1, 2 or 3");
  Permutation p = bol_reflection_map(l, cls, m);
  if (!(p * p).is_identity()) throw std::domain_error("bol_reflection: map is not an involution");
  auto chk = check_collineation(net, p);
  if (!chk.ok) throw std::domain_error("bol_reflection: not a collineation: " + chk.failure);
  std::vector<std::uint32_t> expect{0, 1, 2};
  std::swap(expect[(cls + 1) % 3], expect[(cls + 2) % 3]);
  if (chk.classes.images() != expect) throw std::domain_error("bol_reflection: wrong action on line classes");
  for (Index q : net.points_on(cls, m))
    if (p(q) != q) throw std::domain_error("bol_reflection: axis is not fixed pointwise");
  return {std::move(p), std::move(chk.classes)};
}

inline Collineation bol_reflection(const FiniteLoop& l, int cls, Index m) { return bol_reflection(net_from_loop(l), l, cls, m); }

/// All 3n reflections, class-major (class 1 first), verified.
inline std::vector<Collineation> all_bol_reflections(const Net3& net, const FiniteLoop& l) {
  std::vector<Collineation> out;
  for (int c = 0; c < 3; ++c)
    for (Index m = 0; m < l.size(); ++m) out.push_back(bol_reflection(net, l, c, m));
  return out;
}

// ---------------------------------------------------------------------------
// Groups with triality

/// A group G of permutations together with permutations sigma and rho of the
/// same points that normalize G; S = <sigma, rho> acts on G by conjugation.
struct TrialityWitness {
  std::string name;
  PermGroup group;
  Permutation sigma, rho;
  std::vector<std::string> log;
};

enum class CheckMode { automatic, exhaustive, sampled };

struct TrialityReport {
  bool identity_ok = true;   // [g,s][g,s]^r[g,s]^(r^2) = 1
  bool lemma_ok = true;      // (t_i t_j)^3 = 1 across classes
  bool routes_agree = true;  // per element, the two routes give the same verdict
  bool exhaustive = false;
  std::size_t elements_checked = 0;
  std::size_t pairs_checked = 0;
  std::optional<Permutation> witness;  // element where the identity fails
  bool ok() const { return identity_ok && lemma_ok && routes_agree; }
};

namespace detail {

inline bool acts_trivially(const std::vector<Permutation>& gens, const Permutation& a) {
  for (const auto& g : gens)
    if (!(g.conjugate_by(a) == g)) return false;
  return true;
}

}  // namespace detail

/// Checks that sigma and rho normalize G and generate a copy of S_3 in the
/// ambient symmetric group (sigma^2 = rho^3 = (sigma rho)^2 = 1, sigma and rho
/// nontrivial). The conjugation action on G need not be faithful. For trivial
/// G the relations are not required. Throws domain_error on failure.
inline void check_triality_preconditions(const PermGroup& g, const Permutation& sigma, const Permutation& rho) {
  if (sigma.degree() != g.degree() || rho.degree() != g.degree()) throw std::invalid_argument("triality: degree mismatch");
  for (const auto& x : g.generators()) {
    if (!g.contains(x.conjugate_by(sigma)) || !g.contains(x.conjugate_by(rho)))
      throw std::domain_error("triality: sigma and rho must normalize G");
  }
  if (g.order() == 1) return;
  if (!(sigma * sigma).is_identity()) throw std::domain_error("triality: sigma^2 != 1");
  if (!rho.pow(3).is_identity()) throw std::domain_error("triality: rho^3 != 1");
  const Permutation sr = sigma * rho;
  if (!(sr * sr).is_identity()) throw std::domain_error("triality: (sigma rho)^2 != 1");
  if (sigma.is_identity() || rho.is_identity()) throw std::domain_error("triality: <sigma, rho> is not S3");
}

/// Verifies the triality identity and the reformulation (t_i t_j)^3 = 1
/// with t_i in the class of sigma_i (sigma_1 = sigma, sigma_2 = sigma rho,
/// sigma_3 = rho sigma). Exhaustive up to 10^4 elements unless sampled.
inline TrialityReport triality_check(const PermGroup& g, const Permutation& sigma, const Permutation& rho,
                                     CheckMode mode = CheckMode::automatic, std::size_t samples = 1000,
                                     std::uint64_t seed = default_seed) {
  check_triality_preconditions(g, sigma, rho);
  TrialityReport rep;
  rep.exhaustive = mode == CheckMode::exhaustive || (mode == CheckMode::automatic && g.order() <= 10000);
  const Permutation sinv = sigma.inverse(), rinv = rho.inverse(), r2 = rho * rho, r2inv = r2.inverse();
  const std::array<Permutation, 3> inv{sigma, sigma * rho, rho * sigma};
  const Permutation tau3 = inv[2];
  auto visit = [&](const Permutation& x) {
    // [x, sigma] = x^-1 x^sigma
    const Permutation c = x.inverse() * sinv * x * sigma;
    const bool id_ok = (c * (rinv * c * rho) * (r2inv * c * r2)).is_identity();
    const Permutation t = x.inverse() * sigma * x * tau3;  // sigma^x sigma_3
    const bool lem_ok = (t * t * t).is_identity();
    ++rep.elements_checked;
    if (!id_ok && !rep.witness) rep.witness = x;
    rep.identity_ok &= id_ok;
    rep.lemma_ok &= lem_ok;
    rep.routes_agree &= id_ok == lem_ok;
  };
  std::mt19937_64 rng(seed);
  if (rep.exhaustive) {
    g.for_each_element(visit);
  } else {
    for (const auto& x : g.generators()) visit(x);
    for (std::size_t i = 0; i < samples; ++i) visit(g.random_element(rng));
  }
  // Class pairs (sigma_i^x, sigma_j^y) for i != j.
  auto pair_ok = [&](int i, int j, const Permutation& x, const Permutation& y) {
    const Permutation t = x.inverse() * inv[i] * x * y.inverse() * inv[j] * y;
    ++rep.pairs_checked;
    return (t * t * t).is_identity();
  };
  if (rep.exhaustive && g.order() <= 100) {
    const auto el = g.elements();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j)
          for (const auto& x : el)
            for (const auto& y : el) rep.lemma_ok &= pair_ok(i, j, x, y);
  } else {
    for (std::size_t s = 0; s < samples; ++s) {
      const int i = static_cast<int>(s % 3), j = static_cast<int>((s % 3 + 1 + (s / 3) % 2) % 3);
      rep.lemma_ok &= pair_ok(i, j, g.random_element(rng), g.random_element(rng));
    }
  }
  return rep;
}

inline TrialityReport triality_check(const TrialityWitness& w, CheckMode mode = CheckMode::automatic,
                                     std::size_t samples = 1000, std::uint64_t seed = default_seed) {
  return triality_check(w.group, w.sigma, w.rho, mode, samples, seed);
}

/// The reflection group of a Moufang net and its direction-preserving part.
struct LoopTriality {
  Net3 net;
  std::vector<Collineation> reflections;  // class-major, verified
  PermGroup m_group;                      // on the 3n lines
  TrialityWitness witness;                // G = M0 on the 3n lines, S = reflections through the origin
};

/// Builds M = <all Bol reflections> acting on lines, M0 = kernel of the
/// class action (via homomorphism_kernel), and S generated by the three
/// reflections through the origin: sigma = axis Y = e, rho = sigma * (axis X = e).
inline LoopTriality triality_group_from_loop(const FiniteLoop& l, std::size_t cap = 128) {
  Net3 net = net_from_loop(l, cap);
  auto refl = all_bol_reflections(net, l);
  std::vector<Permutation> lines, classes;
  for (const auto& r : refl) {
    lines.push_back(line_action(net, r));
    classes.push_back(r.classes);
  }
  PermGroup m = schreier_sims(lines, net.line_count());
  // homomorphism_kernel needs one image per generator of m.
  PermGroup m0 = homomorphism_kernel(m, classes);
  const Index e = l.neutral();
  const Permutation sigma = lines[e];
  const Permutation rho = sigma * lines[l.size() + e];
  TrialityWitness w{"M0(" + std::to_string(l.size()) + ")", std::move(m0), sigma, rho, {}};
  w.log.push_back("|M|=" + std::to_string(m.order()) + " |M0|=" + std::to_string(w.group.order()));
  return {std::move(net), std::move(refl), std::move(m), std::move(w)};
}

// ---------------------------------------------------------------------------
// From a group with triality to a net

struct TrialityNet {
  NetAxiomReport axioms;
  std::optional<Net3> net;
  std::array<std::vector<Permutation>, 3> classes;  // sorted
};

/// Lines are the elements of the classes C_i = sigma_i^G; three lines of
/// different classes are concurrent iff they generate S_3. Points are the
/// triples (i1, i2, i3) of class-element indices, in lexicographic order.
inline TrialityNet net_from_triality(const TrialityWitness& w, std::uint64_t cap = 10000) {
  if (w.group.order() > cap) throw std::length_error("net_from_triality: group exceeds the class enumeration cap");
  const std::array<Permutation, 3> base{w.sigma, w.sigma * w.rho, w.rho * w.sigma};
  TrialityNet out;
  const auto elements = w.group.elements(cap);
  for (int c = 0; c < 3; ++c) {
    std::set<Permutation> cls;
    for (const auto& g : elements) cls.insert(base[c].conjugate_by(g));
    out.classes[c].assign(cls.begin(), cls.end());
  }
  const std::size_t n = out.classes[0].size();
  if (out.classes[1].size() != n || out.classes[2].size() != n) {
    out.axioms = {false, "the three classes have different sizes"};
    return out;
  }
  std::unordered_map<Permutation, Index, PermutationHash> idx3;
  for (std::size_t i = 0; i < n; ++i) idx3.emplace(out.classes[2][i], static_cast<Index>(i));
  Net3::Incidence inc;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& t1 = out.classes[0][a];
      const auto& t2 = out.classes[1][b];
      const Permutation p = t1 * t2;
      if (p.is_identity() || !(p * p * p).is_identity()) continue;  // <t1,t2> is not S3
      const Permutation t3 = t1 * t2 * t1;
      auto it = idx3.find(t3);
      if (it == idx3.end()) continue;
      inc[0].push_back(static_cast<Index>(a));
      inc[1].push_back(static_cast<Index>(b));
      inc[2].push_back(it->second);
    }
  out.axioms = Net3::check_axioms(n, inc);
  if (out.axioms.ok) out.net = Net3::from_incidence(n, std::move(inc));
  return out;
}

// ---------------------------------------------------------------------------
// Example constructions

/// Cyclic group of order n acting regularly on n points.
inline PermGroup cyclic_perm_group(std::size_t n) {
  if (n <= 1) return schreier_sims({}, std::max<std::size_t>(n, 1));
  return schreier_sims({Permutation::from_function(n, [n](Index i) { return static_cast<Index>((i + 1) % n); })}, n);
}

/// Symmetric group on k points.
inline PermGroup symmetric_perm_group(std::size_t k) {
  if (k <= 1) return schreier_sims({}, std::max<std::size_t>(k, 1));
  std::vector<Permutation> gens{Permutation::from_function(k, [k](Index i) { return static_cast<Index>((i + 1) % k); })};
  if (k > 2) gens.push_back(Permutation::from_function(k, [](Index i) { return i == 0 ? 1u : i == 1 ? 0u : i; }));
  return schreier_sims(gens, k);
}

/// Right regular representation of a group loop: generators R_a.
inline PermGroup regular_representation(const FiniteLoop& g) {
  std::vector<Permutation> gens;
  for (Index a = 0; a < g.size(); ++a)
    if (a != g.neutral()) gens.push_back(right_translation(g, a));
  return schreier_sims(gens, g.size());
}

/// Wreath-type example: G = A^3 on three blocks, sigma swaps blocks 1 and 2,
/// rho realizes (a1,a2,a3) -> (a2,a3,a1).
inline TrialityWitness example_wreath(const PermGroup& a) {
  if (a.order() > 100) throw std::length_error("example_wreath: |A| must be at most 100");
  const std::size_t m = a.degree();
  auto block_perm = [m](std::array<std::uint32_t, 3> pi) {
    return Permutation::from_function(3 * m, [&, m](Index x) { return static_cast<Index>(pi[x / m] * m + x % m); });
  };
  std::vector<Permutation> gens;
  for (std::size_t b = 0; b < 3; ++b)
    for (const auto& g : a.generators())
      gens.push_back(Permutation::from_function(3 * m, [&, b, m](Index x) {
        return x / m == b ? static_cast<Index>(b * m + g(x % m)) : x;
      }));
  // Block b of the conjugate carries the component of block pi^-1(b):
  // pi = (1->3, 2->1, 3->2) gives (a2, a3, a1).
  TrialityWitness w{"wreath", schreier_sims(gens, 3 * m), block_perm({1, 0, 2}), block_perm({2, 0, 1}), {}};
  auto rep = triality_check(w, CheckMode::exhaustive);
  if (!rep.ok()) throw std::logic_error("example_wreath: triality identity failed");
  w.log.push_back("exhaustive triality check on " + std::to_string(rep.elements_checked) + " elements");
  return w;
}

/// G = A x A with sigma swapping the factors and rho = (phi, phi^-1), where
/// phi is a permutation of A's points normalizing A with x x^phi x^phi^2 = 1.
inline TrialityWitness example_phi(const PermGroup& a, const Permutation& phi) {
  const std::size_t m = a.degree();
  if (phi.degree() != m) throw std::invalid_argument("example_phi: phi has the wrong degree");
  for (const auto& g : a.generators())
    if (!a.contains(g.conjugate_by(phi))) throw std::invalid_argument("example_phi: phi does not normalize A");
  const Permutation phi2 = phi * phi;
  a.for_each_element([&](const Permutation& x) {
    if (!(x * x.conjugate_by(phi) * x.conjugate_by(phi2)).is_identity())
      throw std::domain_error("example_phi: x x^phi x^phi^2 = 1 fails");
  });
  if (a.order() > 1 && detail::acts_trivially(a.generators(), phi))
    throw std::domain_error("example_phi: phi must not be the identity automorphism");
  const Permutation phinv = phi.inverse();
  std::vector<Permutation> gens;
  for (std::size_t b = 0; b < 2; ++b)
    for (const auto& g : a.generators())
      gens.push_back(Permutation::from_function(2 * m, [&, b, m](Index x) {
        return x / m == b ? static_cast<Index>(b * m + g(x % m)) : x;
      }));
  Permutation sigma = Permutation::from_function(2 * m, [m](Index x) { return static_cast<Index>((x + m) % (2 * m)); });
  Permutation rho = Permutation::from_function(2 * m, [&, m](Index x) {
    return x < m ? phi(x) : static_cast<Index>(m + phinv(static_cast<Index>(x - m)));
  });
  TrialityWitness w{"phi", schreier_sims(gens, 2 * m), std::move(sigma), std::move(rho), {}};
  auto rep = triality_check(w);
  if (!rep.ok()) throw std::logic_error("example_phi: triality identity failed");
  w.log.push_back("triality check on " + std::to_string(rep.elements_checked) + " elements");
  return w;
}

/// example_phi for A = Z_p x Z_p acting regularly on p^2 points, with phi
/// the first matrix M != I (entries in row-major lexicographic order) such
/// that I + M + M^2 = 0. Throws domain_error when there is none.
inline TrialityWitness example_phi_elementary(std::uint32_t p) {
  if (p < 2 || p > 50) throw std::invalid_argument("example_phi_elementary: p out of range");
  Field::gf(p);  // rejects non-primes
  const std::size_t n = static_cast<std::size_t>(p) * p;
  auto translation = [&](Index du, Index dv) {
    return Permutation::from_function(n, [&](Index x) { return ((x / p + du) % p) * p + (x % p + dv) % p; });
  };
  PermGroup a = schreier_sims({translation(1, 0), translation(0, 1)}, n);
  for (std::uint32_t c = 0; c < p * p * p * p; ++c) {
    const std::uint32_t m00 = c / (p * p * p), m01 = c / (p * p) % p, m10 = c / p % p, m11 = c % p;
    if (m00 == 1 && m01 == 0 && m10 == 0 && m11 == 1) continue;
    // M^2 entries
    const std::uint32_t s00 = (m00 * m00 + m01 * m10) % p, s01 = (m00 * m01 + m01 * m11) % p;
    const std::uint32_t s10 = (m10 * m00 + m11 * m10) % p, s11 = (m10 * m01 + m11 * m11) % p;
    if ((1 + m00 + s00) % p || (m01 + s01) % p || (m10 + s10) % p || (1 + m11 + s11) % p) continue;
    // row vector (u, v) -> (u, v) M
    Permutation phi = Permutation::from_function(n, [&](Index x) {
      const std::uint32_t u = x / p, v = x % p;
      return ((u * m00 + v * m10) % p) * p + (u * m01 + v * m11) % p;
    });
    TrialityWitness w = example_phi(a, phi);
    w.name = "phi:" + std::to_string(p);
    w.log.push_back("phi = [[" + std::to_string(m00) + "," + std::to_string(m01) + "],[" + std::to_string(m10) + "," +
                    std::to_string(m11) + "]]");
    return w;
  }
  throw std::domain_error("example_phi_elementary: no phi with 1 + phi + phi^2 = 0 over Z_" + std::to_string(p));
}

using MatrixF = std::vector<std::vector<FieldElement>>;

/// Translations of F^d (q^d points, point code = base-q digits, first
/// coordinate most significant) with sigma, rho the given matrices acting on
/// row vectors v -> vM.
inline TrialityWitness linear_triality(const Field& f, const MatrixF& sigma, const MatrixF& rho, std::string name = "linear") {
  const std::size_t d = sigma.size();
  const std::uint32_t q = f.order();
  std::size_t pts = 1;
  for (std::size_t i = 0; i < d; ++i) pts *= q;
  auto decode = [&](Index x) {
    std::vector<FieldElement> v(d);
    for (std::size_t i = d; i-- > 0;) {
      v[i] = f.element(x % q);
      x /= q;
    }
    return v;
  };
  auto encode = [&](const std::vector<FieldElement>& v) {
    Index c = 0;
    for (const auto& x : v) c = c * q + x.code();
    return c;
  };
  auto linear = [&](const MatrixF& m) {
    if (m.size() != d) throw std::invalid_argument("linear_triality: matrix size mismatch");
    return Permutation::from_function(pts, [&](Index x) {
      auto v = decode(x);
      std::vector<FieldElement> r(d, f.zero());
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) r[j] += v[i] * m.at(i).at(j);
      return encode(r);
    });
  };
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < d; ++i)
    for (std::uint32_t k = 0; k < f.degree(); ++k) {
      std::vector<FieldElement> w(d, f.zero());
      std::vector<std::uint32_t> coeff(f.degree(), 0);
      coeff[k] = 1;
      w[i] = f.from_coefficients(coeff);
      gens.push_back(Permutation::from_function(pts, [&](Index x) {
        auto v = decode(x);
        for (std::size_t j = 0; j < d; ++j) v[j] += w[j];
        return encode(v);
      }));
    }
  return {std::move(name), schreier_sims(gens, pts), linear(sigma), linear(rho), {}};
}

/// F^2 with rho = [[-1,-1],[1,0]] and sigma = [[0,1],[1,0]]; characteristic 3 is excluded.
inline TrialityWitness example_vector(const Field& f) {
  if (f.characteristic() == 3) throw std::domain_error("example_vector: characteristic 3 is excluded");
  const FieldElement z = f.zero(), o = f.one();
  TrialityWitness w = linear_triality(f, {{z, o}, {o, z}}, {{-o, -o}, {o, z}}, "vector:" + std::to_string(f.order()));
  auto rep = triality_check(w);
  if (!rep.ok()) throw std::logic_error("example_vector: triality identity failed");
  w.log.push_back("triality check on " + std::to_string(rep.elements_checked) + " elements");
  return w;
}

}  // namespace moufang
