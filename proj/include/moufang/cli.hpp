#pragma once

// Command-line front end. run_cli() prints key=value lines on `out`,
// progress and errors on `err`, and returns 0 (verified), 1 (property
// falsified, with witness) or 2 (usage error).

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <ostream>
#include <random>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "moufang/cayley.hpp"
#include "moufang/composition.hpp"
#include "moufang/fields.hpp"
#include "moufang/loops.hpp"
#include "moufang/orthogonal.hpp"
#include "moufang/paige.hpp"
#include "moufang/permgrp.hpp"
#include "moufang/triality.hpp"

namespace moufang {

/// Raised for malformed arguments that CLI11 itself accepts.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos, 0);
    if (pos != s.size()) throw UsageError("bad seed '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("bad seed '" + s + "'");
  }
}

/// Loop names: M(q), M*(q) (q <= 5), Z<n>, S<n>, J' (integral units mod sign), file:PATH.
inline FiniteLoop load_loop(const std::string& spec) {
  std::smatch m;
  if (std::regex_match(spec, m, std::regex(R"(M(\*?)\((\d+)\))"))) {
    const auto q = static_cast<std::uint32_t>(std::stoul(m[2]));
    if (q > 5) throw UsageError("loop " + spec + ": only q <= 5 can be built exhaustively");
    return m[1].length() ? paige_loop(q).loop : unit_loop(q).loop;
  }
  if (std::regex_match(spec, m, std::regex(R"(Z(\d+))"))) return cyclic_group_loop(std::stoul(m[1]));
  if (std::regex_match(spec, m, std::regex(R"(S(\d+))"))) {
    const auto k = std::stoul(m[1]);
    if (k < 1 || k > 5) throw UsageError("loop " + spec + ": S<n> needs 1 <= n <= 5");
    return symmetric_group_loop(k);
  }
  if (spec == "J'") return quotient_mod_sign();
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw UsageError("cannot open " + spec.substr(5));
    return read_table(in);
  }
  throw UsageError("unknown loop '" + spec + "'");
}

namespace cli_detail {

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }
inline const char* pass_fail(bool b) { return b ? "PASS" : "FAIL"; }

template <class T>
void kv(std::ostream& out, const std::string& key, const T& value) {
  out << key << '=' << value << '\n';
}

inline std::uint32_t checked_q(std::uint32_t q) {
  try {
    Field::gf(q);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return q;
}

/// Uniform random norm-one Zorn matrix by rejection.
template <class Rng>
ZornF random_norm_one(const Field& f, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, f.order() - 1);
  while (true) {
    std::array<FieldElement, 8> c;
    for (auto& v : c) v = f.element(d(rng));
    ZornF x = ZornF::from_coords(c);
    if (norm(x) == f.one()) return x;
  }
}

template <class Rng>
ZornF random_zorn(const Field& f, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, f.order() - 1);
  std::array<FieldElement, 8> c;
  for (auto& v : c) v = f.element(d(rng));
  return ZornF::from_coords(c);
}

inline std::string triple_labels(const FiniteLoop& l, const Triple& t) {
  return l.label(t.x) + "," + l.label(t.y) + "," + l.label(t.z);
}

/// Triality sources: net:<loop>, wreath:Z<n>|S<n>, phi:<p> (A = Z_p x Z_p),
/// vector:<field>, negative:<field> (F^2 + F with sigma = -1 on the extra summand).
inline TrialityWitness load_triality(const std::string& spec, std::ostream& err) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("triality source needs a kind, e.g. net:Z3");
  const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  if (kind == "net") {
    err << "[progress] building reflection group of the net of " << arg << '\n';
    auto lt = triality_group_from_loop(load_loop(arg));
    for (const auto& s : lt.witness.log) err << "[progress] " << s << '\n';
    return std::move(lt.witness);
  }
  if (kind == "wreath") {
    std::smatch m;
    if (std::regex_match(arg, m, std::regex(R"(Z(\d+))"))) return example_wreath(cyclic_perm_group(std::stoul(m[1])));
    if (std::regex_match(arg, m, std::regex(R"(S(\d+))"))) return example_wreath(symmetric_perm_group(std::stoul(m[1])));
    throw UsageError("wreath source needs Z<n> or S<n>");
  }
  if (kind == "phi") return example_phi_elementary(static_cast<std::uint32_t>(std::stoul(arg)));
  if (kind == "vector") return example_vector(parse_field(arg));
  if (kind == "negative") {
    const Field f = parse_field(arg);
    const FieldElement z = f.zero(), o = f.one();
    return linear_triality(f, {{z, o, z}, {o, z, z}, {z, z, -o}}, {{-o, -o, z}, {o, z, z}, {z, z, o}}, "negative:" + arg);
  }
  throw UsageError("unknown triality source kind '" + kind + "'");
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Split octonions, Paige loops, 3-nets and triality"};
  app.require_subcommand(1);
  app.name("moufang");

  std::string seed_text = "0x5EED";
  std::uint32_t q = 2;
  std::string loop_spec, other_spec, field_spec = "gf(2)", out_path, element, source, mode = "auto";
  std::size_t samples = 0, cap = 200000, points = 50;
  bool unit = false, use_closure = false, exhaustive = false, inner = false, bound = false, collineations = false,
       build_net = false;

  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", seed_text, "sampling seed (default 0x5EED)"); };
  auto add_loop = [&](CLI::App* s) {
    s->add_option("--loop", loop_spec, "M(q), M*(q), Z<n>, S<n>, J', file:PATH")->required();
  };

  std::function<int()> action;
  auto sub = [&](const std::string& name, const std::string& help, std::function<int()> f) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&action, f] { action = f; });
    return s;
  };

  // paige-order
  {
    auto s = sub("paige-order", "order of M*(q) (or M(q) with --unit) from the formula and by enumeration", [&] {
      checked_q(q);
      const auto formula = unit ? unit_loop_order_formula(q) : paige_order_formula(q);
      kv(out, "order", formula);
      if (q > 5) return 0;
      const auto counted = enumerate_norm_one(Field::gf(q), !unit).size();
      kv(out, "enumerated", counted);
      kv(out, "match", yes_no(counted == formula));
      return counted == formula ? 0 : 1;
    });
    s->add_option("--q", q)->required();
    s->add_flag("--unit", unit, "M(q) instead of M*(q)");
  }
  // paige-build
  {
    auto s = sub("paige-build", "build M*(q) or M(q) and optionally export its table", [&] {
      checked_q(q);
      if (use_closure) {
        if (unit) throw UsageError("closure mode builds M*(q) only");
        err << "[progress] closing standard generators for q=" << q << '\n';
        auto r = paige_loop_from_generators(q, cap);
        kv(out, "name", r.loop.name());
        kv(out, "mode", "closure");
        kv(out, "size", r.loop.loop.size());
        kv(out, "stopped_at_universe", yes_no(r.stopped_at_universe));
        if (!out_path.empty()) {
          std::ofstream f(out_path);
          write_table(r.loop.loop, f);
        }
        return 0;
      }
      auto p = unit ? unit_loop(q) : paige_loop(q);
      kv(out, "name", p.name());
      kv(out, "mode", "exhaustive");
      kv(out, "size", p.loop.size());
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        write_table(p.loop, f);
        kv(out, "out", out_path);
      }
      return 0;
    });
    s->add_option("--q", q)->required();
    s->add_flag("--unit", unit, "M(q) instead of M*(q)");
    s->add_flag("--closure", use_closure, "close the standard generators instead of enumerating");
    s->add_option("--cap", cap, "closure element cap");
    s->add_option("--out", out_path, "write the Cayley table here");
  }
  // mlt-order
  {
    auto s = sub("mlt-order", "order of the multiplication group", [&] {
      const FiniteLoop l = load_loop(loop_spec);
      err << "[progress] Schreier-Sims on " << l.size() << " points\n";
      const auto g = mlt_group(l);
      kv(out, "order", g.order());
      kv(out, "base_length", g.base_length());
      int rc = 0;
      if (inner) kv(out, "inner_order", inner_mapping_group(l).order());
      if (bound) {
        const std::uint64_t n = l.size(), b = 4 * n * n * n * n;
        kv(out, "bound", b);
        kv(out, "below_bound", yes_no(g.order() < b));
        if (g.order() >= b) rc = 1;
      }
      return rc;
    });
    add_loop(s);
    s->add_flag("--inner", inner, "also report the inner mapping group order");
    s->add_flag("--bound", bound, "compare with 4|L|^4");
  }
  // simple-check
  {
    auto s = sub("simple-check", "normal closure of nonidentity elements equals the loop", [&] {
      const FiniteLoop l = load_loop(loop_spec);
      const auto r = is_simple(l, samples ? samples : 100, parse_seed(seed_text));
      kv(out, "simple", yes_no(r.simple));
      kv(out, "checked", r.checked);
      if (r.witness) kv(out, "witness", l.label(*r.witness));
      return r.simple ? 0 : 1;
    });
    add_loop(s);
    s->add_option("--samples", samples, "elements sampled when the loop is large (default 100)");
    add_seed(s);
  }
  // moufang-check
  {
    auto s = sub("moufang-check", "first Moufang identity and a nonassociativity witness", [&] {
      const FiniteLoop l = load_loop(loop_spec);
      const std::size_t n = samples ? samples : 100000;
      const auto bad = moufang_counterexample(l, n, parse_seed(seed_text));
      kv(out, "moufang", yes_no(!bad));
      kv(out, "mode", l.size() <= 512 ? "exhaustive" : "sampled");
      kv(out, "triples", l.size() <= 512 ? static_cast<std::uint64_t>(l.size()) * l.size() * l.size() : n);
      if (bad) kv(out, "moufang_witness", triple_labels(l, *bad));
      const auto assoc = associativity_counterexample(l);
      kv(out, "associative", yes_no(!assoc));
      if (assoc) kv(out, "associativity_witness", triple_labels(l, *assoc));
      return bad ? 1 : 0;
    });
    add_loop(s);
    s->add_option("--samples", samples, "sampled triples for loops above 512 elements (default 100000)");
    add_seed(s);
  }
  // generators-check
  {
    auto s = sub("generators-check", "closure of the three standard generators of M*(q)", [&] {
      checked_q(q);
      const auto g = standard_generators(q);
      for (int i = 0; i < 3; ++i) kv(out, "generator" + std::to_string(i + 1), to_string(g[i]));
      err << "[progress] closing generators for q=" << q << '\n';
      const auto r = paige_loop_from_generators(q, cap);
      const auto expected = paige_order_formula(q);
      kv(out, "closure_size", r.loop.loop.size());
      kv(out, "expected", expected);
      kv(out, "match", yes_no(r.loop.loop.size() == expected));
      return r.loop.loop.size() == expected ? 0 : 1;
    });
    s->add_option("--q", q)->required();
    s->add_option("--cap", cap, "closure element cap");
  }
  // decompose
  {
    auto s = sub("decompose", "write Zorn matrices as sums of two norm-one elements", [&] {
      const Field f = parse_field(field_spec);
      const FieldElement one = f.one();
      std::size_t checked = 0, failures = 0;
      std::optional<ZornF> witness;
      auto check = [&](const ZornF& x) {
        ++checked;
        const auto [u, v] = decompose_sum_two_units(x);
        const bool ok = norm(u) == one && norm(v) == one && u + v == x;
        if (!ok && !witness) witness = x;
        failures += !ok;
        return std::pair{u, v};
      };
      if (!element.empty()) {
        const auto [u, v] = check(parse_zorn(f, element));
        kv(out, "u", to_string(u));
        kv(out, "v", to_string(v));
      } else if (exhaustive) {
        ZornCodec codec(f);
        if (codec.space_size() > 1000000) throw UsageError("exhaustive mode is limited to 10^6 elements");
        for (std::uint64_t c = 0; c < codec.space_size(); ++c) check(codec.decode(c));
      } else {
        std::mt19937_64 rng(parse_seed(seed_text));
        for (std::size_t i = 0, n = samples ? samples : 10000; i < n; ++i) check(random_zorn(f, rng));
      }
      kv(out, "checked", checked);
      kv(out, "failures", failures);
      if (witness) kv(out, "witness", to_string(*witness));
      return failures ? 1 : 0;
    });
    s->add_option("--field", field_spec, "gf(q) or gf(p,k,c0..ck)");
    s->add_option("--element", element, "one Zorn matrix [a|a1,a2,a3|b1,b2,b3|b]");
    s->add_flag("--exhaustive", exhaustive, "every element of the algebra");
    s->add_option("--samples", samples, "random elements (default 10000)");
    add_seed(s);
  }
  // spinor-check
  {
    auto s = sub("spinor-check", "L_a and R_a are rotations with square spinor norm", [&] {
      checked_q(q);
      const Field f = Field::gf(q);
      std::mt19937_64 rng(parse_seed(seed_text));
      const bool even = f.characteristic() == 2;
      std::size_t rotations = 0, det_ok = 0, square = 0, checked = 0;
      std::optional<ZornF> witness;
      for (std::size_t i = 0, n = samples ? samples : 1000; i < n; ++i) {
        const ZornF a = random_norm_one(f, rng);
        for (Side side : {Side::left, Side::right}) {
          ++checked;
          const Matrix8 m = mult_operator_matrix(a, side);
          const bool rot = is_rotation(m);
          const bool d = det(m) == norm(a).pow(4) && det(m) == f.one();
          rotations += rot;
          det_ok += d;
          bool sq = true;
          if (!even && rot) sq = spinor_norm(m).in_omega;
          square += !even && sq;
          if ((!rot || !d || !sq) && !witness) witness = a;
        }
      }
      kv(out, "checked", checked);
      kv(out, "rotations", rotations);
      kv(out, "det_one", det_ok);
      if (even)
        kv(out, "spinor", "undefined");
      else
        kv(out, "square", square);
      if (witness) kv(out, "witness", to_string(*witness));
      return witness ? 1 : 0;
    });
    s->add_option("--q", q)->required();
    s->add_option("--samples", samples, "random norm-one elements (default 1000)");
    add_seed(s);
  }
  // net-build
  {
    auto s = sub("net-build", "3-net of a loop, axioms and the coordinate loop", [&] {
      const FiniteLoop l = load_loop(loop_spec);
      const Net3 net = net_from_loop(l, cap < 128 ? cap : std::max<std::size_t>(128, l.size()));
      kv(out, "points", net.point_count());
      kv(out, "lines_per_class", net.order());
      kv(out, "axioms", "ok");
      const Index origin = l.neutral() * static_cast<Index>(l.size()) + l.neutral();
      const FiniteLoop c = coordinate_loop(net, origin);
      bool same = true;
      for (Index x = 0; x < l.size(); ++x)
        for (Index y = 0; y < l.size(); ++y) same &= c.mul(x, y) == l.mul(x, y);
      kv(out, "coordinate_loop_equal", yes_no(same));
      return same ? 0 : 1;
    });
    add_loop(s);
  }
  // bol-check
  {
    auto s = sub("bol-check", "all Bol reflections of the net; (s1 s2)^3 = 1 at sampled points", [&] {
      const FiniteLoop l = load_loop(loop_spec);
      const Net3 net = net_from_loop(l, std::max<std::size_t>(128, l.size()));
      const std::size_t n = l.size();
      std::vector<Collineation> refl;
      std::size_t failures = 0, agree = 0;
      std::string witness;
      for (int c = 0; c < 3; ++c)
        for (Index m = 0; m < n; ++m) {
          try {
            refl.push_back(bol_reflection(net, l, c, m));
            agree += refl.back().points == bol_reflection_geometric(net, c, m);
          } catch (const std::domain_error& e) {
            ++failures;
            if (witness.empty()) witness = "class " + std::to_string(c + 1) + " line " + l.label(m) + ": " + e.what();
          }
        }
      kv(out, "reflections", 3 * n);
      kv(out, "verified", refl.size());
      kv(out, "geometric_agree", agree);
      std::size_t pairs = 0;
      if (!failures) {
        std::mt19937_64 rng(parse_seed(seed_text));
        std::uniform_int_distribution<Index> d(0, static_cast<Index>(net.point_count() - 1));
        for (std::size_t i = 0; i < points; ++i) {
          const Index p = d(rng);
          for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
              const auto& s1 = refl[a * n + net.line_of(a, p)].points;
              const auto& s2 = refl[b * n + net.line_of(b, p)].points;
              const Permutation t = s1 * s2;
              ++pairs;
              if (!(t * t * t).is_identity()) {
                ++failures;
                if (witness.empty()) witness = "point " + std::to_string(p);
              }
            }
        }
      }
      kv(out, "concurrent_pairs", pairs);
      kv(out, "failures", failures);
      if (!witness.empty()) kv(out, "witness", witness);
      return failures || agree != 3 * n ? 1 : 0;
    });
    add_loop(s);
    s->add_option("--points", points, "sampled points (default 50)");
    add_seed(s);
  }
  // triality-check
  {
    auto s = sub("triality-check", "triality identity and the (t_i t_j)^3 = 1 reformulation", [&] {
      TrialityWitness w = load_triality(source, err);
      const CheckMode cm = mode == "exhaustive" ? CheckMode::exhaustive
                           : mode == "sampled"  ? CheckMode::sampled
                           : mode == "auto"     ? CheckMode::automatic
                                                : throw UsageError("mode must be auto, exhaustive or sampled");
      const auto r = triality_check(w, cm, samples ? samples : 1000, parse_seed(seed_text));
      kv(out, "group_order", w.group.order());
      kv(out, "mode", r.exhaustive ? "exhaustive" : "sampled");
      kv(out, "elements_checked", r.elements_checked);
      kv(out, "pairs_checked", r.pairs_checked);
      kv(out, "identity", pass_fail(r.identity_ok));
      kv(out, "lemma", pass_fail(r.lemma_ok));
      kv(out, "routes_agree", yes_no(r.routes_agree));
      if (r.witness) kv(out, "witness", to_string(*r.witness));
      int rc = r.ok() ? 0 : 1;
      if (build_net) {
        const auto tn = net_from_triality(w);
        kv(out, "net_axioms", tn.axioms.ok ? "ok" : "fail");
        if (!tn.axioms.ok) {
          kv(out, "net_failure", tn.axioms.failure);
          rc = 1;
        } else {
          kv(out, "net_order", tn.net->order());
        }
      }
      return rc;
    });
    s->add_option("--source", source, "net:<loop>, wreath:Z<n>|S<n>, phi:<p>, vector:<field>, negative:<field>")->required();
    s->add_option("--mode", mode, "auto, exhaustive or sampled");
    s->add_option("--samples", samples, "sampled elements and class pairs (default 1000)");
    s->add_flag("--net", build_net, "also build the net of the group with triality");
    add_seed(s);
  }
  // cayley-units
  sub("cayley-units", "integral Cayley numbers of norm one and the quotient by sign", [&] {
    const auto units = generate_unit_integrals();
    const auto qt = quotient_mod_sign(units);
    err << "[progress] searching for an isomorphism with M*(2)\n";
    const auto cert = certify_paige2_iso(qt);
    kv(out, "units", units.size());
    kv(out, "quotient", qt.size());
    kv(out, "iso_with_paige2", "yes");
    kv(out, "generated_by_ijh", cert.generated_by_ijh);
    return units.size() == 240 && qt.size() == 120 && cert.generated_by_ijh == 120 ? 0 : 1;
  });
  // iso-check
  {
    auto s = sub("iso-check", "search for an isomorphism between two loops", [&] {
      const FiniteLoop a = load_loop(loop_spec), b = load_loop(other_spec);
      const auto w = find_isomorphism(a, b);
      kv(out, "isomorphic", yes_no(w.has_value()));
      if (w) {
        std::string m;
        for (Index x = 0; x < a.size(); ++x) m += (x ? " " : "") + std::to_string(w->map[x]);
        kv(out, "map", m);
      }
      return w ? 0 : 1;
    });
    add_loop(s);
    s->add_option("--other", other_spec, "second loop")->required();
  }
  // aut-count
  {
    auto s = sub("aut-count", "number of automorphisms", [&] {
      const FiniteLoop l = load_loop(loop_spec);
      std::optional<Net3> net;
      if (collineations) net = net_from_loop(l, std::max<std::size_t>(128, l.size()));
      const Index origin = l.neutral() * static_cast<Index>(l.size()) + l.neutral();
      std::size_t bad = 0;
      err << "[progress] enumerating automorphisms\n";
      const auto count = automorphism_count(l, [&](const std::vector<Index>& a) {
        if (net && !is_direction_preserving_collineation(*net, a, origin)) ++bad;
      });
      kv(out, "count", count);
      if (collineations) kv(out, "collineation_check", pass_fail(bad == 0));
      return bad ? 1 : 0;
    });
    add_loop(s);
    s->add_flag("--collineations", collineations, "check each automorphism as a collineation of the net");
  }
  // export-table
  {
    auto s = sub("export-table", "write the Cayley table file", [&] {
      const FiniteLoop l = load_loop(loop_spec);
      std::ofstream f(out_path);
      if (!f) throw UsageError("cannot write " + out_path);
      write_table(l, f);
      kv(out, "size", l.size());
      kv(out, "out", out_path);
      return 0;
    });
    add_loop(s);
    s->add_option("--out", out_path)->required();
  }

  std::vector<const char*> argv{"moufang"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error=" << e.what() << '\n';
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const UsageError& e) {
    err << "error=" << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error=" << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error=" << e.what() << '\n';
    return 2;
  } catch (const std::length_error& e) {
    err << "error=" << e.what() << '\n';
    return 2;
  }
}

}  // namespace moufang
