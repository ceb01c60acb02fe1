#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "moufang/paige.hpp"
#include "moufang/triality.hpp"

using namespace moufang;

namespace {

const FiniteLoop& m2() {
  static const FiniteLoop l = paige_loop(2).loop;
  return l;
}

const Net3& m2_net() {
  static const Net3 n = net_from_loop(m2(), 128);
  return n;
}

bool same_table(const FiniteLoop& a, const FiniteLoop& b) {
  if (a.size() != b.size()) return false;
  for (Index x = 0; x < a.size(); ++x)
    for (Index y = 0; y < a.size(); ++y)
      if (a.mul(x, y) != b.mul(x, y)) return false;
  return true;
}

// Oracle: alpha(xy) = alpha(x) alpha(y) by brute force.
bool is_automorphism(const FiniteLoop& l, const std::vector<Index>& alpha) {
  for (Index x = 0; x < l.size(); ++x)
    for (Index y = 0; y < l.size(); ++y)
      if (alpha[l.mul(x, y)] != l.mul(alpha[x], alpha[y])) return false;
  return true;
}

// Point map (x, y) -> (x a, y b) for loop permutations a, b.
Permutation pair_map(const Permutation& a, const Permutation& b) {
  const Index n = static_cast<Index>(a.degree());
  return Permutation::from_function(n * n, [&](Index p) { return a(p / n) * n + b(p % n); });
}

// Random product of Bol reflections, as a verified collineation.
Collineation random_collineation(const Net3& net, const FiniteLoop& l, std::mt19937_64& rng) {
  Collineation g{Permutation::identity(net.point_count()), Permutation::identity(3)};
  for (int k = 0; k < 5; ++k) {
    const auto r = bol_reflection(net, l, static_cast<int>(rng() % 3), static_cast<Index>(rng() % l.size()));
    g.points = g.points * r.points;
    g.classes = g.classes * r.classes;
  }
  return g;
}

}  // namespace

TEST(Net3, SizesAndAxioms) {
  const Net3 z2 = net_from_loop(cyclic_group_loop(2));
  EXPECT_EQ(z2.point_count(), 4u);
  EXPECT_EQ(z2.line_count(), 6u);
  const Net3 z3 = net_from_loop(cyclic_group_loop(3));
  EXPECT_EQ(z3.point_count(), 9u);
  EXPECT_EQ(z3.line_count(), 9u);
  EXPECT_EQ(m2_net().point_count(), 14400u);
  EXPECT_EQ(m2_net().line_count(), 360u);
  EXPECT_THROW(net_from_loop(m2(), 100), std::length_error);
}

TEST(Net3, AxiomCheckerRejectsBrokenIncidence) {
  Net3::Incidence inc;
  for (auto& v : inc) v = {0, 0, 1, 1};
  inc[1] = {0, 1, 0, 1};
  inc[2] = {0, 1, 1, 0};
  EXPECT_TRUE(Net3::check_axioms(2, inc).ok);
  inc[2] = {0, 1, 0, 1};  // class 3 line 0 meets class 2 line 0 twice
  const auto r = Net3::check_axioms(2, inc);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.failure.empty());
  EXPECT_THROW(Net3::from_incidence(2, inc), std::invalid_argument);
}

TEST(Net3, MeetAndPointsOn) {
  const FiniteLoop s3 = symmetric_group_loop(3);
  const Net3 net = net_from_loop(s3);
  for (Index x = 0; x < 6; ++x)
    for (Index y = 0; y < 6; ++y) {
      const Index p = net.meet(1, x, 0, y);
      EXPECT_EQ(p, x * 6 + y);
      EXPECT_EQ(net.line_of(2, p), s3.mul(x, y));
    }
  const auto pts = net.points_on(2, 3);
  EXPECT_EQ(pts.size(), 6u);
  for (Index p : pts) EXPECT_EQ(net.line_of(2, p), 3u);
}

TEST(CoordinateLoop, RoundTripAtOriginKeepsLabels) {
  for (const FiniteLoop& l : {cyclic_group_loop(3), symmetric_group_loop(3), m2()}) {
    const Net3 net = net_from_loop(l, 128);
    const Index e = l.neutral();
    const FiniteLoop c = coordinate_loop(net, e * static_cast<Index>(l.size()) + e);
    EXPECT_TRUE(same_table(c, l));
    EXPECT_EQ(c.labels(), l.labels());
    EXPECT_EQ(c.neutral(), e);
  }
}

TEST(CoordinateLoop, AnyOriginGivesIsomorphicLoop) {
  const FiniteLoop s3 = symmetric_group_loop(3);
  const Net3 net = net_from_loop(s3);
  for (Index p = 0; p < net.point_count(); ++p) EXPECT_TRUE(find_isomorphism(coordinate_loop(net, p), s3).has_value());
  const FiniteLoop c = coordinate_loop(m2_net(), 77 * 120 + 5);
  EXPECT_TRUE(find_isomorphism(c, m2()).has_value());
}

TEST(BolReflection, TransversalInZ3) {
  const FiniteLoop z3 = cyclic_group_loop(3);
  const auto r = bol_reflection(z3, 2, 0);
  for (Index x = 0; x < 3; ++x)
    for (Index y = 0; y < 3; ++y) EXPECT_EQ(r.points(x * 3 + y), ((3 - y) % 3) * 3 + (3 - x) % 3);
  EXPECT_EQ(r.classes.images(), (std::vector<std::uint32_t>{1, 0, 2}));
}

TEST(BolReflection, CoordinateFormulasMatchGeometry) {
  const Net3& net = m2_net();
  std::mt19937_64 rng(0x5EED);
  for (int c = 0; c < 3; ++c)
    for (int t = 0; t < 5; ++t) {
      const Index m = static_cast<Index>(rng() % 120);
      EXPECT_EQ(bol_reflection_map(m2(), c, m), bol_reflection_geometric(net, c, m));
    }
  const FiniteLoop s3 = symmetric_group_loop(3);
  const Net3 ns3 = net_from_loop(s3);
  for (int c = 0; c < 3; ++c)
    for (Index m = 0; m < 6; ++m) EXPECT_EQ(bol_reflection_map(s3, c, m), bol_reflection_geometric(ns3, c, m));
}

TEST(BolReflection, ThroughOriginOfPaigeNet) {
  const Net3& net = m2_net();
  const Index e = m2().neutral();
  std::vector<Permutation> classes;
  for (int c = 0; c < 3; ++c) {
    const auto r = bol_reflection(net, m2(), c, e);
    for (Index p : net.points_on(c, e)) EXPECT_EQ(r.points(p), p);
    classes.push_back(r.classes);
  }
  EXPECT_EQ(schreier_sims(classes, 3).order(), 6u);
}

TEST(BolReflection, NonMoufangLoopIsRejected) {
  // Non-Moufang loop of order 5 (rows 01234/10342/23401/34120/42013).
  const FiniteLoop l = FiniteLoop::from_table({"0", "1", "2", "3", "4"},
                                              {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 3, 4, 0, 1, 3, 4, 1, 2, 0, 4, 2, 0, 1, 3});
  const Net3 net = net_from_loop(l);
  bool rejected = false;
  for (int c = 0; c < 3; ++c)
    for (Index m = 0; m < 5; ++m) {
      try {
        bol_reflection(net, l, c, m);
      } catch (const std::domain_error&) {
        rejected = true;
      }
    }
  EXPECT_TRUE(rejected);
}

TEST(BolReflection, ProductsAreDisplayedPairs) {
  // Composition is left to right: sigma_m sigma_1 applies sigma_m first.
  const FiniteLoop& l = m2();
  const Index e = l.neutral();
  std::mt19937_64 rng(0x5EED);
  for (int t = 0; t < 10; ++t) {
    const Index m = static_cast<Index>(rng() % l.size());
    const Permutation lm = left_translation(l, m), rm = right_translation(l, m);
    const Permutation lr_inv = lm.inverse() * rm.inverse();
    EXPECT_EQ(bol_reflection_map(l, 1, m) * bol_reflection_map(l, 1, e), pair_map(lr_inv, lm));
    EXPECT_EQ(bol_reflection_map(l, 0, m) * bol_reflection_map(l, 0, e), pair_map(rm, lr_inv));
    // the transversal product uses the axis XY = m^-1
    EXPECT_EQ(bol_reflection_map(l, 2, l.inverse(m)) * bol_reflection_map(l, 2, e), pair_map(lm, rm));
    EXPECT_TRUE(autotopism_check(l, lr_inv, lm, lm.inverse()));
    EXPECT_TRUE(autotopism_check(l, rm, lr_inv, rm.inverse()));
    EXPECT_TRUE(autotopism_check(l, lm, rm, lm * rm));
  }
}

TEST(BolReflection, ConjugationByCollineationMovesAxis) {
  const Net3& net = m2_net();
  std::mt19937_64 rng(0x5EED);
  for (int t = 0; t < 10; ++t) {
    const Collineation g = random_collineation(net, m2(), rng);
    ASSERT_TRUE(check_collineation(net, g.points).ok);
    const int c = static_cast<int>(rng() % 3);
    const Index m = static_cast<Index>(rng() % 120);
    const Index image = line_action(net, g)(net.line_id(c, m));
    const Permutation lhs = bol_reflection_geometric(net, c, m).conjugate_by(g.points);
    EXPECT_EQ(lhs, bol_reflection_geometric(net, static_cast<int>(image / 120), image % 120));
  }
}

TEST(BolReflection, ConcurrentAxesGiveOrderThree) {
  const Net3& net = m2_net();
  std::mt19937_64 rng(0x5EED);
  for (int t = 0; t < 10; ++t) {
    const Index p = static_cast<Index>(rng() % net.point_count());
    const int c1 = static_cast<int>(rng() % 3), c2 = (c1 + 1 + static_cast<int>(rng() % 2)) % 3;
    const Permutation s = bol_reflection_geometric(net, c1, net.line_of(c1, p)) *
                          bol_reflection_geometric(net, c2, net.line_of(c2, p));
    EXPECT_TRUE(s.pow(3).is_identity());
    EXPECT_FALSE(s.is_identity());
  }
}

TEST(Collineation, LineAndPointActionsInvert) {
  const Net3& net = m2_net();
  std::mt19937_64 rng(0x5EED);
  const Collineation g = random_collineation(net, m2(), rng);
  const Permutation lines = line_action(net, g);
  EXPECT_EQ(point_action(net, lines), g.points);
  EXPECT_EQ(class_action(net, lines), g.classes);
  EXPECT_FALSE(check_collineation(net, Permutation::from_function(14400, [](Index p) {
                 return p < 2 ? 1 - p : p;
               })).ok);
}

TEST(Collineation, AutomorphismsAreDirectionPreservingCollineations) {
  const FiniteLoop& l = m2();
  const Net3& net = m2_net();
  const Index e = l.neutral(), origin = e * 120 + e;
  std::size_t seen = 0;
  automorphism_count(l, [&](const std::vector<Index>& alpha) {
    if (seen++ % 97) return;
    EXPECT_TRUE(is_direction_preserving_collineation(net, alpha, origin));
  });
  EXPECT_EQ(seen, 12096u);
}

TEST(Collineation, DirectionPreservingCollineationsAreAutomorphisms) {
  const FiniteLoop s3 = symmetric_group_loop(3);
  const Net3 net = net_from_loop(s3);
  const Index origin = s3.neutral() * 6 + s3.neutral();
  std::vector<Index> alpha(6);
  std::iota(alpha.begin(), alpha.end(), 0u);
  std::size_t collineations = 0;
  do {
    const bool col = is_direction_preserving_collineation(net, alpha, origin);
    EXPECT_EQ(col, is_automorphism(s3, alpha));
    collineations += col;
  } while (std::next_permutation(alpha.begin(), alpha.end()));
  EXPECT_EQ(collineations, 6u);
}

TEST(TrialityFromLoop, SmallGroupsExhaustive) {
  const auto z3 = triality_group_from_loop(cyclic_group_loop(3));
  EXPECT_EQ(z3.m_group.order(), 18u);
  EXPECT_EQ(z3.witness.group.order(), 3u);
  const auto r = triality_check(z3.witness, CheckMode::exhaustive);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.elements_checked, 3u);
  const auto s3 = triality_group_from_loop(symmetric_group_loop(3));
  EXPECT_EQ(s3.m_group.order(), 648u);
  EXPECT_EQ(s3.witness.group.order(), 108u);
  EXPECT_TRUE(triality_check(s3.witness, CheckMode::exhaustive).ok());
}

TEST(TrialityFromLoop, PaigeLoopSampled) {
  const auto t = triality_group_from_loop(m2());
  EXPECT_EQ(t.m_group.order(), 1045094400u);
  EXPECT_EQ(t.witness.group.order(), 174182400u);
  EXPECT_EQ(t.reflections.size(), 360u);
  const auto r = triality_check(t.witness, CheckMode::automatic, 1000, 0x5EED);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_GE(r.elements_checked, 1000u);
  EXPECT_TRUE(r.identity_ok);
  EXPECT_TRUE(r.lemma_ok);
  EXPECT_TRUE(r.routes_agree);
}

TEST(TrialityCheck, RejectsBrokenRelations) {
  // Z4 with sigma = inversion and rho = id
  const PermGroup z4 = cyclic_perm_group(4);
  const Permutation inversion = Permutation::from_function(4, [](Index i) { return (4 - i) % 4; });
  EXPECT_THROW(triality_check(z4, inversion, Permutation::identity(4)), std::domain_error);
  // a non-normalizing sigma
  const Permutation swap01 = Permutation::from_function(4, [](Index i) { return i < 2 ? 1 - i : i; });
  EXPECT_THROW(triality_check(z4, swap01, Permutation::identity(4)), std::domain_error);
}

TEST(TrialityNet, RoundTripThroughZ3) {
  const auto z3 = triality_group_from_loop(cyclic_group_loop(3));
  const auto tn = net_from_triality(z3.witness);
  ASSERT_TRUE(tn.axioms.ok) << tn.axioms.failure;
  ASSERT_TRUE(tn.net.has_value());
  EXPECT_EQ(tn.net->order(), 3u);
  EXPECT_TRUE(find_isomorphism(coordinate_loop(*tn.net, 0), cyclic_group_loop(3)).has_value());
}

TEST(TrialityNet, RoundTripThroughS3) {
  const auto s3 = triality_group_from_loop(symmetric_group_loop(3));
  const auto tn = net_from_triality(s3.witness);
  ASSERT_TRUE(tn.axioms.ok) << tn.axioms.failure;
  EXPECT_EQ(tn.net->order(), 6u);
  EXPECT_TRUE(find_isomorphism(coordinate_loop(*tn.net, 0), symmetric_group_loop(3)).has_value());
}

TEST(TrialityNet, CapIsEnforced) {
  const auto s3 = triality_group_from_loop(symmetric_group_loop(3));
  EXPECT_THROW(net_from_triality(s3.witness, 100), std::length_error);
}

TEST(ExampleWreath, PassesAndRecoversA) {
  for (std::size_t n : {2u, 5u}) {
    const auto w = example_wreath(cyclic_perm_group(n));
    EXPECT_EQ(w.group.order(), n * n * n);
    EXPECT_TRUE(triality_check(w, CheckMode::exhaustive).ok());
    const auto tn = net_from_triality(w);
    ASSERT_TRUE(tn.axioms.ok) << tn.axioms.failure;
    EXPECT_TRUE(find_isomorphism(coordinate_loop(*tn.net, 0), cyclic_group_loop(n)).has_value());
  }
  const auto s3 = example_wreath(symmetric_perm_group(3));
  EXPECT_EQ(s3.group.order(), 216u);
  const auto r = triality_check(s3, CheckMode::exhaustive);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.elements_checked, 216u);
  const auto tn = net_from_triality(s3);
  ASSERT_TRUE(tn.axioms.ok);
  EXPECT_TRUE(find_isomorphism(coordinate_loop(*tn.net, 0), symmetric_group_loop(3)).has_value());
  EXPECT_THROW(example_wreath(symmetric_perm_group(5)), std::length_error);
}

TEST(ExamplePhi, InversionOfZ3FailsPrecondition) {
  const Permutation inversion = Permutation::from_function(3, [](Index i) { return (3 - i) % 3; });
  EXPECT_THROW(example_phi(cyclic_perm_group(3), inversion), std::domain_error);
}

TEST(ExamplePhi, ElementaryAbelianOfOrderNine) {
  const auto w = example_phi_elementary(3);
  EXPECT_EQ(w.group.order(), 81u);
  EXPECT_TRUE(triality_check(w, CheckMode::exhaustive).ok());
  EXPECT_TRUE(net_from_triality(w).axioms.ok);
}

TEST(ExamplePhi, TrivialGroupPassesDegenerately) {
  const auto w = example_phi(cyclic_perm_group(1), Permutation::identity(1));
  EXPECT_EQ(w.group.order(), 1u);
  EXPECT_TRUE(triality_check(w).ok());
}

TEST(ExampleVector, PassesAwayFromCharacteristicThree) {
  for (std::uint32_t q : {2u, 4u, 5u, 7u}) {
    const auto w = example_vector(Field::gf(q));
    EXPECT_EQ(w.group.order(), q * q);
    EXPECT_TRUE(w.rho.pow(3).is_identity());
    const auto r = triality_check(w, CheckMode::exhaustive);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.elements_checked, q * q);
  }
  EXPECT_THROW(example_vector(Field::gf(3)), std::domain_error);
  EXPECT_THROW(example_vector(Field::gf(9)), std::domain_error);
}

TEST(NegativeControl, SigmaInvertingAnExtraSummand) {
  // F^2 + F where sigma also negates the extra coordinate: the S3 relations
  // hold but [g, sigma] does not satisfy the identity.
  const Field f = Field::gf(5);
  const FieldElement z = f.zero(), o = f.one();
  const auto w = linear_triality(f, {{z, o, z}, {o, z, z}, {z, z, -o}}, {{-o, -o, z}, {o, z, z}, {z, z, o}});
  const auto r = triality_check(w, CheckMode::exhaustive);
  EXPECT_FALSE(r.identity_ok);
  EXPECT_FALSE(r.lemma_ok);
  EXPECT_TRUE(r.routes_agree);
  EXPECT_TRUE(r.witness.has_value());
  const auto tn = net_from_triality(w);
  EXPECT_FALSE(tn.axioms.ok);
  EXPECT_FALSE(tn.net.has_value());
}
