#include <gtest/gtest.h>

#include <random>
#include <set>

#include "moufang/cayley.hpp"

using namespace moufang;

namespace {

using O = ClassicalOctonion;

const std::vector<O>& units() {
  static const std::vector<O> u = generate_unit_integrals();
  return u;
}

const FiniteLoop& quotient() {
  static const FiniteLoop q = quotient_mod_sign(units());
  return q;
}

O one() { return classical_basis(0); }

O sub(const O& x, const O& y) {
  O r;
  for (int i = 0; i < 8; ++i) r[i] = x[i] - y[i];
  return r;
}

}  // namespace

TEST(ClassicalOctonion, QuaternionRelations) {
  const O i = classical_basis(1), j = classical_basis(2), k = classical_basis(3), e = classical_basis(4);
  EXPECT_EQ(classical_mul(i, i), -one());
  EXPECT_EQ(classical_mul(e, e), -one());
  EXPECT_EQ(classical_mul(i, j), k);
  EXPECT_EQ(classical_mul(j, i), -k);
  EXPECT_EQ(classical_mul(j, k), i);
  EXPECT_EQ(classical_mul(k, i), j);
  // basis order (1, i, j, k, e, ie, je, ke)
  EXPECT_EQ(classical_mul(i, e), classical_basis(5));
  EXPECT_EQ(classical_mul(j, e), classical_basis(6));
  EXPECT_EQ(classical_mul(k, e), classical_basis(7));
}

TEST(ClassicalOctonion, CoxeterElement) {
  const O h = coxeter_h();
  EXPECT_EQ(to_string(h), "(0,1/2,1/2,1/2,1/2,0,0,0)");
  EXPECT_EQ(classical_norm(h), Rational(1));
  EXPECT_EQ(classical_mul(h, classical_conjugate(h)), one());
  EXPECT_EQ(classical_mul(classical_conjugate(h), h), one());
}

TEST(ClassicalOctonion, NormIsMultiplicativeAndAlternative) {
  std::mt19937_64 rng(0x5EED);
  std::uniform_int_distribution<int> d(-3, 3);
  auto random_o = [&] {
    O x;
    for (auto& v : x) v = HalfInteger(d(rng));  // arbitrary halves would leave the lattice
    return x;
  };
  for (int t = 0; t < 300; ++t) {
    const O x = random_o(), y = random_o();
    EXPECT_EQ(classical_norm(classical_mul(x, y)), classical_norm(x) * classical_norm(y));
    EXPECT_EQ(classical_mul(classical_mul(x, x), y), classical_mul(x, classical_mul(x, y)));
    EXPECT_EQ(classical_mul(classical_mul(y, x), x), classical_mul(y, classical_mul(x, x)));
  }
}

TEST(UnitIntegrals, Exactly240OfNormOne) {
  EXPECT_EQ(units().size(), 240u);
  for (const O& u : units()) {
    EXPECT_EQ(classical_norm(u), Rational(1));
    EXPECT_TRUE(classical_trace(u).is_integer());
    // all coordinates integral or all half-odd
    int halves = 0;
    for (const auto& v : u) halves += v.denominator() == 2;
    EXPECT_TRUE(halves == 0 || halves == 4 || halves == 8) << to_string(u);
  }
}

TEST(UnitIntegrals, ClosedUnderConjugationAndSign) {
  const std::set<O> s(units().begin(), units().end());
  EXPECT_EQ(s.size(), 240u);
  for (const O& u : units()) {
    EXPECT_TRUE(s.count(classical_conjugate(u)));
    EXPECT_TRUE(s.count(-u));
  }
}

TEST(UnitIntegrals, DifferencesStayIntegral) {
  std::mt19937_64 rng(0x5EED);
  for (int t = 0; t < 5000; ++t) {
    const O& a = units()[rng() % 240];
    const O& b = units()[rng() % 240];
    const O d = sub(a, b);
    EXPECT_TRUE(classical_norm(d).is_integer());
    EXPECT_TRUE(classical_trace(d).is_integer());
  }
}

TEST(Quotient, SignCanonical) {
  const O h = coxeter_h();
  EXPECT_EQ(sign_canonical(-h), h);
  EXPECT_EQ(sign_canonical(h), h);
  EXPECT_EQ(sign_canonical(-one()), one());
}

TEST(Quotient, IsPaigeLoopOfOrder120) {
  const FiniteLoop& q = quotient();
  EXPECT_EQ(q.size(), 120u);
  EXPECT_EQ(q.label(q.neutral()), "(1,0,0,0,0,0,0,0)");
  const auto cert = certify_paige2_iso(q);
  EXPECT_EQ(cert.witness.map.size(), 120u);
  EXPECT_TRUE(verify_isomorphism(q, paige_loop(2).loop, cert.witness.map));
  EXPECT_EQ(cert.generated_by_ijh, 120u);
}

TEST(Quotient, MoufangNonassociativeSimple) {
  const FiniteLoop& q = quotient();
  EXPECT_TRUE(is_moufang(q, 2000000));
  EXPECT_TRUE(associativity_counterexample(q).has_value());
  EXPECT_TRUE(is_simple(q).simple);
}
