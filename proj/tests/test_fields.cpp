#include <gtest/gtest.h>

#include <random>
#include <set>

#include "moufang/fields.hpp"

using namespace moufang;

namespace {

// Independent oracle: does the polynomial (coefficients constant first) have
// a root mod p? Enough to decide irreducibility in degree 2 and 3.
bool has_root(const std::vector<int>& c, int p) {
  for (int x = 0; x < p; ++x) {
    long v = 0, xp = 1;
    for (int ci : c) {
      v = (v + ci * xp) % p;
      xp = xp * x % p;
    }
    if (v == 0) return true;
  }
  return false;
}

std::vector<Field> builtin_fields() {
  std::vector<Field> out;
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u, 32u}) out.push_back(Field::gf(q));
  return out;
}

}  // namespace

TEST(FieldMake, PrimeField) {
  Field f = Field::make(2, 1);
  EXPECT_EQ(f.order(), 2u);
  EXPECT_EQ(f.name(), "GF(2)");
}

TEST(FieldMake, ExplicitModuli) {
  ASSERT_FALSE(has_root({1, 0, 1}, 3));
  Field f9 = Field::make(3, 2, std::vector<std::uint32_t>{1, 0, 1});
  EXPECT_EQ(f9.order(), 9u);
  ASSERT_FALSE(has_root({1, 1, 1}, 2));
  Field f4 = Field::make(2, 2, std::vector<std::uint32_t>{1, 1, 1});
  EXPECT_EQ(f4.order(), 4u);
}

TEST(FieldMake, Errors) {
  EXPECT_THROW(Field::make(4, 1), std::invalid_argument);
  EXPECT_THROW(Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}), std::invalid_argument);  // (x+1)^2
  EXPECT_THROW(Field::make(2, 0), std::invalid_argument);
  EXPECT_THROW(Field::make(7, 2), std::invalid_argument);  // 49 has no built-in modulus
}

TEST(FieldMake, BuiltinModuliAreIrreducible) {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}, {3, 3}}) {
    Field f = Field::make(p, k);
    std::vector<int> c(f.modulus().begin(), f.modulus().end());
    EXPECT_FALSE(has_root(c, p)) << f.name();
  }
}

TEST(FieldMake, InterningGivesEqualHandles) {
  EXPECT_EQ(Field::gf(9).one(), Field::make(3, 2).one());
}

TEST(Inverse, Examples) {
  Field f7 = Field::gf(7);
  EXPECT_EQ(inv(f7.from_int(3)), f7.from_int(5));
  EXPECT_EQ(inv(Field::gf(2).one()), Field::gf(2).one());
  Field f4 = Field::gf(4);
  FieldElement t = f4.from_coefficients({0, 1});
  EXPECT_EQ(inv(t), t + f4.one());
  EXPECT_THROW(inv(f7.zero()), std::domain_error);
}

TEST(Inverse, AllNonzero) {
  for (const Field& f : builtin_fields())
    for (auto x : f.elements())
      if (!x.is_zero()) {
        EXPECT_EQ(x * inv(x), f.one()) << f.name();
      }
}

TEST(IsSquare, Examples) {
  Field f7 = Field::gf(7);
  EXPECT_TRUE(is_square(f7.from_int(2)));
  EXPECT_FALSE(is_square(f7.from_int(3)));
  for (auto x : Field::gf(4).elements())
    if (!x.is_zero()) {
      EXPECT_TRUE(is_square(x));
    }
  EXPECT_THROW(is_square(f7.zero()), std::domain_error);
}

TEST(IsSquare, MatchesExhaustiveSquares) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    Field f = Field::gf(q);
    std::set<std::uint32_t> squares;
    for (auto y : f.elements()) squares.insert((y * y).code());
    for (auto x : f.elements())
      if (!x.is_zero()) {
        EXPECT_EQ(is_square(x), squares.count(x.code()) == 1) << q;
      }
  }
}

TEST(PrimitiveElement, Examples) {
  EXPECT_EQ(Field::gf(5).primitive_element(), Field::gf(5).from_int(2));
  EXPECT_EQ(Field::gf(3).primitive_element(), Field::gf(3).from_int(2));
  EXPECT_EQ(Field::gf(7).primitive_element(), Field::gf(7).from_int(3));
  EXPECT_THROW(Field::gf(2).primitive_element(), std::domain_error);
}

TEST(PrimitiveElement, SmallestOfFullOrder) {
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 32u}) {
    Field f = Field::gf(q);
    auto order = [&](FieldElement x) {
      std::uint32_t n = 1;
      for (FieldElement y = x; !(y == f.one()); y = y * x) ++n;
      return n;
    };
    FieldElement g = f.primitive_element();
    EXPECT_EQ(order(g), q - 1);
    for (std::uint32_t c = 1; c < g.code(); ++c) EXPECT_LT(order(f.element(c)), q - 1);
  }
}

TEST(FieldAxioms, RandomTriples) {
  std::mt19937_64 rng(0x5EED);
  for (const Field& f : builtin_fields()) {
    std::uniform_int_distribution<std::uint32_t> d(0, f.order() - 1);
    for (int i = 0; i < 2000; ++i) {
      auto a = f.element(d(rng)), b = f.element(d(rng)), c = f.element(d(rng));
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a - a, f.zero());
    }
  }
}

TEST(FieldAxioms, FrobeniusIsRingMap) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    Field f = Field::gf(q);
    const auto p = f.characteristic();
    for (auto a : f.elements())
      for (auto b : f.elements()) {
        EXPECT_EQ((a + b).pow(p), a.pow(p) + b.pow(p));
        EXPECT_EQ((a * b).pow(p), a.pow(p) * b.pow(p));
      }
  }
}

TEST(FieldElement, MismatchedDomains) {
  EXPECT_THROW(Field::gf(3).one() + Field::gf(5).one(), std::invalid_argument);
}

TEST(FieldElement, CanonicalOrderIsCoefficientLexicographic) {
  Field f = Field::gf(9);
  auto elems = f.elements();
  for (std::size_t i = 1; i < elems.size(); ++i) {
    auto a = elems[i - 1].coefficients(), b = elems[i].coefficients();
    // highest-degree coefficient compared first
    EXPECT_TRUE(std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend()));
    EXPECT_LT(elems[i - 1], elems[i]);
  }
}

TEST(TextForm, RoundTrip) {
  for (std::uint32_t q : {5u, 9u, 16u, 27u}) {
    Field f = Field::gf(q);
    for (auto x : f.elements()) EXPECT_EQ(parse_element(f, to_string(x)), x) << to_string(x);
  }
  Field f9 = Field::gf(9);
  EXPECT_EQ(parse_element(f9, "-1"), f9.from_int(2));
}

TEST(TextForm, FieldSpecs) {
  EXPECT_EQ(parse_field("gf(8)").order(), 8u);
  EXPECT_EQ(parse_field("gf(3,2)").order(), 9u);
  Field f = parse_field("gf(3,2,1,0,1)");
  EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_THROW(parse_field("gf(6)"), std::invalid_argument);
  EXPECT_THROW(parse_field("field"), std::invalid_argument);
}

TEST(HalfIntegerArith, AgreesWithRationals) {
  for (int a = -8; a <= 8; ++a)
    for (int b = -8; b <= 8; ++b) {
      HalfInteger x = HalfInteger::halves(a), y = HalfInteger::halves(b);
      Rational rx(a, 2), ry(b, 2);
      EXPECT_EQ((x + y).to_rational(), rx + ry);
      EXPECT_EQ((x - y).to_rational(), rx - ry);
      EXPECT_EQ((-x).to_rational(), -rx);
      Rational prod = rx * ry;
      if (prod.den() <= 2)
        EXPECT_EQ((x * y).to_rational(), prod);
      else
        EXPECT_THROW(x * y, std::domain_error);
    }
  EXPECT_EQ(to_string(HalfInteger::halves(3)), "3/2");
  EXPECT_EQ(to_string(HalfInteger::halves(-4)), "-2");
}
