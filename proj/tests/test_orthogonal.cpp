#include <gtest/gtest.h>

#include <random>

#include "moufang/orthogonal.hpp"

using namespace moufang;

namespace {

ZornF random_zorn(const Field& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, f.order() - 1);
  std::array<FieldElement, 8> c;
  for (auto& x : c) x = f.element(d(rng));
  return ZornF::from_coords(c);
}

ZornF random_unit(const Field& f, std::mt19937_64& rng) {
  while (true) {
    ZornF x = random_zorn(f, rng);
    if (norm(x) == f.one()) return x;
  }
}

Vector8 random_vector(const Field& f, std::mt19937_64& rng) { return random_zorn(f, rng).coords(); }

FieldElement dot8(const Vector8& x, const Vector8& y) {
  FieldElement s = zero_like(x[0]);
  for (int i = 0; i < 8; ++i) s += x[i] * y[i];
  return s;
}

// Transcription of the displayed 8x8 matrix of L_a.
Matrix8 displayed_left_matrix(const ZornF& x) {
  const auto a = x.coords();
  const FieldElement z = zero_like(a[0]);
  Matrix8 m;
  m.m = {{{a[0], z, z, z, a[1], a[2], a[3], z},
          {z, a[0], z, z, z, a[6], -a[5], a[1]},
          {z, z, a[0], z, -a[6], z, a[4], a[2]},
          {z, z, z, a[0], a[5], -a[4], z, a[3]},
          {a[4], z, -a[3], a[2], a[7], z, z, z},
          {a[5], a[3], z, -a[1], z, a[7], z, z},
          {a[6], -a[2], a[1], z, z, z, a[7], z},
          {z, a[4], a[5], a[6], z, z, z, a[7]}}};
  return m;
}

// Symmetry x -> x - <x,u>/N(u) u as a matrix (columns are images of e_j).
Matrix8 reflection(const Field& f, const Vector8& u) {
  const Matrix8 j = form_matrix(f);
  const FieldElement s = inv(quadratic_norm(u));
  Matrix8 r = Matrix8::identity(f);
  const Vector8 ju = j * u;  // <e_j, u> = (Ju)_j
  for (int c = 0; c < 8; ++c)
    for (int i = 0; i < 8; ++i) r.m[i][c] -= ju[c] * s * u[i];
  return r;
}

}  // namespace

TEST(FormMatrix, MatchesPolarization) {
  std::mt19937_64 rng(0x5EED);
  for (std::uint32_t q : {2u, 5u}) {
    const Field f = Field::gf(q);
    const Matrix8 j = form_matrix(f);
    for (int t = 0; t < 50000; ++t) {
      const ZornF x = random_zorn(f, rng), y = random_zorn(f, rng);
      ASSERT_EQ(dot8(x.coords(), j * y.coords()), bilinear_polarized(x, y));
    }
  }
}

TEST(MultOperator, ReproducesDisplayedMatrix) {
  std::mt19937_64 rng(0x5EED);
  for (std::uint32_t q : {3u, 4u, 5u, 7u}) {
    const Field f = Field::gf(q);
    for (int t = 0; t < 200; ++t) {
      const ZornF a = random_zorn(f, rng);
      const Matrix8 m = mult_operator_matrix(a, Side::left);
      ASSERT_EQ(m, displayed_left_matrix(a));
      const auto c = a.coords();
      EXPECT_EQ(m(4, 0), c[4]);
      EXPECT_EQ(m(1, 5), c[6]);
    }
  }
}

TEST(MultOperator, IdentityAndColumns) {
  const Field f = Field::gf(5);
  EXPECT_EQ(mult_operator_matrix(ZornF::identity(f.one()), Side::left), Matrix8::identity(f));
  EXPECT_EQ(mult_operator_matrix(ZornF::identity(f.one()), Side::right), Matrix8::identity(f));
  std::mt19937_64 rng(0x5EED);
  const ZornF a = random_zorn(f, rng), x = random_zorn(f, rng);
  EXPECT_EQ(mult_operator_matrix(a, Side::left) * x.coords(), (a * x).coords());
  EXPECT_EQ(mult_operator_matrix(a, Side::right) * x.coords(), (x * a).coords());
}

TEST(MultOperator, DeterminantIsFourthPowerOfNorm) {
  std::mt19937_64 rng(0x5EED);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const Field f = Field::gf(q);
    for (int t = 0; t < 200; ++t) {
      const ZornF a = random_zorn(f, rng);
      EXPECT_EQ(det(mult_operator_matrix(a, Side::left)), norm(a).pow(4));
      EXPECT_EQ(det(mult_operator_matrix(a, Side::right)), norm(a).pow(4));
    }
  }
}

TEST(Orthogonality, TranslationsByUnitsAreRotations) {
  std::mt19937_64 rng(0x5EED);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const Field f = Field::gf(q);
    EXPECT_TRUE(is_rotation(Matrix8::identity(f)));
    for (int t = 0; t < 100; ++t) {
      const ZornF a = random_unit(f, rng);
      EXPECT_TRUE(is_rotation(mult_operator_matrix(a, Side::left)));
      EXPECT_TRUE(is_rotation(mult_operator_matrix(a, Side::right)));
    }
    if (q == 2) continue;  // every nonzero norm is 1
    ZornF b = random_zorn(f, rng);
    while (norm(b) == f.one() || norm(b).is_zero()) b = random_zorn(f, rng);
    EXPECT_FALSE(is_orthogonal(mult_operator_matrix(b, Side::left)));
  }
}

TEST(Orthogonality, NegatedConjugationIsNotARotation) {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const Field f = Field::gf(q);
    const Matrix8 m = negated_conjugation_matrix(f);
    EXPECT_TRUE(is_orthogonal(m));
    EXPECT_FALSE(is_rotation(m));
    EXPECT_EQ(det(m), -f.one());
  }
}

TEST(Orthogonality, InvolutionEigenspacesAreOrthogonal) {
  std::mt19937_64 rng(0x5EED);
  for (std::uint32_t q : {3u, 5u}) {
    const Field f = Field::gf(q);
    const Matrix8 j = form_matrix(f), one = Matrix8::identity(f);
    Vector8 u = random_vector(f, rng);
    while (quadratic_norm(u).is_zero()) u = random_vector(f, rng);
    for (const Matrix8& s : {negated_conjugation_matrix(f), conjugation_matrix(f), reflection(f, u)}) {
      ASSERT_EQ(s * s, one);
      ASSERT_TRUE(is_orthogonal(s));
      for (int t = 0; t < 200; ++t) {
        const Vector8 a = (s - one) * random_vector(f, rng), b = (s + one) * random_vector(f, rng);
        EXPECT_TRUE(dot8(a, j * b).is_zero());
      }
    }
  }
}

TEST(Orthogonality, ConjugationByIotaTurnsLeftIntoRight) {
  // Applying iota, L_a^-1, iota, L_a in turn equals applying R_a then L_a.
  std::mt19937_64 rng(0x5EED);
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const Field f = Field::gf(q);
    const Matrix8 iota = conjugation_matrix(f);
    for (int t = 0; t < 100; ++t) {
      const ZornF a = random_unit(f, rng);
      const Matrix8 l = mult_operator_matrix(a, Side::left), r = mult_operator_matrix(a, Side::right);
      EXPECT_EQ(l * iota * inverse(l) * iota, l * r);
    }
  }
}

TEST(SpinorNorm, IdentityIsInOmega) {
  const auto v = spinor_norm(Matrix8::identity(Field::gf(3)));
  EXPECT_TRUE(v.in_omega);
  EXPECT_EQ(v.image_dimension, 0u);
  EXPECT_FALSE(v.discriminant.has_value());
}

TEST(SpinorNorm, TranslationsAreInOmega) {
  std::mt19937_64 rng(0x5EED);
  for (std::uint32_t q : {3u, 5u}) {
    const Field f = Field::gf(q);
    for (int t = 0; t < 500; ++t) {
      const ZornF a = random_unit(f, rng);
      for (Side s : {Side::left, Side::right}) {
        const auto v = spinor_norm(mult_operator_matrix(a, s));
        EXPECT_TRUE(v.in_special_orthogonal);
        EXPECT_EQ(v.discriminant_square_class, SquareClass::square);
        EXPECT_TRUE(v.in_omega);
      }
    }
  }
}

TEST(SpinorNorm, BothCasesOfTheTranslationArgument) {
  std::mt19937_64 rng(0x5EED);
  const Field f = Field::gf(5);
  const ZornF e = ZornF::identity(f.one());
  int invertible = 0, singular = 0;
  for (int t = 0; t < 20000 && (invertible < 20 || singular < 20); ++t) {
    const ZornF a = random_unit(f, rng);
    const bool sing = norm(e - a).is_zero();
    if (sing && a.a == f.one()) continue;
    const auto v = spinor_norm(mult_operator_matrix(a, Side::left));
    EXPECT_EQ(v.discriminant_square_class, SquareClass::square);
    if (sing) {
      ++singular;
      EXPECT_LT(v.image_dimension, 8u);
    } else {
      ++invertible;
      EXPECT_EQ(v.image_dimension, 8u);
    }
  }
  EXPECT_GE(invertible, 20);
  EXPECT_GE(singular, 20);
}

TEST(SpinorNorm, DetectsRotationsOutsideOmega) {
  // r_u r_v lies in Omega iff N(u)N(v) is a square.
  std::mt19937_64 rng(0x5EED);
  for (std::uint32_t q : {3u, 5u}) {
    const Field f = Field::gf(q);
    int squares = 0, non_squares = 0;
    for (int t = 0; t < 200; ++t) {
      const Vector8 u = random_vector(f, rng), w = random_vector(f, rng);
      const FieldElement nu = quadratic_norm(u), nw = quadratic_norm(w);
      if (nu.is_zero() || nw.is_zero()) continue;
      const Matrix8 g = reflection(f, u) * reflection(f, w);
      ASSERT_TRUE(is_rotation(g));
      const auto v = spinor_norm(g);
      const bool expect = is_square(nu * nw);
      EXPECT_EQ(v.in_omega, expect);
      (expect ? squares : non_squares)++;
    }
    EXPECT_GT(squares, 0);
    EXPECT_GT(non_squares, 0);
  }
}

TEST(SpinorNorm, Errors) {
  EXPECT_THROW(spinor_norm(Matrix8::identity(Field::gf(4))), std::domain_error);
  EXPECT_THROW(spinor_norm(negated_conjugation_matrix(Field::gf(5))), std::invalid_argument);
}

TEST(Matrix8, InverseAndText) {
  std::mt19937_64 rng(0x5EED);
  const Field f = Field::gf(3);
  const ZornF a = random_unit(f, rng);
  const Matrix8 l = mult_operator_matrix(a, Side::left);
  EXPECT_EQ(l * inverse(l), Matrix8::identity(f));
  EXPECT_EQ(inverse(l), mult_operator_matrix(conjugate(a), Side::left));
  EXPECT_THROW(inverse(Matrix8::filled(f.zero())), std::domain_error);
  const std::string s = to_string(Matrix8::identity(f));
  EXPECT_EQ(s.substr(0, 16), "1 0 0 0 0 0 0 0\n");
}
