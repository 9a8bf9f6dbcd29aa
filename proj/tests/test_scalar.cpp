#include <gtest/gtest.h>

#include <limits>

#include "kahler/scalar.hpp"

using kahler::Complex;
using kahler::ExactOverflow;
using kahler::GaussianRational;
using kahler::Rational;
using G = GaussianRational;

TEST(Rational, NormalizesSignAndGcd) {
  Rational r(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(Rational(0, 5), Rational(0));
  EXPECT_EQ(Rational(0, 5).den(), 1);
}

TEST(Rational, ParsesLiterals) {
  EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
  EXPECT_EQ(Rational::parse(" -2 / 4 "), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/2/3"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, FieldArithmetic) {
  Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_THROW(a / Rational(0), std::domain_error);
  EXPECT_TRUE(Rational(-1, 2) < Rational(1, 3));
  EXPECT_EQ(abs(Rational(-5, 7)), Rational(5, 7));
  EXPECT_EQ(Rational(-5, 7).str(), "-5/7");
  EXPECT_EQ(Rational(4).str(), "4");
}

TEST(Rational, OverflowIsReportedNotRounded) {
  Rational big(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(big * big, ExactOverflow);
  EXPECT_THROW(big + big, ExactOverflow);
  Rational third(1, 3);
  EXPECT_EQ(big * third * Rational(3), big);
}

TEST(GaussianRational, ImaginaryUnit) {
  G i = G::i();
  EXPECT_EQ(i * i, G(-1));
  EXPECT_EQ(i.conj(), -i);
  EXPECT_EQ(G(1) / i, -i);
}

TEST(GaussianRational, DivisionIsExactInverse) {
  G z(Rational(3, 2), Rational(-5, 7));
  G w(Rational(-1, 3), Rational(2));
  EXPECT_EQ((z / w) * w, z);
  EXPECT_EQ(z * z.conj(), G(Rational(9, 4) + Rational(25, 49)));
  EXPECT_THROW(z / G(0), std::domain_error);
}

TEST(GaussianRational, Rendering) {
  EXPECT_EQ(G(Rational(1, 2), Rational(-1)).str(), "1/2-i");
  EXPECT_EQ(G(Rational(0), Rational(2, 3)).str(), "2/3i");
  EXPECT_EQ(G(0).str(), "0");
}

TEST(ScalarTraits, IPowerCyclesInBothModes) {
  EXPECT_EQ(kahler::i_power<G>(0), G(1));
  EXPECT_EQ(kahler::i_power<G>(1), G::i());
  EXPECT_EQ(kahler::i_power<G>(-1), -G::i());
  EXPECT_EQ(kahler::i_power<G>(6), G(-1));
  EXPECT_EQ(kahler::i_power<Complex>(3), Complex(0, -1));
}

TEST(ScalarTraits, ZeroTestsRespectMode) {
  using TG = kahler::ScalarTraits<G>;
  using TC = kahler::ScalarTraits<Complex>;
  EXPECT_FALSE(TG::is_zero(G(Rational(1, 1000000000)), 1e-3));
  EXPECT_TRUE(TC::is_zero(Complex(1e-12, -1e-12), 1e-10));
  EXPECT_FALSE(TC::is_zero(Complex(0, 1e-9), 1e-10));
  EXPECT_DOUBLE_EQ(TG::magnitude(G(Rational(-3, 4), Rational(1, 2))), 0.75);
}
