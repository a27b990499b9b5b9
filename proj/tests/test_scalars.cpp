#include <random>

#include <gtest/gtest.h>

#include "hlsph/scalars.hpp"

using namespace hlsph;

namespace {

QLaurent random_laurent(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-9, 9), e(-4, 4), len(0, 4);
  QLaurent f;
  for (int k = len(rng); k > 0; --k) f += QLaurent::monomial(GaussianRational(make_rational(c(rng), 1 + (k % 3)), Rational(c(rng))), e(rng));
  return f;
}

}  // namespace

TEST(Rational, ParseAndCanonicalForm) {
  EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
  EXPECT_EQ(parse_rational("-10/5"), Rational(-2));
  EXPECT_THROW(parse_rational("1/0"), InvalidValue);
  EXPECT_THROW(parse_rational("x"), InvalidValue);
  EXPECT_EQ(rational_pow(Rational(3), -2), make_rational(1, 9));
}

TEST(GaussianRational, ArithmeticAndInverse) {
  const GaussianRational a(make_rational(1, 2), Rational(-3)), b(Rational(2), make_rational(5, 7));
  EXPECT_EQ(a * b / b, a);
  EXPECT_EQ(a * a.inverse(), GaussianRational(1));
  EXPECT_EQ(GaussianRational::i() * GaussianRational::i(), GaussianRational(-1));
  EXPECT_EQ(GaussianRational::i_pow(7), -GaussianRational::i());
  EXPECT_EQ(a.pow(-2) * a.pow(2), GaussianRational(1));
  EXPECT_THROW(GaussianRational().inverse(), InvalidValue);
}

TEST(GaussianRational, StringRoundTrip) {
  EXPECT_EQ(GaussianRational(make_rational(1, 2), make_rational(-3, 4)).str(), "1/2-3/4*I");
  EXPECT_EQ(GaussianRational(Rational(0), Rational(2)).str(), "2*I");
  EXPECT_EQ(GaussianRational(Rational(-5)).str(), "-5");
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-30, 30), d(1, 30);
  for (int t = 0; t < 50; ++t) {
    GaussianRational g(make_rational(c(rng), d(rng)), make_rational(c(rng), d(rng)));
    EXPECT_EQ(GaussianRational::parse(g.str()), g);
  }
}

TEST(QLaurent, EvalExamples) {
  const QLaurent f = QLaurent(1) - QLaurent::q(-2);
  EXPECT_EQ(qlaurent_eval(f, 3), GaussianRational(make_rational(8, 9)));
  // w_2(-q^-1) = (1 + q^-1)(1 - q^-2) at 3 is 32/27
  const QLaurent w2 = w_poly(2, QLaurent::monomial(-1, -1));
  EXPECT_EQ(qlaurent_eval(w2, 3), GaussianRational(make_rational(32, 27)));
  EXPECT_EQ(qlaurent_eval(QLaurent(), make_rational(7, 3)), GaussianRational(0));
  EXPECT_THROW(qlaurent_eval(f, 0), InvalidValue);
}

TEST(QLaurent, EvalIsRingHomomorphism) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> n(1, 20), d(1, 20);
  for (int t = 0; t < 100; ++t) {
    const QLaurent f = random_laurent(rng), g = random_laurent(rng);
    const Rational q0(n(rng), d(rng));
    EXPECT_EQ(qlaurent_eval(f * g, q0), qlaurent_eval(f, q0) * qlaurent_eval(g, q0));
    EXPECT_EQ(qlaurent_eval(f + g, q0), qlaurent_eval(f, q0) + qlaurent_eval(g, q0));
  }
}

TEST(QLaurent, ExactDivision) {
  const QLaurent a = QLaurent(1) - QLaurent::q(-1), b = QLaurent(1) + QLaurent::q(-2);
  auto qd = (a * b).exact_div(a);
  ASSERT_TRUE(qd.has_value());
  EXPECT_EQ(*qd, b);
  EXPECT_FALSE((QLaurent(1) + QLaurent::q(1)).exact_div(QLaurent(1) - QLaurent::q(1)).has_value());
}

TEST(QFraction, EqualityExamples) {
  const QLaurent q = QLaurent::q(1);
  EXPECT_TRUE(qfrac_eq(QFraction(q - QLaurent(1), q * q - q), QFraction(QLaurent(1), q)));
  EXPECT_TRUE(qfrac_eq(QFraction(QLaurent(1) + QLaurent::q(-1), QLaurent(1)), QFraction(q + QLaurent(1), q)));
  EXPECT_FALSE(qfrac_eq(QFraction(QLaurent(1), QLaurent(1) - QLaurent::q(-1)), QFraction(QLaurent(1), QLaurent(1) + QLaurent::q(-1))));
  EXPECT_THROW(QFraction(QLaurent(1), QLaurent()), InvalidValue);
}

TEST(QFraction, EqualityIsAnEquivalence) {
  std::mt19937_64 rng(5);
  std::vector<QFraction> fr;
  for (int t = 0; t < 12; ++t) {
    QLaurent num = random_laurent(rng), den = random_laurent(rng);
    if (den.is_zero()) den = QLaurent(1);
    const QLaurent s = random_laurent(rng);
    fr.emplace_back(num, den);
    if (!s.is_zero()) fr.emplace_back(num * s, den * s);  // an equal fraction in another form
  }
  for (const auto& a : fr) {
    EXPECT_TRUE(qfrac_eq(a, a));
    for (const auto& b : fr) {
      EXPECT_EQ(qfrac_eq(a, b), qfrac_eq(b, a));
      for (const auto& c : fr) {
        if (qfrac_eq(a, b) && qfrac_eq(b, c)) {
          EXPECT_TRUE(qfrac_eq(a, c));
        }
      }
    }
  }
}

TEST(QFraction, PoleIsReported) {
  const QFraction f(QLaurent(1), QLaurent(1) - QLaurent::q(-1));
  EXPECT_THROW(f.eval(GaussianRational(1)), PoleError);
  EXPECT_EQ(f.eval(GaussianRational(2)), GaussianRational(2));
}
