#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hlsph/torus_ring.hpp"

using namespace hlsph;

namespace {

using Poly = TorusPoly<QLaurent>;

Poly mono(const ExpVector& e, QLaurent c = QLaurent(1)) { return Poly::monomial(static_cast<int>(e.size()), e, c); }

Poly random_poly(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-3, 3), c(-5, 5), len(1, 6);
  Poly f(n);
  for (int k = len(rng); k > 0; --k) {
    ExpVector v(static_cast<std::size_t>(n));
    for (auto& x : v) x = e(rng);
    f += mono(v, QLaurent::monomial(c(rng), e(rng)));
  }
  return f;
}

}  // namespace

TEST(WeylAct, SignFlipAndTransposition) {
  const Poly f = mono({1}) + mono({3}, QLaurent(2));
  EXPECT_EQ(weyl_act(SignedPerm::tau(1), f), mono({-1}) + mono({-3}, QLaurent(2)));
  EXPECT_EQ(weyl_act(SignedPerm::transposition(2, 0), mono({1, -2})), mono({-2, 1}));
  EXPECT_THROW(weyl_act(SignedPerm::tau(2), f), InvalidValue);
}

TEST(WeylAct, CompositionLaw) {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 3; ++n) {
    const auto group = enumerate_group(n);
    std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
    for (int t = 0; t < 20; ++t) {
      const Poly f = random_poly(n, rng);
      const SignedPerm& a = group[pick(rng)];
      const SignedPerm& b = group[pick(rng)];
      EXPECT_EQ(weyl_act(a * b, f), weyl_act(a, weyl_act(b, f)));
      EXPECT_EQ(weyl_act(a, f * f), weyl_act(a, f) * weyl_act(a, f));
    }
  }
}

TEST(BinomialDiv, Examples) {
  const Poly num = mono({0}) - mono({2});
  EXPECT_EQ(binomial_div_exact(num, QLaurent(1), {1}), mono({0}) + mono({1}));
  EXPECT_THROW(binomial_div_exact(mono({0}) + mono({1}), QLaurent(1), {1}), InexactDivision);
}

TEST(BinomialDiv, RecoversCofactor) {
  std::mt19937_64 rng(23);
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < 20; ++t) {
      const Poly f = random_poly(n, rng);
      ExpVector alpha(static_cast<std::size_t>(n), 0);
      alpha[static_cast<std::size_t>(t % n)] = (t % 2) ? 2 : 1;
      if (n > 1 && t % 3 == 0) alpha[static_cast<std::size_t>((t + 1) % n)] = -1;
      const QLaurent c = QLaurent::monomial(-1, -(t % 3));
      const Poly factor = mono(ExpVector(static_cast<std::size_t>(n), 0)) - mono(alpha, c);
      EXPECT_EQ(binomial_div_exact(f * factor, c, alpha), f);
    }
}

TEST(EvalTorus, Examples) {
  const Poly f = mono({1}) + mono({-1});
  EXPECT_NEAR(std::abs(eval_unit_torus(f, {0.0}, 3.0) - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(eval_unit_torus(f, {std::numbers::pi / 2}, 3.0)), 0.0, 1e-14);
  const Poly g = mono({0}, QLaurent(1) - QLaurent::q(-2));
  EXPECT_NEAR(eval_unit_torus(g, {0.3}, 3.0).real(), 8.0 / 9.0, 1e-15);
  EXPECT_THROW(eval_unit_torus(g, {0.3}, 1.0), InvalidValue);
}

TEST(EvalTorus, ExactAgreesWithNumeric) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 20; ++t) {
    const Poly f = random_poly(2, rng);
    const std::vector<GaussianRational> x{GaussianRational(Rational(3, 5), Rational(4, 5)), GaussianRational(0, 1)};
    const GaussianRational v = eval_exact(f, x, GaussianRational(3));
    const std::complex<double> w = eval_unit_torus(f, {std::atan2(0.8, 0.6), std::numbers::pi / 2}, 3.0);
    EXPECT_NEAR(std::abs(v.to_complex() - w), 0.0, 1e-9 * (1 + std::abs(w)));
  }
}

TEST(TorusPoly, RingLaws) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const Poly a = random_poly(2, rng), b = random_poly(2, rng), c = random_poly(2, rng);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a - a).is_zero());
  }
  EXPECT_EQ((mono({1}) + mono({-1})).str(), "x + x^-1");
}
