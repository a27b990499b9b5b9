#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "hlsph/padic.hpp"
#include "hlsph/spherical.hpp"

using namespace hlsph;

namespace {

ExactMatrix diag3(const LocalField& f, Rational a, Rational b, Rational c) {
  ExactMatrix m(3, ex(f, 0));
  m(0, 0) = ex(f, std::move(a));
  m(1, 1) = ex(f, std::move(b));
  m(2, 2) = ex(f, std::move(c));
  return m;
}

PadicMatrix to_padic(const ExactMatrix& x, const LocalField& f, int prec) {
  PadicMatrix m(x.size, Padic::zero(f, prec));
  for (std::size_t t = 0; t < x.e.size(); ++t) m.e[t] = Padic::from_exact(x.e[t], f, prec);
  return m;
}

// measure of {x mod p^R : N(x) = xi mod p^R}, by direct enumeration
Rational deep_fibre(long p, long eps, long xi, int R) {
  long M = 1;
  for (int i = 0; i < R; ++i) M *= p;
  long c = 0;
  for (long a = 0; a < M; ++a)
    for (long b = 0; b < M; ++b)
      if ((((a * a - eps * b * b - xi) % M) + M) % M == 0) ++c;
  return make_rational(c, M * M);
}

}  // namespace

TEST(LocalField, SmallestNonResidue) {
  EXPECT_EQ(LocalField::make(3).eps, 2);
  EXPECT_EQ(LocalField::make(5).eps, 2);
  EXPECT_EQ(LocalField::make(7).eps, 3);
  EXPECT_EQ(LocalField::make(17).eps, 3);
  EXPECT_THROW(LocalField::make(9), InvalidValue);
  EXPECT_THROW(LocalField::make(2), InvalidValue);
}

TEST(ExactLocal, NormAndInverse) {
  const LocalField f = LocalField::make(5);
  const ExactLocal x = ex(f, make_rational(3, 5), 2), y = ex(f, -1, make_rational(1, 25));
  EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
  EXPECT_EQ(x * x.inverse(), ex(f, 1));
  EXPECT_EQ(x.valuation(5), -1);
  EXPECT_EQ(y.valuation(5), -2);
  EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
}

TEST(ResidueElem, RingMapsAndInverse) {
  const LocalField f = LocalField::make(3);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(0, 728);
  for (int t = 0; t < 200; ++t) {
    const ResidueElem x = ResidueElem::make(d(rng), d(rng), f, 6), y = ResidueElem::make(d(rng), d(rng), f, 6);
    EXPECT_EQ((x * y).reduce(3), x.reduce(3) * y.reduce(3));
    EXPECT_EQ((x + y).reduce(2), x.reduce(2) + y.reduce(2));
    EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
    if (x.is_unit()) {
      EXPECT_EQ(x * x.inverse(), x.like(1, 0));
    }
  }
}

TEST(Padic, ArithmeticMatchesExact) {
  const LocalField f = LocalField::make(3);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-40, 40), e(1, 20);
  for (int t = 0; t < 200; ++t) {
    const ExactLocal x = ex(f, make_rational(d(rng), e(rng) * 3), d(rng)), y = ex(f, d(rng), make_rational(d(rng), e(rng)));
    if (x.is_zero() || y.is_zero()) continue;
    if (x.valuation(3) > 4 || y.valuation(3) > 4) continue;
    const Padic px = Padic::from_exact(x, f, 12), py = Padic::from_exact(y, f, 12);
    EXPECT_TRUE(approx_equal(px * py, Padic::from_exact(x * y, f, 12)));
    EXPECT_TRUE(approx_equal(px + py, Padic::from_exact(x + y, f, 12)));
    EXPECT_TRUE(approx_equal(px / py, Padic::from_exact(x / y, f, 12)));
    EXPECT_EQ(px.valuation(), x.valuation(3));
  }
  EXPECT_THROW(Padic::zero(f, 5).inverse(), PrecisionError);
}

TEST(NormCount, Examples) {
  EXPECT_EQ(norm_count(3, 1, 0), make_rational(5, 9));
  EXPECT_EQ(norm_count(3, 1, 1), make_rational(8, 27));
  EXPECT_EQ(norm_count(5, 2, 2), make_rational(24, 625));
  EXPECT_THROW(norm_count(3, 3, 0), InvalidValue);
  EXPECT_THROW(norm_count(5, 1, 6), ResourceError);
}

TEST(NormCount, MatchesClosedFormForAllUnits) {
  for (long p : {3L, 5L})
    for (long xi = 1; xi < p; ++xi)
      for (int r = 0; r <= (p == 3 ? 3 : 2); ++r) {
        const Rational q(p);
        const Rational want = r == 0 ? Rational(1 - 1 / q - 1 / (q * q)) : Rational((1 - 1 / (q * q)) / rational_pow(q, r));
        EXPECT_EQ(norm_count(p, xi, r, 2), want) << p << " " << xi << " " << r;
      }
}

TEST(NormCount, FibresExhaustTheRing) {
  for (long p : {3L, 5L}) {
    const long eps = LocalField::make(p).eps;
    for (int R = 1; R <= (p == 3 ? 3 : 2); ++R)
      for (long xi : {1L, 2L}) {
        Rational total = deep_fibre(p, eps, xi, R);
        for (int r = 0; r < R; ++r) total += norm_count(p, xi, r);
        EXPECT_EQ(total, Rational(1)) << p << " R=" << R;
      }
  }
}

TEST(Membership, Examples) {
  const LocalField f = LocalField::make(3);
  EXPECT_TRUE(is_member_X(x_lambda(f, {0})));
  EXPECT_TRUE(is_member_X(x_lambda(f, {0, 0})));
  EXPECT_TRUE(is_member_X(x_lambda(f, {2, 1})));
  EXPECT_FALSE(is_member_X(diag3(f, 3, 1, 3)));
  const auto cp = char_poly(x_lambda(f, {1}) * ExactMatrix::j(3, ex(f, 0), ex(f, 1)));
  // (t^2 - 1)(t - 1) = t^3 - t^2 - t + 1, constant term first
  ASSERT_EQ(cp.size(), 4u);
  EXPECT_EQ(cp[0], ex(f, 1));
  EXPECT_EQ(cp[1], ex(f, -1));
  EXPECT_EQ(cp[2], ex(f, -1));
  EXPECT_EQ(cp[3], ex(f, 1));
}

TEST(KGenerators, IdentityAndUnitarity) {
  const LocalField f = LocalField::make(3);
  EXPECT_EQ(random_k(f, 2, 1, 0), ExactMatrix::identity(5, ex(f, 0), ex(f, 1)));
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 100; ++t) {
      const ExactMatrix g = random_k_generator(f, n, rng);
      EXPECT_TRUE(padic_detail::preserves_form(g));
      // |det g| = 1
      EXPECT_EQ(char_poly(g)[0].valuation(3), 0);
      for (const auto& e : g.e) EXPECT_GE(e.is_zero() ? 0 : e.valuation(3), 0);
    }
}

TEST(Classify, KTranslates) {
  const LocalField f = LocalField::make(3);
  for (int n = 1; n <= 2; ++n)
    for (const auto& lam : partitions_up_to(n, 3)) {
      EXPECT_EQ(classify_k_orbit(x_lambda(f, lam), 3), lam);
      for (int t = 0; t < 10; ++t) {
        const ExactMatrix k = random_k(f, n, 100 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(t), 4);
        const ExactMatrix x = act(k, x_lambda(f, lam));
        ASSERT_TRUE(is_member_X(x));
        EXPECT_EQ(classify_k_orbit(x, 3), lam) << partition_str(lam);
      }
    }
}

TEST(Classify, GOrbitParity) {
  const LocalField f = LocalField::make(3);
  EXPECT_EQ(classify_g_orbit(x_lambda(f, {1, 0}), 3), 1);
  EXPECT_EQ(classify_g_orbit(x_lambda(f, {1, 1}), 3), 0);
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> e(-2, 2);
  for (const auto& lam : partitions_up_to(2, 3)) {
    ExactMatrix x = x_lambda(f, lam);
    for (int t = 0; t < 4; ++t) {
      const ExactLocal b1 = ex(f, rational_pow(Rational(3), e(rng)) * 2, 1), b2 = ex(f, rational_pow(Rational(3), e(rng)), 0);
      x = act(t_element(f, {b1, b2}), x);
      x = act(random_k(f, 2, 7 + static_cast<std::uint64_t>(t), 2), x);
      ASSERT_TRUE(is_member_X(x));
      EXPECT_EQ(classify_g_orbit(x, 3), weight(lam) % 2);
    }
  }
}

TEST(HaarK1, CellProbability) {
  const int N = 10000;
  int cell1 = 0;
  for (int i = 0; i < N; ++i) {
    const K1Sample s = sample_k1_haar(3, 4, derive_seed(77, static_cast<std::uint64_t>(i)));
    EXPECT_EQ(s.cell == 1, s.g(2, 0).is_unit());
    if (s.cell == 1) ++cell1;
    if (i < 200) {
      EXPECT_TRUE(is_unitary_residue(s.g));
      // v(det) = 0: det is a unit mod p
      const auto& g = s.g;
      const ResidueElem det = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) -
                              g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) +
                              g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
      EXPECT_TRUE(det.is_unit());
    }
  }
  const double pr = 1.0 / (1.0 + 1.0 / 27.0), sd = std::sqrt(pr * (1 - pr) / N);
  EXPECT_NEAR(static_cast<double>(cell1) / N, pr, 3 * sd);
}

TEST(HaarK1, ParametrizationIsBijectiveModP) {
  // every parameter tuple mod p gives a distinct element of U_3(F_q); together they exhaust its order
  const long q = 3;
  const LocalField f = LocalField::make(q);
  auto el = [&](long a, long b) { return ResidueElem::make(a, b, f, 1); };
  std::vector<ResidueElem> all, units, norm_one;
  for (long a = 0; a < q; ++a)
    for (long b = 0; b < q; ++b) {
      all.push_back(el(a, b));
      if (a || b) units.push_back(el(a, b));
      if (el(a, b).norm() == el(1, 0)) norm_one.push_back(el(a, b));
    }
  ASSERT_EQ(norm_one.size(), static_cast<std::size_t>(q + 1));
  std::set<std::vector<long>> seen;
  long cells[3] = {0, 0, 0};
  for (int cell : {1, 2})
    for (const auto& alpha : units)
      for (const auto& u : norm_one)
        for (const auto& d : all)
          for (long f0 = 0; f0 < q; ++f0)
            for (const auto& b : cell == 1 ? all : std::vector<ResidueElem>{el(0, 0)})
              for (long c0 = 0; c0 < (cell == 1 ? q : 1); ++c0) {
                const ResidueMatrix g = k1_from_params({cell, alpha, u, b, d, el(c0, 0), el(f0, 0)});
                ASSERT_TRUE(is_unitary_residue(g));
                std::vector<long> key;
                for (const auto& x : g.e) {
                  key.push_back(x.a);
                  key.push_back(x.b);
                }
                EXPECT_TRUE(seen.insert(key).second);
                ++cells[cell];
              }
  EXPECT_EQ(cells[1], (q * q - 1) * (q + 1) * q * q * q * q * q * q);
  EXPECT_EQ(cells[2], (q * q - 1) * (q + 1) * q * q * q);
  EXPECT_EQ(static_cast<long>(seen.size()), q * q * q * (q + 1) * (q * q - 1) * (q * q * q + 1));
  EXPECT_EQ(seen.size(), 24192u);
}

TEST(MonteCarlo, ZeroExponentIsExactlyOne) {
  const MonteCarloResult r = monte_carlo_omega1(1, 0.0, 500, 8, 3);
  EXPECT_EQ(r.estimate, 1.0);
  EXPECT_EQ(r.stderr_, 0.0);
}

TEST(MonteCarlo, AgreesWithClosedForm) {
  for (int ell : {0, 1}) {
    const MonteCarloResult r = monte_carlo_omega1(ell, 1.0, 20000, 10, 17 + static_cast<std::uint64_t>(ell), 3, 2);
    const double want = omega_n1_s<double>(ell, 3.0, 3.0);
    EXPECT_LE(std::abs(r.estimate - want), 3 * r.stderr_) << ell << ": " << r.estimate << " vs " << want;
  }
  EXPECT_THROW(monte_carlo_omega1(3, 1.0, 10, 6, 1), PrecisionError);
}

TEST(MonteCarlo, Deterministic) {
  const auto a = monte_carlo_omega1(1, 0.5, 3000, 8, 99, 3, 1);
  const auto b = monte_carlo_omega1(1, 0.5, 3000, 8, 99, 3, 3);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.stderr_, b.stderr_);
}

TEST(SolveNorm, RoundTrip) {
  for (long p : {3L, 5L, 7L}) {
    const LocalField f = LocalField::make(p);
    for (long c = 1; c < 40; ++c) {
      const Padic pc = Padic::from_ints(c, 0, f, 10);
      if (pc.val % 2 != 0) continue;
      const Padic a = solve_norm(pc);
      EXPECT_TRUE(approx_equal(a.norm(), pc)) << p << " " << c;
    }
  }
}

TEST(Diagonalize, DiagonalInput) {
  for (long p : {3L, 5L}) {
    const LocalField f = LocalField::make(p);
    const Rational P(p);
    const Diag1Result d = diagonalize_x1(to_padic(diag3(f, P * P, 1, 1 / (P * P)), f, 12), 12);
    EXPECT_EQ(d.ell, 2);
    EXPECT_GE(d.certified_precision, 2);
  }
}

TEST(Diagonalize, RankOneUpdateOfJ) {
  // x = j + s^-1 v v*, v = (p, s, p r* s), with p^2 (r + r*) + s + 2 = 0
  for (long p : {3L, 5L}) {
    const LocalField f = LocalField::make(p);
    const Rational P(p);
    const ExactLocal r = ex(f, 1, 1), s = ex(f, -2 - 2 * P * P);
    const std::vector<ExactLocal> v{ex(f, P), s, ex(f, P) * r.conj() * s};
    ExactMatrix x = ExactMatrix::j(3, ex(f, 0), ex(f, 1));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        x(i, j) = x(i, j) + v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)].conj() / s;
    ASSERT_TRUE(is_member_X(x));
    EXPECT_EQ(classify_k_orbit(x, p), Partition{0});
    EXPECT_EQ(diagonalize_x1(to_padic(x, f, 12), 12).ell, 0);
  }
}

TEST(Diagonalize, RoundTrips) {
  for (long p : {3L, 5L})
    for (int t = 0; t < 24; ++t) {
      const int ell = t % 4;
      const K1Sample k0 = sample_k1_haar(p, 12, derive_seed(4242, static_cast<std::uint64_t>(t)));
      const Diag1Result d = diagonalize_x1(build_x1(k0.g, ell), 12);
      EXPECT_EQ(d.ell, ell) << "p=" << p << " t=" << t;
      EXPECT_GE(d.certified_precision, 2);
    }
}

TEST(InvariantFactors, PrecisionIsReported) {
  const LocalField f = LocalField::make(3);
  PadicMatrix z(3, Padic::zero(f, 6));
  EXPECT_THROW(invariant_factors(z, 3), PrecisionError);
  EXPECT_THROW(invariant_factors(ExactMatrix(3, ex(f, 0)), 3), InvalidValue);
}
