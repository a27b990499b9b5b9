#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "hlsph/weyl.hpp"

using namespace hlsph;

namespace {

// word length in the simple reflections s_1..s_{n-1} (adjacent swaps) and tau, by breadth-first search
std::map<SignedPerm, int> coxeter_lengths(int n) {
  std::vector<SignedPerm> gens;
  for (int i = 0; i + 1 < n; ++i) gens.push_back(SignedPerm::transposition(n, i));
  gens.push_back(SignedPerm::tau(n));
  std::map<SignedPerm, int> dist{{SignedPerm::identity(n), 0}};
  std::deque<SignedPerm> todo{SignedPerm::identity(n)};
  while (!todo.empty()) {
    const SignedPerm w = todo.front();
    todo.pop_front();
    for (const auto& s : gens) {
      const SignedPerm v = w * s;
      if (dist.emplace(v, dist[w] + 1).second) todo.push_back(v);
    }
  }
  return dist;
}

const QLaurent ts = QLaurent::monomial(-1, -1);
const QLaurent tl = QLaurent::monomial(-1, -2);

}  // namespace

TEST(WeylGroup, Orders) {
  EXPECT_EQ(enumerate_group(1).size(), 2u);
  EXPECT_EQ(enumerate_group(2).size(), 8u);
  EXPECT_EQ(enumerate_group(3).size(), 48u);
  for (int n = 1; n <= 3; ++n) {
    const auto g = enumerate_group(n);
    EXPECT_EQ(std::set<SignedPerm>(g.begin(), g.end()).size(), g.size());
  }
}

TEST(WeylGroup, GroupLaws) {
  for (int n = 1; n <= 3; ++n) {
    const auto g = enumerate_group(n);
    const std::set<SignedPerm> all(g.begin(), g.end());
    for (const auto& a : g) {
      EXPECT_TRUE((a * a.inverse()).is_identity());
      for (const auto& b : g) EXPECT_TRUE(all.count(a * b));
    }
  }
}

TEST(RootSystem, Counts) {
  for (int n = 1; n <= 4; ++n) {
    const RootSet r = root_system(n);
    EXPECT_EQ(r.long_pos.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(r.short_pos.size(), static_cast<std::size_t>(n * (n - 1)));
    EXPECT_EQ(r.all().size(), 2 * r.positive().size());
  }
}

TEST(NegatedPositiveSet, Examples) {
  EXPECT_TRUE(negated_positive_set(SignedPerm::identity(2), true).empty());
  EXPECT_EQ(negated_positive_set(SignedPerm::tau(1), true), (std::vector<ExpVector>{{2}}));
  EXPECT_TRUE(negated_positive_set(SignedPerm::tau(1), false).empty());
  EXPECT_EQ(negated_positive_set(SignedPerm::transposition(2, 0), true), (std::vector<ExpVector>{{1, -1}}));
}

TEST(NegatedPositiveSet, SizeIsCoxeterLength) {
  for (int n = 1; n <= 3; ++n) {
    const auto len = coxeter_lengths(n);
    ASSERT_EQ(len.size(), enumerate_group(n).size());
    for (const auto& [w, l] : len) EXPECT_EQ(static_cast<int>(negated_positive_set(w, true).size()), l) << w.str();
  }
}

TEST(Stabilizer, Examples) {
  const auto s11 = stabilizer({1, 1});
  EXPECT_EQ(std::set<SignedPerm>(s11.begin(), s11.end()),
            (std::set<SignedPerm>{SignedPerm::identity(2), SignedPerm::transposition(2, 0)}));
  const auto s10 = stabilizer({1, 0});
  EXPECT_EQ(std::set<SignedPerm>(s10.begin(), s10.end()), (std::set<SignedPerm>{SignedPerm::identity(2), SignedPerm::tau(2)}));
  EXPECT_EQ(stabilizer({0, 0}).size(), 8u);
  EXPECT_THROW(stabilizer({0, 1}), InvalidValue);
}

TEST(Poincare, Examples) {
  EXPECT_EQ(poincare_poly(enumerate_group(1), ts, tl), QLaurent(1) - QLaurent::q(-2));
  EXPECT_EQ(poincare_poly(stabilizer({1, 1}), ts, tl), QLaurent(1) - QLaurent::q(-1));
  EXPECT_EQ(poincare_poly({SignedPerm::identity(3)}, ts, tl), QLaurent(1));
}

TEST(Poincare, FactorsOverDegrees) {
  // B_n / C_n with t_s = t_l = t: prod_{i=1..n} (1 - t^{2i}) / (1 - t)
  const QLaurent t = QLaurent::q(1);
  for (int n = 1; n <= 3; ++n) {
    QLaurent num(1), den(1);
    for (int i = 1; i <= n; ++i) {
      num *= QLaurent(1) - t.pow(static_cast<unsigned>(2 * i));
      den *= QLaurent(1) - t;
    }
    EXPECT_EQ(poincare_poly(enumerate_group(n), t, t) * den, num);
  }
}

TEST(Pairing, Equivariant) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int n = 1; n <= 3; ++n)
    for (const auto& s : enumerate_group(n)) {
      ExpVector a(static_cast<std::size_t>(n)), b(a.size());
      for (auto& v : a) v = d(rng);
      for (auto& v : b) v = d(rng);
      EXPECT_EQ(pair(s.act(a), s.act(b)), pair(a, b));
    }
}

TEST(Partitions, Enumeration) {
  const auto ps = partitions_up_to(2, 3);
  EXPECT_EQ(ps.size(), 6u);  // 00 10 20 11 30 21
  for (const auto& p : ps) {
    EXPECT_LE(weight(p), 3);
    EXPECT_TRUE(std::is_sorted(p.rbegin(), p.rend()));
  }
  EXPECT_EQ(partition_str({2, 1, 0}), "2,1,0");
}
