#pragma once

// Root system of type C_n and its Weyl group (signed permutations).

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "hlsph/errors.hpp"
#include "hlsph/scalars.hpp"

namespace hlsph {

using ExpVector = std::vector<int>;
using Partition = std::vector<int>;

inline int pair(const ExpVector& a, const ExpVector& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline int weight(const Partition& lam) { return std::accumulate(lam.begin(), lam.end(), 0); }

inline void validate_partition(const Partition& lam) {
  if (lam.empty()) throw InvalidValue("empty partition");
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (lam[i] < 0) throw InvalidValue("partition with a negative part");
    if (i > 0 && lam[i] > lam[i - 1]) throw InvalidValue("partition not weakly decreasing");
  }
}

inline std::string partition_str(const Partition& lam) {
  std::string out;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(lam[i]);
  }
  return out;
}

/// All partitions with n parts (zeros allowed) and |lam| <= max_weight, ordered by weight then
/// reverse-lex within a weight.
inline std::vector<Partition> partitions_up_to(int n, int max_weight) {
  std::vector<Partition> out;
  Partition cur(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int idx, int cap, int remaining) -> void {
    if (idx == n) {
      out.push_back(cur);
      return;
    }
    for (int v = std::min(cap, remaining); v >= 0; --v) {
      cur[static_cast<std::size_t>(idx)] = v;
      self(self, idx + 1, v, remaining - v);
    }
  };
  rec(rec, 0, max_weight, max_weight);
  std::stable_sort(out.begin(), out.end(),
                   [](const Partition& a, const Partition& b) { return weight(a) < weight(b); });
  return out;
}

/// sigma(e)_i = signs_i * e_{perm_i}  (0-based perm)
struct SignedPerm {
  std::vector<int> perm;
  std::vector<int> signs;

  static SignedPerm identity(int n) {
    SignedPerm s;
    s.perm.resize(static_cast<std::size_t>(n));
    std::iota(s.perm.begin(), s.perm.end(), 0);
    s.signs.assign(static_cast<std::size_t>(n), 1);
    return s;
  }
  /// tau: flips the sign of the last coordinate
  static SignedPerm tau(int n) {
    SignedPerm s = identity(n);
    s.signs.back() = -1;
    return s;
  }
  /// simple transposition of coordinates i, i+1 (0-based)
  static SignedPerm transposition(int n, int i) {
    SignedPerm s = identity(n);
    std::swap(s.perm[static_cast<std::size_t>(i)], s.perm[static_cast<std::size_t>(i) + 1]);
    return s;
  }

  int rank() const { return static_cast<int>(perm.size()); }
  bool is_identity() const { return *this == identity(rank()); }

  template <class T>
  std::vector<T> act(const std::vector<T>& e) const {
    if (e.size() != perm.size()) throw InvalidValue("signed permutation rank mismatch");
    std::vector<T> out(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      const T& v = e[static_cast<std::size_t>(perm[i])];
      out[i] = signs[i] > 0 ? v : T(-v);
    }
    return out;
  }

  /// Same action on multiplicative coordinates x_i = q^{z_i}.
  template <class T>
  std::vector<T> act_mult(const std::vector<T>& x) const {
    if (x.size() != perm.size()) throw InvalidValue("signed permutation rank mismatch");
    std::vector<T> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const T& v = x[static_cast<std::size_t>(perm[i])];
      out[i] = signs[i] > 0 ? v : T(T(1) / v);
    }
    return out;
  }

  SignedPerm inverse() const {
    SignedPerm r;
    const std::size_t n = perm.size();
    r.perm.resize(n);
    r.signs.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.perm[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    for (std::size_t j = 0; j < n; ++j) r.signs[j] = signs[static_cast<std::size_t>(r.perm[j])];
    return r;
  }

  /// (a*b)(e) = a(b(e))
  friend SignedPerm operator*(const SignedPerm& a, const SignedPerm& b) {
    if (a.rank() != b.rank()) throw InvalidValue("signed permutation rank mismatch");
    SignedPerm r;
    const std::size_t n = a.perm.size();
    r.perm.resize(n);
    r.signs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ai = static_cast<std::size_t>(a.perm[i]);
      r.perm[i] = b.perm[ai];
      r.signs[i] = a.signs[i] * b.signs[ai];
    }
    return r;
  }
  friend bool operator==(const SignedPerm& a, const SignedPerm& b) {
    return a.perm == b.perm && a.signs == b.signs;
  }
  friend bool operator<(const SignedPerm& a, const SignedPerm& b) {
    if (a.perm != b.perm) return a.perm < b.perm;
    return a.signs > b.signs;
  }

  /// e.g. "[+2,-1]": coordinate i receives sign * e_{perm_i}
  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (i) os << ",";
      os << (signs[i] > 0 ? "+" : "-") << perm[i] + 1;
    }
    os << "]";
    return os.str();
  }
};

/// All 2^n n! elements, lexicographic in (perm, signs) with + before -.
inline std::vector<SignedPerm> enumerate_group(int n) {
  if (n < 1 || n > 6) throw InvalidValue("enumerate_group: rank must be in [1, 6]");
  std::vector<SignedPerm> out;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      SignedPerm s;
      s.perm = p;
      s.signs.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) s.signs[static_cast<std::size_t>(i)] = (mask >> (n - 1 - i)) & 1u ? -1 : 1;
      out.push_back(std::move(s));
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct RootSet {
  int n = 0;
  std::vector<ExpVector> short_pos;  // e_i - e_j, e_i + e_j (i < j)
  std::vector<ExpVector> long_pos;   // 2 e_i

  std::vector<ExpVector> positive() const {
    std::vector<ExpVector> out = short_pos;
    out.insert(out.end(), long_pos.begin(), long_pos.end());
    return out;
  }
  /// All 2n^2 roots, positive ones first.
  std::vector<ExpVector> all() const {
    std::vector<ExpVector> out = positive();
    const std::size_t k = out.size();
    for (std::size_t i = 0; i < k; ++i) {
      ExpVector neg = out[i];
      for (int& v : neg) v = -v;
      out.push_back(std::move(neg));
    }
    return out;
  }
};

inline RootSet root_system(int n) {
  if (n < 1) throw InvalidValue("root_system: rank must be >= 1");
  RootSet r;
  r.n = n;
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = i + 1; j < un; ++j) {
      ExpVector a(un, 0), b(un, 0);
      a[i] = 1;
      a[j] = -1;
      b[i] = 1;
      b[j] = 1;
      r.short_pos.push_back(std::move(a));
      r.short_pos.push_back(std::move(b));
    }
  }
  for (std::size_t i = 0; i < un; ++i) {
    ExpVector a(un, 0);
    a[i] = 2;
    r.long_pos.push_back(std::move(a));
  }
  return r;
}

inline bool is_long_root(const ExpVector& a) {
  int nz = 0;
  for (int v : a)
    if (v != 0) ++nz;
  return nz == 1;
}

/// Positive means first nonzero coordinate > 0.
inline bool is_positive(const ExpVector& a) {
  for (int v : a)
    if (v != 0) return v > 0;
  return false;
}

/// { alpha in Sigma_s^+ (or Sigma^+ with include_long) : -sigma(alpha) in Sigma^+ }
inline std::vector<ExpVector> negated_positive_set(const SignedPerm& sigma, bool include_long) {
  const RootSet rs = root_system(sigma.rank());
  std::vector<ExpVector> out;
  for (const auto& a : include_long ? rs.positive() : rs.short_pos)
    if (!is_positive(sigma.act(a))) out.push_back(a);
  return out;
}

inline std::vector<SignedPerm> stabilizer(const Partition& lam) {
  validate_partition(lam);
  std::vector<SignedPerm> out;
  for (auto& s : enumerate_group(static_cast<int>(lam.size())))
    if (s.act(lam) == lam) out.push_back(std::move(s));
  return out;
}

/// sum over elems of prod_{alpha in Sigma^+, sigma(alpha) < 0} t_alpha
inline QLaurent poincare_poly(const std::vector<SignedPerm>& elems, const QLaurent& t_s, const QLaurent& t_l) {
  QLaurent total;
  for (const auto& s : elems) {
    QLaurent term(1);
    for (const auto& a : negated_positive_set(s, true)) term *= is_long_root(a) ? t_l : t_s;
    total += term;
  }
  return total;
}

}  // namespace hlsph
