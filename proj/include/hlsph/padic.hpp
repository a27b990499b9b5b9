#pragma once

// Local-field laboratory for the unramified quadratic extension k' = k(sqrt eps), k = Q_p.
// Three number models:
//   ExactLocal  - a + b sqrt(eps) with a, b rational (membership, classification)
//   ResidueElem - (a, b) mod p^m (counting, Haar sampling)
//   Padic       - p^val * unit, unit known mod p^(abs - val) (constructive algorithms)

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hlsph/errors.hpp"
#include "hlsph/parallel.hpp"
#include "hlsph/scalars.hpp"
#include "hlsph/weyl.hpp"

namespace hlsph {

using i64 = std::int64_t;
using i128 = __int128;

constexpr int kInfVal = INT_MAX / 4;

namespace padic_detail {
inline i64 mod(i64 x, i64 m) {
  x %= m;
  return x < 0 ? x + m : x;
}
inline i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<i128>(a) * b % m); }
inline i64 powmod(i64 b, i64 e, i64 m) {
  i64 r = 1 % m;
  b = mod(b, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}
inline i64 invmod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    const i64 q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw InvalidValue("invmod: not invertible");
  return mod(x, m);
}
inline i64 ipow(i64 p, int k) {
  i64 r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > (INT64_MAX / 4) / p) throw ResourceError("p-adic modulus exceeds 64-bit range");
    r *= p;
  }
  return r;
}
/// v_p of an integer, capped at cap
inline int vp(i64 x, i64 p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0 && v < cap) {
    x /= p;
    ++v;
  }
  return v;
}
inline int vp(const Integer& x, long p) {
  if (x == 0) return kInfVal;
  Integer t = x;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}
inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}
}  // namespace padic_detail

/// p odd prime, eps the smallest positive non-residue mod p
struct LocalField {
  long p = 3;
  long eps = 2;

  static LocalField make(long p) {
    if (p % 2 == 0 || !padic_detail::is_prime(p)) throw InvalidValue("p must be an odd prime");
    LocalField f;
    f.p = p;
    for (long e = 2; e < p; ++e) {
      if (padic_detail::powmod(e, (p - 1) / 2, p) == p - 1) {
        f.eps = e;
        break;
      }
    }
    if (padic_detail::powmod(f.eps, (p - 1) / 2, p) != p - 1) throw InternalInconsistency("no non-residue found");
    return f;
  }
};

inline int vp_rational(const Rational& r, long p) {
  if (r == 0) return kInfVal;
  return padic_detail::vp(r.get_num(), p) - padic_detail::vp(r.get_den(), p);
}

// ---------------------------------------------------------------- ExactLocal

struct ExactLocal {
  Rational a{0};
  Rational b{0};
  long eps = 2;

  ExactLocal() = default;
  ExactLocal(Rational a_, Rational b_, long e) : a(std::move(a_)), b(std::move(b_)), eps(e) {
    a.canonicalize();
    b.canonicalize();
  }

  bool is_zero() const { return a == 0 && b == 0; }
  ExactLocal conj() const { return {a, -b, eps}; }
  Rational norm() const { return a * a - eps * b * b; }
  int valuation(long p) const { return std::min(vp_rational(a, p), vp_rational(b, p)); }
  ExactLocal inverse() const {
    if (is_zero()) throw InvalidValue("inverse of zero");
    const Rational n = norm();
    return {a / n, -b / n, eps};
  }

  friend ExactLocal operator+(const ExactLocal& x, const ExactLocal& y) { return {x.a + y.a, x.b + y.b, x.eps}; }
  friend ExactLocal operator-(const ExactLocal& x, const ExactLocal& y) { return {x.a - y.a, x.b - y.b, x.eps}; }
  friend ExactLocal operator*(const ExactLocal& x, const ExactLocal& y) {
    return {x.a * y.a + x.eps * x.b * y.b, x.a * y.b + x.b * y.a, x.eps};
  }
  friend ExactLocal operator/(const ExactLocal& x, const ExactLocal& y) { return x * y.inverse(); }
  ExactLocal operator-() const { return {-a, -b, eps}; }
  friend bool operator==(const ExactLocal& x, const ExactLocal& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const ExactLocal& x, const ExactLocal& y) { return !(x == y); }

  std::string str() const { return "(" + a.get_str() + "," + b.get_str() + ")"; }
};

// ---------------------------------------------------------------- ResidueElem

/// a + b u in (Z/p^m)[u]/(u^2 - eps)
struct ResidueElem {
  i64 a = 0;
  i64 b = 0;
  int m = 1;
  long p = 3;
  long eps = 2;

  i64 modulus() const { return padic_detail::ipow(p, m); }
  static ResidueElem make(i64 a, i64 b, const LocalField& f, int m) {
    ResidueElem r;
    r.m = m;
    r.p = f.p;
    r.eps = f.eps;
    const i64 M = r.modulus();
    r.a = padic_detail::mod(a, M);
    r.b = padic_detail::mod(b, M);
    return r;
  }
  ResidueElem like(i64 a_, i64 b_) const {
    ResidueElem r = *this;
    const i64 M = modulus();
    r.a = padic_detail::mod(a_, M);
    r.b = padic_detail::mod(b_, M);
    return r;
  }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_unit() const { return a % p != 0 || b % p != 0; }
  /// min(v(a), v(b)), m when zero
  int valuation() const { return std::min(padic_detail::vp(a, p, m), padic_detail::vp(b, p, m)); }
  ResidueElem conj() const { return like(a, -b); }
  ResidueElem norm() const {
    const i64 M = modulus();
    return like(padic_detail::mod(padic_detail::mulmod(a, a, M) - padic_detail::mulmod(eps, padic_detail::mulmod(b, b, M), M), M), 0);
  }
  ResidueElem inverse() const {
    if (!is_unit()) throw InvalidValue("ResidueElem: inverse of a non-unit");
    const i64 M = modulus();
    const i64 n = norm().a;
    const i64 ni = padic_detail::invmod(n, M);
    return like(padic_detail::mulmod(a, ni, M), -padic_detail::mulmod(b, ni, M));
  }
  /// reduction to a lower precision
  ResidueElem reduce(int m2) const {
    if (m2 > m) throw InvalidValue("ResidueElem::reduce: target precision too high");
    ResidueElem r = *this;
    r.m = m2;
    const i64 M = r.modulus();
    r.a %= M;
    r.b %= M;
    return r;
  }

  friend ResidueElem operator+(const ResidueElem& x, const ResidueElem& y) { return x.like(x.a + y.a, x.b + y.b); }
  friend ResidueElem operator-(const ResidueElem& x, const ResidueElem& y) { return x.like(x.a - y.a, x.b - y.b); }
  friend ResidueElem operator*(const ResidueElem& x, const ResidueElem& y) {
    const i64 M = x.modulus();
    using padic_detail::mulmod;
    const i64 ra = padic_detail::mod(mulmod(x.a, y.a, M) + mulmod(x.eps, mulmod(x.b, y.b, M), M), M);
    const i64 rb = padic_detail::mod(mulmod(x.a, y.b, M) + mulmod(x.b, y.a, M), M);
    return x.like(ra, rb);
  }
  ResidueElem operator-() const { return like(-a, -b); }
  friend bool operator==(const ResidueElem& x, const ResidueElem& y) { return x.a == y.a && x.b == y.b && x.m == y.m; }
  friend bool operator!=(const ResidueElem& x, const ResidueElem& y) { return !(x == y); }

  std::string str() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
};

// ---------------------------------------------------------------- Padic

/// p^val * (ua + ub sqrt eps), unit known mod p^(abs - val); zero at precision when abs <= val
struct Padic {
  long p = 3;
  long eps = 2;
  int val = 0;
  int abs = 1;
  i64 ua = 0;
  i64 ub = 0;

  int rel() const { return abs - val; }
  bool is_zero() const { return rel() <= 0; }

  static Padic zero(const LocalField& f, int abs) {
    Padic x;
    x.p = f.p;
    x.eps = f.eps;
    x.val = abs;
    x.abs = abs;
    return x;
  }
  /// p^shift * (a + b sqrt eps) with integer a, b, known to absolute precision abs
  static Padic from_ints(i64 a, i64 b, const LocalField& f, int abs, int shift = 0) {
    const int cap = abs - shift;
    if (cap <= 0) return zero(f, abs);
    const int v = std::min(padic_detail::vp(a, f.p, cap), padic_detail::vp(b, f.p, cap));
    if (v >= cap) return zero(f, abs);
    Padic x;
    x.p = f.p;
    x.eps = f.eps;
    x.val = shift + v;
    x.abs = abs;
    const i64 pv = padic_detail::ipow(f.p, v);
    const i64 M = padic_detail::ipow(f.p, x.rel());
    x.ua = padic_detail::mod(a / pv, M);
    x.ub = padic_detail::mod(b / pv, M);
    return x;
  }
  static Padic from_exact(const ExactLocal& e, const LocalField& f, int abs) {
    if (e.is_zero()) return zero(f, abs);
    const int v = e.valuation(f.p);
    if (v >= abs) return zero(f, abs);
    Padic x;
    x.p = f.p;
    x.eps = f.eps;
    x.val = v;
    x.abs = abs;
    const i64 M = padic_detail::ipow(f.p, x.rel());
    auto reduce = [&](const Rational& r) -> i64 {
      if (r == 0) return 0;
      // r / p^v as an integral element mod M
      Rational s = r;
      if (v > 0) s /= Rational(Integer(padic_detail::ipow(f.p, v)));
      if (v < 0) s *= Rational(Integer(padic_detail::ipow(f.p, -v)));
      Integer num = s.get_num(), den = s.get_den();
      Integer Mz(M);
      Integer nm, dm;
      mpz_fdiv_r(nm.get_mpz_t(), num.get_mpz_t(), Mz.get_mpz_t());
      mpz_fdiv_r(dm.get_mpz_t(), den.get_mpz_t(), Mz.get_mpz_t());
      return padic_detail::mulmod(nm.get_si(), padic_detail::invmod(dm.get_si(), M), M);
    };
    x.ua = reduce(e.a);
    x.ub = reduce(e.b);
    return x;
  }
  static Padic from_residue(const ResidueElem& r, const LocalField& f, int shift = 0) {
    return from_ints(r.a, r.b, f, r.m + shift, shift);
  }
  Padic like_int(i64 a, i64 b = 0) const {
    LocalField f{p, eps};
    return from_ints(a, b, f, abs);
  }

  Padic conj() const {
    Padic r = *this;
    if (!is_zero()) r.ub = padic_detail::mod(-ub, padic_detail::ipow(p, rel()));
    return r;
  }
  Padic operator-() const {
    Padic r = *this;
    if (!is_zero()) {
      const i64 M = padic_detail::ipow(p, rel());
      r.ua = padic_detail::mod(-ua, M);
      r.ub = padic_detail::mod(-ub, M);
    }
    return r;
  }

  friend Padic operator*(const Padic& x, const Padic& y) {
    Padic r;
    r.p = x.p;
    r.eps = x.eps;
    r.val = x.val + y.val;
    r.abs = std::min(x.abs + y.val, y.abs + x.val);
    if (r.rel() <= 0) {
      r.val = r.abs;
      return r;
    }
    const i64 M = padic_detail::ipow(x.p, r.rel());
    using padic_detail::mulmod;
    const i64 xa = x.ua % M, xb = x.ub % M, ya = y.ua % M, yb = y.ub % M;
    r.ua = padic_detail::mod(mulmod(xa, ya, M) + mulmod(x.eps, mulmod(xb, yb, M), M), M);
    r.ub = padic_detail::mod(mulmod(xa, yb, M) + mulmod(xb, ya, M), M);
    return r;
  }

  friend Padic operator+(const Padic& x, const Padic& y) {
    const int A = std::min(x.abs, y.abs);
    const LocalField f{x.p, x.eps};
    const bool xz = x.is_zero() || x.val >= A, yz = y.is_zero() || y.val >= A;
    if (xz && yz) return zero(f, A);
    const int m = std::min(xz ? A : x.val, yz ? A : y.val);
    const int span = A - m;
    const i64 M = padic_detail::ipow(x.p, span);
    i64 sa = 0, sb = 0;
    if (!xz) {
      const i64 s = padic_detail::ipow(x.p, x.val - m);
      sa += padic_detail::mulmod(s, x.ua % M, M);
      sb += padic_detail::mulmod(s, x.ub % M, M);
    }
    if (!yz) {
      const i64 s = padic_detail::ipow(x.p, y.val - m);
      sa += padic_detail::mulmod(s, y.ua % M, M);
      sb += padic_detail::mulmod(s, y.ub % M, M);
    }
    return from_ints(padic_detail::mod(sa, M), padic_detail::mod(sb, M), f, A - m, 0).shift_by(m);
  }
  friend Padic operator-(const Padic& x, const Padic& y) { return x + (-y); }

  /// multiply by p^k
  Padic shift_by(int k) const {
    Padic r = *this;
    r.val += k;
    r.abs += k;
    return r;
  }

  Padic inverse() const {
    if (is_zero()) throw PrecisionError("Padic: division by an element not certified nonzero", abs + 1);
    Padic r = *this;
    r.val = -val;
    r.abs = r.val + rel();
    const i64 M = padic_detail::ipow(p, rel());
    using padic_detail::mulmod;
    const i64 n = padic_detail::mod(mulmod(ua, ua, M) - mulmod(eps, mulmod(ub, ub, M), M), M);
    const i64 ni = padic_detail::invmod(n, M);
    r.ua = mulmod(ua, ni, M);
    r.ub = padic_detail::mod(-mulmod(ub, ni, M), M);
    return r;
  }
  friend Padic operator/(const Padic& x, const Padic& y) { return x * y.inverse(); }

  Padic norm() const { return *this * conj(); }
  int valuation() const { return is_zero() ? abs : val; }

  /// x - y vanishes at the smaller precision
  friend bool approx_equal(const Padic& x, const Padic& y) { return (x - y).is_zero(); }

  std::string str() const {
    if (is_zero()) return "O(p^" + std::to_string(abs) + ")";
    return "p^" + std::to_string(val) + "*(" + std::to_string(ua) + "," + std::to_string(ub) + ")+O(p^" +
           std::to_string(abs) + ")";
  }
};

// ---------------------------------------------------------------- matrices

template <class T>
struct LocalMatrix {
  int size = 0;
  std::vector<T> e;

  LocalMatrix() = default;
  LocalMatrix(int n, const T& fill) : size(n), e(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

  T& operator()(int i, int j) { return e[static_cast<std::size_t>(i) * static_cast<std::size_t>(size) + static_cast<std::size_t>(j)]; }
  const T& operator()(int i, int j) const {
    return e[static_cast<std::size_t>(i) * static_cast<std::size_t>(size) + static_cast<std::size_t>(j)];
  }

  static LocalMatrix identity(int n, const T& zero, const T& one) {
    LocalMatrix m(n, zero);
    for (int i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }
  /// antidiagonal ones
  static LocalMatrix j(int n, const T& zero, const T& one) {
    LocalMatrix m(n, zero);
    for (int i = 0; i < n; ++i) m(i, n - 1 - i) = one;
    return m;
  }

  LocalMatrix conj_transpose() const {
    LocalMatrix r = *this;
    for (int i = 0; i < size; ++i)
      for (int k = 0; k < size; ++k) r(i, k) = (*this)(k, i).conj();
    return r;
  }

  friend LocalMatrix operator*(const LocalMatrix& x, const LocalMatrix& y) {
    if (x.size != y.size) throw InvalidValue("matrix size mismatch");
    LocalMatrix r = x;
    for (int i = 0; i < x.size; ++i)
      for (int k = 0; k < x.size; ++k) {
        T acc = x(i, 0) * y(0, k);
        for (int t = 1; t < x.size; ++t) acc = acc + x(i, t) * y(t, k);
        r(i, k) = acc;
      }
    return r;
  }
  friend LocalMatrix operator-(const LocalMatrix& x, const LocalMatrix& y) {
    LocalMatrix r = x;
    for (std::size_t t = 0; t < r.e.size(); ++t) r.e[t] = x.e[t] - y.e[t];
    return r;
  }
  friend bool operator==(const LocalMatrix& x, const LocalMatrix& y) { return x.size == y.size && x.e == y.e; }
};

using ExactMatrix = LocalMatrix<ExactLocal>;
using ResidueMatrix = LocalMatrix<ResidueElem>;
using PadicMatrix = LocalMatrix<Padic>;

/// k . x = k x k*
template <class T>
LocalMatrix<T> act(const LocalMatrix<T>& k, const LocalMatrix<T>& x) {
  return k * x * k.conj_transpose();
}

inline ExactLocal ex(const LocalField& f, Rational a, Rational b = 0) { return {std::move(a), std::move(b), f.eps}; }

/// diag(p^lambda_1..p^lambda_n, 1, p^-lambda_n..p^-lambda_1)
inline ExactMatrix x_lambda(const LocalField& f, const Partition& lam) {
  validate_partition(lam);
  const int n = static_cast<int>(lam.size());
  ExactMatrix x(2 * n + 1, ex(f, 0));
  for (int i = 0; i < n; ++i) {
    const Rational pw = rational_pow(Rational(f.p), lam[static_cast<std::size_t>(i)]);
    x(i, i) = ex(f, pw);
    x(2 * n - i, 2 * n - i) = ex(f, 1 / pw);
  }
  x(n, n) = ex(f, 1);
  return x;
}

/// characteristic polynomial det(t - A), coefficients from t^0 up (Faddeev-LeVerrier)
inline std::vector<ExactLocal> char_poly(const ExactMatrix& A) {
  const int n = A.size;
  const long eps = A.e.empty() ? 2 : A.e.front().eps;
  const ExactLocal zero(0, 0, eps), one(1, 0, eps);
  std::vector<ExactLocal> c(static_cast<std::size_t>(n) + 1, zero);
  c[static_cast<std::size_t>(n)] = one;
  ExactMatrix M(n, zero);
  const ExactMatrix I = ExactMatrix::identity(n, zero, one);
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    ExactMatrix AM = A * M;
    for (int i = 0; i < n; ++i) AM(i, i) = AM(i, i) + c[static_cast<std::size_t>(n - k + 1)];
    M = AM;
    ExactMatrix AMk = A * M;
    ExactLocal tr = zero;
    for (int i = 0; i < n; ++i) tr = tr + AMk(i, i);
    c[static_cast<std::size_t>(n - k)] = ExactLocal(-tr.a / k, -tr.b / k, eps);
  }
  return c;
}

/// x* = x, x* j x = j, and det(t - xj) = (t^2 - 1)^n (t - 1)
inline bool is_member_X(const ExactMatrix& x) {
  if (x.size % 2 == 0 || x.size < 3) return false;
  const int n = (x.size - 1) / 2;
  const long eps = x.e.front().eps;
  const ExactLocal zero(0, 0, eps), one(1, 0, eps);
  if (!(x.conj_transpose() == x)) return false;
  const ExactMatrix j = ExactMatrix::j(x.size, zero, one);
  if (!(x.conj_transpose() * j * x == j)) return false;
  // (t^2 - 1)^n (t - 1)
  std::vector<Rational> target{1};
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> nt(target.size() + 2, 0);
    for (std::size_t k = 0; k < target.size(); ++k) {
      nt[k] -= target[k];
      nt[k + 2] += target[k];
    }
    target = nt;
  }
  {
    std::vector<Rational> nt(target.size() + 1, 0);
    for (std::size_t k = 0; k < target.size(); ++k) {
      nt[k] -= target[k];
      nt[k + 1] += target[k];
    }
    target = nt;
  }
  const auto cp = char_poly(x * j);
  for (std::size_t k = 0; k < cp.size(); ++k)
    if (cp[k].a != target[k] || cp[k].b != 0) return false;
  return true;
}

namespace padic_detail {
inline int val_of(const ExactLocal& x, long p) { return x.valuation(p); }
inline int val_of(const Padic& x, long) { return x.valuation(); }
}  // namespace padic_detail

/// Valuations of the elementary divisors, sorted decreasingly. Pivot = entry of minimal valuation.
template <class T>
std::vector<int> invariant_factors(LocalMatrix<T> x, long p) {
  const int n = x.size;
  std::vector<int> out;
  for (int k = 0; k < n; ++k) {
    int bi = -1, bj = -1, bv = kInfVal;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j) {
        if (x(i, j).is_zero()) continue;
        const int v = padic_detail::val_of(x(i, j), p);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) {
      if constexpr (std::is_same_v<T, Padic>) {
        throw PrecisionError("invariant_factors: remaining block is zero at working precision", x(k, k).abs + 1);
      } else {
        throw InvalidValue("invariant_factors: singular matrix");
      }
    }
    if constexpr (std::is_same_v<T, Padic>) {
      if (x(bi, bj).rel() < 1) throw PrecisionError("invariant_factors: pivot not certified", x(bi, bj).abs + 1);
    }
    for (int j = 0; j < n; ++j) std::swap(x(k, j), x(bi, j));
    for (int i = 0; i < n; ++i) std::swap(x(i, k), x(i, bj));
    const T piv_inv = x(k, k).inverse();
    for (int i = k + 1; i < n; ++i) {
      const T f = x(i, k) * piv_inv;
      for (int j = k; j < n; ++j) x(i, j) = x(i, j) - f * x(k, j);
    }
    for (int j = k + 1; j < n; ++j) {
      const T f = x(k, j) * piv_inv;
      for (int i = k; i < n; ++i) x(i, j) = x(i, j) - f * x(i, k);
    }
    out.push_back(bv);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

/// lambda with invariant factors (lambda, 0, -lambda reversed)
inline Partition classify_k_orbit(const std::vector<int>& mu) {
  const int size = static_cast<int>(mu.size());
  if (size % 2 == 0) throw InvalidValue("classify_k_orbit: even size");
  const int n = (size - 1) / 2;
  Partition lam(mu.begin(), mu.begin() + n);
  if (mu[static_cast<std::size_t>(n)] != 0) throw InvalidValue("classify_k_orbit: middle factor is not a unit");
  for (int i = 0; i < n; ++i)
    if (mu[static_cast<std::size_t>(size - 1 - i)] != -lam[static_cast<std::size_t>(i)] || lam[static_cast<std::size_t>(i)] < 0)
      throw InvalidValue("classify_k_orbit: factors not of the form (lambda, 0, -lambda)");
  return lam;
}

template <class T>
Partition classify_k_orbit(const LocalMatrix<T>& x, long p) {
  return classify_k_orbit(invariant_factors(x, p));
}

/// |lambda| mod 2
template <class T>
int classify_g_orbit(const LocalMatrix<T>& x, long p) {
  return weight(classify_k_orbit(x, p)) % 2;
}

// ---------------------------------------------------------------- generators of K (exact model)

namespace padic_detail {

inline ExactLocal random_integral(const LocalField& f, std::mt19937_64& rng, bool unit) {
  std::uniform_int_distribution<long> d(-static_cast<long>(f.p) * 2, static_cast<long>(f.p) * 2);
  for (;;) {
    const long a = d(rng), b = d(rng);
    if (!unit || a % f.p != 0 || b % f.p != 0) return ex(f, a, b);
  }
}

inline bool preserves_form(const ExactMatrix& g) {
  const long eps = g.e.front().eps;
  const ExactLocal zero(0, 0, eps), one(1, 0, eps);
  const ExactMatrix j = ExactMatrix::j(g.size, zero, one);
  return g.conj_transpose() * j * g == j;
}

}  // namespace padic_detail

/// one integral generator of K_n; kind chosen uniformly
inline ExactMatrix random_k_generator(const LocalField& f, int n, std::mt19937_64& rng) {
  using padic_detail::random_integral;
  const int N = 2 * n + 1;
  const ExactLocal zero = ex(f, 0), one = ex(f, 1);
  const Rational half(1, 2);
  ExactMatrix g = ExactMatrix::identity(N, zero, one);
  auto bar = [N](int i) { return N - 1 - i; };
  std::uniform_int_distribution<int> pick_i(0, n - 1);
  std::uniform_int_distribution<int> kind_d(0, 7);
  const int kind = kind_d(rng);
  switch (kind) {
    case 0: {  // diag(alpha, u, alpha*^-1)
      for (int i = 0; i < n; ++i) {
        const ExactLocal a = random_integral(f, rng, true);
        g(i, i) = a;
        g(bar(i), bar(i)) = a.conj().inverse();
      }
      const ExactLocal w = random_integral(f, rng, true);
      g(n, n) = w / w.conj();
      break;
    }
    case 1: {  // 1 + t E_ij - t* E_{j bar, i bar}, i != j in the first block
      if (n < 2) return random_k_generator(f, n, rng);
      int i = pick_i(rng), j = pick_i(rng);
      while (j == i) j = pick_i(rng);
      const ExactLocal t = random_integral(f, rng, false);
      g(i, j) = t;
      g(bar(j), bar(i)) = -t.conj();
      break;
    }
    case 2: {  // 1 + t E_{i, j bar} - t* E_{j, i bar}, i != j
      if (n < 2) return random_k_generator(f, n, rng);
      int i = pick_i(rng), j = pick_i(rng);
      while (j == i) j = pick_i(rng);
      const ExactLocal t = random_integral(f, rng, false);
      g(i, bar(j)) = t;
      g(j, bar(i)) = -t.conj();
      break;
    }
    case 3: {  // 1 + t E_{i, mid} - t* E_{mid, i bar} + c E_{i, i bar}, c + c* = -N(t)
      const int i = pick_i(rng);
      const ExactLocal t = random_integral(f, rng, false);
      const ExactLocal c0 = random_integral(f, rng, false);
      g(i, n) = t;
      g(n, bar(i)) = -t.conj();
      g(i, bar(i)) = ex(f, -half * t.norm(), c0.a);
      break;
    }
    case 4: {  // 1 + c E_{i, i bar}, c + c* = 0
      const int i = pick_i(rng);
      const ExactLocal c0 = random_integral(f, rng, false);
      g(i, bar(i)) = ex(f, 0, c0.a);
      break;
    }
    case 5: {  // permutation of the first block, mirrored
      std::vector<int> perm(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      g = ExactMatrix(N, zero);
      g(n, n) = one;
      for (int i = 0; i < n; ++i) {
        const int pi = perm[static_cast<std::size_t>(i)];
        g(pi, i) = one;
        g(bar(pi), bar(i)) = one;
      }
      break;
    }
    case 6: {  // swap i and i bar
      const int i = pick_i(rng);
      g(i, i) = zero;
      g(bar(i), bar(i)) = zero;
      g(i, bar(i)) = one;
      g(bar(i), i) = one;
      break;
    }
    default:
      g = ExactMatrix::j(N, zero, one);
      break;
  }
  if (!padic_detail::preserves_form(g)) throw InternalInconsistency("random_k: generator violates g* j g = j");
  return g;
}

/// product of word_length random generators of K_n (exact model)
inline ExactMatrix random_k(const LocalField& f, int n, std::uint64_t seed, int word_length) {
  if (n < 1) throw InvalidValue("random_k: rank must be >= 1");
  if (word_length < 0) throw InvalidValue("random_k: negative word length");
  std::mt19937_64 rng(seed);
  ExactMatrix g = ExactMatrix::identity(2 * n + 1, ex(f, 0), ex(f, 1));
  for (int w = 0; w < word_length; ++w) g = g * random_k_generator(f, n, rng);
  return g;
}

/// t(b) = diag(b_1..b_n, 1, b_n*^-1..b_1*^-1), a non-compact element of G
inline ExactMatrix t_element(const LocalField& f, const std::vector<ExactLocal>& b) {
  const int n = static_cast<int>(b.size());
  const int N = 2 * n + 1;
  ExactMatrix g = ExactMatrix::identity(N, ex(f, 0), ex(f, 1));
  for (int i = 0; i < n; ++i) {
    g(i, i) = b[static_cast<std::size_t>(i)];
    g(N - 1 - i, N - 1 - i) = b[static_cast<std::size_t>(i)].conj().inverse();
  }
  return g;
}

// ---------------------------------------------------------------- norm counting

/// |{x in R_{r+1} : v(N(x) - xi) = r}| / p^{2(r+1)}
inline Rational norm_count(long p, long xi, int r, unsigned workers = 1) {
  const LocalField f = LocalField::make(p);
  if (r < 0) throw InvalidValue("norm_count: r must be >= 0");
  if (padic_detail::mod(xi, p) == 0) throw InvalidValue("norm_count: xi must be a unit mod p");
  const double total_d = std::pow(static_cast<double>(p), 2.0 * (r + 1));
  if (total_d > 1e7) throw ResourceError("norm_count: enumeration bound p^(2(r+1)) <= 1e7 exceeded");
  const i64 M = padic_detail::ipow(p, r + 1);
  const i64 pr = padic_detail::ipow(p, r);
  const i64 x0 = padic_detail::mod(xi, M);
  std::vector<i64> counts(static_cast<std::size_t>(M), 0);
  parallel_chunks(static_cast<std::size_t>(M), 64, workers, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t a = b; a < e; ++a) {
      i64 c = 0;
      const i64 aa = padic_detail::mulmod(static_cast<i64>(a), static_cast<i64>(a), M);
      for (i64 bb = 0; bb < M; ++bb) {
        const i64 nv = padic_detail::mod(aa - padic_detail::mulmod(f.eps, padic_detail::mulmod(bb, bb, M), M) - x0, M);
        if (nv % pr == 0 && nv != 0) ++c;
      }
      counts[a] = c;
    }
  });
  i64 total = 0;
  for (i64 c : counts) total += c;
  Rational vol(Integer(total), Integer(M) * Integer(M));
  vol.canonicalize();
  return vol;
}

/// 1 - q^-1 - q^-2 (r = 0), (1 - q^-2) q^-r (r > 0)
inline Rational norm_count_formula(long p, int r) {
  const Rational q(p);
  if (r == 0) return 1 - 1 / q - 1 / (q * q);
  return (1 - 1 / (q * q)) * rational_pow(q, -r);
}

// ---------------------------------------------------------------- Haar sampling of K_1

struct K1Params {
  int cell = 1;  // 1: g31 unit, 2: g31 in p
  ResidueElem alpha, u, b, d, c0, f0;  // c0, f0 carry their value in .a (b part zero)
};

/// assemble the K_1 element of the given cell
inline ResidueMatrix k1_from_params(const K1Params& P) {
  const ResidueElem zero = P.alpha.like(0, 0), one = P.alpha.like(1, 0);
  const ResidueElem half = one.like(padic_detail::invmod(2, one.modulus()), 0);
  const ResidueElem sq = one.like(0, 1);
  auto mk = [&](std::initializer_list<ResidueElem> v) {
    ResidueMatrix m(3, zero);
    int t = 0;
    for (const auto& x : v) {
      m.e[static_cast<std::size_t>(t)] = x;
      ++t;
    }
    return m;
  };
  const ResidueElem c = -(half * P.b.norm()) + P.c0 * sq;
  const ResidueElem f = -(half * P.d.norm()) + P.f0 * sq;
  const ResidueMatrix D = mk({P.alpha, zero, zero, zero, P.u, zero, zero, zero, P.alpha.conj().inverse()});
  if (P.cell == 1) {
    const ResidueMatrix U = mk({one, -P.d.conj(), f, zero, one, P.d, zero, zero, one});
    const ResidueMatrix W = mk({zero, zero, one, zero, one, -P.b.conj(), one, P.b, c});
    return D * U * W;
  }
  const ResidueMatrix L = mk({one, zero, zero, P.b, one, zero, c, -P.b.conj(), one});
  const ResidueMatrix U = mk({one, P.d, f, zero, one, -P.d.conj(), zero, zero, one});
  return D * L * U;
}

inline bool is_unitary_residue(const ResidueMatrix& g) {
  const ResidueElem zero = g.e.front().like(0, 0), one = g.e.front().like(1, 0);
  const ResidueMatrix j = ResidueMatrix::j(g.size, zero, one);
  return g.conj_transpose() * j * g == j;
}

struct K1Sample {
  ResidueMatrix g;
  int cell = 1;
};

/// Haar sample of K_1 mod p^prec; cell 1 with probability 1/(1+q^-3)
inline K1Sample sample_k1_haar(long p, int prec, std::uint64_t seed) {
  if (prec < 2) throw PrecisionError("sample_k1_haar: precision must be >= 2", 2);
  const LocalField f = LocalField::make(p);
  std::mt19937_64 rng(seed);
  const i64 M = padic_detail::ipow(p, prec);
  std::uniform_int_distribution<i64> dig(0, M - 1), dig_p(0, M / p - 1);
  auto elem = [&](i64 a, i64 b) { return ResidueElem::make(a, b, f, prec); };
  auto unit = [&] {
    for (;;) {
      ResidueElem x = elem(dig(rng), dig(rng));
      if (x.is_unit()) return x;
    }
  };
  const double q3 = std::pow(static_cast<double>(p), -3.0);
  std::bernoulli_distribution first(1.0 / (1.0 + q3));
  K1Params P;
  P.cell = first(rng) ? 1 : 2;
  P.alpha = unit();
  const ResidueElem w = unit();
  P.u = w * w.conj().inverse();
  P.d = elem(dig(rng), dig(rng));
  P.f0 = elem(dig(rng), 0);
  if (P.cell == 1) {
    P.b = elem(dig(rng), dig(rng));
    P.c0 = elem(dig(rng), 0);
  } else {
    P.b = elem(p * dig_p(rng), p * dig_p(rng));
    P.c0 = elem(p * dig_p(rng), 0);
  }
  K1Sample s{k1_from_params(P), P.cell};
  if (!is_unitary_residue(s.g)) throw InternalInconsistency("sample_k1_haar: sample is not unitary");
  return s;
}

// ---------------------------------------------------------------- Monte Carlo of the defining integral

struct MonteCarloResult {
  double estimate = 0;
  double stderr_ = 0;
  long samples = 0;
  long saturated = 0;
};

/// mean of q^{-s v(d_1(k . x_l))}, v(d_1) = v((k diag(p^{2l}, p^l, 1) k*)_33) - l
inline MonteCarloResult monte_carlo_omega1(int ell, double s, long samples, int prec, std::uint64_t seed, long p = 3,
                                           unsigned workers = 1) {
  if (ell < 0) throw InvalidValue("monte_carlo_omega1: ell must be >= 0");
  if (s < 0) throw InvalidValue("monte_carlo_omega1: s must be >= 0");
  if (samples < 1) throw InvalidValue("monte_carlo_omega1: need at least one sample");
  if (prec < 2 * ell + 4) throw PrecisionError("monte_carlo_omega1: precision too small for ell", 2 * ell + 4);
  (void)LocalField::make(p);  // validates p
  const std::size_t chunk = 1024;
  const std::size_t nchunks = (static_cast<std::size_t>(samples) + chunk - 1) / chunk;
  std::vector<double> sum(nchunks, 0), sum2(nchunks, 0);
  std::vector<long> sat(nchunks, 0);
  parallel_chunks(static_cast<std::size_t>(samples), chunk, workers, [&](std::size_t c, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      for (std::uint64_t attempt = 0;; ++attempt) {
        if (attempt > 1000) throw PrecisionError("monte_carlo_omega1: persistent saturation", prec + 4);
        const K1Sample k = sample_k1_haar(p, prec, derive_seed(seed, (static_cast<std::uint64_t>(i) << 10) + attempt));
        const ResidueElem zero = k.g(0, 0).like(0, 0);
        const ResidueElem pl = zero.like(padic_detail::ipow(p, ell), 0);
        // (k D k*)_33 = p^{2l} N(k31) + p^l N(k32) + N(k33)
        const ResidueElem y = pl * pl * k.g(2, 0).norm() + pl * k.g(2, 1).norm() + k.g(2, 2).norm();
        const int v = y.valuation();
        if (v > prec - 2) {
          ++sat[c];
          continue;
        }
        const double val = std::pow(static_cast<double>(p), -s * (v - ell));
        sum[c] += val;
        sum2[c] += val * val;
        break;
      }
    }
  });
  MonteCarloResult r;
  r.samples = samples;
  const double S = pairwise_sum(sum), S2 = pairwise_sum(sum2);
  for (long v : sat) r.saturated += v;
  if (static_cast<double>(r.saturated) > 0.01 * static_cast<double>(samples))
    throw PrecisionError("monte_carlo_omega1: saturation rate above 1%", prec + 4);
  const double n = static_cast<double>(samples);
  r.estimate = S / n;
  const double var = std::max(0.0, S2 / n - r.estimate * r.estimate);
  r.stderr_ = std::sqrt(var / n);
  return r;
}

// ---------------------------------------------------------------- norm equation and n = 1 diagonalization

/// alpha with N(alpha) = c for c in k (b part zero at precision); c needs even valuation
inline Padic solve_norm(const Padic& c) {
  if (c.is_zero()) throw PrecisionError("solve_norm: right side not certified nonzero", c.abs + 1);
  if (c.ub % c.p != 0 && c.rel() > 0) {
    // not in k at working precision
    const i64 M = padic_detail::ipow(c.p, c.rel());
    if (c.ub % M != 0) throw InternalInconsistency("solve_norm: right side not in the base field");
  }
  if (c.val % 2 != 0) throw InternalInconsistency("solve_norm: odd valuation is not a norm");
  const long p = c.p;
  const int rel = c.rel();
  const i64 M = padic_detail::ipow(p, rel);
  using padic_detail::mod;
  using padic_detail::mulmod;
  const i64 u = c.ua % M;
  // alpha0 mod p
  i64 a0 = -1, b0 = -1;
  for (i64 a = 0; a < p && a0 < 0; ++a)
    for (i64 b = 0; b < p; ++b)
      if (mod(a * a - c.eps * b * b - u, p) == 0) {
        a0 = a;
        b0 = b;
        break;
      }
  if (a0 < 0) throw InternalInconsistency("solve_norm: no residue solution");
  const i64 n0 = mod(mulmod(a0, a0, M) - mulmod(c.eps, mulmod(b0, b0, M), M), M);
  const i64 eta = mulmod(u, padic_detail::invmod(n0, M), M);  // 1-unit
  // sqrt(eta) by Newton from 1
  i64 s = 1;
  const i64 inv2 = padic_detail::invmod(2, M);
  for (int it = 0; it < 2 * rel + 4; ++it) {
    const i64 sinv = padic_detail::invmod(s, M);
    s = mulmod(mod(s + mulmod(eta, sinv, M), M), inv2, M);
  }
  if (mulmod(s, s, M) != eta) throw InternalInconsistency("solve_norm: square root failed");
  const LocalField f{p, c.eps};
  return Padic::from_ints(mulmod(a0, s, M), mulmod(b0, s, M), f, rel).shift_by(c.val / 2);
}

struct Diag1Result {
  PadicMatrix k;
  int ell = 0;
  int certified_precision = 0;
  std::vector<std::string> steps;
};

namespace padic_detail {

inline PadicMatrix pm(const LocalField& f, int prec, std::initializer_list<Padic> v) {
  PadicMatrix m(3, Padic::zero(f, prec));
  int t = 0;
  for (const auto& x : v) m.e[static_cast<std::size_t>(t++)] = x;
  return m;
}

struct Diag1State {
  LocalField f;
  int prec;
  PadicMatrix x;
  PadicMatrix k;
  std::vector<std::string> steps;

  Padic c(i64 a, i64 b = 0) const { return Padic::from_ints(a, b, f, prec); }
  Padic cq(const Rational& r) const { return Padic::from_exact(ex(f, r), f, prec); }
  void apply(const PadicMatrix& g, const std::string& what) {
    x = act(g, x);
    k = g * k;
    steps.push_back(what);
  }
  PadicMatrix jm() const { return PadicMatrix::j(3, c(0), c(1)); }
  PadicMatrix D(const Padic& alpha) const {
    return pm(f, prec, {alpha, c(0), c(0), c(0), c(1), c(0), c(0), c(0), alpha.conj().inverse()});
  }
};

inline bool zero_or_higher(const Padic& x, const Padic& y) {
  // v(x) <= v(y) with x nonzero
  return !x.is_zero() && (y.is_zero() || x.val <= y.val);
}

/// case (i) with a != 0, v(a) <= v(b); returns ell
inline int diag1_case_i(Diag1State& S) {
  {
    const Padic a = S.x(0, 0), b = S.x(0, 1);
    const Padic lam = -(b.conj() / a);
    const Padic mu = -(lam.norm() * S.cq(Rational(1, 2)));
    S.apply(pm(S.f, S.prec, {S.c(1), S.c(0), S.c(0), lam, S.c(1), S.c(0), mu, -lam.conj(), S.c(1)}), "clear (1,2)");
  }
  // now x = [[a,0,c],[0,1,0],[c*,0,g]]; want v(a) >= v(g)
  if (S.x(0, 0).valuation() < S.x(2, 2).valuation()) S.apply(S.jm(), "j");
  const Padic g = S.x(2, 2);
  if (g.is_zero()) throw PrecisionError("diagonalize_x1: (3,3) entry not certified", S.prec + 4);
  const int ell = -g.val;
  if (ell < 0) throw InternalInconsistency("diagonalize_x1: v(g) > 0 in case (i)");
  // D(alpha): g -> g / N(alpha); want g = p^-ell
  S.apply(S.D(solve_norm(g.shift_by(ell))), "normalize (3,3)");
  // U = 1 + C E13 with C = -c p^ell clears (1,3)
  const Padic C = -(S.x(0, 2).shift_by(ell));
  S.apply(pm(S.f, S.prec, {S.c(1), S.c(0), C, S.c(0), S.c(1), S.c(0), S.c(0), S.c(0), S.c(1)}), "clear (1,3)");
  return ell;
}

/// case (ii) with a = 0
inline int diag1_case_ii(Diag1State& S, int depth);

inline int diag1_dispatch(Diag1State& S, int depth);

inline int diag1_case_ii(Diag1State& S, int depth) {
  // x = [[0,0,1],[0,-1,f],[1,f*,g]]
  Padic fv = S.x(1, 2);
  if (!fv.is_zero()) {
    // Diag(u*^-1, 1, u): f -> u* f; choose u* = p^l / f
    const int l = fv.val;
    const Padic ustar = S.c(1).shift_by(l) / fv;
    const Padic alpha = ustar.inverse();  // Diag(alpha, 1, alpha*^-1) with alpha = u*^-1
    S.apply(S.D(alpha), "normalize f");
    if (l <= 0) return diag1_dispatch(S, depth + 1);
    const Padic h = S.x(1, 2);
    const Padic h2 = h * S.cq(Rational(1, 2));
    const Padic h8 = h * h * S.cq(Rational(1, 8));
    S.apply(pm(S.f, S.prec, {S.c(1), S.c(0), S.c(0), -h2, S.c(1), S.c(0), -h8, h2, S.c(1)}), "clear f");
  }
  // x = j-like [[0,0,1],[0,-1,0],[1,0,0]] -> diag(-1/2, 1, -2) -> 1
  const Padic half = S.cq(Rational(1, 2));
  const PadicMatrix A = pm(S.f, S.prec, {S.c(1), S.c(-1), -half, S.c(0), S.c(1), S.c(1), S.c(0), S.c(0), S.c(1)}) *
                        pm(S.f, S.prec, {S.c(0), S.c(0), S.c(1), S.c(0), S.c(1), S.c(1), S.c(1), S.c(-1), -half});
  S.apply(A, "to diag(-1/2,1,-2)");
  S.apply(S.D(solve_norm(S.c(-2))), "scale by N(alpha) = -2");
  return 0;
}

/// orbit reduction: x = j3 + v v*/s, then k with (k v)_2 = 0
inline void diag1_orbit23(Diag1State& S) {
  if (S.x(0, 0).valuation() < S.x(2, 2).valuation()) S.apply(S.jm(), "j");
  const Padic b = S.x(0, 1);
  const int m = b.val;
  S.apply(S.D(S.c(1).shift_by(m) / b), "normalize (1,2)");
  const Padic s = S.x(1, 1) - S.c(1);
  const Padic v3 = S.x(2, 1);
  const int ell = v3.val;
  if (m < ell || ell <= 0) throw InternalInconsistency("diagonalize_x1: orbit2 exponents out of range");
  const Padic pl = S.c(1).shift_by(ell);
  const Padic rstar = v3 / (pl * s);
  const Padic r = rstar.conj();
  const Padic y = (r + rstar) * S.c(1).shift_by(m - ell) / s;
  const Padic rho = (!y.is_zero() && y.val == 0) ? -(y.inverse()) : S.c(1);
  const Padic gamma = -(rho * r * rstar) / (S.c(2) * rho + y * rho * rho - pl * pl);
  const Padic bb = solve_norm(rho * gamma);
  const Padic cc = -(bb.norm() * S.cq(Rational(1, 2)));
  const Padic dd = (S.c(-1) + pl * gamma / (bb.conj() * r)) / bb;
  const Padic one_bd = S.c(1) + bb * dd;  // = p^l (b* r)^-1 gamma
  const Padic ff = -(S.c(1).shift_by(m - ell) / (rstar * s)) - (one_bd / (pl * bb * rstar)) + dd.conj() / bb;
  const PadicMatrix k1 = pm(S.f, S.prec, {S.c(1), -bb.conj(), cc, S.c(0), S.c(1), bb, S.c(0), S.c(0), S.c(1)});
  const PadicMatrix k2 = pm(S.f, S.prec, {S.c(0), S.c(0), S.c(1), S.c(0), S.c(1), -dd.conj(), S.c(1), dd, ff});
  S.apply(k1 * k2, "kill (kv)_2");
}

inline int diag1_dispatch(Diag1State& S, int depth) {
  if (depth > 8) throw InternalInconsistency("diagonalize_x1: no case applied");
  const Padic a = S.x(0, 0), b = S.x(0, 1), g = S.x(2, 2), f = S.x(1, 2);
  if (zero_or_higher(a, b)) return diag1_case_i(S);
  if (zero_or_higher(g, f)) {
    S.apply(S.jm(), "j");
    return diag1_case_i(S);
  }
  if (a.is_zero() || g.is_zero()) {
    if (a.is_zero() && !g.is_zero()) {
      // nothing to swap
    } else if (!a.is_zero() || g.is_zero()) {
      if (!a.is_zero()) S.apply(S.jm(), "j");
    }
    if (!S.x(0, 0).is_zero()) throw PrecisionError("diagonalize_x1: zero entry not certified", S.prec + 4);
    return diag1_case_ii(S, depth);
  }
  diag1_orbit23(S);
  return diag1_dispatch(S, depth + 1);
}

}  // namespace padic_detail

/// k in K_1 and ell >= 0 with k x k* = diag(p^ell, 1, p^-ell) at the certified precision
inline Diag1Result diagonalize_x1(const PadicMatrix& x, int prec) {
  if (x.size != 3) throw InvalidValue("diagonalize_x1: expects a 3x3 matrix");
  const Padic& any = x(1, 1);
  const LocalField f{any.p, any.eps};
  padic_detail::Diag1State S{f, prec, x, PadicMatrix::identity(3, Padic::zero(f, prec), Padic::from_ints(1, 0, f, prec)), {}};
  const int ell = padic_detail::diag1_dispatch(S, 0);
  // verify against the original
  const PadicMatrix y = act(S.k, x);
  int certified = INT_MAX;
  const Padic one = Padic::from_ints(1, 0, f, prec);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Padic target = Padic::zero(f, prec);
      if (i == j) target = one.shift_by(i == 0 ? ell : (i == 2 ? -ell : 0));
      const Padic diff = y(i, j) - target;
      if (!diff.is_zero()) throw InternalInconsistency("diagonalize_x1: result is not diagonal");
      // relative to the target entry scale
      const int scale = (i == j) ? target.val : 0;
      certified = std::min(certified, diff.abs - scale);
    }
  for (const auto& e : S.k.e) {
    if (e.valuation() < 0) throw InternalInconsistency("diagonalize_x1: k is not integral");
    certified = std::min(certified, e.abs);
  }
  if (certified < 2) throw PrecisionError("diagonalize_x1: fewer than 2 certified digits", prec + (2 - certified) + 2);
  return {S.k, ell, certified, S.steps};
}

/// k0 diag(p^ell, 1, p^-ell) k0* in the Padic model
inline PadicMatrix build_x1(const ResidueMatrix& k0, int ell) {
  const ResidueElem& any = k0(0, 0);
  const LocalField f{any.p, any.eps};
  const int prec = any.m;
  PadicMatrix k(3, Padic::zero(f, prec));
  for (int t = 0; t < 9; ++t) k.e[static_cast<std::size_t>(t)] = Padic::from_residue(k0.e[static_cast<std::size_t>(t)], f);
  const Padic zero = Padic::zero(f, prec + ell), one = Padic::from_ints(1, 0, f, prec);
  PadicMatrix d(3, zero);
  d(0, 0) = one.shift_by(ell);
  d(1, 1) = one;
  d(2, 2) = one.shift_by(-ell);
  return act(k, d);
}

}  // namespace hlsph
