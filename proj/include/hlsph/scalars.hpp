#pragma once

// Exact scalars: rationals (GMP), Gaussian rationals, Laurent polynomials in
// the single parameter q, and fractions of those.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hlsph/errors.hpp"

namespace hlsph {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw InvalidValue("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational r;
  if (r.set_str(s, 10) != 0) throw InvalidValue("bad rational literal: " + std::string(text));
  if (r.get_den() == 0) throw InvalidValue("zero denominator in " + std::string(text));
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// num/den in lowest terms (mpq_class(num, den) alone does not reduce)
inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw InvalidValue("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rational_pow(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw InvalidValue("0 raised to a negative power");
    Rational inv = 1 / base;
    return rational_pow(inv, -e);
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(num, den);
}

/// re + im*sqrt(-1) with rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  GaussianRational(long v) : re_(v), im_(0) {}
  GaussianRational(int v) : re_(v), im_(0) {}

  static GaussianRational i() { return {0, 1}; }
  /// sqrt(-1)^k
  static GaussianRational i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      default: return {0, -1};
    }
  }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational inverse() const {
    if (is_zero()) throw InvalidValue("inverse of zero");
    if (im_ == 0) return {1 / re_, 0};
    Rational n = norm();
    return {re_ / n, -im_ / n};
  }

  GaussianRational pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    GaussianRational result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    if (o.im_ != 0) im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    if (o.im_ != 0) im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (im_ == 0 && o.im_ == 0) {
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// "a/b+c/d*I", zero parts omitted, "0" for zero.
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) out = re_.get_str();
    if (im_ != 0) {
      if (re_ != 0) {
        out += (im_ > 0) ? "+" : "-";
        out += Rational(abs(im_)).get_str();
      } else {
        out += im_.get_str();
      }
      out += "*I";
    }
    return out;
  }

  static GaussianRational parse(std::string_view text) {
    std::string s;
    for (char ch : text)
      if (ch != ' ') s.push_back(ch);
    if (s.empty()) throw InvalidValue("empty Gaussian rational literal");
    auto parse_imag = [&](std::string part) -> Rational {
      // part ends with I; strip "*I" or "I"
      part.pop_back();
      if (!part.empty() && part.back() == '*') part.pop_back();
      if (part.empty() || part == "+") return 1;
      if (part == "-") return -1;
      return parse_rational(part);
    };
    if (s.back() != 'I') return {parse_rational(s), 0};
    // find split between real and imaginary parts
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size() - 1; k > 0; --k) {
      if (s[k] == '+' || s[k] == '-') {
        split = k;
        break;
      }
    }
    if (split == std::string::npos) return {0, parse_imag(s)};
    return {parse_rational(s.substr(0, split)), parse_imag(s.substr(split))};
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Finitely supported Laurent polynomial in q with Gaussian-rational coefficients.
class QLaurent {
 public:
  using Terms = std::map<int, GaussianRational>;

  QLaurent() = default;
  QLaurent(const GaussianRational& c) {
    if (!c.is_zero()) terms_.emplace(0, c);
  }
  QLaurent(long c) : QLaurent(GaussianRational(c)) {}
  QLaurent(int c) : QLaurent(GaussianRational(c)) {}

  static QLaurent monomial(const GaussianRational& c, int exp) {
    QLaurent r;
    if (!c.is_zero()) r.terms_.emplace(exp, c);
    return r;
  }
  /// q^e
  static QLaurent q(int e = 1) { return monomial(1, e); }

  static QLaurent from_terms(const Terms& t) {
    QLaurent r;
    for (const auto& [e, c] : t)
      if (!c.is_zero()) r.terms_[e] += c;
    r.prune();
    return r;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  int min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  GaussianRational coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussianRational() : it->second;
  }

  QLaurent& operator+=(const QLaurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  QLaurent& operator-=(const QLaurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  QLaurent& operator*=(const QLaurent& o) {
    *this = *this * o;
    return *this;
  }
  friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
  friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
  friend QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    QLaurent r;
    if (a.is_zero() || b.is_zero()) return r;
    if (b.is_monomial()) {
      const auto& [eb, cb] = *b.terms_.begin();
      for (const auto& [e, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), e + eb, c * cb);
      return r;
    }
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  QLaurent operator-() const {
    QLaurent r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend bool operator==(const QLaurent& a, const QLaurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const QLaurent& a, const QLaurent& b) { return !(a == b); }

  QLaurent pow(unsigned e) const {
    QLaurent result(1), base = *this;
    while (e > 0) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  /// Multiply by q^k.
  QLaurent shifted(int k) const {
    QLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e + k, c);
    return r;
  }

  /// Exact substitution q <- q0 (q0 != 0).
  GaussianRational eval(const GaussianRational& q0) const {
    if (q0.is_zero()) throw InvalidValue("QLaurent evaluated at q = 0");
    GaussianRational acc;
    for (const auto& [e, c] : terms_) acc += c * q0.pow(e);
    return acc;
  }

  std::complex<double> eval_complex(std::complex<double> q0) const {
    std::complex<double> acc = 0;
    for (const auto& [e, c] : terms_) acc += c.to_complex() * std::pow(q0, e);
    return acc;
  }

  /// Quotient if d divides this exactly in the Laurent ring, otherwise nullopt.
  std::optional<QLaurent> exact_div(const QLaurent& d) const {
    if (d.is_zero()) throw InvalidValue("division by the zero Laurent polynomial");
    if (is_zero()) return QLaurent();
    if (d.is_monomial()) {
      const auto& [ed, cd] = *d.terms_.begin();
      GaussianRational inv = cd.inverse();
      QLaurent r;
      for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e - ed, c * inv);
      return r;
    }
    const int la = min_exp(), lb = d.min_exp();
    const int da = max_exp() - la, db = d.max_exp() - lb;
    if (da < db) return std::nullopt;
    std::vector<GaussianRational> a(static_cast<std::size_t>(da) + 1);
    std::vector<GaussianRational> b(static_cast<std::size_t>(db) + 1);
    for (const auto& [e, c] : terms_) a[static_cast<std::size_t>(e - la)] = c;
    for (const auto& [e, c] : d.terms_) b[static_cast<std::size_t>(e - lb)] = c;
    const GaussianRational lead_inv = b.back().inverse();
    std::vector<GaussianRational> quot(static_cast<std::size_t>(da - db) + 1);
    for (int k = da - db; k >= 0; --k) {
      const auto ks = static_cast<std::size_t>(k);
      GaussianRational qk = a[ks + static_cast<std::size_t>(db)] * lead_inv;
      if (qk.is_zero()) continue;
      for (int j = 0; j <= db; ++j) a[ks + static_cast<std::size_t>(j)] -= qk * b[static_cast<std::size_t>(j)];
      quot[ks] = std::move(qk);
    }
    for (const auto& c : a)
      if (!c.is_zero()) return std::nullopt;
    QLaurent r;
    for (std::size_t k = 0; k < quot.size(); ++k)
      if (!quot[k].is_zero()) r.terms_.emplace_hint(r.terms_.end(), static_cast<int>(k) + la - lb, quot[k]);
    return r;
  }

  /// Human-readable form, e.g. "1 - q^-2".
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string cs = c.str();
      bool neg = c.is_real() && c.re() < 0;
      if (neg) cs = GaussianRational(-c).str();
      if (!c.is_real()) cs = "(" + cs + ")";
      if (!first) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      first = false;
      if (e == 0) {
        out += cs;
      } else {
        if (cs != "1") out += cs + "*";
        out += "q";
        if (e != 1) out += "^" + std::to_string(e);
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const QLaurent& f) { return os << f.str(); }

 private:
  void add_term(int e, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.is_zero()) it = terms_.erase(it);
      else ++it;
    }
  }

  Terms terms_;
};

inline GaussianRational qlaurent_eval(const QLaurent& f, const Rational& q0) {
  if (q0 == 0) throw InvalidValue("qlaurent_eval: q0 must be nonzero");
  return f.eval(GaussianRational(q0));
}

/// w_m(t) = prod_{i=1}^m (1 - t^i); w_0 = 1.
inline QLaurent w_poly(int m, const QLaurent& t) {
  QLaurent r(1);
  QLaurent tp(1);
  for (int i = 1; i <= m; ++i) {
    tp *= t;
    r *= QLaurent(1) - tp;
  }
  return r;
}

/// num/den with den != 0. Equality is by cross-multiplication; the only
/// simplification is cancelling a denominator that divides the numerator.
class QFraction {
 public:
  QFraction() : num_(), den_(1) {}
  QFraction(const QLaurent& num) : num_(num), den_(1) {}
  QFraction(const GaussianRational& c) : num_(c), den_(1) {}
  QFraction(long c) : num_(c), den_(1) {}
  QFraction(int c) : num_(c), den_(1) {}
  QFraction(QLaurent num, QLaurent den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw InvalidValue("QFraction with zero denominator");
    reduce();
  }

  const QLaurent& num() const { return num_; }
  const QLaurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  QFraction& operator+=(const QFraction& o) {
    if (den_ == o.den_) {
      num_ += o.num_;
    } else {
      num_ = num_ * o.den_ + o.num_ * den_;
      den_ *= o.den_;
    }
    reduce();
    return *this;
  }
  QFraction& operator-=(const QFraction& o) { return *this += -o; }
  QFraction& operator*=(const QFraction& o) {
    num_ *= o.num_;
    if (o.den_ != QLaurent(1)) den_ *= o.den_;
    reduce();
    return *this;
  }
  QFraction& operator/=(const QFraction& o) {
    if (o.is_zero()) throw InvalidValue("QFraction division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    reduce();
    return *this;
  }
  friend QFraction operator+(QFraction a, const QFraction& b) { return a += b; }
  friend QFraction operator-(QFraction a, const QFraction& b) { return a -= b; }
  friend QFraction operator*(QFraction a, const QFraction& b) { return a *= b; }
  friend QFraction operator/(QFraction a, const QFraction& b) { return a /= b; }
  QFraction operator-() const {
    QFraction r(*this);
    r.num_ = -r.num_;
    return r;
  }

  friend bool qfrac_eq(const QFraction& a, const QFraction& b) {
    return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
  }
  friend bool operator==(const QFraction& a, const QFraction& b) { return qfrac_eq(a, b); }
  friend bool operator!=(const QFraction& a, const QFraction& b) { return !qfrac_eq(a, b); }

  GaussianRational eval(const GaussianRational& q0) const {
    GaussianRational d = den_.eval(q0);
    if (d.is_zero()) throw PoleError("QFraction denominator vanishes at q = " + q0.str());
    return num_.eval(q0) / d;
  }
  std::complex<double> eval_complex(std::complex<double> q0) const {
    std::complex<double> d = den_.eval_complex(q0);
    if (std::abs(d) == 0.0) throw PoleError("QFraction denominator vanishes");
    return num_.eval_complex(q0) / d;
  }

  std::string str() const {
    if (den_ == QLaurent(1)) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const QFraction& f) { return os << f.str(); }

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = QLaurent(1);
      return;
    }
    if (den_ == QLaurent(1)) return;
    if (auto quot = num_.exact_div(den_)) {
      num_ = std::move(*quot);
      den_ = QLaurent(1);
    }
  }

  QLaurent num_;
  QLaurent den_;
};

}  // namespace hlsph
