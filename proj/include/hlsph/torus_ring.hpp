#pragma once

// Laurent polynomials in x_1..x_n (x_i = q^{z_i}) with coefficients in a q-ring.
// C is QLaurent or QFraction.

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hlsph/errors.hpp"
#include "hlsph/scalars.hpp"
#include "hlsph/weyl.hpp"

namespace hlsph {

/// graded lex: total degree first, then lexicographic
struct GradedLex {
  bool operator()(const ExpVector& a, const ExpVector& b) const {
    int da = 0, db = 0;
    for (int v : a) da += v;
    for (int v : b) db += v;
    if (da != db) return da < db;
    return a < b;
  }
};

template <class C>
class TorusPoly {
 public:
  using Terms = std::map<ExpVector, C, GradedLex>;

  explicit TorusPoly(int n = 1) : n_(n) {}

  static TorusPoly constant(int n, const C& c) { return monomial(n, ExpVector(static_cast<std::size_t>(n), 0), c); }
  static TorusPoly monomial(int n, ExpVector e, const C& c = C(1)) {
    if (static_cast<int>(e.size()) != n) throw InvalidValue("exponent length differs from rank");
    TorusPoly p(n);
    if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
    return p;
  }

  int nvars() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  C coeff(const ExpVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C() : it->second;
  }
  /// true iff the only exponent present is 0
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ExpVector(static_cast<std::size_t>(n_), 0));
  }

  void add_term(const ExpVector& e, const C& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TorusPoly& operator+=(const TorusPoly& o) {
    check_rank(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  TorusPoly& operator-=(const TorusPoly& o) {
    check_rank(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend TorusPoly operator+(TorusPoly a, const TorusPoly& b) { return a += b; }
  friend TorusPoly operator-(TorusPoly a, const TorusPoly& b) { return a -= b; }
  friend TorusPoly operator*(const TorusPoly& a, const TorusPoly& b) {
    a.check_rank(b);
    TorusPoly r(a.n_);
    ExpVector e(static_cast<std::size_t>(a.n_));
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  TorusPoly& operator*=(const TorusPoly& o) { return *this = *this * o; }
  TorusPoly scaled(const C& c) const {
    TorusPoly r(n_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
  }
  /// multiply by x^s
  TorusPoly shifted(const ExpVector& s) const {
    TorusPoly r(n_);
    for (const auto& [e, v] : terms_) {
      ExpVector f = e;
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += s[i];
      r.terms_.emplace(std::move(f), v);
    }
    return r;
  }
  TorusPoly operator-() const { return scaled(C(-1)); }

  friend bool operator==(const TorusPoly& a, const TorusPoly& b) {
    if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [e, c] : a.terms_) {
      if (it->first != e || !(it->second == c)) return false;
      ++it;
    }
    return true;
  }
  friend bool operator!=(const TorusPoly& a, const TorusPoly& b) { return !(a == b); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) out += " + ";
      first = false;
      std::string cs = it->second.str();
      std::string mono;
      for (std::size_t i = 0; i < it->first.size(); ++i) {
        const int v = it->first[i];
        if (v == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += (n_ == 1) ? "x" : "x" + std::to_string(i + 1);
        if (v != 1) mono += "^" + std::to_string(v);
      }
      if (mono.empty()) out += cs;
      else if (cs == "1") out += mono;
      else out += "(" + cs + ")*" + mono;
    }
    return out;
  }

 private:
  void check_rank(const TorusPoly& o) const {
    if (o.n_ != n_) throw InvalidValue("TorusPoly rank mismatch");
  }

  int n_;
  Terms terms_;
};

template <class D, class C>
TorusPoly<D> convert_coeffs(const TorusPoly<C>& f) {
  TorusPoly<D> r(f.nvars());
  for (const auto& [e, c] : f.terms()) r.add_term(e, D(c));
  return r;
}

/// x^e -> x^{sigma(e)}
template <class C>
TorusPoly<C> weyl_act(const SignedPerm& sigma, const TorusPoly<C>& f) {
  if (sigma.rank() != f.nvars()) throw InvalidValue("weyl_act: rank mismatch");
  TorusPoly<C> r(f.nvars());
  for (const auto& [e, c] : f.terms()) r.add_term(sigma.act(e), c);
  return r;
}

namespace detail {
inline int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
}  // namespace detail

/// g with g * (1 - c x^alpha) = f; throws InexactDivision otherwise.
template <class C>
TorusPoly<C> binomial_div_exact(const TorusPoly<C>& f, const C& c, const ExpVector& alpha) {
  if (static_cast<int>(alpha.size()) != f.nvars()) throw InvalidValue("binomial_div_exact: rank mismatch");
  const int aa = pair(alpha, alpha);
  if (aa == 0) throw InvalidValue("binomial_div_exact: alpha must be nonzero");
  if (c.is_zero()) return f;
  // split f into alpha-lines: e = rep + k alpha
  std::map<ExpVector, std::map<int, const C*>> lines;
  for (const auto& [e, v] : f.terms()) {
    const int k = detail::floor_div(pair(alpha, e), aa);
    ExpVector rep = e;
    for (std::size_t i = 0; i < rep.size(); ++i) rep[i] -= k * alpha[i];
    lines[rep][k] = &v;
  }
  TorusPoly<C> g(f.nvars());
  ExpVector e(alpha.size());
  for (const auto& [rep, line] : lines) {
    const int kmin = line.begin()->first, kmax = line.rbegin()->first;
    C prev;  // g_{k-1}
    for (int k = kmin; k <= kmax; ++k) {
      auto it = line.find(k);
      C gk = prev.is_zero() ? C() : c * prev;
      if (it != line.end()) gk += *it->second;
      if (k == kmax) {
        if (!gk.is_zero()) throw InexactDivision("binomial_div_exact: nonzero remainder");
        break;
      }
      if (!gk.is_zero()) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = rep[i] + k * alpha[i];
        g.add_term(e, gk);
      }
      prev = std::move(gk);
    }
  }
  return g;
}

namespace detail {
inline std::complex<double> coeff_complex(const QLaurent& c, double q0) { return c.eval_complex(q0); }
inline std::complex<double> coeff_complex(const QFraction& c, double q0) { return c.eval_complex(q0); }
inline GaussianRational coeff_exact(const QLaurent& c, const GaussianRational& q0) { return c.eval(q0); }
inline GaussianRational coeff_exact(const QFraction& c, const GaussianRational& q0) { return c.eval(q0); }

template <class T>
T ipow(const T& x, int e) {
  if (e < 0) return ipow(T(1) / x, -e);
  T r(1), b = x;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}
}  // namespace detail

/// Coefficients frozen at a real q0, for repeated numeric evaluation.
struct NumericTorusPoly {
  int n = 1;
  std::vector<ExpVector> exps;
  std::vector<std::complex<double>> coefs;

  /// value at x_j = e^{i theta_j}
  std::complex<double> on_torus(const std::vector<double>& theta) const {
    std::complex<double> acc = 0;
    for (std::size_t t = 0; t < exps.size(); ++t) {
      double ph = 0;
      for (std::size_t i = 0; i < theta.size(); ++i) ph += exps[t][i] * theta[i];
      acc += coefs[t] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return acc;
  }
  /// value at arbitrary nonzero complex x
  std::complex<double> at(const std::vector<std::complex<double>>& x) const {
    std::complex<double> acc = 0;
    for (std::size_t t = 0; t < exps.size(); ++t) {
      std::complex<double> m = coefs[t];
      for (std::size_t i = 0; i < x.size(); ++i) m *= detail::ipow(x[i], exps[t][i]);
      acc += m;
    }
    return acc;
  }
};

template <class C>
NumericTorusPoly numeric(const TorusPoly<C>& f, double q0) {
  NumericTorusPoly r;
  r.n = f.nvars();
  for (const auto& [e, c] : f.terms()) {
    r.exps.push_back(e);
    r.coefs.push_back(detail::coeff_complex(c, q0));
  }
  return r;
}

template <class C>
std::complex<double> eval_unit_torus(const TorusPoly<C>& f, const std::vector<double>& theta, double q0) {
  if (!(q0 > 1.0)) throw InvalidValue("eval_unit_torus: q0 must exceed 1");
  if (static_cast<int>(theta.size()) != f.nvars()) throw InvalidValue("eval_unit_torus: rank mismatch");
  return numeric(f, q0).on_torus(theta);
}

/// Exact value at Gaussian-rational x and q.
template <class C>
GaussianRational eval_exact(const TorusPoly<C>& f, const std::vector<GaussianRational>& x, const GaussianRational& q0) {
  if (static_cast<int>(x.size()) != f.nvars()) throw InvalidValue("eval_exact: rank mismatch");
  // cache powers per coordinate
  std::vector<std::map<int, GaussianRational>> pw(x.size());
  auto power = [&](std::size_t i, int e) -> const GaussianRational& {
    auto it = pw[i].find(e);
    if (it == pw[i].end()) it = pw[i].emplace(e, x[i].pow(e)).first;
    return it->second;
  };
  GaussianRational acc;
  for (const auto& [e, c] : f.terms()) {
    GaussianRational m = detail::coeff_exact(c, q0);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (e[i] != 0) m *= power(i, e[i]);
    acc += m;
  }
  return acc;
}

}  // namespace hlsph
