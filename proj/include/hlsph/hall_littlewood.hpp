#pragma once

// c-function, Weyl-sum polynomials Q_lambda, P_lambda and stabilizer Poincare values.

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hlsph/errors.hpp"
#include "hlsph/scalars.hpp"
#include "hlsph/torus_ring.hpp"
#include "hlsph/weyl.hpp"

namespace hlsph {

/// m = 2n (even) or m = 2n+1 (odd)
enum class Parity { even, odd };

inline std::string parity_str(Parity p) { return p == Parity::odd ? "odd" : "even"; }
inline Parity parse_parity(const std::string& s) {
  if (s == "odd") return Parity::odd;
  if (s == "even") return Parity::even;
  throw InvalidValue("parity must be 'odd' or 'even', got '" + s + "'");
}
inline int space_dim(int n, Parity p) { return p == Parity::odd ? 2 * n + 1 : 2 * n; }

struct Specialization {
  QLaurent t_s;
  QLaurent t_l;

  /// t_s = -q^-1; t_l = -q^-2 (odd) or q^-1 (even)
  static Specialization for_parity(Parity p) {
    return {QLaurent::monomial(-1, -1), p == Parity::odd ? QLaurent::monomial(-1, -2) : QLaurent::q(-1)};
  }
  const QLaurent& t_for(const ExpVector& root) const { return is_long_root(root) ? t_l : t_s; }
  std::string key() const { return t_s.str() + "|" + t_l.str(); }
};

/// a + b x^alpha
struct Binomial {
  QLaurent a;
  QLaurent b;
  ExpVector alpha;

  GaussianRational eval_exact(const std::vector<GaussianRational>& x, const GaussianRational& q0) const {
    GaussianRational m(1);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (alpha[i] != 0) m *= x[i].pow(alpha[i]);
    return a.eval(q0) + b.eval(q0) * m;
  }
  std::complex<double> eval_complex(const std::vector<std::complex<double>>& x, double q0) const {
    std::complex<double> m = 1;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (alpha[i] != 0) m *= detail::ipow(x[i], alpha[i]);
    return a.eval_complex(q0) + b.eval_complex(q0) * m;
  }
  TorusPoly<QLaurent> poly() const {
    const int n = static_cast<int>(alpha.size());
    return TorusPoly<QLaurent>::constant(n, a) + TorusPoly<QLaurent>::monomial(n, alpha, b);
  }
  std::string str() const {
    std::string mono = "x^(";
    for (std::size_t i = 0; i < alpha.size(); ++i) mono += (i ? "," : "") + std::to_string(alpha[i]);
    mono += ")";
    return "(" + a.str() + ") + (" + b.str() + ")*" + mono;
  }
};

/// prod(num) / prod(den)
struct FactoredRational {
  std::vector<Binomial> num;
  std::vector<Binomial> den;

  GaussianRational eval_exact(const std::vector<GaussianRational>& x, const GaussianRational& q0) const {
    GaussianRational n(1), d(1);
    for (const auto& f : num) n *= f.eval_exact(x, q0);
    for (const auto& f : den) d *= f.eval_exact(x, q0);
    if (d.is_zero()) throw PoleError("factored rational: denominator vanishes");
    return n / d;
  }
  std::complex<double> eval_complex(const std::vector<std::complex<double>>& x, double q0) const {
    std::complex<double> n = 1, d = 1;
    for (const auto& f : num) n *= f.eval_complex(x, q0);
    for (const auto& f : den) d *= f.eval_complex(x, q0);
    return n / d;
  }
  /// true iff some factor (numerator or denominator) vanishes at x
  bool touches_zero(const std::vector<GaussianRational>& x, const GaussianRational& q0) const {
    for (const auto& f : num)
      if (f.eval_exact(x, q0).is_zero()) return true;
    for (const auto& f : den)
      if (f.eval_exact(x, q0).is_zero()) return true;
    return false;
  }
};

/// prod_{alpha in Sigma^+} (1 - t_alpha x^alpha) / (1 - x^alpha), factor i in num[i]/den[i]
inline FactoredRational c_function(int n, const Specialization& spec) {
  FactoredRational f;
  for (const auto& a : root_system(n).positive()) {
    f.num.push_back({QLaurent(1), -spec.t_for(a), a});
    f.den.push_back({QLaurent(1), QLaurent(-1), a});
  }
  return f;
}

namespace detail {

inline TorusPoly<QLaurent> compute_q_poly(const Partition& lam, const Specialization& spec) {
  const int n = static_cast<int>(lam.size());
  const RootSet rs = root_system(n);
  using P = TorusPoly<QLaurent>;
  // C(x) * prod_{alpha > 0} (1 - x^{-alpha})
  P cd = P::constant(n, QLaurent(1));
  for (const auto& a : rs.positive()) {
    ExpVector neg = a;
    for (int& v : neg) v = -v;
    cd = cd * (P::constant(n, QLaurent(1)) + P::monomial(n, a, -spec.t_for(a)));
    cd = cd * (P::constant(n, QLaurent(1)) + P::monomial(n, neg, QLaurent(-1)));
  }
  // sum_sigma x^{-sigma lam} sigma(cd), over the full denominator prod_{beta in Sigma} (1 - x^beta)
  P num(n);
  ExpVector neg_lam = lam;
  for (int& v : neg_lam) v = -v;
  for (const auto& s : enumerate_group(n)) num += weyl_act(s, cd).shifted(s.act(neg_lam));
  try {
    for (const auto& b : rs.all()) num = binomial_div_exact(num, QLaurent(1), b);
  } catch (const InexactDivision&) {
    throw InternalInconsistency("q_poly: Weyl sum not divisible by the Weyl denominator");
  }
  return num;
}

struct QPolyMemo {
  std::mutex mu;
  std::map<std::tuple<int, std::string, Partition>, TorusPoly<QLaurent>> table;
};

inline QPolyMemo& q_poly_memo() {
  static QPolyMemo memo;
  return memo;
}

}  // namespace detail

/// Q_lambda = sum_{sigma in W} sigma(x^{-lambda} c(x; t)), an exact W-invariant Laurent polynomial.
inline TorusPoly<QLaurent> q_poly(const Partition& lam, const Specialization& spec) {
  validate_partition(lam);
  auto key = std::make_tuple(static_cast<int>(lam.size()), spec.key(), lam);
  auto& memo = detail::q_poly_memo();
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    auto it = memo.table.find(key);
    if (it != memo.table.end()) return it->second;
  }
  TorusPoly<QLaurent> value = detail::compute_q_poly(lam, spec);
  std::lock_guard<std::mutex> lock(memo.mu);
  return memo.table.try_emplace(std::move(key), std::move(value)).first->second;
}

inline TorusPoly<QLaurent> q_poly(const Partition& lam, Parity p) {
  return q_poly(lam, Specialization::for_parity(p));
}

/// f(t) for a Laurent polynomial f stored in the formal variable, with t a Laurent polynomial in q
inline QLaurent substitute(const QLaurent& f, const QLaurent& t) {
  QLaurent out;
  for (const auto& [e, c] : f.terms()) {
    QLaurent pw;
    if (e >= 0) {
      pw = t.pow(static_cast<unsigned>(e));
    } else {
      if (!t.is_monomial()) throw InvalidValue("substitute: negative power of a non-monomial");
      const auto& [te, tc] = *t.terms().begin();
      pw = QLaurent::monomial(tc.pow(e), te * e);
    }
    out += pw * QLaurent(c);
  }
  return out;
}

/// multiplicity m_l(lambda) = #{i : lambda_i = l}
inline std::map<int, int> multiplicities(const Partition& lam) {
  std::map<int, int> m;
  for (int v : lam) ++m[v];
  return m;
}

/// w~_lambda(t) = w_{m_0+1}(t) prod_{l >= 0} w_{m_l}(t), as a polynomial in the formal variable t.
inline QLaurent w_tilde(const Partition& lam) {
  validate_partition(lam);
  const QLaurent t = QLaurent::q(1);
  auto m = multiplicities(lam);
  const int m0 = m.count(0) ? m[0] : 0;
  QLaurent r = w_poly(m0 + 1, t);
  for (const auto& [l, ml] : m) r *= w_poly(ml, t);
  return r;
}

/// variant whose m_0 = 0 branch is prod_{l >= 1} w_{m_l}(t) alone
inline QLaurent w_tilde_short_branch(const Partition& lam) {
  validate_partition(lam);
  auto m = multiplicities(lam);
  if (m.count(0)) return w_tilde(lam);
  QLaurent r(1);
  for (const auto& [l, ml] : m) r *= w_poly(ml, QLaurent::q(1));
  return r;
}

/// Poincare value of the stabilizer of lambda at the parity's specialization.
inline QLaurent w_lambda_value(const Partition& lam, Parity parity) {
  validate_partition(lam);
  const int n = static_cast<int>(lam.size());
  if (parity == Parity::even) {
    const Specialization sp = Specialization::for_parity(parity);
    return poincare_poly(stabilizer(lam), sp.t_s, sp.t_l);
  }
  const QLaurent t = QLaurent::monomial(-1, -1);
  const QLaurent num = substitute(w_tilde(lam), t);
  const QLaurent den = (QLaurent(1) + QLaurent::q(-1)).pow(static_cast<unsigned>(n + 1));
  auto quot = num.exact_div(den);
  if (!quot) throw InternalInconsistency("w_lambda_value: closed form not a Laurent polynomial");
  return *quot;
}

inline QLaurent w0_value(int n, Parity parity) { return w_lambda_value(Partition(static_cast<std::size_t>(n), 0), parity); }

/// P_lambda = Q_lambda / W_lambda
inline TorusPoly<QFraction> p_poly(const Partition& lam, Parity parity) {
  const QLaurent w = w_lambda_value(lam, parity);
  const auto q = q_poly(lam, parity);
  TorusPoly<QFraction> r(q.nvars());
  for (const auto& [e, c] : q.terms()) r.add_term(e, QFraction(c, w));
  return r;
}

}  // namespace hlsph
