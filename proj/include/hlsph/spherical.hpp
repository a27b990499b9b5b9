#pragma once

// Spherical functions on unitary hermitian matrices: z0, change of variables,
// G, Gamma_sigma, the explicit omega, Psi, n = 1 closed forms, sign relation.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hlsph/errors.hpp"
#include "hlsph/hall_littlewood.hpp"
#include "hlsph/parallel.hpp"
#include "hlsph/scalars.hpp"
#include "hlsph/torus_ring.hpp"
#include "hlsph/weyl.hpp"

namespace hlsph {

/// re + im_pi * pi*sqrt(-1)/log q
struct Z0Coord {
  Rational re;
  Rational im_pi;
};

struct SpaceConfig {
  int n = 1;
  Parity parity = Parity::odd;
  Specialization spec;
  std::vector<Z0Coord> z0;
  int m_prime = 1;

  int m() const { return space_dim(n, parity); }

  static SpaceConfig make(int n, Parity parity) {
    if (n < 1) throw InvalidValue("rank must be >= 1");
    SpaceConfig c;
    c.n = n;
    c.parity = parity;
    c.spec = Specialization::for_parity(parity);
    c.m_prime = (c.m() + 1) / 2;
    for (int i = 1; i <= n; ++i) {
      if (parity == Parity::odd)
        c.z0.push_back({Rational(-(n - i + 1)), Rational(2 * (n - i) + 1, 2)});
      else
        c.z0.push_back({Rational(-(2 * (n - i) + 1), 2), Rational(n - i)});
    }
    return c;
  }
};

inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  Integer a = r.get_num(), b = r.get_den();
  if (!mpz_perfect_square_p(a.get_mpz_t()) || !mpz_perfect_square_p(b.get_mpz_t())) return std::nullopt;
  Integer sa, sb;
  mpz_sqrt(sa.get_mpz_t(), a.get_mpz_t());
  mpz_sqrt(sb.get_mpz_t(), b.get_mpz_t());
  return Rational(sa, sb);
}

/// sqrt(-1)^i_power * q^{half_q_power/2} * magnitude
struct PhasedScalar {
  int i_power = 0;
  int half_q_power = 0;
  QFraction magnitude = QFraction(1);

  PhasedScalar normalized() const {
    PhasedScalar r = *this;
    r.i_power = ((r.i_power % 4) + 4) % 4;
    const int whole = (r.half_q_power >= 0) ? r.half_q_power / 2 : -((-r.half_q_power + 1) / 2);
    r.half_q_power -= 2 * whole;
    if (whole != 0) r.magnitude *= QFraction(QLaurent::q(whole));
    return r;
  }

  friend PhasedScalar operator*(const PhasedScalar& a, const PhasedScalar& b) {
    PhasedScalar r;
    r.i_power = a.i_power + b.i_power;
    r.half_q_power = a.half_q_power + b.half_q_power;
    r.magnitude = a.magnitude * b.magnitude;
    return r.normalized();
  }
  friend bool operator==(const PhasedScalar& a, const PhasedScalar& b) {
    const PhasedScalar x = a.normalized(), y = b.normalized();
    if (x.half_q_power != y.half_q_power) return false;
    if (x.i_power == y.i_power) return x.magnitude == y.magnitude;
    if ((x.i_power + 2) % 4 == y.i_power) return x.magnitude == -y.magnitude;
    return x.magnitude.is_zero() && y.magnitude.is_zero();
  }

  /// exact value; needs q0 to be a perfect square when a half power remains
  GaussianRational eval_exact(const GaussianRational& q0) const {
    const PhasedScalar x = normalized();
    GaussianRational v = GaussianRational::i_pow(x.i_power) * x.magnitude.eval(q0);
    if (x.half_q_power) {
      std::optional<Rational> r;
      if (q0.is_real()) r = exact_sqrt(q0.re());
      if (!r) throw InvalidValue("half power of q needs a perfect-square q0");
      v *= GaussianRational(*r);
    }
    return v;
  }
  std::complex<double> eval_complex(double q0) const {
    const PhasedScalar x = normalized();
    const std::complex<double> ph[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return ph[x.i_power] * x.magnitude.eval_complex(q0) * std::pow(q0, 0.5 * x.half_q_power);
  }

  std::string str() const {
    const PhasedScalar x = normalized();
    static const char* ph[4] = {"", "I*", "-", "-I*"};
    std::string s = ph[x.i_power];
    if (x.half_q_power) s += "q^(1/2)*";
    return s + "(" + x.magnitude.str() + ")";
  }
};

/// q^{<v, z0>} for any integer vector v
inline PhasedScalar phase_of(const ExpVector& v, const SpaceConfig& cfg) {
  Rational re = 0, im = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    re += cfg.z0[i].re * v[i];
    im += cfg.z0[i].im_pi * v[i];
  }
  // e^{i pi im} = sqrt(-1)^{2 im}; q^{re} = q^{(2 re)/2}
  Rational two_im = 2 * im, two_re = 2 * re;
  if (two_im.get_den() != 1 || two_re.get_den() != 1) throw InternalInconsistency("z0 pairing not half-integral");
  PhasedScalar p;
  p.i_power = static_cast<int>(two_im.get_num().get_si());
  p.half_q_power = static_cast<int>(two_re.get_num().get_si());
  return p.normalized();
}

/// q^{<lambda, z0>}
inline PhasedScalar phase_power(const Partition& lam, const SpaceConfig& cfg) {
  validate_partition(lam);
  if (static_cast<int>(lam.size()) != cfg.n) throw InvalidValue("partition length differs from rank");
  return phase_of(lam, cfg);
}

/// t^{Ht(v)} = prod_{beta > 0} t_beta^{<v, beta^vee>/2}, as a phased scalar
inline PhasedScalar height_power(const ExpVector& v, const SpaceConfig& cfg) {
  PhasedScalar r;
  for (const auto& b : root_system(cfg.n).positive()) {
    const int bb = pair(b, b);
    const int num = 2 * pair(v, b);  // <v, beta^vee> * bb
    // exponent <v, beta^vee>/2 = num / (2 bb)
    if (num % (2 * bb) == 0) {
      const int e = num / (2 * bb);
      const QLaurent& t = cfg.spec.t_for(b);
      if (e >= 0) r.magnitude *= QFraction(t.pow(static_cast<unsigned>(e)));
      else r.magnitude /= QFraction(t.pow(static_cast<unsigned>(-e)));
    } else {
      // half-integral exponent: t^{1/2}; t = -q^-1 gives i q^{-1/2}, t = q^-1 gives q^{-1/2}
      if (num % bb != 0) throw InternalInconsistency("height exponent not half-integral");
      const int e2 = num / bb;  // twice the exponent
      const QLaurent& t = cfg.spec.t_for(b);
      if (!t.is_monomial()) throw InternalInconsistency("height: non-monomial parameter");
      const auto& [te, tc] = *t.terms().begin();
      PhasedScalar f;
      f.half_q_power = te * e2;
      if (tc == GaussianRational(-1)) f.i_power = e2;
      else if (tc != GaussianRational(1)) throw InternalInconsistency("height: unexpected parameter");
      r = r * f;
    }
  }
  return r.normalized();
}

/// Last-coordinate rule s_n = -z_n + kappa; the other s_i are fixed.
enum class Convention { primary, alternate, literal };

inline Z0Coord last_shift(Parity p, Convention c) {
  if (p == Parity::odd) {
    switch (c) {
      case Convention::primary: return {-1, Rational(1, 2)};
      case Convention::alternate: return {-1, Rational(-1, 2)};
      case Convention::literal: return {-1, 0};
    }
  }
  if (c == Convention::primary) return {Rational(-1, 2), 0};
  return {Rational(-1, 2), 1};
}

/// s_i = -z_i + z_{i+1} - 1 + pi i/log q (i < n), s_n = -z_n + kappa
inline std::vector<std::complex<double>> s_to_z(const std::vector<std::complex<double>>& s, const SpaceConfig& cfg,
                                                double q0, Convention conv = Convention::primary) {
  if (static_cast<int>(s.size()) != cfg.n) throw InvalidValue("s_to_z: length differs from rank");
  const double L = std::log(q0);
  const std::complex<double> pi_i(0, std::numbers::pi / L);
  const Z0Coord k = last_shift(cfg.parity, conv);
  std::vector<std::complex<double>> z(s.size());
  const std::size_t n = s.size();
  z[n - 1] = k.re.get_d() + k.im_pi.get_d() * pi_i - s[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) z[i] = z[i + 1] - 1.0 + pi_i - s[i];
  return z;
}

inline std::vector<std::complex<double>> z_to_s(const std::vector<std::complex<double>>& z, const SpaceConfig& cfg,
                                                double q0, Convention conv = Convention::primary) {
  if (static_cast<int>(z.size()) != cfg.n) throw InvalidValue("z_to_s: length differs from rank");
  const double L = std::log(q0);
  const std::complex<double> pi_i(0, std::numbers::pi / L);
  const Z0Coord k = last_shift(cfg.parity, conv);
  std::vector<std::complex<double>> s(z.size());
  const std::size_t n = z.size();
  s[n - 1] = k.re.get_d() + k.im_pi.get_d() * pi_i - z[n - 1];
  for (std::size_t i = 0; i + 1 < n; ++i) s[i] = -z[i] + z[i + 1] - 1.0 + pi_i;
  return s;
}

namespace detail {
/// q^{re} * e^{i pi im_pi} exactly
inline GaussianRational exact_q_phase(const Z0Coord& k, const GaussianRational& q0) {
  Rational two_re = 2 * k.re, two_im = 2 * k.im_pi;
  GaussianRational v = GaussianRational::i_pow(static_cast<int>(two_im.get_num().get_si()));
  const long h = two_re.get_num().get_si();
  v *= q0.pow(h >= 0 ? h / 2 : -((-h + 1) / 2));
  if (h % 2 != 0) {
    std::optional<Rational> r;
    if (q0.is_real()) r = exact_sqrt(q0.re());
    if (!r) throw InvalidValue("half power of q needs a perfect-square q0");
    v *= GaussianRational(*r);
  }
  return v;
}
}  // namespace detail

/// multiplicative form of s_to_z: S_i = q^{s_i} -> X_i = q^{z_i}
inline std::vector<GaussianRational> s_to_x_exact(const std::vector<GaussianRational>& S, const SpaceConfig& cfg,
                                                  const GaussianRational& q0, Convention conv = Convention::primary) {
  const std::size_t n = S.size();
  if (static_cast<int>(n) != cfg.n) throw InvalidValue("s_to_x_exact: length differs from rank");
  std::vector<GaussianRational> X(n);
  X[n - 1] = detail::exact_q_phase(last_shift(cfg.parity, conv), q0) / S[n - 1];
  const GaussianRational step = -q0.inverse();  // q^{-1} e^{i pi}
  for (std::size_t i = n - 1; i-- > 0;) X[i] = X[i + 1] * step / S[i];
  return X;
}

inline std::vector<GaussianRational> x_to_s_exact(const std::vector<GaussianRational>& X, const SpaceConfig& cfg,
                                                  const GaussianRational& q0, Convention conv = Convention::primary) {
  const std::size_t n = X.size();
  if (static_cast<int>(n) != cfg.n) throw InvalidValue("x_to_s_exact: length differs from rank");
  std::vector<GaussianRational> S(n);
  S[n - 1] = detail::exact_q_phase(last_shift(cfg.parity, conv), q0) / X[n - 1];
  const GaussianRational step = -q0.inverse();
  for (std::size_t i = 0; i + 1 < n; ++i) S[i] = X[i + 1] / X[i] * step;
  return S;
}

/// the point z0 in multiplicative coordinates
inline std::vector<GaussianRational> z0_point(const SpaceConfig& cfg, const GaussianRational& q0) {
  std::vector<GaussianRational> X;
  for (const auto& c : cfg.z0) X.push_back(detail::exact_q_phase(c, q0));
  return X;
}

/// G(z) = prod (1 + x^alpha) / (1 - q^-1 x^alpha) over Sigma^+ (odd) or Sigma_s^+ (even)
inline FactoredRational g_factor(const SpaceConfig& cfg) {
  const RootSet rs = root_system(cfg.n);
  FactoredRational f;
  for (const auto& a : cfg.parity == Parity::odd ? rs.positive() : rs.short_pos) {
    f.num.push_back({QLaurent(1), QLaurent(1), a});
    f.den.push_back({QLaurent(1), QLaurent::monomial(-1, -1), a});
  }
  return f;
}

/// G_1(z) = prod_{i<j} (1 + x_i/x_j) / (1 - q^-1 x_i/x_j)
inline FactoredRational g1_factor(int n) {
  FactoredRational f;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      ExpVector a(static_cast<std::size_t>(n), 0);
      a[static_cast<std::size_t>(i)] = 1;
      a[static_cast<std::size_t>(j)] = -1;
      f.num.push_back({QLaurent(1), QLaurent(1), a});
      f.den.push_back({QLaurent(1), QLaurent::monomial(-1, -1), a});
    }
  return f;
}

/// Gamma_sigma(z) = prod_{alpha in Sigma^+(sigma)} (1 - q^-1 x^alpha) / (x^alpha - q^-1);
/// long roots included iff parity is odd unless overridden.
inline FactoredRational gamma_factor(const SignedPerm& sigma, const SpaceConfig& cfg,
                                     std::optional<bool> include_long = std::nullopt) {
  if (sigma.rank() != cfg.n) throw InvalidValue("gamma_factor: rank mismatch");
  FactoredRational f;
  for (const auto& a : negated_positive_set(sigma, include_long.value_or(cfg.parity == Parity::odd))) {
    f.num.push_back({QLaurent(1), QLaurent::monomial(-1, -1), a});
    f.den.push_back({QLaurent::monomial(-1, -1), QLaurent(1), a});
  }
  return f;
}

/// c_n = (1 + q^-1)(1 - q^-2)^n / w_m(-q^-1) (odd) or (1 - q^-2)^n / w_m(-q^-1) (even)
inline QFraction c_constant(int n, Parity parity) {
  const QLaurent t = QLaurent::monomial(-1, -1);
  QLaurent num = (QLaurent(1) - QLaurent::q(-2)).pow(static_cast<unsigned>(n));
  if (parity == Parity::odd) num *= QLaurent(1) + QLaurent::q(-1);
  return QFraction(num, w_poly(space_dim(n, parity), t));
}

/// (1 - q^-1)^n w_n(-q^-1) w_{m'}(-q^-1) / w_m(-q^-1): omega(x_0; z) G(z)
inline QFraction origin_constant(int n, Parity parity) {
  const QLaurent t = QLaurent::monomial(-1, -1);
  const int m = space_dim(n, parity);
  const int mp = (m + 1) / 2;
  QLaurent num = (QLaurent(1) - QLaurent::q(-1)).pow(static_cast<unsigned>(n)) * w_poly(n, t) * w_poly(mp, t);
  return QFraction(num, w_poly(m, t));
}

/// the odd-size identity value (1 - q^-1)^n w_n w_{n+1} / w_{2n+1}
inline QFraction identity_constant(int n) {
  const QLaurent t = QLaurent::monomial(-1, -1);
  QLaurent num = (QLaurent(1) - QLaurent::q(-1)).pow(static_cast<unsigned>(n)) * w_poly(n, t) * w_poly(n + 1, t);
  return QFraction(num, w_poly(2 * n + 1, t));
}

/// W_0 from its closed form w_n w_{m'} / (1 + q^-1)^{m'} at t = -q^-1
inline QFraction w0_closed(int n, Parity parity) {
  const QLaurent t = QLaurent::monomial(-1, -1);
  const int mp = (space_dim(n, parity) + 1) / 2;
  return QFraction(w_poly(n, t) * w_poly(mp, t), (QLaurent(1) + QLaurent::q(-1)).pow(static_cast<unsigned>(mp)));
}

/// c * phase * poly / G
struct SphericalValue {
  PhasedScalar phase;
  QFraction constant;
  TorusPoly<QLaurent> poly;
  FactoredRational g;

  GaussianRational eval_exact(const std::vector<GaussianRational>& x, const GaussianRational& q0) const {
    const GaussianRational gv = g.eval_exact(x, q0);
    if (gv.is_zero()) throw PoleError("omega: G vanishes at the sample point");
    return phase.eval_exact(q0) * constant.eval(q0) * hlsph::eval_exact(poly, x, q0) / gv;
  }
  std::complex<double> eval_complex(const std::vector<std::complex<double>>& x, double q0) const {
    return phase.eval_complex(q0) * constant.eval_complex(q0) * numeric(poly, q0).at(x) / g.eval_complex(x, q0);
  }
};

/// omega(x_lambda; z) = c_n G(z)^-1 q^{<lambda, z0>} Q_lambda(z)
inline SphericalValue omega_explicit(const Partition& lam, const SpaceConfig& cfg) {
  return {phase_power(lam, cfg), c_constant(cfg.n, cfg.parity), q_poly(lam, cfg.spec), g_factor(cfg)};
}

/// Psi(x_lambda; z) = q^{<lambda, z0>} Q_lambda / W_0
struct PsiValue {
  PhasedScalar scalar;
  TorusPoly<QLaurent> poly;

  GaussianRational eval_exact(const std::vector<GaussianRational>& x, const GaussianRational& q0) const {
    return scalar.eval_exact(q0) * hlsph::eval_exact(poly, x, q0);
  }
  std::complex<double> eval_complex(const std::vector<std::complex<double>>& x, double q0) const {
    return scalar.eval_complex(q0) * numeric(poly, q0).at(x);
  }
};

inline PsiValue psi(const Partition& lam, const SpaceConfig& cfg) {
  PhasedScalar s = phase_power(lam, cfg);
  s.magnitude /= QFraction(w0_value(cfg.n, cfg.parity));
  return {s, q_poly(lam, cfg.spec)};
}

// ---- n = 1 closed forms (odd size 3) ----

namespace detail {
inline GaussianRational unit_i(const GaussianRational*) { return GaussianRational::i(); }
inline std::complex<double> unit_i(const std::complex<double>*) { return {0, 1}; }
template <class T>
T tpow(const T& x, int e) {
  return ipow(x, e);
}
inline GaussianRational tpow(const GaussianRational& x, int e) { return x.pow(e); }
}  // namespace detail

/// z-form in X = q^z
template <class T>
T omega_n1_z(int ell, const T& q, const T& X) {
  using detail::tpow;
  const T one(1);
  const T I = detail::unit_i(static_cast<const T*>(nullptr));
  const T X2 = X * X, Xm2 = one / X2;
  const T qi = one / q;
  const T pref = tpow(I, ell) * tpow(q, -ell) * (one - qi * X2) / ((one + tpow(qi, 3)) * (one + X2));
  const T qm2 = tpow(qi, 2);
  const T brace = tpow(X, -ell) * (one + qm2 * X2) / (one - X2) + tpow(X, ell) * (one + qm2 * Xm2) / (one - Xm2);
  return pref * brace;
}

/// s-form in S = q^s. uniform_sign = true uses sign +1 on the second term for every ell
/// (correct for even ell only); otherwise the sign is (-1)^ell.
template <class T>
T omega_n1_s(int ell, const T& q, const T& S, bool uniform_sign = false) {
  using detail::tpow;
  const T one(1);
  const T qi = one / q;
  const T Si = one / S;
  const T pre = (one + tpow(qi, 3) * tpow(Si, 2)) / ((one + tpow(qi, 3)) * (one - tpow(qi, 4) * tpow(Si, 4)));
  const T sign = (uniform_sign || ell % 2 == 0) ? T(1) : T(-1);
  const T brace = tpow(S, ell) * (one - tpow(qi, 4) * tpow(Si, 2)) -
                  sign * tpow(qi, 2 * (ell + 1)) * tpow(Si, ell) * (one - tpow(Si, 2));
  return pre * brace;
}

/// S = q^s for s = -z - 1 + pi i/(2 log q): S = i q^-1 X^-1
template <class T>
T n1_s_from_x(const T& q, const T& X) {
  return detail::unit_i(static_cast<const T*>(nullptr)) / (q * X);
}

// ---- randomized exact checks ----

struct CheckReport {
  bool passed = true;
  int trials = 0;
  int resamples = 0;
  std::string detail;
};

namespace detail {
inline Rational random_rational(std::mt19937_64& rng, int bound = 50) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}
inline GaussianRational random_gaussian(std::mt19937_64& rng, int bound = 50) {
  for (;;) {
    GaussianRational g(random_rational(rng, bound), random_rational(rng, bound));
    if (!g.is_zero()) return g;
  }
}
/// random q0 > 1 with numerator, denominator <= bound
inline Rational random_q(std::mt19937_64& rng, int bound = 50) {
  std::uniform_int_distribution<int> den(1, bound);
  for (;;) {
    const int d = den(rng);
    std::uniform_int_distribution<int> num(d + 1, bound + d);
    Rational r(num(rng), d);
    r.canonicalize();
    if (r > 1) return r;
  }
}
constexpr int kMaxResamples = 200;
}  // namespace detail

/// omega(x_lambda; z) = Gamma_sigma(z) omega(x_lambda; sigma z) and the cocycle identity, exactly,
/// at random rational (q0, x).
inline CheckReport check_functional_equation(const Partition& lam, const SignedPerm& sigma, const SpaceConfig& cfg,
                                             int trials, std::uint64_t seed,
                                             std::optional<bool> include_long = std::nullopt) {
  CheckReport rep;
  const SphericalValue om = omega_explicit(lam, cfg);
  const FactoredRational gam = gamma_factor(sigma, cfg, include_long);
  const auto group = enumerate_group(cfg.n);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    bool done = false;
    while (!done) {
      if (rep.resamples > detail::kMaxResamples * std::max(1, trials))
        throw InternalInconsistency("check_functional_equation: too many resamples");
      // square q0 keeps q^{1/2} phases exact
      const Rational r = detail::random_q(rng, 12);
      const GaussianRational q0(r * r);
      std::vector<GaussianRational> x(static_cast<std::size_t>(cfg.n));
      for (auto& v : x) v = detail::random_gaussian(rng);
      const SignedPerm& tau = group[std::uniform_int_distribution<std::size_t>(0, group.size() - 1)(rng)];
      try {
        const auto sx = sigma.act_mult(x);
        const auto tx = tau.act_mult(x);
        if (om.g.touches_zero(x, q0) || om.g.touches_zero(sx, q0) || gam.touches_zero(x, q0)) {
          ++rep.resamples;
          continue;
        }
        const GaussianRational lhs = om.eval_exact(x, q0);
        const GaussianRational rhs = gam.eval_exact(x, q0) * om.eval_exact(sx, q0);
        // cocycle: Gamma_{sigma tau}(z) = Gamma_tau(z) Gamma_sigma(tau z)
        const FactoredRational g_st = gamma_factor(sigma * tau, cfg, include_long);
        const FactoredRational g_t = gamma_factor(tau, cfg, include_long);
        if (g_st.touches_zero(x, q0) || g_t.touches_zero(x, q0) || gam.touches_zero(tx, q0)) {
          ++rep.resamples;
          continue;
        }
        const GaussianRational c_lhs = g_st.eval_exact(x, q0);
        const GaussianRational c_rhs = g_t.eval_exact(x, q0) * gam.eval_exact(tx, q0);
        ++rep.trials;
        done = true;
        if (lhs != rhs) {
          rep.passed = false;
          rep.detail = "functional equation fails at q0=" + q0.str();
        } else if (c_lhs != c_rhs) {
          rep.passed = false;
          rep.detail = "cocycle fails for tau=" + tau.str() + " at q0=" + q0.str();
        }
      } catch (const PoleError&) {
        ++rep.resamples;
      }
    }
  }
  return rep;
}

/// omega under the alternate last-coordinate convention equals (-1)^{|lambda|} omega (primary),
/// exactly at random S = q^s. Also reports whether the literal variant satisfies the same relation.
struct ParitySignReport {
  bool passed = true;
  int sign = 1;
  bool literal_variant_holds = true;
  int trials = 0;
  std::string detail;
};

inline ParitySignReport parity_sign_relation(const Partition& lam, const SpaceConfig& cfg, int trials,
                                             std::uint64_t seed) {
  ParitySignReport rep;
  rep.sign = (weight(lam) % 2 == 0) ? 1 : -1;
  const SphericalValue om = omega_explicit(lam, cfg);
  std::mt19937_64 rng(seed);
  int attempts = 0;
  while (rep.trials < trials) {
    if (++attempts > detail::kMaxResamples * std::max(1, trials))
      throw InternalInconsistency("parity_sign_relation: too many resamples");
    const Rational r = detail::random_q(rng, 12);
    const GaussianRational q0(r * r);
    std::vector<GaussianRational> S(static_cast<std::size_t>(cfg.n));
    for (auto& v : S) v = detail::random_gaussian(rng);
    try {
      const auto xp = s_to_x_exact(S, cfg, q0, Convention::primary);
      const auto xa = s_to_x_exact(S, cfg, q0, Convention::alternate);
      const auto xl = s_to_x_exact(S, cfg, q0, Convention::literal);
      if (om.g.touches_zero(xp, q0) || om.g.touches_zero(xa, q0) || om.g.touches_zero(xl, q0)) continue;
      const GaussianRational vp = om.eval_exact(xp, q0);
      const GaussianRational va = om.eval_exact(xa, q0);
      const GaussianRational vl = om.eval_exact(xl, q0);
      ++rep.trials;
      if (va != GaussianRational(rep.sign) * vp) {
        rep.passed = false;
        rep.detail = "sign relation fails at q0=" + q0.str();
      }
      if (vl != GaussianRational(rep.sign) * vp) rep.literal_variant_holds = false;
    } catch (const PoleError&) {
    }
  }
  return rep;
}

struct N1FormsReport {
  bool passed = true;          // z-form == corrected s-form == omega_explicit
  bool uniform_sign_agrees = true;  // s-form with sign +1 for every ell
  int trials = 0;
  std::string detail;
};

/// n = 1, odd size: the z-form, the s-form (S = i/(qX)) and omega_explicit agree exactly
inline N1FormsReport check_n1_closed_forms(int ell, int trials, std::uint64_t seed) {
  if (ell < 0) throw InvalidValue("check_n1_closed_forms: ell must be >= 0");
  const SpaceConfig cfg = SpaceConfig::make(1, Parity::odd);
  const SphericalValue om = omega_explicit({ell}, cfg);
  N1FormsReport rep;
  std::mt19937_64 rng(seed);
  int attempts = 0;
  while (rep.trials < trials) {
    if (++attempts > detail::kMaxResamples * std::max(1, trials))
      throw InternalInconsistency("check_n1_closed_forms: too many resamples");
    const GaussianRational q0(detail::random_q(rng, 12));
    const GaussianRational X = detail::random_gaussian(rng);
    try {
      if (om.g.touches_zero({X}, q0)) continue;
      const GaussianRational a = om.eval_exact({X}, q0);
      const GaussianRational b = omega_n1_z(ell, q0, X);
      const GaussianRational S = n1_s_from_x(q0, X);
      const GaussianRational c = omega_n1_s(ell, q0, S);
      const GaussianRational d = omega_n1_s(ell, q0, S, true);
      ++rep.trials;
      if (a != b || a != c) {
        rep.passed = false;
        rep.detail = "disagreement at q0=" + q0.str() + ", x=" + X.str();
      }
      if (d != a) rep.uniform_sign_agrees = false;
    } catch (const PoleError&) {
    } catch (const InvalidValue&) {
      // division by zero inside a closed form: resample
    }
  }
  return rep;
}

}  // namespace hlsph
