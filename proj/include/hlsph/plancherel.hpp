#pragma once

// Plancherel measure on the compact torus, trapezoidal quadrature, orthogonality,
// orbit volumes, the spherical transform of characteristic functions, inversion,
// and the rank-2^n basis determinant.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hlsph/errors.hpp"
#include "hlsph/hall_littlewood.hpp"
#include "hlsph/parallel.hpp"
#include "hlsph/spherical.hpp"
#include "hlsph/torus_ring.hpp"

namespace hlsph {

using cplx = std::complex<double>;

/// (1/(2^n n!)) W_0 prod_{alpha > 0} |1 - x^alpha|^2 / |1 - t_alpha x^alpha|^2 at x_j = e^{i theta_j}
inline double measure_density(const SpaceConfig& cfg, const std::vector<double>& theta, double q0) {
  if (static_cast<int>(theta.size()) != cfg.n) throw InvalidValue("measure_density: rank mismatch");
  double fact = 1;
  for (int i = 1; i <= cfg.n; ++i) fact *= 2.0 * i;
  double v = w0_closed(cfg.n, cfg.parity).eval_complex(q0).real() / fact;
  const double ts = cfg.spec.t_s.eval_complex(q0).real(), tl = cfg.spec.t_l.eval_complex(q0).real();
  for (const auto& a : root_system(cfg.n).positive()) {
    double ph = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) ph += a[i] * theta[i];
    const cplx xa(std::cos(ph), std::sin(ph));
    const double t = is_long_root(a) ? tl : ts;
    v *= std::norm(1.0 - xa) / std::norm(1.0 - t * xa);
  }
  return v;
}

/// N^n uniform nodes theta = 2 pi k / N, weights density / N^n
struct QuadratureGrid {
  int n = 1;
  int N = 64;
  double q0 = 3;
  std::vector<std::vector<int>> index;  // node -> (k_1..k_n)
  std::vector<double> weight;

  static QuadratureGrid make(const SpaceConfig& cfg, int N, double q0, unsigned workers = 1) {
    if (N < 2) throw InvalidValue("grid needs N >= 2");
    if (!(q0 > 1)) throw InvalidValue("grid needs q0 > 1");
    QuadratureGrid g;
    g.n = cfg.n;
    g.N = N;
    g.q0 = q0;
    std::size_t total = 1;
    for (int i = 0; i < cfg.n; ++i) total *= static_cast<std::size_t>(N);
    if (total > 50'000'000) throw ResourceError("quadrature grid too large");
    g.index.resize(total);
    g.weight.resize(total);
    const double inv = 1.0 / static_cast<double>(total);
    parallel_chunks(total, 4096, workers, [&](std::size_t, std::size_t b, std::size_t e) {
      for (std::size_t t = b; t < e; ++t) {
        std::vector<int> k(static_cast<std::size_t>(cfg.n));
        std::vector<double> th(k.size());
        std::size_t r = t;
        for (std::size_t i = k.size(); i-- > 0;) {
          k[i] = static_cast<int>(r % static_cast<std::size_t>(N));
          r /= static_cast<std::size_t>(N);
          th[i] = 2 * std::numbers::pi * k[i] / N;
        }
        g.weight[t] = measure_density(cfg, th, q0) * inv;
        g.index[t] = std::move(k);
      }
    });
    return g;
  }

  std::size_t size() const { return weight.size(); }
};

/// values of f at every grid node
template <class C>
std::vector<cplx> grid_values(const TorusPoly<C>& f, const QuadratureGrid& g, unsigned workers = 1) {
  if (f.nvars() != g.n) throw InvalidValue("grid_values: rank mismatch");
  const NumericTorusPoly num = numeric(f, g.q0);
  std::vector<cplx> roots(static_cast<std::size_t>(g.N));
  for (int k = 0; k < g.N; ++k) roots[static_cast<std::size_t>(k)] = std::polar(1.0, 2 * std::numbers::pi * k / g.N);
  std::vector<cplx> out(g.size());
  parallel_chunks(g.size(), 4096, workers, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t t = b; t < e; ++t) {
      cplx acc = 0;
      for (std::size_t m = 0; m < num.exps.size(); ++m) {
        long ph = 0;
        for (std::size_t i = 0; i < g.index[t].size(); ++i) ph += static_cast<long>(num.exps[m][i]) * g.index[t][i];
        ph %= g.N;
        if (ph < 0) ph += g.N;
        acc += num.coefs[m] * roots[static_cast<std::size_t>(ph)];
      }
      out[t] = acc;
    }
  });
  return out;
}

/// sum_t w_t f_t conj(g_t), pairwise-summed
inline cplx grid_inner(const std::vector<cplx>& f, const std::vector<cplx>& g, const QuadratureGrid& grid,
                       bool conjugate = true) {
  std::vector<cplx> terms(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) terms[t] = grid.weight[t] * f[t] * (conjugate ? std::conj(g[t]) : g[t]);
  return pairwise_sum(terms);
}

/// int f conj(g) dmu for Laurent polynomials
template <class C>
cplx inner_product(const TorusPoly<C>& f, const TorusPoly<C>& g, const QuadratureGrid& grid, unsigned workers = 1) {
  return grid_inner(grid_values(f, grid, workers), grid_values(g, grid, workers), grid);
}

/// v_lambda = q^{-2<lambda, Re z0>} W_0 / W_lambda
inline QFraction volume(const Partition& lam, const SpaceConfig& cfg) {
  validate_partition(lam);
  Rational re = 0;
  for (std::size_t i = 0; i < lam.size(); ++i) re += cfg.z0[i].re * lam[i];
  Rational e = -2 * re;
  if (e.get_den() != 1) throw InternalInconsistency("volume: non-integral q exponent");
  const int k = static_cast<int>(e.get_num().get_si());
  return QFraction(QLaurent::q(k) * w0_value(cfg.n, cfg.parity), w_lambda_value(lam, cfg.parity));
}

/// the literal q^{-2<lambda, z0>} W_0 / W_lambda with its phase
inline PhasedScalar volume_literal(const Partition& lam, const SpaceConfig& cfg) {
  PhasedScalar p = phase_power(lam, cfg);
  PhasedScalar inv2;
  inv2.i_power = -2 * p.i_power;
  inv2.half_q_power = -2 * p.half_q_power;
  inv2.magnitude = QFraction(QLaurent(1)) / (p.magnitude * p.magnitude);
  inv2.magnitude *= QFraction(w0_value(cfg.n, cfg.parity), w_lambda_value(lam, cfg.parity));
  return inv2.normalized();
}

/// base value for lambda = (1,0,..,0): q^{sign*2n} (1-(-q^-1)^n)(1-(-q^-1)^{n+1})/(1+q^-1)
inline QFraction base_volume_formula(int n, int sign) {
  const QLaurent t = QLaurent::monomial(-1, -1);
  QLaurent num = QLaurent::q(2 * n * sign) * (QLaurent(1) - t.pow(static_cast<unsigned>(n))) *
                 (QLaurent(1) - t.pow(static_cast<unsigned>(n + 1)));
  return QFraction(num, QLaurent(1) + QLaurent::q(-1));
}

/// F(ch_lambda) = v_lambda Psi(x_lambda; z)
struct TransformImage {
  PhasedScalar scalar;
  TorusPoly<QLaurent> poly;
};

inline TransformImage transform_ch(const Partition& lam, const SpaceConfig& cfg) {
  PsiValue p = psi(lam, cfg);
  PhasedScalar s = p.scalar;
  s.magnitude *= volume(lam, cfg);
  return {s, p.poly};
}

inline std::vector<cplx> grid_values(const TransformImage& f, const QuadratureGrid& g, unsigned workers = 1) {
  auto v = grid_values(f.poly, g, workers);
  const cplx s = f.scalar.eval_complex(g.q0);
  for (auto& x : v) x *= s;
  return v;
}

inline cplx inner_product(const TransformImage& f, const TransformImage& g, const QuadratureGrid& grid,
                          unsigned workers = 1) {
  return grid_inner(grid_values(f, grid, workers), grid_values(g, grid, workers), grid);
}

// ---- reports ----

struct PairValue {
  Partition lambda;
  Partition mu;
  cplx value;
  cplx expected;
  double scale = 1;  // error = |value - expected| / scale
  double error = 0;
};

struct MatrixReport {
  std::vector<Partition> lambdas;
  std::vector<PairValue> entries;  // row-major
  double max_error = 0;
  bool passed = true;
  std::string detail;
};

namespace detail {
inline void finish(MatrixReport& r, double tol) {
  for (auto& e : r.entries) {
    e.error = std::abs(e.value - e.expected) / e.scale;
    if (e.error > r.max_error) r.max_error = e.error;
    if (e.error > tol && r.passed) {
      r.passed = false;
      r.detail = "pair (" + partition_str(e.lambda) + ";" + partition_str(e.mu) + ") off by " + std::to_string(e.error);
    }
  }
}
}  // namespace detail

/// Gram matrix of P_lambda against dmu; expected diagonal W_0/W_lambda
inline MatrixReport gram_report(const SpaceConfig& cfg, const std::vector<Partition>& lambdas, const QuadratureGrid& grid,
                                double tol, unsigned workers = 1) {
  MatrixReport r;
  r.lambdas = lambdas;
  std::vector<std::vector<cplx>> vals;
  for (const auto& l : lambdas) vals.push_back(grid_values(p_poly(l, cfg.parity), grid, workers));
  const QLaurent w0 = w0_value(cfg.n, cfg.parity);
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      cplx expected = 0;
      if (i == j) expected = QFraction(w0, w_lambda_value(lambdas[i], cfg.parity)).eval_complex(grid.q0);
      r.entries.push_back({lambdas[i], lambdas[j], grid_inner(vals[i], vals[j], grid), expected});
    }
  detail::finish(r, tol);
  return r;
}

/// int F(ch_lambda) conj F(ch_mu) dmu = delta v_lambda
inline MatrixReport check_plancherel(const SpaceConfig& cfg, const std::vector<Partition>& lambdas,
                                     const QuadratureGrid& grid, double tol, unsigned workers = 1) {
  MatrixReport r;
  r.lambdas = lambdas;
  std::vector<std::vector<cplx>> vals;
  for (const auto& l : lambdas) vals.push_back(grid_values(transform_ch(l, cfg), grid, workers));
  // v_lambda grows like q^{2|lambda|}; errors are measured relative to sqrt(v_lambda v_mu)
  std::vector<double> vol;
  for (const auto& l : lambdas) vol.push_back(volume(l, cfg).eval_complex(grid.q0).real());
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      cplx expected = i == j ? cplx(vol[i]) : cplx(0);
      r.entries.push_back(
          {lambdas[i], lambdas[j], grid_inner(vals[i], vals[j], grid), expected, std::sqrt(vol[i] * vol[j])});
    }
  detail::finish(r, tol);
  return r;
}

/// int F(ch_lambda) conj(Psi(x_mu)) dmu = delta. `literal` holds the unconjugated integrals.
struct InversionReport {
  MatrixReport conjugated;
  MatrixReport literal;
};

inline InversionReport check_inversion(const SpaceConfig& cfg, const std::vector<Partition>& lambdas,
                                       const std::vector<Partition>& mus, const QuadratureGrid& grid, double tol,
                                       unsigned workers = 1) {
  InversionReport rep;
  rep.conjugated.lambdas = lambdas;
  rep.literal.lambdas = lambdas;
  std::vector<std::vector<cplx>> fv, pv;
  for (const auto& l : lambdas) fv.push_back(grid_values(transform_ch(l, cfg), grid, workers));
  for (const auto& m : mus) {
    PsiValue p = psi(m, cfg);
    pv.push_back(grid_values(TransformImage{p.scalar, p.poly}, grid, workers));
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    for (std::size_t j = 0; j < mus.size(); ++j) {
      const bool same = lambdas[i] == mus[j];
      rep.conjugated.entries.push_back(
          {lambdas[i], mus[j], grid_inner(fv[i], pv[j], grid, true), same ? cplx(1) : cplx(0)});
      rep.literal.entries.push_back(
          {lambdas[i], mus[j], grid_inner(fv[i], pv[j], grid, false), same ? cplx(1) : cplx(0)});
    }
  detail::finish(rep.conjugated, tol);
  detail::finish(rep.literal, tol);
  return rep;
}

/// {0,1}^n partitions, then partitions without zero parts by weight, until 2^n rows
inline std::vector<Partition> rank_check_partitions(int n) {
  std::vector<Partition> rows;
  for (int k = 0; k <= n; ++k) {
    Partition p(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = 1;
    rows.push_back(p);
  }
  const std::size_t want = std::size_t{1} << n;
  for (int w = n; rows.size() < want; ++w)
    for (const auto& p : partitions_up_to(n, w)) {
      if (rows.size() >= want) break;
      if (weight(p) != w || p.back() == 0) continue;
      if (std::find(rows.begin(), rows.end(), p) == rows.end()) rows.push_back(p);
    }
  return rows;
}

struct RankReport {
  std::vector<Partition> rows;
  std::vector<cplx> z_used;
  cplx det = 0;
  int resamples = 0;
  bool passed = false;
};

/// true iff q^z is fixed by some non-identity Weyl element (to 1e-9)
inline bool is_w_fixed(const std::vector<cplx>& z, double q0) {
  std::vector<cplx> x;
  for (const auto& v : z) x.push_back(std::exp(v * std::log(q0)));
  const auto group = enumerate_group(static_cast<int>(z.size()));
  for (const auto& s : group) {
    if (s.is_identity()) continue;
    const auto y = s.act_mult(x);
    double d = 0;
    for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(y[i] - x[i]));
    if (d < 1e-9) return true;
  }
  return false;
}

/// det [Psi(x_{lambda_j}; z + u_k)], u_k in {0, pi i/log q}^n; resamples z when degenerate
inline RankReport basis_rank_check(const SpaceConfig& cfg, std::vector<cplx> z, std::uint64_t seed, double q0,
                                   int max_resamples = 20, double threshold = 1e-6) {
  RankReport rep;
  rep.rows = rank_check_partitions(cfg.n);
  const std::size_t dim = rep.rows.size();
  std::vector<NumericTorusPoly> polys;
  std::vector<cplx> scal;
  for (const auto& l : rep.rows) {
    PsiValue p = psi(l, cfg);
    polys.push_back(numeric(p.poly, q0));
    scal.push_back(p.scalar.eval_complex(q0));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.0, 2 * std::numbers::pi / std::log(q0));
  for (;;) {
    if (static_cast<int>(z.size()) != cfg.n) throw InvalidValue("basis_rank_check: z length differs from rank");
    if (!is_w_fixed(z, q0)) {
      Eigen::MatrixXcd M(dim, dim);
      std::vector<cplx> x0;
      for (const auto& v : z) x0.push_back(std::exp(v * std::log(q0)));
      for (std::size_t k = 0; k < dim; ++k) {
        std::vector<cplx> x = x0;
        for (std::size_t i = 0; i < x.size(); ++i)
          if ((k >> i) & 1u) x[i] = -x[i];  // z_i + pi i/log q
        for (std::size_t j = 0; j < dim; ++j)
          M(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = scal[j] * polys[j].at(x);
      }
      rep.det = M.determinant();
      if (std::abs(rep.det) > threshold) {
        rep.z_used = z;
        rep.passed = true;
        return rep;
      }
    }
    if (rep.resamples >= max_resamples) {
      rep.z_used = z;
      return rep;
    }
    ++rep.resamples;
    for (auto& v : z) v = cplx(re(rng), im(rng));
  }
}

}  // namespace hlsph
