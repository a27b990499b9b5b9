#pragma once

// Command-line front end. Every check line names the result it certifies.
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage/config error, 3 resource/precision error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlsph/errors.hpp"
#include "hlsph/hall_littlewood.hpp"
#include "hlsph/io/json.hpp"
#include "hlsph/padic.hpp"
#include "hlsph/parallel.hpp"
#include "hlsph/plancherel.hpp"
#include "hlsph/spherical.hpp"

namespace hlsph::cli {

using nlohmann::json;

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

struct RunConfig {
  int n = 1;
  std::string parity = "odd";
  std::string lambda;
  std::uint64_t seed = 0;
  int N = 64;
  std::string q = "3";
  long p = 3;
  int prec = 12;
  std::string format = "text";
  unsigned workers = 0;
  int max_weight = 3;
  int trials = 10;
  long xi = 1;
  int r = 0;
  int ell = 1;
  double s = 1;
  long samples = 20000;
  int rounds = 20;
  std::string input;
  std::string theta;
  std::string at;

  double q0() const {
    const Rational r = parse_rational(q);
    if (r <= 1) throw InvalidValue("--q must be > 1");
    return r.get_d();
  }
  Rational q_exact() const { return parse_rational(q); }
};

struct Check {
  std::string anchor;
  bool passed = true;
  std::string detail;
};

class Report {
 public:
  void check(std::string anchor, bool passed, std::string detail) {
    checks_.push_back({std::move(anchor), passed, std::move(detail)});
  }
  void note(std::string text) { notes_.push_back(std::move(text)); }
  json& data() { return data_; }

  bool passed() const {
    for (const auto& c : checks_)
      if (!c.passed) return false;
    return true;
  }

  void write(std::ostream& os, const std::string& format) const {
    if (format == "json") {
      json j;
      j["checks"] = json::array();
      for (const auto& c : checks_) j["checks"].push_back({{"anchor", c.anchor}, {"passed", c.passed}, {"detail", c.detail}});
      j["notes"] = notes_;
      if (!data_.is_null()) j["data"] = data_;
      j["passed"] = passed();
      os << j.dump(2) << "\n";
    } else if (format == "csv") {
      os << "status,anchor,detail\n";
      for (const auto& c : checks_) os << (c.passed ? "PASS" : "FAIL") << "," << quote(c.anchor) << "," << quote(c.detail) << "\n";
      for (const auto& n : notes_) os << "NOTE,," << quote(n) << "\n";
    } else {
      for (const auto& c : checks_) os << (c.passed ? "PASS" : "FAIL") << "  [" << c.anchor << "] " << c.detail << "\n";
      for (const auto& n : notes_) os << "NOTE  " << n << "\n";
      os << (passed() ? "all checks passed" : "some checks FAILED") << "\n";
    }
  }

  int exit_code() const { return passed() ? kOk : kCheckFailed; }

 private:
  static std::string quote(const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
      if (c == '"') r += '"';
      r += c;
    }
    return r + "\"";
  }

  std::vector<Check> checks_;
  std::vector<std::string> notes_;
  json data_;
};

// anchors
inline constexpr const char* kAnchorNormVolume = "volume of norm fibres A(xi;r)";
inline constexpr const char* kAnchorCartan = "Cartan decomposition of X";
inline constexpr const char* kAnchorGOrbits = "two G-orbits in X";
inline constexpr const char* kAnchorN1 = "explicit formula for n=1";
inline constexpr const char* kAnchorIntegral = "defining integral of the spherical function";
inline constexpr const char* kAnchorFeq = "functional equations under W";
inline constexpr const char* kAnchorCocycle = "Gamma cocycle identity";
inline constexpr const char* kAnchorMacdonald = "constant Weyl sum W_0(t) and P_0 = 1";
inline constexpr const char* kAnchorPoincare = "closed form of W_lambda";
inline constexpr const char* kAnchorIdentity = "value at the identity coset";
inline constexpr const char* kAnchorOrth = "orthogonality of P_lambda for dmu";
inline constexpr const char* kAnchorMeasure = "total mass of dmu";
inline constexpr const char* kAnchorPlancherel = "Plancherel formula";
inline constexpr const char* kAnchorInversion = "inversion formula";
inline constexpr const char* kAnchorRank = "spherical transform is free of rank 2^n";
inline constexpr const char* kAnchorDiag1 = "constructive diagonalization for n=1";
inline constexpr const char* kAnchorParity = "parity sign relation between conventions";
inline constexpr const char* kAnchorWInv = "W-invariance of Q_lambda";

// ---- helpers ----

inline Partition parse_partition(const std::string& text, int n) {
  Partition lam;
  if (!text.empty()) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(part, &used);
      } catch (const std::exception&) {
        throw InvalidValue("bad partition '" + text + "'");
      }
      if (used != part.size()) throw InvalidValue("bad partition '" + text + "'");
      lam.push_back(v);
    }
  }
  if (static_cast<int>(lam.size()) > n) throw InvalidValue("partition '" + text + "' has more than n parts");
  lam.resize(static_cast<std::size_t>(n), 0);
  validate_partition(lam);
  return lam;
}

inline std::string fmt_rational(const Rational& r) { return r.get_str(); }

inline std::string timing(double seconds) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << seconds << " s";
  return os.str();
}

inline std::vector<Parity> parities_of(const RunConfig& c) {
  if (c.parity == "both") return {Parity::odd, Parity::even};
  return {parse_parity(c.parity)};
}

// ---- suites (shared by single verbs and `verify all`) ----

inline void suite_macdonald(const RunConfig& c, Report& rep) {
  for (Parity par : parities_of(c)) {
    const SpaceConfig cfg = SpaceConfig::make(c.n, par);
    const Partition zero(static_cast<std::size_t>(c.n), 0);
    const auto q0 = q_poly(zero, cfg.spec);
    const bool constant = q0.is_constant();
    const bool value = constant && QFraction(q0.coeff(ExpVector(static_cast<std::size_t>(c.n), 0))) == QFraction(w0_value(c.n, par));
    const auto p0 = p_poly(zero, par);
    const bool p_one = p0.is_constant() && p0.coeff(ExpVector(static_cast<std::size_t>(c.n), 0)) == QFraction(1);
    const bool closed = QFraction(w0_value(c.n, par)) == w0_closed(c.n, par);
    rep.check(kAnchorMacdonald, constant && value && p_one && closed,
              "n=" + std::to_string(c.n) + " " + parity_str(par) + ": Q_0 = " + q0.str() + ", P_0 = " + p0.str());
  }
}

inline void suite_w_invariance(const RunConfig& c, Report& rep) {
  const auto group = enumerate_group(c.n);
  for (Parity par : parities_of(c)) {
    bool ok = true;
    std::string bad;
    for (const auto& lam : partitions_up_to(c.n, c.max_weight)) {
      const auto Q = q_poly(lam, par);
      for (const auto& s : group)
        if (!(weyl_act(s, Q) == Q)) {
          ok = false;
          bad = partition_str(lam) + " under " + s.str();
        }
    }
    rep.check(kAnchorWInv, ok,
              "n=" + std::to_string(c.n) + " " + parity_str(par) + ", |lambda| <= " + std::to_string(c.max_weight) +
                  (ok ? "" : ", fails for " + bad));
  }
}

inline void suite_poincare(const RunConfig& c, Report& rep) {
  const Specialization odd = Specialization::for_parity(Parity::odd);
  int total = 0, short_bad = 0;
  bool ok = true;
  std::string bad;
  // all partitions with parts <= 3
  std::vector<Partition> lams;
  for (const auto& l : partitions_up_to(c.n, 3 * c.n))
    if (l.front() <= 3) lams.push_back(l);
  for (const auto& lam : lams) {
    ++total;
    const QLaurent brute = poincare_poly(stabilizer(lam), odd.t_s, odd.t_l);
    if (!(w_lambda_value(lam, Parity::odd) == brute)) {
      ok = false;
      bad = partition_str(lam);
    }
    const QLaurent shortb = substitute(w_tilde_short_branch(lam), QLaurent::monomial(-1, -1));
    const QLaurent scaled = brute * (QLaurent(1) + QLaurent::q(-1)).pow(static_cast<unsigned>(c.n + 1));
    if (!(shortb == scaled)) ++short_bad;
  }
  rep.check(kAnchorPoincare, ok,
            "corrected closed form vs stabilizer sum, n=" + std::to_string(c.n) + ", " + std::to_string(total) +
                " partitions with parts <= 3" + (ok ? "" : ", fails for " + bad));
  if (short_bad > 0)
    rep.note("the short m_0=0 branch of w~_lambda disagrees with the stabilizer sum for " + std::to_string(short_bad) + " of " +
             std::to_string(total) + " partitions at n=" + std::to_string(c.n) +
             " (e.g. lambda=(1,..,1) loses a factor w_1); the uniform form w_{m_0+1} prod w_{m_l} is used");
}

inline void suite_identity(const RunConfig& c, Report& rep) {
  for (Parity par : parities_of(c)) {
    const SpaceConfig cfg = SpaceConfig::make(c.n, par);
    const SphericalValue om = omega_explicit(Partition(static_cast<std::size_t>(c.n), 0), cfg);
    const bool constant = om.poly.is_constant();
    const QFraction val = om.constant * QFraction(om.poly.coeff(ExpVector(static_cast<std::size_t>(c.n), 0)));
    bool ok = constant && val == origin_constant(c.n, par);
    if (par == Parity::odd) ok = ok && val == identity_constant(c.n);
    // omega(x_lambda; z0) = 1
    const GaussianRational q0(par == Parity::odd ? Rational(3) : Rational(9));
    const auto X = z0_point(cfg, q0);
    bool at_z0 = true;
    for (const auto& lam : partitions_up_to(c.n, c.max_weight)) {
      try {
        if (omega_explicit(lam, cfg).eval_exact(X, q0) != GaussianRational(1)) at_z0 = false;
      } catch (const PoleError&) {
        at_z0 = false;
      }
    }
    rep.check(kAnchorIdentity, ok && at_z0,
              "n=" + std::to_string(c.n) + " " + parity_str(par) + ": omega(x_0;z) G(z) = " + val.str() +
                  "; omega(x_lambda; z0) = 1 for |lambda| <= " + std::to_string(c.max_weight));
  }
}

inline void suite_feq(const RunConfig& c, Report& rep) {
  const auto group = enumerate_group(c.n);
  std::uint64_t idx = 0;
  for (Parity par : parities_of(c)) {
    const SpaceConfig cfg = SpaceConfig::make(c.n, par);
    for (const auto& lam : partitions_up_to(c.n, c.max_weight)) {
      bool ok = true;
      int resamples = 0;
      std::string detail;
      for (const auto& s : group) {
        const CheckReport r = check_functional_equation(lam, s, cfg, c.trials, derive_seed(c.seed, idx++));
        resamples += r.resamples;
        if (!r.passed) {
          ok = false;
          detail = " sigma=" + s.str() + ": " + r.detail;
        }
      }
      rep.check(std::string(kAnchorFeq) + " + " + kAnchorCocycle, ok,
                "n=" + std::to_string(c.n) + " " + parity_str(par) + " lambda=" + partition_str(lam) + ": " +
                    std::to_string(group.size()) + " elements x " + std::to_string(c.trials) + " exact points" + detail);
    }
  }
}

inline void suite_parity_sign(const RunConfig& c, Report& rep) {
  std::uint64_t idx = 1u << 20;
  for (Parity par : parities_of(c)) {
    const SpaceConfig cfg = SpaceConfig::make(c.n, par);
    bool literal_all = true;
    for (const auto& lam : partitions_up_to(c.n, c.max_weight)) {
      const ParitySignReport r = parity_sign_relation(lam, cfg, c.trials, derive_seed(c.seed, idx++));
      literal_all = literal_all && r.literal_variant_holds;
      rep.check(kAnchorParity, r.passed,
                "n=" + std::to_string(c.n) + " " + parity_str(par) + " lambda=" + partition_str(lam) +
                    ": sign " + std::to_string(r.sign) + (r.passed ? "" : " " + r.detail));
    }
    if (!literal_all)
      rep.note(std::string("parity sign: the unshifted s_n = -z_n - 1 convention does not give a sign relation for ") +
               parity_str(par) + " size; the half-period shifted convention does");
  }
}

inline std::vector<Partition> small_partitions(const RunConfig& c) { return partitions_up_to(c.n, c.max_weight); }

inline void suite_orthogonality(const RunConfig& c, Report& rep, unsigned workers, double tol = 1e-8) {
  const double q0 = c.q0();
  for (Parity par : parities_of(c)) {
    const SpaceConfig cfg = SpaceConfig::make(c.n, par);
    const QuadratureGrid grid = QuadratureGrid::make(cfg, c.N, q0, workers);
    const TorusPoly<QFraction> one = TorusPoly<QFraction>::constant(c.n, QFraction(1));
    const cplx mass = inner_product(one, one, grid, workers);
    rep.check(kAnchorMeasure, std::abs(mass - 1.0) <= tol,
              "n=" + std::to_string(c.n) + " " + parity_str(par) + " q0=" + c.q + " N=" + std::to_string(c.N) +
                  ": mass = " + io::fmt_complex(mass, 1e-15));
    const MatrixReport g = gram_report(cfg, small_partitions(c), grid, tol, workers);
    rep.check(kAnchorOrth, g.passed,
              "n=" + std::to_string(c.n) + " " + parity_str(par) + " q0=" + c.q + " N=" + std::to_string(c.N) +
                  ": Gram diagonal = W_0/W_lambda, max error " + io::fmt_double(g.max_error));
  }
}

inline void suite_plancherel(const RunConfig& c, Report& rep, unsigned workers, double tol = 1e-8) {
  const double q0 = c.q0();
  for (Parity par : parities_of(c)) {
    const SpaceConfig cfg = SpaceConfig::make(c.n, par);
    const QuadratureGrid grid = QuadratureGrid::make(cfg, c.N, q0, workers);
    const auto lams = small_partitions(c);
    const MatrixReport pl = check_plancherel(cfg, lams, grid, tol, workers);
    rep.check(kAnchorPlancherel, pl.passed,
              "n=" + std::to_string(c.n) + " " + parity_str(par) + " q0=" + c.q +
                  ": <F ch_lambda, F ch_mu> = delta v_lambda, max normalized error " + io::fmt_double(pl.max_error));
    const InversionReport inv = check_inversion(cfg, lams, lams, grid, tol, workers);
    rep.check(kAnchorInversion, inv.conjugated.passed,
              "n=" + std::to_string(c.n) + " " + parity_str(par) + " q0=" + c.q +
                  ": int F(ch_lambda) conj Psi(x_mu) dmu = delta, max error " + io::fmt_double(inv.conjugated.max_error));
    if (!inv.literal.passed)
      rep.note("inversion without conjugating Psi fails for " + parity_str(par) + " size (" + inv.literal.detail +
               "); the Hermitian pairing is the one consistent with the Plancherel formula");
  }
  // magnitude of v_(1,0..0)
  const SpaceConfig cfg = SpaceConfig::make(c.n, Parity::odd);
  Partition e1(static_cast<std::size_t>(c.n), 0);
  e1[0] = 1;
  const bool plus = volume(e1, cfg) == base_volume_formula(c.n, +1);
  const bool minus = volume(e1, cfg) == base_volume_formula(c.n, -1);
  rep.note("v_(1,0..0) = " + volume(e1, cfg).str() + " carries q^{+2n}" + (plus ? "" : " (MISMATCH)") +
           "; the q^{-2n} closed form " + (minus ? "agrees" : "disagrees") + " with the Plancherel diagonal");
  if (c.n == 1 && std::abs(q0 - 3.0) < 1e-15) {
    const double v1 = volume({1}, cfg).eval_complex(3.0).real();
    rep.check(kAnchorPlancherel, std::abs(v1 - 8.0) < 1e-12, "n=1: v_1 = q^2 - 1 = " + io::fmt_double(v1) + " at q0=3");
  }
}

inline void suite_rank(const RunConfig& c, Report& rep, int points = 5) {
  const double q0 = c.q0();
  for (Parity par : parities_of(c)) {
    const SpaceConfig cfg = SpaceConfig::make(c.n, par);
    std::mt19937_64 rng(derive_seed(c.seed, 77));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double min_det = 1e300;
    bool ok = true;
    for (int t = 0; t < points; ++t) {
      std::vector<cplx> z;
      for (int i = 0; i < c.n; ++i) z.emplace_back(u(rng), u(rng));
      const RankReport r = basis_rank_check(cfg, z, derive_seed(c.seed, 1000 + static_cast<std::uint64_t>(t)), q0);
      ok = ok && r.passed;
      min_det = std::min(min_det, std::abs(r.det));
    }
    rep.check(kAnchorRank, ok,
              "n=" + std::to_string(c.n) + " " + parity_str(par) + ": " + std::to_string(points) +
                  " random z, min |det| = " + io::fmt_double(min_det));
  }
}

inline void suite_n1_forms(const RunConfig& c, Report& rep, int max_ell = 5) {
  bool uniform_all = true;
  for (int ell = 0; ell <= max_ell; ++ell) {
    const N1FormsReport r = check_n1_closed_forms(ell, std::max(5, c.trials / 2), derive_seed(c.seed, 500 + static_cast<std::uint64_t>(ell)));
    uniform_all = uniform_all && r.uniform_sign_agrees;
    rep.check(kAnchorN1, r.passed,
              "ell=" + std::to_string(ell) + ": z-form = s-form = general formula at " + std::to_string(r.trials) +
                  " exact points" + (r.passed ? "" : " " + r.detail));
  }
  if (!uniform_all)
    rep.note("the uniform s-form sign -q^{-2(l+1)-ls}(1-q^{-2s}) holds for even l only; odd l needs the opposite sign");
}

inline void suite_norm(long p, int rmax, Report& rep, unsigned workers) {
  for (long xi = 1; xi < p; ++xi)
    for (int r = 0; r <= rmax; ++r) {
      const Rational v = norm_count(p, xi, r, workers);
      const Rational want = norm_count_formula(p, r);
      rep.check(kAnchorNormVolume, v == want,
                "p=" + std::to_string(p) + " xi=" + std::to_string(xi) + " r=" + std::to_string(r) + ": " + fmt_rational(v) +
                    (v == want ? "" : " expected " + fmt_rational(want)));
    }
}

inline void suite_cartan(const RunConfig& c, Report& rep, int per_lambda = 10) {
  const LocalField f = LocalField::make(c.p);
  bool ok = true, parity_ok = true;
  int count = 0;
  std::string bad;
  std::uint64_t idx = 3u << 20;
  for (const auto& lam : partitions_up_to(c.n, c.max_weight)) {
    const ExactMatrix x = x_lambda(f, lam);
    if (!is_member_X(x)) {
      ok = false;
      bad = "x_" + partition_str(lam) + " not in X";
    }
    for (int t = 0; t < per_lambda; ++t) {
      const ExactMatrix k = random_k(f, c.n, derive_seed(c.seed, idx++), 6);
      const ExactMatrix y = act(k, x);
      ++count;
      if (!is_member_X(y) || classify_k_orbit(y, c.p) != lam) {
        ok = false;
        bad = "k.x_" + partition_str(lam);
      }
      if (classify_g_orbit(y, c.p) != weight(lam) % 2) parity_ok = false;
    }
  }
  rep.check(kAnchorCartan, ok,
            "n=" + std::to_string(c.n) + " p=" + std::to_string(c.p) + ": " + std::to_string(count) +
                " random K-translates of x_lambda classified" + (ok ? "" : ", fails at " + bad));
  rep.check(kAnchorGOrbits, parity_ok, "G-orbit is |lambda| mod 2 on the same translates");
}

inline void suite_mc(const RunConfig& c, int ell, double s, long samples, Report& rep, unsigned workers) {
  const MonteCarloResult r = monte_carlo_omega1(ell, s, samples, c.prec, c.seed, c.p, workers);
  const double q = static_cast<double>(c.p);
  const double closed = omega_n1_s<double>(ell, q, std::pow(q, s));
  const double diff = std::abs(r.estimate - closed);
  const bool ok = diff <= 3 * r.stderr_ + 1e-12;
  rep.check(kAnchorIntegral, ok,
            "ell=" + std::to_string(ell) + " s=" + io::fmt_double(s) + " p=" + std::to_string(c.p) + ": " +
                io::fmt_double(r.estimate) + " +- " + io::fmt_double(r.stderr_) + " vs closed form " + io::fmt_double(closed) +
                " (" + std::to_string(samples) + " samples)");
}

inline void suite_diag1(const RunConfig& c, int rounds, Report& rep) {
  int ok = 0;
  std::string bad;
  for (int t = 0; t < rounds; ++t) {
    const int ell = t % 4;
    const K1Sample k0 = sample_k1_haar(c.p, c.prec, derive_seed(c.seed, 9000 + static_cast<std::uint64_t>(t)));
    const PadicMatrix x = build_x1(k0.g, ell);
    const Diag1Result d = diagonalize_x1(x, c.prec);
    if (d.ell == ell)
      ++ok;
    else
      bad = "trial " + std::to_string(t) + " gave ell=" + std::to_string(d.ell) + " for " + std::to_string(ell);
  }
  rep.check(kAnchorDiag1, ok == rounds,
            "p=" + std::to_string(c.p) + " prec=" + std::to_string(c.prec) + ": " + std::to_string(ok) + "/" +
                std::to_string(rounds) + " round trips k0 x_ell k0* recovered ell" + (bad.empty() ? "" : ", " + bad));
}

// ---- verbs ----

template <class C>
void emit_poly(const TorusPoly<C>& f, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << io::torus_poly_json(f).dump(2) << "\n";
  } else if (format == "csv") {
    out << "exp,coef_num,coef_den\n";
    const json j = io::torus_poly_json(f);
    for (const auto& t : j["terms"]) {
      std::string e;
      for (const auto& v : t["exp"]) e += (e.empty() ? "" : ",") + std::to_string(v.get<int>());
      out << "\"" << e << "\",\"" << t["coef_num"].dump() << "\",\"" << t["coef_den"].dump() << "\"\n";
    }
  } else {
    out << f.str() << "\n";
  }
}

inline int verb_hl(const std::string& verb, const RunConfig& c, std::ostream& out) {
  if (verb == "qpoly" || verb == "ppoly") {
    const Parity par = parse_parity(c.parity);
    const Partition lam = parse_partition(c.lambda, c.n);
    if (verb == "qpoly")
      emit_poly(q_poly(lam, par), c.format, out);
    else
      emit_poly(p_poly(lam, par), c.format, out);
    return kOk;
  }
  if (verb == "wtilde") {
    const Partition lam = parse_partition(c.lambda, c.n);
    const Parity par = parse_parity(c.parity);
    if (c.format == "json") {
      json j;
      j["lambda"] = partition_str(lam);
      j["w_tilde"] = io::qlaurent_json(w_tilde(lam));
      j["w_tilde_short_branch"] = io::qlaurent_json(w_tilde_short_branch(lam));
      j["W_lambda"] = io::qlaurent_json(w_lambda_value(lam, par));
      out << j.dump(2) << "\n";
    } else {
      out << "w~_lambda(t = q) = " << w_tilde(lam).str() << "\n";
      out << "short m_0=0 branch = " << w_tilde_short_branch(lam).str() << "\n";
      out << "W_lambda (" << parity_str(par) << ") = " << w_lambda_value(lam, par).str() << "\n";
    }
    return kOk;
  }
  if (verb == "poincare") {
    Report rep;
    suite_poincare(c, rep);
    rep.write(out, c.format);
    return rep.exit_code();
  }
  if (verb == "eval") {
    if (c.input.empty()) throw InvalidValue("hl eval needs --input polynomial.json");
    std::ifstream in(c.input);
    if (!in) throw InvalidValue("cannot open " + c.input);
    const auto f = io::torus_poly_from_json(json::parse(in));
    std::vector<double> theta;
    std::stringstream ss(c.theta);
    std::string part;
    while (std::getline(ss, part, ',')) theta.push_back(std::stod(part));
    if (static_cast<int>(theta.size()) != f.nvars()) throw InvalidValue("--theta needs one angle per variable");
    out << io::fmt_complex(eval_unit_torus(f, theta, c.q0()), 1e-14) << "\n";
    return kOk;
  }
  throw InvalidValue("unknown hl verb " + verb);
}

inline int verb_sph(const std::string& verb, const RunConfig& c, std::ostream& out) {
  if (verb == "omega") {
    const Parity par = parse_parity(c.parity);
    const SpaceConfig cfg = SpaceConfig::make(c.n, par);
    const Partition lam = parse_partition(c.lambda, c.n);
    const SphericalValue om = omega_explicit(lam, cfg);
    json j;
    j["lambda"] = partition_str(lam);
    j["parity"] = parity_str(par);
    j["phase"] = om.phase.str();
    j["constant"] = om.constant.str();
    j["Q"] = io::torus_poly_json(om.poly);
    if (!c.at.empty()) {
      std::vector<GaussianRational> x;
      std::stringstream ss(c.at);
      std::string part;
      while (std::getline(ss, part, ';')) x.push_back(GaussianRational::parse(part));
      if (static_cast<int>(x.size()) != c.n) throw InvalidValue("--at needs n points separated by ';'");
      j["value"] = om.eval_exact(x, GaussianRational(c.q_exact())).str();
    }
    if (c.format == "json") {
      out << j.dump(2) << "\n";
    } else {
      out << "omega(x_" << partition_str(lam) << "; z) = " << om.phase.str() << " * (" << om.constant.str() << ") * Q / G\n";
      out << "Q = " << om.poly.str() << "\n";
      if (j.contains("value")) out << "value = " << j["value"].get<std::string>() << "\n";
    }
    return kOk;
  }
  Report rep;
  RunConfig cc = c;
  if (verb == "verify-feq") {
    if (!c.lambda.empty()) throw InvalidValue("verify-feq runs over all |lambda| <= --max-weight");
    suite_feq(cc, rep);
  } else if (verb == "parity-sign") {
    suite_parity_sign(cc, rep);
  } else if (verb == "identity") {
    suite_identity(cc, rep);
  } else if (verb == "n1-forms") {
    suite_n1_forms(cc, rep);
  } else {
    throw InvalidValue("unknown sph verb " + verb);
  }
  rep.write(out, c.format);
  return rep.exit_code();
}

inline int verb_plancherel(const std::string& verb, const RunConfig& c, std::ostream& out, unsigned workers) {
  if (verb == "gram") {
    const Parity par = parse_parity(c.parity);
    const SpaceConfig cfg = SpaceConfig::make(c.n, par);
    const QuadratureGrid grid = QuadratureGrid::make(cfg, c.N, c.q0(), workers);
    const MatrixReport g = gram_report(cfg, small_partitions(c), grid, 1e-8, workers);
    if (c.format == "json")
      out << io::matrix_report_json(g).dump(2) << "\n";
    else
      out << io::gram_csv(g);
    return g.passed ? kOk : kCheckFailed;
  }
  Report rep;
  if (verb == "check") {
    suite_orthogonality(c, rep, workers);
    suite_plancherel(c, rep, workers);
  } else if (verb == "inversion") {
    const Parity par = parse_parity(c.parity);
    const SpaceConfig cfg = SpaceConfig::make(c.n, par);
    const QuadratureGrid grid = QuadratureGrid::make(cfg, c.N, c.q0(), workers);
    const auto lams = small_partitions(c);
    const InversionReport inv = check_inversion(cfg, lams, lams, grid, 1e-8, workers);
    rep.check(kAnchorInversion, inv.conjugated.passed,
              "max error " + io::fmt_double(inv.conjugated.max_error) + " over " + std::to_string(lams.size() * lams.size()) +
                  " pairs");
    rep.data()["conjugated"] = io::matrix_report_json(inv.conjugated);
    rep.data()["literal"] = io::matrix_report_json(inv.literal);
    if (!inv.literal.passed) rep.note("unconjugated pairing: " + inv.literal.detail);
  } else if (verb == "rank") {
    suite_rank(c, rep);
  } else {
    throw InvalidValue("unknown plancherel verb " + verb);
  }
  rep.write(out, c.format);
  return rep.exit_code();
}

inline int verb_padic(const std::string& verb, const RunConfig& c, std::ostream& out, unsigned workers) {
  if (verb == "count-norm") {
    const Rational v = norm_count(c.p, c.xi, c.r, workers);
    const Rational want = norm_count_formula(c.p, c.r);
    if (c.format == "json") {
      json j{{"p", c.p}, {"xi", c.xi}, {"r", c.r}, {"value", v.get_str()}, {"formula", want.get_str()}, {"passed", v == want}};
      out << j.dump(2) << "\n";
    } else if (c.format == "csv") {
      out << "p,xi,r,value,formula\n" << c.p << "," << c.xi << "," << c.r << "," << v.get_str() << "," << want.get_str() << "\n";
    } else {
      out << v.get_str() << "\n";
    }
    return v == want ? kOk : kCheckFailed;
  }
  if (verb == "classify") {
    const LocalField f = LocalField::make(c.p);
    ExactMatrix x;
    if (!c.input.empty()) {
      std::ifstream in(c.input);
      if (!in) throw InvalidValue("cannot open " + c.input);
      const io::MatrixFile mf = io::matrix_from_json(json::parse(in));
      if (mf.p != c.p) throw InvalidValue("matrix file p differs from --p");
      x = mf.m;
    } else {
      const Partition lam = parse_partition(c.lambda, c.n);
      x = act(random_k(f, c.n, c.seed, 6), x_lambda(f, lam));
    }
    const bool member = is_member_X(x);
    const auto mu = invariant_factors(x, c.p);
    json j;
    j["member"] = member;
    j["invariant_factors"] = mu;
    if (member) {
      const Partition lam = classify_k_orbit(mu);
      j["lambda"] = partition_str(lam);
      j["g_orbit"] = weight(lam) % 2 ? "odd" : "even";
    }
    if (c.input.empty()) j["matrix"] = io::matrix_json(x, f);
    if (c.format == "json") {
      out << j.dump(2) << "\n";
    } else {
      out << "member of X: " << (member ? "yes" : "no") << "\n";
      out << "invariant factors: " << partition_str(mu) << "\n";
      if (member) out << "K-orbit lambda = " << j["lambda"].get<std::string>() << ", G-orbit " << j["g_orbit"].get<std::string>() << "\n";
    }
    return member ? kOk : kCheckFailed;
  }
  if (verb == "diagonalize1") {
    const LocalField f = LocalField::make(c.p);
    PadicMatrix x;
    int expect = -1;
    if (!c.input.empty()) {
      std::ifstream in(c.input);
      if (!in) throw InvalidValue("cannot open " + c.input);
      const io::MatrixFile mf = io::matrix_from_json(json::parse(in));
      if (mf.m.size != 3) throw InvalidValue("diagonalize1 needs a 3x3 matrix");
      x = PadicMatrix(3, Padic::zero(f, c.prec));
      for (int t = 0; t < 9; ++t) x.e[static_cast<std::size_t>(t)] = Padic::from_exact(mf.m.e[static_cast<std::size_t>(t)], f, c.prec);
    } else {
      if (c.ell < 0) throw InvalidValue("--ell must be >= 0");
      const K1Sample k0 = sample_k1_haar(c.p, c.prec, c.seed);
      x = build_x1(k0.g, c.ell);
      expect = c.ell;
    }
    const Diag1Result d = diagonalize_x1(x, c.prec);
    Report rep;
    if (expect >= 0)
      rep.check(kAnchorDiag1, d.ell == expect,
                "recovered ell=" + std::to_string(d.ell) + " (built with " + std::to_string(expect) + "), certified to p^" +
                    std::to_string(d.certified_precision));
    else
      rep.check(kAnchorDiag1, true, "ell=" + std::to_string(d.ell) + ", certified to p^" + std::to_string(d.certified_precision));
    rep.data()["ell"] = d.ell;
    rep.data()["steps"] = d.steps;
    rep.data()["k"] = io::matrix_json(d.k, d.certified_precision);
    if (c.format == "text") {
      rep.write(out, c.format);
      out << "steps: ";
      for (std::size_t i = 0; i < d.steps.size(); ++i) out << (i ? " | " : "") << d.steps[i];
      out << "\n";
    } else {
      rep.write(out, c.format);
    }
    return rep.exit_code();
  }
  if (verb == "mc-omega") {
    Report rep;
    suite_mc(c, c.ell, c.s, c.samples, rep, workers);
    rep.write(out, c.format);
    return rep.exit_code();
  }
  throw InvalidValue("unknown padic verb " + verb);
}

inline int verb_verify_all(const RunConfig& c0, std::ostream& out, unsigned workers) {
  RunConfig c = c0;
  c.parity = "both";
  Report rep;
  suite_macdonald(c, rep);
  suite_w_invariance(c, rep);
  suite_poincare(c, rep);
  suite_identity(c, rep);
  suite_feq(c, rep);
  suite_parity_sign(c, rep);
  suite_orthogonality(c, rep, workers);
  suite_plancherel(c, rep, workers);
  suite_rank(c, rep);
  if (c.n == 1) {
    suite_n1_forms(c, rep);
    suite_norm(c.p, 2, rep, workers);
    suite_cartan(c, rep);
    suite_mc(c, 1, 1.0, c.samples, rep, workers);
    suite_diag1(c, c.rounds, rep);
  }
  rep.write(out, c.format);
  return rep.exit_code();
}

/// argv[0] is the program name
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig c;
  CLI::App app{"Hall-Littlewood polynomials, spherical functions and Plancherel checks for unitary hermitian matrices"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags override it");
  app.add_option("--n", c.n, "rank n")->check(CLI::Range(1, 6));
  app.add_option("--parity", c.parity, "odd | even (size 2n+1 or 2n)")->check(CLI::IsMember({"odd", "even", "both"}));
  app.add_option("--lambda", c.lambda, "partition, comma-joined, e.g. 2,1");
  app.add_option("--seed", c.seed, "64-bit seed");
  app.add_option("--N", c.N, "quadrature points per axis")->check(CLI::Range(2, 4096));
  app.add_option("--q", c.q, "q0 > 1 (rational)");
  app.add_option("--p", c.p, "odd prime");
  app.add_option("--prec", c.prec, "p-adic precision")->check(CLI::Range(2, 30));
  app.add_option("--format", c.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--workers", c.workers, "worker threads (default HLSPH_WORKERS or all cores)");
  app.add_option("--max-weight", c.max_weight, "largest |lambda| in suites")->check(CLI::Range(0, 8));
  app.add_option("--trials", c.trials, "random points per exact check")->check(CLI::Range(1, 10000));
  app.add_option("--xi", c.xi, "unit mod p for count-norm");
  app.add_option("--r", c.r, "valuation for count-norm")->check(CLI::Range(0, 10));
  app.add_option("--ell", c.ell, "ell for n=1 verbs");
  app.add_option("--s", c.s, "real s >= 0 for mc-omega");
  app.add_option("--samples", c.samples, "Monte Carlo samples")->check(CLI::Range(1L, 100000000L));
  app.add_option("--rounds", c.rounds, "diagonalization round trips in verify all")->check(CLI::Range(1, 100000));
  app.add_option("--input", c.input, "input JSON file (matrix or polynomial)");
  app.add_option("--theta", c.theta, "angles for hl eval, comma-joined");
  app.add_option("--at", c.at, "evaluation point for sph omega: x_1;...;x_n as a/b+c/d*I");

  auto* hl = app.add_subcommand("hl", "Hall-Littlewood polynomials");
  hl->require_subcommand(1);
  for (const char* v : {"qpoly", "ppoly", "wtilde", "poincare", "eval"}) hl->add_subcommand(v);
  auto* sph = app.add_subcommand("sph", "spherical functions");
  sph->require_subcommand(1);
  for (const char* v : {"omega", "verify-feq", "parity-sign", "identity", "n1-forms"}) sph->add_subcommand(v);
  auto* pl = app.add_subcommand("plancherel", "orthogonality, Plancherel and inversion");
  pl->require_subcommand(1);
  for (const char* v : {"gram", "check", "inversion", "rank"}) pl->add_subcommand(v);
  auto* pa = app.add_subcommand("padic", "local-field laboratory");
  pa->require_subcommand(1);
  for (const char* v : {"count-norm", "classify", "diagonalize1", "mc-omega"}) pa->add_subcommand(v);
  auto* ver = app.add_subcommand("verify", "consolidated report");
  ver->require_subcommand(1);
  ver->add_subcommand("all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const unsigned workers = c.workers > 0 ? c.workers : default_workers();
  try {
    for (auto* group : {hl, sph, pl, pa, ver}) {
      if (!group->parsed()) continue;
      const std::string verb = group->get_subcommands().front()->get_name();
      const std::string name = group->get_name();
      if (name == "hl") return verb_hl(verb, c, out);
      if (name == "sph") return verb_sph(verb, c, out);
      if (name == "plancherel") return verb_plancherel(verb, c, out, workers);
      if (name == "padic") return verb_padic(verb, c, out, workers);
      return verb_verify_all(c, out, workers);
    }
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const PrecisionError& e) {
    err << "precision: " << e.what();
    if (e.required_precision > 0) err << " (retry with --prec >= " << e.required_precision << ")";
    err << "\n";
    return kResource;
  } catch (const InvalidValue& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    err << "bad JSON input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<const char*> argv{"hlsph"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hlsph::cli
