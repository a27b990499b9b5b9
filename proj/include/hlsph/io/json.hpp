#pragma once

// Structured formats: torus polynomials and local matrices as JSON, Gram matrices as CSV.

#include <complex>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlsph/padic.hpp"
#include "hlsph/plancherel.hpp"
#include "hlsph/torus_ring.hpp"

namespace hlsph::io {

using nlohmann::json;

/// shortest round-trip-stable decimal with 15 significant digits (deterministic)
inline std::string fmt_double(double v) {
  if (v == 0) v = 0;  // drop negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

/// "re+im i" / "re-im i"
inline std::string fmt_complex(std::complex<double> z, double snap = 0) {
  double re = z.real(), im = z.imag();
  if (std::abs(re) < snap) re = 0;
  if (std::abs(im) < snap) im = 0;
  return fmt_double(re) + (std::signbit(im) && im != 0 ? "-" : "+") + fmt_double(std::abs(im)) + "i";
}

inline json qlaurent_json(const QLaurent& f) {
  json j = json::object();
  for (const auto& [e, c] : f.terms()) j[std::to_string(e)] = c.str();
  return j;
}

inline QLaurent qlaurent_from_json(const json& j) {
  if (!j.is_object()) throw InvalidValue("q-Laurent coefficient must be an object {qexp: gaussian}");
  QLaurent::Terms t;
  for (const auto& [k, v] : j.items()) {
    std::size_t used = 0;
    int e = 0;
    try {
      e = std::stoi(k, &used);
    } catch (const std::exception&) {
      throw InvalidValue("bad q exponent '" + k + "'");
    }
    if (used != k.size()) throw InvalidValue("bad q exponent '" + k + "'");
    t[e] = GaussianRational::parse(v.get<std::string>());
  }
  return QLaurent::from_terms(t);
}

inline json coef_json(const QLaurent& c, json& den) {
  den = qlaurent_json(QLaurent(1));
  return qlaurent_json(c);
}
inline json coef_json(const QFraction& c, json& den) {
  den = qlaurent_json(c.den());
  return qlaurent_json(c.num());
}

/// {"vars": n, "terms": [{"exp": [...], "coef_num": {...}, "coef_den": {...}}]}
template <class C>
json torus_poly_json(const TorusPoly<C>& f) {
  json j;
  j["vars"] = f.nvars();
  j["terms"] = json::array();
  for (const auto& [e, c] : f.terms()) {
    json t, den;
    t["exp"] = e;
    t["coef_num"] = coef_json(c, den);
    t["coef_den"] = den;
    j["terms"].push_back(t);
  }
  return j;
}

inline TorusPoly<QFraction> torus_poly_from_json(const json& j) {
  if (!j.contains("vars") || !j.contains("terms")) throw InvalidValue("polynomial JSON needs 'vars' and 'terms'");
  const int n = j.at("vars").get<int>();
  if (n < 1) throw InvalidValue("polynomial JSON: vars must be >= 1");
  TorusPoly<QFraction> f(n);
  for (const auto& t : j.at("terms")) {
    const ExpVector e = t.at("exp").get<ExpVector>();
    if (static_cast<int>(e.size()) != n) throw InvalidValue("polynomial JSON: exponent length differs from vars");
    const QLaurent num = qlaurent_from_json(t.at("coef_num"));
    const QLaurent den = t.contains("coef_den") ? qlaurent_from_json(t.at("coef_den")) : QLaurent(1);
    f.add_term(e, QFraction(num, den));
  }
  return f;
}

/// CSV with quoted comma-joined partitions as headers
inline std::string gram_csv(const MatrixReport& r, double snap = 1e-13) {
  std::ostringstream os;
  os << "\"lambda\\mu\"";
  for (const auto& l : r.lambdas) os << ",\"" << partition_str(l) << "\"";
  os << "\n";
  const std::size_t cols = r.entries.size() / std::max<std::size_t>(1, r.lambdas.size());
  for (std::size_t i = 0; i < r.lambdas.size(); ++i) {
    os << "\"" << partition_str(r.lambdas[i]) << "\"";
    for (std::size_t k = 0; k < cols; ++k) os << "," << fmt_complex(r.entries[i * cols + k].value, snap);
    os << "\n";
  }
  return os.str();
}

inline json matrix_report_json(const MatrixReport& r, double snap = 1e-13) {
  json j;
  j["passed"] = r.passed;
  j["max_error"] = fmt_double(r.max_error);
  j["rows"] = json::array();
  for (const auto& l : r.lambdas) j["rows"].push_back(partition_str(l));
  j["entries"] = json::array();
  for (const auto& e : r.entries)
    j["entries"].push_back({{"lambda", partition_str(e.lambda)},
                            {"mu", partition_str(e.mu)},
                            {"value", fmt_complex(e.value, snap)},
                            {"expected", fmt_complex(e.expected, snap)},
                            {"error", fmt_double(e.error)}});
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

// ---- local matrices ----

struct MatrixFile {
  std::string model = "exact";  // exact | residue
  long p = 3;
  long eps = 2;
  int prec = 0;
  ExactMatrix m;
};

inline json matrix_json(const ExactMatrix& m, const LocalField& f, const std::string& model = "exact", int prec = 0) {
  json j;
  j["model"] = model;
  j["p"] = f.p;
  j["eps"] = f.eps;
  j["prec"] = prec;
  j["size"] = m.size;
  j["entries"] = json::array();
  for (int i = 0; i < m.size; ++i) {
    json row = json::array();
    for (int k = 0; k < m.size; ++k) row.push_back({m(i, k).a.get_str(), m(i, k).b.get_str()});
    j["entries"].push_back(row);
  }
  return j;
}

inline json matrix_json(const ResidueMatrix& m) {
  const ResidueElem& e0 = m(0, 0);
  json j;
  j["model"] = "residue";
  j["p"] = e0.p;
  j["eps"] = e0.eps;
  j["prec"] = e0.m;
  j["size"] = m.size;
  j["entries"] = json::array();
  for (int i = 0; i < m.size; ++i) {
    json row = json::array();
    for (int k = 0; k < m.size; ++k) row.push_back({std::to_string(m(i, k).a), std::to_string(m(i, k).b)});
    j["entries"].push_back(row);
  }
  return j;
}

/// Padic entries written as residues mod p^abs (valuation folded in when >= 0)
inline json matrix_json(const PadicMatrix& m, int prec) {
  const Padic& e0 = m(0, 0);
  json j;
  j["model"] = "residue";
  j["p"] = e0.p;
  j["eps"] = e0.eps;
  j["prec"] = prec;
  j["size"] = m.size;
  j["entries"] = json::array();
  for (int i = 0; i < m.size; ++i) {
    json row = json::array();
    for (int k = 0; k < m.size; ++k) {
      const Padic& x = m(i, k);
      if (x.is_zero()) {
        row.push_back({"0", "0"});
        continue;
      }
      Rational scale = rational_pow(Rational(x.p), x.val);
      Rational a = Rational(Integer(x.ua)) * scale, b = Rational(Integer(x.ub)) * scale;
      if (x.val >= 0) {
        const Integer M(padic_detail::ipow(x.p, std::min(prec, 30)));
        Integer ai = a.get_num(), bi = b.get_num();
        mpz_fdiv_r(ai.get_mpz_t(), ai.get_mpz_t(), M.get_mpz_t());
        mpz_fdiv_r(bi.get_mpz_t(), bi.get_mpz_t(), M.get_mpz_t());
        a = Rational(ai);
        b = Rational(bi);
      }
      row.push_back({a.get_str(), b.get_str()});
    }
    j["entries"].push_back(row);
  }
  return j;
}

inline MatrixFile matrix_from_json(const json& j) {
  MatrixFile mf;
  mf.model = j.value("model", std::string("exact"));
  if (mf.model != "exact" && mf.model != "residue") throw InvalidValue("matrix model must be 'exact' or 'residue'");
  mf.p = j.at("p").get<long>();
  const LocalField f = LocalField::make(mf.p);
  mf.eps = j.value("eps", f.eps);
  if (mf.eps != f.eps) throw InvalidValue("matrix eps differs from the smallest non-residue mod p");
  mf.prec = j.value("prec", 0);
  const auto& rows = j.at("entries");
  const int n = static_cast<int>(rows.size());
  if (j.contains("size") && j.at("size").get<int>() != n) throw InvalidValue("matrix size header disagrees with entries");
  mf.m = ExactMatrix(n, ex(f, 0));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) throw InvalidValue("matrix is not square");
    for (int k = 0; k < n; ++k) {
      const auto& e = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2) throw InvalidValue("matrix entry must be an [a, b] pair");
      mf.m(i, k) = ex(f, parse_rational(e[0].get<std::string>()), parse_rational(e[1].get<std::string>()));
    }
  }
  return mf;
}

}  // namespace hlsph::io
