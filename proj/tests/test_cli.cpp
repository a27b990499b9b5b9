#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "hlsph/cli.hpp"

using hlsph::cli::run;
using nlohmann::json;

namespace {

struct Out {
  int rc;
  std::string out, err;
};

Out call(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  const int rc = run(args, o, e);
  return {rc, o.str(), e.str()};
}

const std::string samples = HLSPH_SAMPLES_DIR;

}  // namespace

TEST(Cli, QPolyRankOne) {
  const Out r = call({"hl", "qpoly", "--n", "1", "--parity", "odd", "--lambda", "1"});
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.out, "x + x^-1\n");
}

TEST(Cli, CountNorm) {
  const Out r = call({"padic", "count-norm", "--p", "3", "--xi", "1", "--r", "0"});
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.out, "5/9\n");
  const Out j = call({"padic", "count-norm", "--p", "5", "--xi", "2", "--r", "2", "--format", "json"});
  EXPECT_EQ(j.rc, 0);
  EXPECT_EQ(json::parse(j.out)["value"], "24/625");
}

TEST(Cli, VerifyAllRankOne) {
  const Out r = call({"verify", "all", "--n", "1", "--q", "3", "--seed", "7", "--workers", "1"});
  EXPECT_EQ(r.rc, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> a{"padic", "mc-omega", "--ell", "1", "--s", "1", "--samples", "3000", "--seed", "5", "--format", "json"};
  auto w1 = a, w3 = a;
  w1.insert(w1.end(), {"--workers", "1"});
  w3.insert(w3.end(), {"--workers", "3"});
  EXPECT_EQ(call(w1).out, call(w1).out);
  EXPECT_EQ(call(w1).out, call(w3).out);
  const std::vector<std::string> c{"padic", "classify", "--n", "2", "--lambda", "2,1", "--seed", "9", "--format", "json"};
  EXPECT_EQ(call(c).out, call(c).out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({"hl", "qpoly", "--bogus"}).rc, 2);
  EXPECT_EQ(call({}).rc, 2);
  EXPECT_EQ(call({"hl", "qpoly", "--n", "1", "--lambda", "0,1"}).rc, 2);
  EXPECT_EQ(call({"hl", "qpoly", "--n", "1", "--lambda", "1", "--parity", "sideways"}).rc, 2);
  EXPECT_EQ(call({"padic", "count-norm", "--p", "9"}).rc, 2);
  const Out big = call({"padic", "count-norm", "--p", "5", "--xi", "1", "--r", "6"});
  EXPECT_EQ(big.rc, 3);
  EXPECT_NE(big.err.find("resource"), std::string::npos);
  EXPECT_EQ(call({"padic", "mc-omega", "--ell", "6", "--prec", "12"}).rc, 3);
}

TEST(Cli, ClassifyReportsLambda) {
  const Out r = call({"padic", "classify", "--n", "2", "--lambda", "2,1", "--seed", "3", "--format", "json"});
  ASSERT_EQ(r.rc, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["lambda"], "2,1");
  EXPECT_EQ(j["g_orbit"], "odd");
  EXPECT_TRUE(j["member"].get<bool>());
}

TEST(Cli, SampleFiles) {
  const Out e = call({"hl", "eval", "--input", samples + "/p_lambda1.json", "--theta", "0", "--q", "3"});
  EXPECT_EQ(e.rc, 0) << e.err;
  EXPECT_EQ(e.out, "2+0i\n");  // x + 1/x at x = 1
  const Out c = call({"padic", "classify", "--p", "3", "--input", samples + "/x1_lambda1.json", "--format", "json"});
  EXPECT_EQ(c.rc, 0) << c.err;
  EXPECT_EQ(json::parse(c.out)["lambda"], "1");
  const Out d = call({"padic", "diagonalize1", "--p", "3", "--input", samples + "/x1_lambda1.json", "--format", "json"});
  EXPECT_EQ(d.rc, 0) << d.err;
  EXPECT_EQ(json::parse(d.out)["data"]["ell"], 1);
  const Out v = call({"--config", samples + "/verify_n1.cfg", "verify", "all", "--workers", "1"});
  EXPECT_EQ(v.rc, 0) << v.out << v.err;
  EXPECT_EQ(call({"hl", "eval", "--input", samples + "/missing.json", "--theta", "0"}).rc, 2);
}

TEST(Cli, OtherVerbsRun) {
  EXPECT_EQ(call({"hl", "wtilde", "--n", "2", "--lambda", "1,1"}).rc, 0);
  EXPECT_EQ(call({"hl", "poincare", "--n", "2"}).rc, 0);
  EXPECT_EQ(call({"sph", "omega", "--n", "1", "--lambda", "1", "--at", "2"}).rc, 0);
  EXPECT_EQ(call({"sph", "verify-feq", "--n", "1"}).rc, 0);
  EXPECT_EQ(call({"sph", "parity-sign", "--n", "2"}).rc, 0);
  EXPECT_EQ(call({"sph", "identity", "--n", "2"}).rc, 0);
  EXPECT_EQ(call({"plancherel", "gram", "--n", "1", "--format", "csv"}).rc, 0);
  EXPECT_EQ(call({"plancherel", "check", "--n", "1"}).rc, 0);
  EXPECT_EQ(call({"plancherel", "inversion", "--n", "1"}).rc, 0);
  EXPECT_EQ(call({"plancherel", "rank", "--n", "2"}).rc, 0);
  EXPECT_EQ(call({"padic", "diagonalize1", "--p", "5", "--ell", "3", "--seed", "2"}).rc, 0);
}
