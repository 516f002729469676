#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "tadic/cli/json_out.hpp"
#include "tadic/cli/parse.hpp"
#include "tadic/cli/run.hpp"
#include "tadic/errors.hpp"

using namespace tadic;

namespace {

RunConfig config(const std::string& cmd, const std::string& poly, u64 p) {
  RunConfig c;
  c.command = cmd;
  c.poly = poly;
  c.p = p;
  return c;
}

Json rational(i64 n, i64 d) { return Json{{"num", std::to_string(n)}, {"den", std::to_string(d)}}; }

}  // namespace

TEST_CASE("parse the Sperber polynomial") {
  auto F = FieldCtx::build(3, 1);
  const auto f = parse_laurent("x1 + x2 + x1^-1*x2^-1", F);
  CHECK(f.n == 2);
  REQUIRE(f.terms.size() == 3);
  CHECK(f.terms.at(Point{1, 0}) == 1);
  CHECK(f.terms.at(Point{0, 1}) == 1);
  CHECK(f.terms.at(Point{-1, -1}) == 1);
}

TEST_CASE("coefficients: integers mod p, generator powers, signs, merges") {
  auto F4 = FieldCtx::build(2, 2);
  const auto f = parse_laurent("g^1*x1^3", F4);
  CHECK(f.terms.at(Point{3}) == F4->generator());

  auto F5 = FieldCtx::build(5, 1);
  const auto h = parse_laurent("  7*x1*x2^2 - x1 + 3 ", F5);
  CHECK(h.terms.at(Point{1, 2}) == 2);
  CHECK(h.terms.at(Point{1, 0}) == 4);
  CHECK(h.terms.at(Point{0, 0}) == 3);

  const auto merged = parse_laurent("x1*x1 + 2*x1^2", F5);
  CHECK(merged.terms.at(Point{2}) == 3);
  const auto g = parse_laurent("-g^2", F5);
  CHECK(g.terms.at(Point{0}) == F5->neg(F5->exp(2)));
}

TEST_CASE("parse errors carry byte offsets") {
  auto F2 = FieldCtx::build(2, 1);
  try {
    parse_laurent("2*x1", F2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 0);
  }
  try {
    parse_laurent("x1 + * x2", F2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);
  }
  CHECK_THROWS_AS(parse_laurent("x1 + x1", F2), ParseError);  // 1 + 1 = 0 in F_2
  CHECK_THROWS_AS(parse_laurent("y1", F2), ParseError);
  CHECK_THROWS_AS(parse_laurent("x0", F2), ParseError);
  CHECK_THROWS_AS(parse_laurent("x1 x2", F2), ParseError);
  CHECK_THROWS_AS(parse_laurent("x3", F2, 2), DomainError);
}

TEST_CASE("hodge on x^3 over F_7") {
  auto c = config("hodge", "x1^3", 7);
  c.K = 2;
  const auto doc = run(c);
  const auto& hp = doc["result"]["hodge_polygon"];
  const Json expect = Json::array({Json::array({rational(0, 1), rational(0, 1)}), Json::array({rational(1, 1), rational(0, 1)}),
                                   Json::array({rational(2, 1), rational(2, 1)}), Json::array({rational(3, 1), rational(6, 1)})});
  CHECK(hp["vertices"] == expect);
  CHECK(doc["result"]["hodge_absolute"]["vertices"][2][1] == rational(1, 3));
}

TEST_CASE("verify trace on f = x over F_2") {
  auto c = config("verify", "x1", 2);
  c.what = "trace";
  c.M = 6;
  c.N = 6;
  const auto doc = run(c);
  CHECK(doc["result"]["pass"] == true);
  CHECK(doc["result"]["modulus"].get<std::string>().rfind("pi^", 0) == 0);
}

TEST_CASE("np reports polygons with certification bounds and flags") {
  auto c = config("np", "x1 + x2 + x1^-1*x2^-1", 3);
  c.M = 5;
  c.N = 12;
  c.deg_s = 3;
  const auto doc = run(c);
  const auto& r = doc["result"];
  for (const char* key : {"np_T", "hp_q", "hp_absolute"}) CHECK(r[key].contains("certified_upto"));
  CHECK(r["psi"][0]["np"].contains("certified_upto"));
  CHECK(r["psi"][0]["ordinary"]["value"] == "true");
}

TEST_CASE("output is byte-identical across runs") {
  for (const char* cmd : {"hodge", "cfun", "np", "faces", "survey"}) {
    auto c = config(cmd, "x1 + x2 + x1^-1*x2^-1", 3);
    c.M = 4;
    c.N = 8;
    c.deg_s = 2;
    c.samples = 2;
    CHECK(run(c).dump() == run(c).dump());
  }
}

TEST_CASE("series serialization keeps exponents ascending and residues as strings") {
  auto Z = make_zp(5, 3);
  PowerSeries s(Z, 4);
  s.set(0, 1);
  s.set(3, 124);
  const auto j = to_json(s);
  CHECK(j["coeffs"].dump() == R"({"0":"1","3":"124"})");
  CHECK(j["trunc"] == 4);
  CHECK(to_json(Rational(-3, 6)) == rational(-1, 2));
}

TEST_CASE("argument parsing: config file with flags taking precedence") {
  const std::string path = "test_cli_config.ini";
  {
    std::ofstream out(path);
    out << "p = 5\nprec-p = 3\nhodge-depth = 6\n";
  }
  RunConfig cfg;
  const char* argv[] = {"tadic", "hodge", "x1^2", "--config", path.c_str(), "--p", "7", "--k", "2..4", "--m", "1", "2"};
  CHECK(parse_args(12, argv, cfg) == -1);
  std::remove(path.c_str());
  CHECK(cfg.p == 7);
  CHECK(cfg.M == 3);
  CHECK(cfg.K == 6);
  CHECK(cfg.k_lo == 2);
  CHECK(cfg.k_hi == 4);
  CHECK(cfg.m_list == std::vector<int>{1, 2});
  CHECK(cfg.poly == "x1^2");
}

TEST_CASE("exit codes by error kind") {
  CHECK(exit_code_for(PrecisionUnderflow("x")) == 2);
  CHECK(exit_code_for(TheoremViolation("x")) == 3);
  CHECK(exit_code_for(IntegralityViolation("x")) == 3);
  CHECK(exit_code_for(DomainError("x")) == 1);

  auto c = config("verify", "x1", 3);
  c.what = "interpolation";
  c.m_list = {2};
  c.N = 10;
  try {
    run(c);
    FAIL("expected precision underflow");
  } catch (const std::exception& e) {
    CHECK(exit_code_for(e) == 2);
  }
}
