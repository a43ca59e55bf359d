#include <doctest.h>

#include "gkz/cli.hpp"
#include "gkz/errors.hpp"

using namespace gkz;
using namespace gkz::cli;

namespace {

const char *kF2B = R"([[1,0],[-1,0],[0,1],[0,-1],[-1,-1],[1,0],[0,1]])";
const char *kF2A = R"([[1,1,0,0,0,0,0],[0,0,1,1,0,0,0],[0,0,0,0,1,1,1],[0,1,0,0,0,1,0],[0,0,0,1,0,0,1]])";

json request(const std::string &command, const std::string &extra = {}) {
  return json::parse("{\"command\":\"" + command + "\"" + (extra.empty() ? "" : "," + extra) + "}");
}

std::string path_of(const json &doc) {
  try {
    parse_request(doc);
  } catch (const InputError &e) {
    return e.path();
  }
  return "<accepted>";
}

} // namespace

TEST_CASE("parse_request examples") {
  auto r = parse_request(request("classify", std::string("\"gale_B\":") + kF2B));
  CHECK(r.command == "classify");
  REQUIRE(r.B);
  CHECK(r.B->size() == 7);
  CHECK(r.B->is_rational());

  auto c = parse_request(request("cayley", std::string("\"matrix_A\":") + kF2A));
  REQUIRE(c.A);
  CHECK(c.A->rows() == 5);

  CHECK(path_of(request("classify")) == "gale_B");
  CHECK(path_of(json::parse("{}")) == "command");
  CHECK(path_of(request("classify", R"("gale_B":[[1,0],[0,"1/0"]])")) == "gale_B[1][1]");
  CHECK(path_of(request("residue", R"("params":{"c":[1,1,0]})")) == "params.c[2]");
  CHECK(path_of(request("residue", R"("params":{"gamma":[1,"x"]})")) == "params.gamma[1]");
  CHECK(path_of(request("stability", R"("params":{"function":{"nvars":2,"numerator":{"terms":[{"exp":[1],"coeff":"1"}]}}})")) ==
        "params.function.numerator.terms[0].exp");
  CHECK(path_of(request("gale", std::string("\"matrix_A\":[[1,1,1]],\"gale_B\":[[1,0],[0,1],[1,1]]"))) == "gale_B");
  CHECK(path_of(request("classify", R"("gale_B":[[1,0]],"bogus":1)")) == "bogus");
  CHECK_THROWS_AS(parse_request(std::string("{\"command\":")), InputError);
}

TEST_CASE("run examples and exit codes") {
  auto rep = run(parse_request(request("classify", std::string("\"gale_B\":") + kF2B)));
  CHECK(rep.exit_code == 0);
  CHECK(rep.result["label"] == "d");
  CHECK(rep.result["parts"] == json::parse("[[1,2],[3,4],[5,6,7]]"));

  auto ej = run(parse_request(request("ej-test", R"("params":{"c":[1,1,1],"a":[0,0]})")));
  CHECK(ej.exit_code == 0);
  CHECK(ej.result["in_cone"] == false);
  auto ej2 = run(parse_request(request("ej-test", R"("params":{"a":[1,1]})")));
  CHECK(ej2.result["in_cone"] == true);

  // five vectors on one line out of seven
  auto bad = run(parse_request(request("classify", R"("gale_B":[[1,0],[2,0],[-1,0],[-2,0],[3,0],[0,1],[-3,-1]])")));
  CHECK(bad.exit_code == 1);
  REQUIRE(bad.diagnostics.size() == 1);
  CHECK(bad.diagnostics[0]["message"] == "distinct_dual failed");
  CHECK(bad.result.is_null());

  auto none = run_text(R"({"command":"classify"})", 0);
  CHECK(none.exit_code == 2);
  CHECK(none.diagnostics[0]["path"] == "gale_B");
  CHECK(run_text("{", 0, "classify").exit_code == 2);
  CHECK(run_text(R"({"command":"gale","matrix_A":[[1,1]]})", 0, "classify").exit_code == 2);

  auto cay = run(parse_request(request("cayley", std::string("\"matrix_A\":") + kF2A)));
  CHECK(cay.result["essential"] == true);
  CHECK(cay.result["system"]["gamma"] == json::parse("[1,1]"));
}

TEST_CASE("reports are deterministic") {
  for (const auto &text : {std::string(R"({"command":"fixtures"})"),
                           std::string(R"({"command":"residue","params":{"order":4,"oracle_samples":1}})"),
                           std::string(R"({"command":"arrangement","params":{"degree":[-1,-1,-2,-1,-1]}})"),
                           std::string(R"({"command":"validate","gale_B":)") + kF2B + "}"}) {
    auto a = run_text(text, 3).to_json().dump();
    auto b = run_text(text, 3).to_json().dump();
    CHECK(a == b);
    CHECK(run_text(text, 3).exit_code == 0);
  }
  // the seed reaches the sampled check
  auto s1 = run_text(R"({"command":"residue","params":{"order":24,"oracle_samples":1}})", 1).to_json();
  auto s2 = run_text(R"({"command":"residue","params":{"order":24,"oracle_samples":1}})", 2).to_json();
  CHECK(s1["seed"] == 1);
  CHECK(s1["result"]["oracle"] != s2["result"]["oracle"]);
  CHECK(s1["result"]["oracle"][0]["abs_error"].get<double>() < 1e-8);
}

TEST_CASE("series and function serialization round trip") {
  auto fx = f2_fixtures();
  for (const auto &[name, f] : fx) {
    auto j = to_json(f);
    auto back = parse_function(j, "f");
    CHECK(back == f);
  }
  auto rep = run_text(R"({"command":"residue","params":{"order":3}})", 0);
  REQUIRE(rep.exit_code == 0);
  const auto &terms = rep.result["series"]["terms"];
  REQUIRE(terms.size() > 1);
  for (std::size_t i = 1; i < terms.size(); ++i)
    CHECK(terms[i - 1]["exp"].get<std::vector<int>>() < terms[i]["exp"].get<std::vector<int>>());
  auto poly = parse_polynomial(json{{"terms", terms}}, "s", 7);
  CHECK(poly.size() == terms.size());
}

TEST_CASE("scalar JSON") {
  CHECK(to_json(Scalar(Rational(3, 4))) == "3/4");
  CHECK(to_json(Scalar(Rational(-5))) == "-5");
  auto nf = parse_scalar(json::parse(R"({"coeffs":["0","1"],"minpoly":[-1,-2,1,1]})"), "x");
  CHECK(nf.kind() == ScalarKind::NumberField);
  CHECK(nf.to_double() == doctest::Approx(1.2469796037));
  auto j = to_json(nf);
  CHECK(parse_scalar(j, "x") == nf);
  // golden ratio field: largest real root chosen when no embedding is given
  auto g = parse_scalar(json::parse(R"({"coeffs":["0","1"],"minpoly":[-1,-1,1]})"), "x");
  CHECK(g.to_double() == doctest::Approx(1.6180339887));
  auto g2 = parse_scalar(json::parse(R"({"coeffs":["0","1"],"minpoly":[-1,-1,1],"embedding":-0.6})"), "x");
  CHECK(g2.to_double() == doctest::Approx(-0.6180339887));
  CHECK_THROWS_AS(parse_scalar(json::parse(R"({"coeffs":["1"],"minpoly":[1,0,1]})"), "x"), InputError);
  CHECK(parse_scalar(json::parse("0.5"), "x").kind() == ScalarKind::Numeric);
  CHECK_THROWS_AS(parse_scalar(json::parse("\"1/0\""), "x"), InputError);
}
