#include <doctest.h>

#include <json.hpp>

#include "zxs/verify.hpp"

using namespace zxs;
using nlohmann::json;

TEST_SUITE("verify") {
  TEST_CASE("expectation table covers every CNOT branch") {
    const auto t = cnot_expectations();
    // standard and roughsplit: 2 conventions x 2 branches; bellpair: 4 x 4;
    // the two capped variants: 2 x 4 each
    CHECK(t.size() == 4 + 4 + 16 + 8 + 8);
    for (const auto& e : t) {
      const Matrix m = dressed_cnot(e);
      CHECK(max_abs_diff(matmul(adjoint(m), m), cplx(e.scale * e.scale, 0) * Matrix::identity(4)) < 1e-14);
    }
  }

  TEST_CASE("algebraic suites pass") {
    for (const std::string name : {"cnot", "tgate", "appendix", "model"}) {
      const auto reps = run_suite(name);
      REQUIRE(reps.size() == 1);
      CAPTURE(name);
      for (const auto& c : reps[0].cases) {
        CAPTURE(c.id);
        CHECK(c.pass);
        CHECK_FALSE(c.anchor.empty());
      }
    }
    CHECK(run_suite("cnot")[0].cases.size() >= 40);
  }

  TEST_CASE("report JSON is well formed and deterministic") {
    const auto reps = run_suite("appendix", 3);
    const std::string a = report_to_json(reps);
    CHECK(a == report_to_json(run_suite("appendix", 3)));
    const json doc = json::parse(a);
    CHECK(doc["ok"] == true);
    REQUIRE(doc["suites"].size() == 1);
    const json& s = doc["suites"][0];
    CHECK(s["suite"] == "appendix");
    std::size_t passed = 0;
    for (const auto& c : s["cases"]) {
      for (const char* key : {"id", "anchor", "mode", "max_error", "pass"}) CHECK(c.contains(key));
      passed += c["pass"].get<bool>();
    }
    CHECK(s["summary"]["total"] == s["cases"].size());
    CHECK(s["summary"]["passed"] == passed);
    CHECK(s["summary"]["failed"] == s["cases"].size() - passed);
  }

  TEST_CASE("text report and names") {
    const auto reps = run_suite("tgate");
    const std::string text = report_to_text(reps);
    CHECK(text.find("== tgate") == 0);
    CHECK(text.find("FAIL") == std::string::npos);
    CHECK(suite_names().size() == 6);
    CHECK_THROWS_AS(run_suite("everything"), std::invalid_argument);
  }
}
