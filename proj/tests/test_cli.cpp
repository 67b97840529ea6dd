#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "zxs/diagram_io.hpp"

using namespace zxs;
using namespace zxs::cli;
using nlohmann::json;

namespace {

const std::string kData = ZXS_DATA_DIR;

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("zxs_cli_" + name)).string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("zx eval") {
    std::ostringstream out, err;
    CHECK(zx_eval({kData + "/cnot.zxs", ""}, out, err) == kOk);
    const json m = json::parse(out.str());
    CHECK(m["rows"] == 4);
    CHECK(m["re"][0][0].get<double>() == doctest::Approx(1 / std::sqrt(2.0)));

    std::ostringstream o2, e2;
    CHECK(zx_eval({tmp_path("nope.zxs"), ""}, o2, e2) == kBadInput);
    CHECK(e2.str().find("error") != std::string::npos);

    const std::string bad = tmp_path("bad.zxs");
    write_text_file(bad, "{\"version\": \"zxs-1\", \"nodes\": [");
    std::ostringstream o3, e3;
    CHECK(zx_eval({bad, ""}, o3, e3) == kBadInput);
    std::filesystem::remove(bad);
  }

  TEST_CASE("zx eval refuses oversized diagrams") {
    Diagram d;
    const int s = d.add_green();
    for (int i = 0; i < 13; ++i) {
      d.add_edge(d.add_input(), s);
      d.add_edge(s, d.add_output());
    }
    const std::string path = tmp_path("big.zxs");
    write_diagram(d, path);
    std::ostringstream out, err;
    CHECK(zx_eval({path, ""}, out, err) == kCapExceeded);
    SimplifyArgs a;
    a.file = path;
    CHECK(zx_simplify(a, out, err) == kCapExceeded);
    std::filesystem::remove(path);
  }

  TEST_CASE("zx simplify") {
    SimplifyArgs a;
    a.file = kData + "/t-negative.zxs";
    a.steps = true;
    std::ostringstream out, err;
    REQUIRE(zx_simplify(a, out, err) == kOk);
    const Diagram n = parse_diagram(out.str());
    CHECK(n.num_spiders() == 1);
    CHECK(err.str().find("\"rule\"") != std::string::npos);

    // already normal: byte-identical
    const std::string path = tmp_path("normal.zxs");
    write_text_file(path, out.str());
    SimplifyArgs b;
    b.file = path;
    std::ostringstream out2, err2;
    CHECK(zx_simplify(b, out2, err2) == kOk);
    CHECK(out2.str() == out.str());
    CHECK(err2.str().empty());
    std::filesystem::remove(path);

    SimplifyArgs f;
    f.fuzz = 100;
    std::ostringstream out3, err3;
    CHECK(zx_simplify(f, out3, err3) == kOk);
    CHECK(out3.str().find("100 diagrams") != std::string::npos);

    SimplifyArgs none;
    CHECK(zx_simplify(none, out3, err3) == kBadInput);
  }

  TEST_CASE("zx dot") {
    std::ostringstream out, err;
    CHECK(zx_dot({kData + "/wire.zxs", ""}, out, err) == kOk);
    CHECK(out.str().find("graph zx") == 0);
  }

  TEST_CASE("surgery sample") {
    SampleArgs a;
    a.procedure = "t-merge";
    a.state = "+";
    a.trials = 2000;
    a.seed = 4;
    std::ostringstream out, err;
    REQUIRE(surgery_sample(a, out, err) == kOk);
    const json h = json::parse(out.str());
    REQUIRE(h["histogram"].size() == 2);
    for (const auto& row : h["histogram"]) CHECK(row["frequency"].get<double>() == doctest::Approx(0.5).epsilon(0.06));
    std::ostringstream again;
    surgery_sample(a, again, err);
    CHECK(again.str() == out.str());

    a.state = "++";
    CHECK(surgery_sample(a, out, err) == kBadInput);
    a.procedure = "no-such-procedure";
    CHECK(surgery_sample(a, out, err) == kBadInput);

    a.procedure = kData + "/procedures/cnot-standard.json";
    std::ostringstream o2;
    CHECK(surgery_sample(a, o2, err) == kOk);
  }

  TEST_CASE("surface run") {
    SurfaceArgs a;
    a.config = kData + "/experiments/rough-merge-2x2-sweep.json";
    std::ostringstream out, err;
    CHECK(surface_run(a, out, err) == kOk);
    std::istringstream lines(out.str());
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
      CHECK(json::accept(line));
      ++n;
    }
    CHECK(n == 5);

    a.config = tmp_path("missing.json");
    CHECK(surface_run(a, out, err) == kBadInput);
  }

  TEST_CASE("verify") {
    VerifyArgs a;
    a.suite = "tgate";
    a.json = "-";
    std::ostringstream out, err;
    CHECK(verify(a, out, err) == kOk);
    const json doc = json::parse(out.str());
    CHECK(doc["ok"] == true);

    a.suite = "nonsense";
    CHECK(verify(a, out, err) == kBadInput);

    a.suite = "appendix";
    a.json = tmp_path("report.json");
    std::ostringstream text;
    CHECK(verify(a, text, err) == kOk);
    CHECK(text.str().find("appendix:") != std::string::npos);
    CHECK(json::parse(read_text_file(a.json))["suites"][0]["suite"] == "appendix");
    std::filesystem::remove(a.json);
  }
}
