#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "orlicz/cli.hpp"
#include "orlicz/io.hpp"

using namespace orlicz;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("orlicz_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("syntax errors carry line and column") {
    try {
      JsonDoc::parse("{\n  \"a\": 1,\n  \"b\" 2\n}", "cfg.json");
      FAIL("no throw");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).rfind("cfg.json:3:", 0) == 0);
    }
  }

  TEST_CASE("semantic errors point at the offending value") {
    auto d = JsonDoc::parse("{\"n\": 2,\n \"young\": {\"family\": \"power\",\n   \"p\": \"four\"}}", "x.json");
    try {
      parse_young(d, "/young");
      FAIL("no throw");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 9);
    }
    CHECK_THROWS_AS(parse_gauge(JsonDoc::parse("{\"g\": {\"family\": \"zeta\"}}"), "/g", 2), ParseError);
  }

  TEST_CASE("family parsers") {
    auto d = JsonDoc::parse(R"({"a": {"family": "powerlog", "p": 2, "q": 3},
                                "g": {"family": "logpower", "beta": -1},
                                "c": [{"level": 2, "coords": [1, 3]}]})");
    auto A = parse_young(d, "/a");
    CHECK(A.family() == "powerlog");
    CHECK(A.param("q") == 3.0);
    auto g = parse_gauge(d, "/g", 2);
    CHECK(g.family() == "logpower");
    auto c = parse_cubes(d, "/c", 2);
    CHECK(c.size() == 1);
    CHECK(d.number_or("/missing", 7.0) == 7.0);
  }

  TEST_CASE("point files") {
    auto dir = scratch("points");
    write(dir / "p.csv", "# header\n0.1, 0.2\n\n0.3,0.4\n");
    CHECK(load_point_csv((dir / "p.csv").string(), 2).size() == 4);
    write(dir / "bad.csv", "0.1,0.2\n0.1;0.2\n");
    try {
      load_point_csv((dir / "bad.csv").string(), 2);
      FAIL("no throw");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 4);
    }
  }

  TEST_CASE("hash and number formatting") {
    CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
    CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(-kInf) == "-inf");
    CHECK(format_number(std::nan("")) == "nan");
  }
}

TEST_SUITE("cli") {
  TEST_CASE("distort writes a hashed CSV and a sidecar") {
    auto dir = scratch("distort");
    write(dir / "c.json", R"({"n": 2, "young": {"family": "power", "p": 4},
                              "gauge": {"family": "power", "alpha": 1}, "samples": 30})");
    RunConfig cfg;
    cfg.command = "distort";
    cfg.config_path = (dir / "c.json").string();
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == kExitOk);
    const std::string csv = slurp(dir / "distort.csv");
    CHECK(csv.rfind("# orlicz-distort distort config_hash=", 0) == 0);
    CHECK(csv.find("\nr,psi,J_inverse,phi,psi_over_phi") != std::string::npos);
    auto side = Json::parse(slurp(dir / "distort.json"));
    CHECK(side["fitted_slope"].get<double>() == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
    CHECK(side["stability"] == "vanishing");

    cfg.kappa = 2.0;
    std::ostringstream out2;
    REQUIRE(run(cfg, out2, err) == kExitOk);
    CHECK(slurp(dir / "distort.csv").substr(0, 60) != csv.substr(0, 60));
  }

  TEST_CASE("malformed configs exit 2 with a position") {
    auto dir = scratch("malformed");
    write(dir / "c.json", "{\"n\": 2,\n \"young\": {\"family\": \"power\", \"p\": 4},\n \"gauge\": 3}");
    RunConfig cfg;
    cfg.command = "distort";
    cfg.config_path = (dir / "c.json").string();
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == kExitMalformed);
    CHECK(err.str().find("c.json:3:") != std::string::npos);
  }

  TEST_CASE("borderline gauge gives an inconclusive-free verdict for known pairs") {
    auto dir = scratch("stable");
    write(dir / "c.json", R"({"n": 2, "young": {"family": "exp", "gamma": 1},
                              "gauge": {"family": "power", "alpha": 1}})");
    RunConfig cfg;
    cfg.command = "distort";
    cfg.config_path = (dir / "c.json").string();
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == kExitOk);
    CHECK(Json::parse(slurp(dir / "distort.json"))["stability"] == "stable");
  }

  TEST_CASE("netmeasure from a point file") {
    auto dir = scratch("net");
    write(dir / "pts.csv", "0.1,0.1\n0.8,0.3\n0.81,0.31\n");
    write(dir / "c.json", R"({"dim": 2, "gauge": {"family": "power", "alpha": 1.2},
                              "points": "pts.csv", "level": 4})");
    RunConfig cfg;
    cfg.command = "netmeasure";
    cfg.config_path = (dir / "c.json").string();
    cfg.out_dir = dir.string();
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == kExitOk);
    CHECK(fs::exists(dir / "netmeasure.csv"));
    CHECK(fs::exists(dir / "netmeasure.json"));
  }

  TEST_CASE("unknown subcommands are rejected by the parser") {
    const char* argv[] = {"orlicz-distort", "frobnicate"};
    CHECK(cli_main(2, const_cast<char**>(argv)) == kExitMalformed);
  }
}
