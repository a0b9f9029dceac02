#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "paraprod/cli.hpp"

using namespace paraprod;
using namespace paraprod::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "paraprod");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return std::string(PARAPROD_TEST_TMP) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("lpcheck passes on default and minimal grids", "[lpcheck]") {
  const Outcome a = invoke({"lpcheck"});
  CHECK(a.code == kExitOk);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["status"] == "pass");
  CHECK(j["command"] == "lpcheck");
  CHECK(invoke({"lpcheck", "--grid-size", "16", "--jmin", "0", "--jmax", "2"}).code == kExitOk);
}

TEST_CASE("configuration errors exit 2 with a JSON record", "[errors]") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"lpcheck", "--jmax", "9"},
           {"lpcheck", "--grid-size", "100"},
           {"paraproduct", "--exponents", "2:2"},
           {"paraproduct", "--symbol", "what:1"},
           {"carleson", "--symbol", "lacunary:9:1"},
           {"rellich"},
           {"rellich", "--K", "1,x"},
           {"examples", "square"},
           {"lpcheck", "--config", "/nonexistent.json"}}) {
    const Outcome o = invoke(args);
    CHECK(o.code == kExitConfig);
    if (args.front() != "examples" || o.err.find('{') == 0) {
      const auto j = nlohmann::json::parse(o.err.substr(0, o.err.find('\n')));
      CHECK(j["status"] == "config_error");
      CHECK(j["exit_code"] == 2);
    }
  }
  CHECK(invoke({}).code == kExitConfig);
  CHECK(invoke({"bogus"}).code == kExitConfig);
}

TEST_CASE("paraproduct report for the canonical symbols", "[paraproduct]") {
  for (const char* sym : {"cos:1", "zero", "bump:0.5:0.25", "lacunary:8:42"}) {
    const Outcome o = invoke({"paraproduct", "--symbol", sym, "--trials", "10"});
    INFO(sym);
    CHECK(o.code == kExitOk);
    const auto j = nlohmann::json::parse(o.out);
    for (const auto& c : j["checks"]) {
      INFO(c.dump());
      CHECK(c["pass"] == true);
    }
  }
}

TEST_CASE("carleson profiles", "[carleson]") {
  const Outcome smooth = invoke({"carleson", "--grid-size", "1024", "--jmax", "8", "--format", "csv"});
  REQUIRE(smooth.code == kExitOk);
  CHECK(smooth.out.rfind("level,value\n0,", 0) == 0);
  const auto j = nlohmann::json::parse(invoke({"carleson", "--grid-size", "1024", "--jmax", "8"}).out);
  CHECK(j["summary"]["tail_over_head"].get<double>() < 0.05);
  const auto z = nlohmann::json::parse(invoke({"carleson", "--symbol", "zero"}).out);
  for (const auto& row : z["tables"]["profile"]["rows"]) CHECK(row[1] == 0.0);
}

TEST_CASE("examples and rellich", "[examples]") {
  for (const char* name : {"pairing", "bessel", "diagonal"}) {
    INFO(name);
    CHECK(invoke({"examples", name, "--M", "16"}).code == kExitOk);
  }
  const Outcome r = invoke({"rellich", "--s", "1", "--K", "1,2,4,8,16,32,64,128,256", "--format", "csv"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("K,formula_value,operator_value", 0) == 0);
}

TEST_CASE("config file overrides flags", "[config]") {
  const std::string path = tmp("override.json");
  std::ofstream(path) << R"({"grid_size": 64, "jmax": 3, "symbol": "cos:2"})";
  const Outcome o = invoke({"lpcheck", "--grid-size", "512", "--jmax", "6", "--config", path});
  REQUIRE(o.code == kExitOk);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["config"]["grid_size"] == 64);
  CHECK(j["config"]["jmax"] == 3);
  CHECK(j["config"]["symbol"] == "cos:2");

  std::ofstream(tmp("broken.json")) << "{ grid";
  CHECK(invoke({"lpcheck", "--config", tmp("broken.json")}).code == kExitConfig);
}

TEST_CASE("identical configurations give byte-identical reports", "[determinism]") {
  for (const char* fmt : {"csv", "json"}) {
    const std::string a = tmp(std::string("det_a.") + fmt), b = tmp(std::string("det_b.") + fmt);
    for (const auto& out : {a, b})
      REQUIRE(invoke({"paraproduct", "--symbol", "bump:0.3:0.2", "--trials", "5", "--seed", "7", "--format", fmt,
                      "--out", out})
                  .code == kExitOk);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
  }
  // the seed matters
  const Outcome s1 = invoke({"paraproduct", "--trials", "3", "--seed", "1"});
  const Outcome s2 = invoke({"paraproduct", "--trials", "3", "--seed", "2"});
  CHECK(s1.out != s2.out);
}

TEST_CASE("symbol language", "[symbol]") {
  const TorusGrid g(64);
  CHECK(make_symbol("zero", g).max_abs() == 0.0);
  CHECK(std::abs(make_symbol("cos:3", g)[0] - cplx(1.0)) < 1e-15);
  const TorusField bump = make_symbol("bump:0.5:0.25", g);
  CHECK(bump[32] == cplx(1.0));
  CHECK(bump[0] == cplx(0.0));
  const TorusField lac = make_symbol("lacunary:4:3", g);
  CHECK(std::abs(lac.mean()) < 1e-15);
  CHECK(std::abs(lp_norm(lac, 2.0) - std::sqrt(8.0)) < 1e-12);
  // the top block may sit on N/2, where e_{N/2} + e_{-N/2} samples to 2 (-1)^i
  const TorusField top = make_symbol("lacunary:5:3", g);
  CHECK(std::abs(lp_norm(top, 2.0) - std::sqrt(12.0)) < 1e-12);
  CHECK(std::abs(std::abs(top[0] - top[1] - (lac[0] - lac[1])) - 4.0) < 1e-12);
  CHECK_THROWS_AS(make_symbol("lacunary:6:3", g), ConfigError);
  CHECK_THROWS_AS(make_symbol("cos:32", g), ConfigError);
  CHECK_THROWS_AS(make_symbol("bump:0.5:0.9", g), ConfigError);
  CHECK_THROWS_AS(make_symbol("file:/nonexistent", g), ConfigError);

  const std::string path = tmp("samples.txt");
  {
    std::ofstream f(path);
    for (int i = 0; i < 64; ++i) f << (i % 2 ? -1.5 : 1.5) << '\n';
  }
  CHECK(make_symbol("file:" + path, g)[1] == cplx(-1.5));
  CHECK_THROWS_AS(make_symbol("file:" + path, TorusGrid(32)), ConfigError);
}

TEST_CASE("exponent parsing and report formatting", "[format]") {
  const auto e = parse_exponents("4:4,3:6");
  REQUIRE(e.size() == 2);
  CHECK(e[1] == std::pair{3.0, 6.0});
  CHECK_THROWS_AS(parse_exponents("4"), ConfigError);
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  const Check c = make_check("x", "", 1.0, "<", 1.0);
  CHECK_FALSE(c.pass);
  CHECK(make_check("x", "", 1.0, "<=", 1.0).pass);
}
