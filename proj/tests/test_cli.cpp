#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hardy/report.hpp"

using namespace hardy;
namespace fs = std::filesystem;

namespace {

const char* kUnit = R"({
  "interval": [0, 1],
  "exponents": {"p": 1, "q": 1, "r": 1},
  "weights": {
    "u": {"kind": "power", "c": 1, "alpha": 0},
    "v": {"kind": "power", "c": 1, "alpha": 0},
    "w": {"kind": "power", "c": 1, "alpha": 0}
  },
  "oracle": {"enabled": true, "grid_n": 128, "restarts": 2, "iters": 200, "seed": 1}
})";

std::string with(const std::string& from, const std::string& to) {
  std::string s = kUnit;
  s.replace(s.find(from), from.size(), to);
  return s;
}

fs::path write_tmp(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "hardy_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HARDY_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string message_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("configuration errors name the place") {
  const std::string syntax = message_of("{\n  \"interval\": [0, 1],\n  oops\n}");
  CHECK(syntax.find("line 3") != std::string::npos);
  CHECK(syntax.find("column") != std::string::npos);
  CHECK(message_of(with("\"oracle\"", "\"bogus\": 1, \"oracle\"")).find("'bogus'") !=
        std::string::npos);
  CHECK(message_of(with("\"p\": 1", "\"p\": -1")).find("exponents") != std::string::npos);
  CHECK(message_of(with("\"alpha\": 0", "\"alpha\": \"x\"")).find("weights.u") !=
        std::string::npos);
}

TEST_CASE("reports round-trip byte for byte") {
  const Report rep = run_check(parse_config(kUnit));
  const std::string text = serialize(rep);
  CHECK(serialize(parse_report(text)) == text);
  REQUIRE(rep.sandwich_ratio.has_value());
  CHECK(*rep.sandwich_ratio == doctest::Approx(1.0).epsilon(0.02));
  CHECK(rep.verdict == Verdict::holds);
}

TEST_CASE("exit codes") {
  Run ok = run("check " + write_tmp("unit.json", kUnit).string());
  CHECK(ok.code == 0);
  CHECK(ok.out.find("\"case\": \"I\"") != std::string::npos);
  CHECK(ok.out.find("\"sandwich_ratio\"") != std::string::npos);

  CHECK(run("check --no-oracle " +
            write_tmp("grow.json", with("\"q\": 1", "\"q\": 2")).string())
            .code == 1);
  Run triv = run("check " + write_tmp("triv.json", with("\"r\": 1", "\"r\": 1.5")).string());
  CHECK(triv.code == 2);
  CHECK(triv.out.find("trivial-weights-only") != std::string::npos);

  // w = (1-t)^-2 is not integrable near 1, so W is infinite everywhere.
  const std::string bad_w = with(
      "\"w\": {\"kind\": \"power\", \"c\": 1, \"alpha\": 0}",
      "\"w\": {\"kind\": \"power\", \"c\": 1, \"alpha\": 0, \"beta\": -2}");
  CHECK(run("check " + write_tmp("hyp.json", bad_w).string()).code == 3);

  CHECK(run("check /nonexistent/config.json").code == 4);
  CHECK(run("check " + write_tmp("broken.json", "{ \"interval\": ").string()).code == 4);
  CHECK(run("frobnicate").code == 4);
}

TEST_CASE("out file matches stdout") {
  const fs::path cfg = write_tmp("unit2.json", kUnit);
  const fs::path out = cfg.parent_path() / "report.json";
  Run r = run("check --seed 9 --out " + out.string() + " " + cfg.string());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == r.out);
}

TEST_CASE("sweeps") {
  const fs::path cfg = write_tmp("sweep.json", kUnit);
  Run empty = run("sweep --no-oracle --grid \"\" " + cfg.string());
  CHECK(empty.code == 0);
  CHECK(std::count(empty.out.begin(), empty.out.end(), '\n') == 1);
  CHECK(empty.out.rfind("p,q,r,", 0) == 0);

  Run full = run("sweep --no-oracle --workers 2 --grid \"p=0.5,1,2;q=0.5,1,2;r=0.5,1\" " +
                 cfg.string());
  CHECK(full.code == 0);
  CHECK(std::count(full.out.begin(), full.out.end(), '\n') == 19);
  for (const char* c : {",I,", ",II,", ",III,", ",V,", ",VI,", ",VII,"}) {
    CHECK(full.out.find(c) != std::string::npos);
  }

  // Estimates scale like w^(-1/p).
  const ProblemConfig c = parse_config(kUnit);
  std::string csv = run_sweep(c, parse_sweep_grid("p=1;q=1;r=1;w_scale=1,4"), 1);
  std::istringstream lines(csv);
  std::string header, a, b;
  std::getline(lines, header);
  std::getline(lines, a);
  std::getline(lines, b);
  auto estimate = [&](const std::string& row) {
    std::vector<std::string> cols, names;
    std::stringstream hs(header), rs(row);
    for (std::string x; std::getline(hs, x, ',');) names.push_back(x);
    for (std::string x; std::getline(rs, x, ',');) cols.push_back(x);
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == "estimate") return std::stod(cols.at(i));
    }
    return -1.0;
  };
  CHECK(estimate(b) == doctest::Approx(estimate(a) / 4).epsilon(1e-9));
}
