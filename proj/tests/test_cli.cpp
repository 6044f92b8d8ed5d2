#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using namespace ihcoh;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// stderr is dropped so `out` holds exactly what a caller would parse.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" IHCOH_CLI "\" " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(IHCOH_FIXTURE_DIR) + "/" + name; }

std::string on(const std::string& sub, const std::string& file, const std::string& extra = "") {
  return sub + " -i \"" + fixture(file) + "\" --format json" + (extra.empty() ? "" : " " + extra);
}

json run_json(const std::string& args) {
  Run r = run(args);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

std::string scratch(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("ihcoh_cli_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << content;
  return p.string();
}

std::vector<std::int64_t> coeffs(const json& poly) { return poly["coeffs"].get<std::vector<std::int64_t>>(); }

}  // namespace

TEST_CASE("trinomial quadric in json") {
  json j = run_json(on("trinomial", "quadric.json"));
  CHECK(coeffs(j["P_tilde"]) == std::vector<std::int64_t>{1, 0, 4, 0, 1});
  CHECK(coeffs(j["P_X"]) == std::vector<std::int64_t>{1});
  CHECK(coeffs(j["g_sigma_theta"]) == std::vector<std::int64_t>{1, 0, 1});
  CHECK(j["invariants"]["genus"] == 0);
  CHECK(j["H"].size() == 9);
}

TEST_CASE("fourfold trinomial reports the even Betti numbers") {
  json j = run_json(on("trinomial", "fourfold.json"));
  CHECK(j["ambient"] == "projective");
  CHECK(fx::parity_coeffs(fx::PJ(j["P_X"]["coeffs"]), 0) == std::vector<std::int64_t>{1, 7, 14, 7, 1});
  CHECK(j["Sigma_i_f_vectors"][0] == json::array({1, 11, 29, 30, 12}));
}

TEST_CASE("hpoly, gpoly, divisor and divfan") {
  CHECK(coeffs(run_json(on("hpoly", "p1fan.json"))["h"]) == std::vector<std::int64_t>{1, 0, 1});
  CHECK(coeffs(run_json(on("gpoly", "sigma_theta.json"))["g"]) == std::vector<std::int64_t>{1, 0, 1});

  json d = run_json(on("divisor", "quadric_divisor.json", "--poincare"));
  CHECK(coeffs(d["P_X"]) == std::vector<std::int64_t>{1});
  CHECK(coeffs(d["g_D"]) == std::vector<std::int64_t>{1, 0, 4, 0, 1});
  CHECK(d["rational"] == true);

  json e = run_json(on("divfan", "cubic_divfan.json", "--poincare"));
  CHECK(coeffs(e["P_X"]) == std::vector<std::int64_t>{1, 0, 1, 0, 1});
  CHECK(e["valid"] == true);
  CHECK(e["HF"].size() == 2);

  // Without --poincare the key is absent.
  CHECK_FALSE(run_json(on("divfan", "cubic_divfan.json")).contains("P_X"));
}

TEST_CASE("weights: enhancement and lifting fans") {
  json w = run_json(on("weights", "cubic_chart0.json", "--enhance --lifting-fan --enhanced-lifting-fan"));
  REQUIRE(w["enhanced"].size() == 4);
  CHECK(w["enhanced"][1]["F"] == json::parse(R"([["3"],["6"],["4"]])"));
  CHECK(w.contains("lifting_fan"));
  CHECK(w["lifting_fan"].contains("Q"));
  Fan f = fan_from_json(w["enhanced_lifting_fan"]);
  CHECK(f.is_complete());
  CHECK(f.rays().size() == 8);

  json plain = run_json(on("weights", "cubic_chart0.json"));
  CHECK_FALSE(plain.contains("enhanced"));
  CHECK(plain.contains("dtheta"));
}

TEST_CASE("validation errors exit 1 with a kind") {
  const std::string bad_fan = scratch("overlap.json", R"({
    "curve": {"genus": 0, "complete": true, "punctures": 0, "points": ["p"]},
    "divisors": [
      {"tail": {"rank": 1, "rays": [[1]]}, "domain_excludes": [],
       "coefficients": {"p": {"rank": 1, "vertices": [["1"]], "rays": [[1]]}}},
      {"tail": {"rank": 1, "rays": [[-1]]}, "domain_excludes": [],
       "coefficients": {"p": {"rank": 1, "vertices": [["1"]], "rays": [[-1]]}}}
    ]})");
  Run r = run("divfan -i \"" + bad_fan + "\"");
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["error"]["kind"] == "InvalidDivisorialFan");

  const std::string inhom = scratch("inhom.json", R"({"exponents": [[1,1],[1,2],[1,1]], "ambient": "projective"})");
  r = run("trinomial -i \"" + inhom + "\"");
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["error"]["kind"] == "NotHomogeneous");
  fs::remove(bad_fan);
  fs::remove(inhom);
}

TEST_CASE("malformed input exits 2") {
  const std::string junk = scratch("junk.json", "{\"rank\": 1, \"rays\": [[1]");
  Run r = run("hpoly -i \"" + junk + "\"");
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["error"]["kind"] == "MalformedInput");
  fs::remove(junk);

  const std::string wrong = scratch("wrong.json", R"({"rank": "two", "rays": []})");
  CHECK(run("gpoly -i \"" + wrong + "\"").code == 2);
  fs::remove(wrong);

  CHECK(run("hpoly -i /nonexistent/ihcoh/input.json").code == 2);
  CHECK(run(on("hpoly", "p1fan.json", "--no-such-flag")).code == 2);
  CHECK(run("hpoly").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("version string") {
  Run r = run("--version");
  CHECK(r.code == 0);
  CHECK(r.out.find("ihcoh 0.1.0") != std::string::npos);
}

TEST_CASE("emitted fan parses back to the same fan") {
  json j = run_json(on("hpoly", "p1fan.json"));
  Fan f = fan_from_json(j["fan"]);
  Fan g = fan_from_json(fx::load("p1fan.json"));
  CHECK(fx::maximal_keys(f) == fx::maximal_keys(g));
  CHECK(to_json(f) == j["fan"]);
}

TEST_CASE("output is deterministic and independent of the cache") {
  const std::string args = on("trinomial", "fourfold.json");
  Run a = run(args), b = run(args), c = run(args, "IHCOH_CACHE=off");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("text output") {
  Run r = run("trinomial -i \"" + fixture("quadric.json") + "\"");
  CHECK(r.code == 0);
  CHECK(r.out.find("P_X = 1") != std::string::npos);
  CHECK(r.out.find("P_tilde = ") != std::string::npos);
}
