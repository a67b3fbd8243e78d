#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "stringc/cli.hpp"
#include "stringc/modforms.hpp"
#include "stringc/qseries.hpp"

using namespace stringc;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "stringc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("genus subcommand") {
  const Run r = run({"genus", "--model", "builtin:cp2-balanced", "--k", "1", "--order", "20"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["model"] == "cp2-balanced");
  CHECK(j["q_convention"] == "e^{pi i tau}");
  CHECK(j["series"]["terms"].empty());
  CHECK(j["series"]["trunc"] == 40);
  CHECK(j["checks"]["level_condition"] == true);
  CHECK(j["checks"]["halfint"] == true);

  const Run plain = run({"genus", "--model", "builtin:cp2-balanced", "--k", "1", "--order", "5", "--grid", "2pi"});
  REQUIRE(plain.code == kExitOk);
  CHECK(json::parse(plain.out)["q_convention"] == "e^{2 pi i tau}");
  CHECK(json::parse(plain.out)["series"]["trunc"] == 10);
}

TEST_CASE("cross-check output") {
  const Run r =
      run({"genus", "--model", "builtin:cp4-balanced", "--k", "2", "--b", "1,1", "--order", "4", "--cross-check"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  REQUIRE(j.contains("cross_check"));
  CHECK(j["cross_check"]["integrated_equal"] == true);
  CHECK(j["cross_check"]["integrated_difference"]["terms"].empty());
  CHECK(j["cross_check"].contains("theta_genus"));
  CHECK(j["cross_check"].contains("bundle_genus"));
}

TEST_CASE("invalid specs exit 2") {
  const Run r = run({"genus", "--k", "2", "--b", "1", "--model", "builtin:cp4-balanced"});
  CHECK(r.code == kExitInvalidSpec);
  const json j = json::parse(r.out);
  CHECK(j["error"]["type"] == "SpecViolation");
  CHECK(j["error"]["violations"][0].get<std::string>().find("parity") != std::string::npos);

  CHECK(run({"genus", "--model", "builtin:cp9-balanced", "--k", "1"}).code == kExitInvalidSpec);
  CHECK(run({"genus", "--model", "builtin:cp2-balanced"}).code == kExitInvalidSpec);
  CHECK(run({"genus", "--model", "builtin:cp2-balanced", "--k", "1", "--format", "xml"}).code == kExitInvalidSpec);
  CHECK(run({"genus", "--model", "builtin:cp2-balanced", "--k", "1", "--order", "0"}).code == kExitInvalidSpec);
  CHECK(run({"nonsense"}).code == kExitInvalidSpec);
  CHECK(run({"genus", "--model", STRINGC_TEST_DATA "/bad_grading.json", "--k", "1"}).code == kExitInvalidSpec);
}

TEST_CASE("csv output") {
  const Run r = run({"genus", "--model", "builtin:cp4-balanced", "--k", "4", "--a", "1,1", "--order", "2",
                     "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "exp_num,exp_den,coeff_num,coeff_den");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
    ++rows;
  }
  CHECK(rows > 0);
  CHECK_FALSE(r.err.empty());  // level warning
}

TEST_CASE("manifest path and modular check") {
  const Run r = run({"genus", "--model", STRINGC_TEST_DATA "/formal_m8.json", "--k", "3", "--b", "1,1,1,1",
                     "--order", "12", "--modular"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["series"]["terms"].size() == 1);
  CHECK(j["series"]["terms"][0]["num"] == "1");
  CHECK(j["series"]["terms"][0]["den"] == "16");
  CHECK(j["checks"]["modular_weight"] == 0);
}

TEST_CASE("order from the environment") {
  ::setenv("STRINGC_GENUS_ORDER", "3", 1);
  const Run env = run({"genus", "--model", "builtin:point", "--k", "1"});
  const Run flag = run({"genus", "--model", "builtin:point", "--k", "1", "--order", "7"});
  ::unsetenv("STRINGC_GENUS_ORDER");
  REQUIRE(env.code == kExitOk);
  CHECK(json::parse(env.out)["series"]["trunc"] == 6);
  CHECK(json::parse(flag.out)["series"]["trunc"] == 14);
}

TEST_CASE("enumerate") {
  const Run r = run({"enumerate", "--dim", "8", "--k", "2", "--s", "2"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out == "{\"k\":2,\"a\":[],\"b\":[1,1]}\n");
  const Run many = run({"enumerate", "--dim", "8", "--k", "3"});
  CHECK(std::count(many.out.begin(), many.out.end(), '\n') == 3);
  CHECK(run({"enumerate", "--dim", "7", "--k", "3"}).code == kExitInvalidSpec);
}

TEST_CASE("identities and transformation laws") {
  const Run id = run({"verify-identities", "--order", "50"});
  REQUIRE(id.code == kExitOk);
  const json j = json::parse(id.out);
  CHECK(j["all_pass"] == true);
  CHECK(j["identities"].size() >= 5);

  const Run t = run({"theta-transform", "--samples", "20", "--seed", "7"});
  REQUIRE(t.code == kExitOk);
  const json tj = json::parse(t.out);
  CHECK(tj["max_residual"].get<double>() < 1e-9);
  CHECK(run({"theta-transform", "--samples", "20", "--seed", "7"}).out == t.out);
}

TEST_CASE("modform-check") {
  const std::string path = "modform_check_input.json";
  {
    std::ofstream f(path);
    f << to_json(eisenstein(4, 20) * eisenstein(6, 20)).dump();
  }
  const Run r = run({"modform-check", "--input", path, "--order", "20"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["weight"] == 10);
  CHECK(j["coordinates"]["E4^1*E6^1"] == "1");

  const Run fixed = run({"modform-check", "--input", path, "--weight", "4", "--order", "20"});
  CHECK(json::parse(fixed.out)["member"] == false);
  std::remove(path.c_str());
}

TEST_CASE("model-show") {
  const Run r = run({"model-show", "--model", "builtin:cp4-balanced", "--k-max", "3"});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["p1"] == "5*x^2");
  CHECK(j["string_c_levels"] == json::array({2}));
  CHECK(j["obstruction_classes"].size() == 4);
}
