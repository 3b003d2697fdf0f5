#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <doctest.h>
#include <json.hpp>

#ifndef RESTNORM_CLI_PATH
#error "RESTNORM_CLI_PATH must point at the command-line binary"
#endif

namespace {

struct RunResult {
  std::string out;
  int code = -1;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(RESTNORM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    r.out.append(buf, n);
  }
  const int status = pclose(pipe);
  r.code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("cli: repeated runs are byte-identical") {
  const std::string args = "r-eval --t 0.5 --alpha 2,0,-2 --beta 1,-1";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("schema") == "restnorm/v1");
  CHECK(j.at("value").get<double>() >= 0.0);
}

TEST_CASE("cli: admissibility and both argument spellings") {
  const RunResult comma = run_cli("admissible --alpha 2,0,-2 --beta 1,-1");
  CHECK(comma.code == 0);
  const auto jc = nlohmann::json::parse(comma.out);
  CHECK(jc.at("admissible") == true);

  const RunResult arr = run_cli("admissible --alpha '[2,0,-2]' --beta '[1,-1]'");
  CHECK(arr.code == 0);
  CHECK(arr.out == comma.out);
}

TEST_CASE("cli: median interval") {
  const RunResult r = run_cli("median-interval --alpha 1,-1 --beta 0");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("interval").at("lo").get<double>() == -1.0);
  CHECK(j.at("interval").at("hi").get<double>() == 1.0);
  CHECK(j.at("interval").at("length").get<double>() == 2.0);
}

TEST_CASE("cli: weight evaluation") {
  const RunResult r = run_cli("q-eval --t 0 --alpha 1,-1 --beta 0");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("mode") == "exact");
  CHECK(j.at("underflow") == false);
  CHECK(j.at("logValue").get<double>() ==
        doctest::Approx(2.66658297004242).epsilon(1e-10));
}

TEST_CASE("cli: polytope volume three ways") {
  const RunResult r =
      run_cli("polytope volume --y 2,3,5 --samples 200000 --seed 5");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("formula").get<double>() == 31.0);
  CHECK(j.at("detSum").get<double>() == doctest::Approx(31.0).epsilon(1e-9));
  CHECK(std::abs(j.at("monteCarlo").get<double>() - 31.0) <= 1.0);
  CHECK(j.at("samples").get<long long>() == 200000);
}

TEST_CASE("cli: geometry report carries facet offsets") {
  const RunResult r = run_cli("polytope emit --y 1,1,1");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("facets").size() == 6);
  CHECK(j.at("facets")[0].contains("offsetValue"));
  CHECK(j.at("vertices").size() == 6);
}

TEST_CASE("cli: malformed numbers exit with the input code") {
  const RunResult r = run_cli("r-eval --t 0 --alpha 1,foo --beta 0");
  CHECK(r.code == 3);
  CHECK(r.out.empty());
}

TEST_CASE("cli: runtime guard trips the assertion code") {
  const RunResult r = run_cli("integrate local-sum --alpha 30000,-30000 --K 2");
  CHECK(r.code == 2);
}

TEST_CASE("cli: moment window check passes") {
  const RunResult r = run_cli("second-moment --t0 500 --t 30");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("value").get<double>() >= 30.0);
}
