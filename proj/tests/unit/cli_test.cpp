#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
  json report() const { return json::parse(out); }
};

Run run(const std::string& args, const std::string& stdin_text = "") {
  std::string cmd = std::string(MAGTOOL_PATH) + " " + args + " 2>/dev/null";
  if (!stdin_text.empty()) cmd = "printf '" + stdin_text + "' | " + cmd;
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json without_timing(json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST(Cli, MagOnLine) {
  auto r = run("mag --points-1d 0,1,3 --t 1");
  ASSERT_EQ(r.exit_code, 0);
  auto j = r.report();
  EXPECT_NEAR(j["results"]["magnitude"].get<double>(), 2.2237113, 1e-7);
  for (const char* key : {"command", "inputs_digest", "results", "timing", "version"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Cli, PixelIntrinsic) {
  auto r = run(R"(pixel --ascii '##\n#.' --intrinsic)");
  ASSERT_EQ(r.exit_code, 0);
  auto j = r.report()["results"];
  EXPECT_EQ(j["V"], json::array({"1", "4", "3"}));
  EXPECT_EQ(j["magnitude"], "15/4");
}

TEST(Cli, PixelConvexityWitness) {
  auto r = run("pixel --ascii '#.#' --convexity");
  ASSERT_EQ(r.exit_code, 0);
  auto j = r.report()["results"];
  EXPECT_EQ(j["l1_convex"], false);
  EXPECT_EQ(j["witness"], json::parse("[[0,0],[2,0]]"));
}

TEST(Cli, PixelBounds) {
  auto r = run(R"(pixel --bounds --body '{"kind":"box","dim":2,"vertices":[["0","0"],["1","1"]]}' --lambda 1 --t 1)");
  ASSERT_EQ(r.exit_code, 0);
  auto j = r.report()["results"];
  EXPECT_DOUBLE_EQ(j["lower"].get<double>(), 2.25);
  EXPECT_DOUBLE_EQ(j["upper"].get<double>(), 2.25);
}

TEST(Cli, K32IsPathological) {
  auto r = run("mag --graph k32 --t 0.05");
  ASSERT_TRUE(r.exit_code == 0 || r.exit_code == 3);
  auto j = r.report()["results"];
  if (r.exit_code == 0 && j["magnitude"].get<double>() < 0) {
    EXPECT_EQ(j["warning"], "negative magnitude");
  }
  std::ostringstream t;
  t << std::setprecision(17) << std::log(std::sqrt(2.0));
  auto singular = run("mag --graph k32 --t " + t.str());
  EXPECT_EQ(singular.exit_code, 3);
  EXPECT_TRUE(singular.report()["results"]["magnitude"].is_null());
}

TEST(Cli, SweepsNeverExitThree) {
  auto r = run("magfn --graph k32 --tmin 0.01 --tmax 5 --steps 400 --log");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.report()["results"]["samples"].size(), 400u);
}

TEST(Cli, InvalidInputExitsTwo) {
  auto r = run("mag --points-1d 0,1,1 --t 1");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_TRUE(r.report()["results"].contains("error"));
  EXPECT_EQ(run("mag --t 1").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  EXPECT_EQ(run("pixel --ascii '...' --intrinsic").exit_code, 2);
}

TEST(Cli, NonConvergenceExitsFour) {
  EXPECT_EQ(run("diversity --points-1d 0,0.3,1,1.7,3.2,4 --t 1 --no-polish --max-iterations 2").exit_code, 4);
}

TEST(Cli, StdinMatrix) {
  auto r = run("mag --stdin-matrix --t 1", "0,1\\n1,0\\n");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NEAR(r.report()["results"]["magnitude"].get<double>(), 1.4621171573, 1e-10);
}

TEST(Cli, Deterministic) {
  const std::string args = R"(mag --spec '{"kind":"ball_sample","params":{"dim":3,"radius":1,"count":100,"p":2},"seed":5}' --t 1)";
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(without_timing(a.report()).dump(), without_timing(b.report()).dump());
  auto c = run(args + " --seed 5");
  EXPECT_EQ(c.exit_code, 0);
}

TEST(Cli, CsvOutput) {
  auto r = run("magfn --points-1d 0,1 --tmin 1 --tmax 4 --steps 3 --log --format csv");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "magnitude,positive_definite,residual,status,t");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(Cli, OracleSubcommands) {
  EXPECT_NEAR(run("oracle ball --n 5 --R 1").report()["results"]["magnitude"].get<double>(), 213.0 / 32 + 1.0 / 120, 1e-12);
  EXPECT_NEAR(run("oracle cantor --t 1 --length 1").report()["results"]["magnitude"].get<double>(), 1.4983504316, 1e-10);
  EXPECT_EQ(run("oracle sphere --n 3 --R 1").exit_code, 2);
}

TEST(Cli, ApproxCantorIncreases) {
  auto r = run("approx --family cantor --levels 1,2,3,4,5,6 --t 1");
  ASSERT_EQ(r.exit_code, 0);
  auto steps = r.report()["results"]["steps"];
  for (std::size_t i = 1; i < steps.size(); ++i) EXPECT_GT(steps[i]["magnitude"].get<double>(), steps[i - 1]["magnitude"].get<double>());
}

TEST(Cli, DiversityAndDim) {
  auto d = run("diversity --points-1d 0,1,3 --t 1");
  ASSERT_EQ(d.exit_code, 0);
  EXPECT_NEAR(d.report()["results"]["diversity"].get<double>(), 2.2237113, 1e-7);
  auto e = run("dim --cantor 6 --tmin 10 --tmax 100 --samples 8");
  ASSERT_EQ(e.exit_code, 0);
  EXPECT_TRUE(e.report()["results"].contains("slope"));
}

TEST(Cli, CheckReport) {
  auto r = run("check --graph k32 --t 0.5,1");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.report()["results"]["negative_type"], "certified_not");
}
