#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
  int code;
  std::string output;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(FRACHEAT_CLI) + " " + args + " 2>&1";
  Result r{-1, ""};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.output += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, ClassifyExample) {
  const auto r = cli("classify --f powerlog:1,3,0 --q 2 --alpha 1.5 --d 1 --domain ball");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.output.find("verdict local_existence"), std::string::npos);
}

TEST(Cli, AlphaOutsideHypotheses) {
  const auto r = cli("classify --f powerlog:1,3,0 --alpha 0.5");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("outside theorem hypotheses"), std::string::npos);
}

TEST(Cli, UnknownFlagAndSubcommand) {
  EXPECT_EQ(cli("classify --f zero --bogus 1").code, 2);
  EXPECT_EQ(cli("teleport").code, 2);
}

TEST(Cli, StrictInconclusive) {
  EXPECT_EQ(cli("classify --f powerlog:1,4,0.3 --q 2 --strict").code, 4);
}

TEST(Cli, HyphenatedFlagsAndCsv) {
  const std::string out = testing::TempDir() + "cli_kernel.csv";
  const auto r = cli("kernel --alpha 1.5 --t-grid 1 --r-grid 0,1 --out " + out);
  EXPECT_EQ(r.code, 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,r,p,min_form,sum_form,ratio");
}

TEST(Cli, RunConfigFile) {
  const std::string path = testing::TempDir() + "cli_list.json";
  {
    std::ofstream out(path);
    out << R"([{"experiment":"classify","f":"powerlog:1,5,0","q":2},)"
        << R"({"experiment":"classify","f":"powerlog:1,2.5,0","q":1}])";
  }
  const auto r = cli("run --config " + path);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.output, "verdict non_existence\nverdict non_existence\n");
}

TEST(Cli, ConfigForSubcommand) {
  const std::string path = testing::TempDir() + "cli_classify.txt";
  {
    std::ofstream out(path);
    out << "f = powerlog:1,3,0\nq = 2\n";
  }
  EXPECT_EQ(cli("classify --config " + path).output, "verdict local_existence\n");
  EXPECT_EQ(cli("classify --config " + path + " --f powerlog:1,5,0").output, "verdict non_existence\n");
}

TEST(Cli, PlotSubcommand) {
  const std::string csv = testing::TempDir() + "cli_solve.csv";
  ASSERT_EQ(cli("solve --f powerlog:1,2,0 --N 49 --T 0.01 --dt 1e-3 --out " + csv).code, 0);
  const auto r = cli("plot --csv " + csv + " --kind solve");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(cli("plot --csv " + csv + " --kind escalation").code, 2);
}
