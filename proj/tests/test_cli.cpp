#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qcorr/sweep.hpp"

#ifndef QCORR_CLI_PATH
#error "QCORR_CLI_PATH must point at the qcorr executable"
#endif

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string("\"") + QCORR_CLI_PATH + "\" " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string first_line_after_header(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  return line;
}

}  // namespace

TEST(CliTest, EvalGolden) {
  const RunResult r = run("eval --jx -1 --jy -0.5 --jz 0.2 --dz 1 --temp 1");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, qcorr::kCsvHeader.size()), qcorr::kCsvHeader);
  EXPECT_NE(first_line_after_header(r.out).find("0.685969217594,0.440782397463"), std::string::npos) << r.out;
}

TEST(CliTest, SweepWithCurves) {
  const RunResult r = run("sweep --sweep temp --from 0.1 --to 5 --points 4 --jx -1 --jy -0.5 --dz 1 --curve jz=0.2,1");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 9);
}

TEST(CliTest, FigureDeterministic) {
  const RunResult a = run("figure fig1");
  const RunResult b = run("figure fig1");
  const RunResult c = run("figure fig1 --serial");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(CliTest, FigureOverrides) {
  const RunResult r = run("figure fig2d --points 3 --curve temp=1");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(CliTest, FigureList) {
  const RunResult r = run("figure --list");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("fig4d"), std::string::npos);
}

TEST(CliTest, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "qcorr_cli_test.csv";
  const RunResult r = run("eval --jz 1 --out \"" + path.string() + "\"");
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, qcorr::kCsvHeader);
  std::filesystem::remove(path);
}

TEST(CliTest, InvalidInputExitsOne) {
  EXPECT_EQ(run("eval --temp -1").status, 1);
  EXPECT_EQ(run("eval --temp abc").status, 1);
  EXPECT_EQ(run("sweep --sweep jw --from 0 --to 1").status, 1);
  EXPECT_EQ(run("sweep --sweep temp --from 1 --to 0.5").status, 1);
  EXPECT_EQ(run("sweep --sweep temp --from 0.1 --to 1 --curve temp=1").status, 1);
  EXPECT_EQ(run("sweep --sweep jx --from 0 --to 1 --curve jz=1,x").status, 1);
  EXPECT_EQ(run("figure fig9").status, 1);
  EXPECT_EQ(run("figure").status, 1);
  EXPECT_EQ(run("selftest --draws 0").status, 1);
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("eval --out /nonexistent-dir/x.csv").status, 1);
}

TEST(CliTest, SelfTestSmall) {
  const RunResult r = run("selftest --draws 2 --seed 5");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos) << r.out;
}
