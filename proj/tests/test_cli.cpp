// End-to-end checks of the command-line tool, including exit codes.
#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PSEMBED_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string tmp_path(const char* name) {
  return std::string(::testing::TempDir()) + name;
}

TEST(Cli, GenEmbedVerifyPipeline) {
  const std::string inst = tmp_path("cli_inst.json");
  const std::string mapping = tmp_path("cli_map.txt");
  const std::string svg = tmp_path("cli_out.svg");

  auto gen = run_cli("gen --n 40 --seed 5 --yes -o " + inst);
  ASSERT_EQ(gen.exit_code, 0) << gen.output;

  auto embed = run_cli("embed " + inst + " --mapping " + mapping + " --svg " + svg + " --stats");
  ASSERT_EQ(embed.exit_code, 0) << embed.output;
  EXPECT_NE(embed.output.find("count_queries"), std::string::npos);

  auto verify = run_cli("verify " + inst + " " + mapping);
  EXPECT_EQ(verify.exit_code, 0) << verify.output;
  EXPECT_NE(verify.output.find("valid"), std::string::npos);

  std::ifstream svg_in(svg);
  ASSERT_TRUE(svg_in.good());
  std::stringstream ss;
  ss << svg_in.rdbuf();
  EXPECT_NE(ss.str().find("<svg"), std::string::npos);
}

TEST(Cli, NotEmbeddableExitsOne) {
  const std::string inst = tmp_path("cli_no.json");
  // Random point sets almost surely have more than 3 hull points.
  auto gen = run_cli("gen --n 25 --seed 9 -o " + inst);
  ASSERT_EQ(gen.exit_code, 0) << gen.output;
  auto embed = run_cli("embed " + inst);
  EXPECT_EQ(embed.exit_code, 1) << embed.output;
  EXPECT_NE(embed.output.find("not embeddable"), std::string::npos);
}

TEST(Cli, BaselineModeAgrees) {
  const std::string inst = tmp_path("cli_base.json");
  run_cli("gen --n 30 --seed 11 --yes -o " + inst);
  auto improved = run_cli("embed " + inst);
  auto baseline = run_cli("embed " + inst + " --mode baseline");
  EXPECT_EQ(improved.exit_code, 0);
  EXPECT_EQ(baseline.exit_code, 0);
  EXPECT_EQ(improved.output, baseline.output);
}

TEST(Cli, EmbedGeneralOnLargerPointSet) {
  const std::string inst = tmp_path("cli_gen.json");
  // Take a small embeddable instance and append extra far-away points.
  auto gen = run_cli("gen --n 5 --seed 3 --yes --coord-bound 50 -o " + inst);
  ASSERT_EQ(gen.exit_code, 0);
  std::ifstream in(inst);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  const auto pos = text.find("\"points\": [");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + std::string("\"points\": [").size(), "\n    [3001, 2999],");
  std::ofstream(inst) << text;
  auto general = run_cli("embed-general " + inst + " --stats");
  EXPECT_EQ(general.exit_code, 0) << general.output;
  EXPECT_NE(general.output.find("entries_evaluated"), std::string::npos);
}

TEST(Cli, BadInputExitsTwo) {
  auto missing = run_cli("embed /nonexistent/file.json");
  EXPECT_EQ(missing.exit_code, 2);
  const std::string broken = tmp_path("cli_broken.json");
  std::ofstream(broken) << "{ not json";
  auto bad = run_cli("embed " + broken);
  EXPECT_EQ(bad.exit_code, 2);
  EXPECT_NE(bad.output.find("error"), std::string::npos);
}

TEST(Cli, VerifyRejectsWrongMapping) {
  const std::string inst = tmp_path("cli_vr.json");
  const std::string mapping = tmp_path("cli_vr_map.txt");
  run_cli("gen --n 10 --seed 7 --yes --coord-bound 1000 -o " + inst);
  auto embed = run_cli("embed " + inst + " --mapping " + mapping);
  ASSERT_EQ(embed.exit_code, 0);
  // Swap the first two mapped points.
  std::ifstream in(mapping);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_GE(lines.size(), 2u);
  const auto cut0 = lines[0].find(' ');
  const auto cut1 = lines[1].find(' ');
  const std::string swapped0 = lines[0].substr(0, cut0) + lines[1].substr(cut1);
  const std::string swapped1 = lines[1].substr(0, cut1) + lines[0].substr(cut0);
  lines[0] = swapped0;
  lines[1] = swapped1;
  std::ofstream out(mapping);
  for (const auto& l : lines) out << l << "\n";
  out.close();
  auto verify = run_cli("verify " + inst + " " + mapping);
  EXPECT_EQ(verify.exit_code, 1) << verify.output;
}

TEST(Cli, BenchSuiteRuns) {
  const std::string suite = tmp_path("cli_suite.json");
  const std::string report = tmp_path("cli_report.json");
  std::ofstream(suite) << R"({"sizes":[16,24],"reps":1,"seed":3,"threads":2})";
  auto bench = run_cli("bench --suite " + suite + " -o " + report);
  ASSERT_EQ(bench.exit_code, 0) << bench.output;
  std::ifstream in(report);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("psembed-bench-report/1"), std::string::npos);
}

}  // namespace
