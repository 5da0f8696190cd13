#include <streamtable/cli.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace streamtable;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli_main(args, in, out, err);
  return {code, out.str(), err.str()};
}

const std::string kSamples = STREAMTABLE_SAMPLES_DIR;

}  // namespace

TEST(Cli, LayoutHasNoSplits) {
  CliRun r = run({"layout", "-", "--heights", "uniform:1"}, ",A,B\nr1,3,1\nr2,1,1\n");
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["metrics"]["splits"], 0);
  EXPECT_EQ(doc["metrics"]["excess"], "2");
}

TEST(Cli, HeightPolicies) {
  std::string csv = ",A,B\nr1,3,1\nr2,1,1\n";
  CliRun p = run({"layout", "-", "--heights", "proportional:6"}, csv);
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(nlohmann::json::parse(p.out)["heights"][0], "4");
  CliRun e = run({"layout", "-", "--heights", "explicit:1,1/2"}, csv);
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(nlohmann::json::parse(e.out)["metrics"]["excess"], "0");
  EXPECT_EQ(run({"layout", "-", "--heights", "tall"}, csv).code, 2);
  EXPECT_EQ(run({"layout", "-", "--heights", "uniform:0"}, csv).code, 1);
}

TEST(Cli, UsageAndDomainErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"layout"}).code, 2);
  EXPECT_EQ(run({"layout", "-"}, ",A\nr1,1\n").code, 1);
  EXPECT_EQ(run({"layout", "/nonexistent/table.csv"}).code, 1);
  CliRun bad = run({"layout", "-"}, ",A,B\nr1,1,oops\n");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ImproveLogs) {
  CliRun r = run({"improve", "-"}, ",A,B\nr1,3,1\nr2,1,1\n");
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["metrics"]["excess"], "0");
  EXPECT_EQ(doc["heights"][1], "1/2");
  EXPECT_EQ(doc["log"].size(), 1u);
}

TEST(Cli, BetweennessPipeline) {
  CliRun gen = run({"gen", "betweenness", kSamples + "/five_triples.json", "--w", "15"});
  ASSERT_EQ(gen.code, 0) << gen.err;
  EXPECT_NE(gen.err.find("125/4"), std::string::npos);
  CliRun lay = run({"layout", "-", "--order", "3,1,4,2,5", "--heights", "uniform:1"}, gen.out);
  ASSERT_EQ(lay.code, 0) << lay.err;
  auto doc = nlohmann::json::parse(lay.out);
  Rational excess = parse_rational(doc["metrics"]["excess"].get<std::string>());
  EXPECT_LE(excess, Rational(125, 4));
  EXPECT_EQ(doc["metrics"]["splits"], 0);

  CliRun ver = run({"verify", "betweenness", kSamples + "/five_triples.json", "--order", "3,1,4,2,5"});
  ASSERT_EQ(ver.code, 0) << ver.err;
  auto v = nlohmann::json::parse(ver.out);
  EXPECT_TRUE(v["certificate"].get<bool>());
  EXPECT_TRUE(v["within_threshold"].get<bool>());
  EXPECT_EQ(v["threshold"], "125/4");
}

TEST(Cli, HamPathSearch) {
  CliRun gen = run({"gen", "hampath", kSamples + "/k33.edges"});
  ASSERT_EQ(gen.code, 0) << gen.err;
  CliRun s = run({"search", "-", "--objective", "min-splits", "--delta", "1", "--method", "brute"}, gen.out);
  ASSERT_EQ(s.code, 0) << s.err;
  auto doc = nlohmann::json::parse(s.out);
  EXPECT_EQ(doc["score"], 20);
  EXPECT_TRUE(doc["optimal"].get<bool>());

  CliRun ver = run({"verify", "hampath", kSamples + "/k33.edges", "--order", "a,b,c,d,e,f"});
  ASSERT_EQ(ver.code, 0) << ver.err;
  auto v = nlohmann::json::parse(ver.out);
  EXPECT_EQ(v["value"], 20);
  EXPECT_TRUE(v["certificate"].get<bool>());
}

TEST(Cli, AnnealNeedsSeed) {
  std::string csv = ",A,B\nr1,3,1\nr2,1,1\nr3,2,2\n";
  EXPECT_EQ(run({"search", "-", "--method", "anneal"}, csv).code, 2);
  CliRun ok = run({"search", "-", "--method", "anneal", "--seed", "3", "--steps", "50"}, csv);
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_FALSE(nlohmann::json::parse(ok.out)["optimal"].get<bool>());
}

TEST(Cli, SearchCap) {
  std::string csv = ",A,B\n";
  for (int i = 0; i < 4; ++i) csv += "r" + std::to_string(i) + ",1,1\n";
  EXPECT_EQ(run({"search", "-", "--cap", "3"}, csv).code, 1);
}

TEST(Cli, ModelsAndImport) {
  std::string csv = ",A,B\nr1,2,1\nr2,1,2\n";
  CliRun lp = run({"emit-model", "lp", "-"}, csv);
  ASSERT_EQ(lp.code, 0) << lp.err;
  EXPECT_NE(lp.out.find("Subject To"), std::string::npos);
  CliRun qp = run({"emit-model", "qcqp", "-", "--total-height", "2"}, csv);
  ASSERT_EQ(qp.code, 0) << qp.err;
  EXPECT_EQ(run({"emit-model", "qcqp", "-"}, csv).code, 2);
  CliRun gp = run({"emit-model", "gp", "-", "--total-height", "2", "--width", "3"}, csv);
  ASSERT_EQ(gp.code, 0) << gp.err;
  EXPECT_NO_THROW(parse_gp_json(gp.out));

  std::string dir = ::testing::TempDir();
  std::string table_path = dir + "/cli_table.csv";
  std::ofstream(table_path) << csv;
  std::string sol = "a_1_1 0\nb_1_1 2\na_1_2 2\nb_1_2 3\na_2_1 0\nb_2_1 1\na_2_2 1\nb_2_2 3\nd_1_1 0\nd_1_2 2\n";
  CliRun imp = run({"import-solution", "lp", table_path, "-"}, sol);
  ASSERT_EQ(imp.code, 0) << imp.err;
  EXPECT_EQ(nlohmann::json::parse(imp.out)["metrics"]["excess"], "0");
  std::string broken = sol;
  broken.replace(broken.find("d_1_2 2"), 7, "d_1_2 9");
  CliRun bad = run({"import-solution", "lp", table_path, "-"}, broken);
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("c3_1_2"), std::string::npos);
}

TEST(Cli, RenderFromLayout) {
  CliRun lay = run({"layout", "-"}, ",A,B\nr1,3,1\nr2,1,1\n");
  ASSERT_EQ(lay.code, 0);
  CliRun svg = run({"render", "-", "--smooth", "--labels", "--scale", "12"}, lay.out);
  ASSERT_EQ(svg.code, 0) << svg.err;
  EXPECT_EQ(svg.out.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.out.find("</svg>"), std::string::npos);
  EXPECT_EQ(run({"render", "-", "--radius", "0.9"}, lay.out).code, 2);
}

TEST(Cli, OutputFile) {
  std::string path = ::testing::TempDir() + "/cli_layout.json";
  CliRun r = run({"layout", "-", "-o", path}, ",A,B\nr1,3,1\nr2,1,1\n");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::string text((std::istreambuf_iterator<char>(f)), {});
  EXPECT_NO_THROW(parse_layout_json(text));
}
