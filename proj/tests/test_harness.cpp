#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "sdsc/harness/commands.hpp"
#include "sdsc/harness/report.hpp"
#include "sdsc/harness/run_config.hpp"
#include "sdsc/signal_io.hpp"
#include "test_support.hpp"

namespace {

using namespace sdsc::harness;
using sdsc::testing::sine;

RunConfig config(const std::string &command) {
  RunConfig cfg;
  cfg.command = command;
  return cfg;
}

const ReportRow &row(const Report &r, const std::string &label) {
  for (const auto &x : r.tables.front().rows) {
    if (x.label == label) return x;
  }
  throw std::runtime_error("no row " + label);
}

double value(const Report &r, const std::string &label, const std::string &column) {
  const auto &t = r.tables.front();
  const auto it = std::find(t.columns.begin(), t.columns.end(), column);
  if (it == t.columns.end()) throw std::runtime_error("no column " + column);
  return *row(r, label).values[static_cast<std::size_t>(it - t.columns.begin())];
}

TEST(Table1, DefaultRunPasses) {
  const auto r = run_table1(config("table1"));
  EXPECT_TRUE(r.passed()) << render(r, OutputFormat::kMarkdown);
  ASSERT_EQ(r.tables.front().rows.size(), 7u);
  EXPECT_NEAR(value(r, "0.5x Scaled", "sdsc"), 0.6667, 1e-4);
  EXPECT_NEAR(value(r, "2x Scaled", "sdsc"), 0.6667, 1e-4);
  EXPECT_EQ(value(r, "Zero", "sdsc"), 0.0);
  EXPECT_NEAR(value(r, "Positive Shifted", "mse"), 1.0, 1e-3);
  for (const char *col : {"mse", "mae", "sdsc"})
    EXPECT_NEAR(value(r, "Positive Shifted", col), value(r, "Negative Shifted", col), 1e-12);
  EXPECT_EQ(row(r, "Noise Sample").verdict(), "info");
  EXPECT_EQ(row(r, "Zero").verdict(), "pass");
}

TEST(Table1, ChecksDisarmOffReconstruction) {
  auto cfg = config("table1");
  cfg.n_samples = 64;
  const auto r = run_table1(cfg);
  EXPECT_EQ(row(r, "Inverted").verdict(), "info");
  EXPECT_TRUE(r.passed());
}

TEST(Sensitivity, DefaultRunPasses) {
  const auto r = run_sensitivity(config("sensitivity"));
  EXPECT_TRUE(r.passed()) << render(r, OutputFormat::kMarkdown);
  ASSERT_EQ(r.tables.front().rows.size(), 7u);
  for (const auto &x : r.tables.front().rows) EXPECT_NEAR(*x.values[1], 0.0316, 5e-4) << x.label;
  EXPECT_NEAR(value(r, "Inverted", "mse"), 0.0894, 5e-4);
  EXPECT_EQ(r.tables.front().columns.size(), 3u);
}

TEST(Sensitivity, HybridColumnWhenWeightsGiven) {
  auto cfg = config("sensitivity");
  cfg.lambda_sdsc = 0.5;
  cfg.lambda_mse = 0.5;
  const auto r = run_sensitivity(cfg);
  EXPECT_EQ(r.tables.front().columns.back(), "hybrid(alpha=10)");
}

TEST(AlphaSweep, DefaultRunPasses) {
  const auto r = run_alpha_sweep(config("alpha-sweep"));
  EXPECT_TRUE(r.passed()) << render(r, OutputFormat::kMarkdown);
  for (const char *col : {"alpha=1", "alpha=10", "alpha=100"}) EXPECT_EQ(value(r, "Zero", col), 0.0);
  EXPECT_GT(value(r, "Inverted", "alpha=1"), value(r, "Inverted", "alpha=10"));
  EXPECT_GT(value(r, "Inverted", "alpha=10"), value(r, "Inverted", "alpha=100"));
  EXPECT_NEAR(value(r, "Inverted", "alpha=1"), 0.0091, 2e-3);
  EXPECT_NEAR(value(r, "Inverted", "alpha=10"), 0.0082, 2e-3);
  EXPECT_NEAR(value(r, "Inverted", "alpha=100"), 0.0047, 2e-3);
}

TEST(AlphaSweep, CustomLadder) {
  auto cfg = config("alpha-sweep");
  cfg.alphas = {5.0, 50.0};
  const auto r = run_alpha_sweep(cfg);
  EXPECT_EQ(r.tables.front().columns, (std::vector<std::string>{"alpha=5", "alpha=50"}));
  EXPECT_TRUE(r.passed());
}

TEST(Stats, SyntheticDefault) {
  const auto r = run_stats(config("stats"));
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.tables.size(), 2u);
  EXPECT_NEAR(value(r, "all", "pearson_r"), -0.3, 0.03);
  EXPECT_EQ(r.tables[1].rows.size(), 20u);
}

class CompareTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("sdsc_cmp_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string save(const std::string &name, const sdsc::Signal<double> &s) {
    const auto p = (dir_ / name).string();
    sdsc::save_csv(s, p);
    return p;
  }
  std::filesystem::path dir_;
};

TEST_F(CompareTest, SameFileTwice) {
  auto cfg = config("compare");
  cfg.file_e = cfg.file_r = save("e.csv", sine(1.0, 200));
  const auto r = run_compare(cfg);
  EXPECT_NEAR(value(r, "pair", "sdsc"), 1.0, 1e-9);
  EXPECT_EQ(value(r, "pair", "mse"), 0.0);
  EXPECT_EQ(value(r, "pair", "dtw"), 0.0);
}

TEST_F(CompareTest, NegatedFile) {
  const auto e = sine(1.0, 200);
  auto cfg = config("compare");
  cfg.file_e = save("e.csv", e);
  cfg.file_r = save("r.csv", sdsc::perturb(e, sdsc::perturbation::Invert{}));
  cfg.gradients = true;
  const auto r = run_compare(cfg);
  EXPECT_EQ(value(r, "pair", "sdsc"), 0.0);
  EXPECT_GT(value(r, "pair", "grad_mse"), 0.0);
}

TEST_F(CompareTest, ShiftedFixtureMatchesPanelRow) {
  const auto e = sine();
  auto cfg = config("compare");
  cfg.file_e = save("e.csv", e);
  cfg.file_r = save("r.csv", sdsc::perturb(e, sdsc::perturbation::Shift{1.0}));
  const auto r = run_compare(cfg);
  EXPECT_NEAR(value(r, "pair", "mse"), 1.0, 1e-3);
  EXPECT_NEAR(value(r, "pair", "mae"), 1.0, 1e-3);
  EXPECT_NEAR(value(r, "pair", "sdsc"), 0.3887, 2e-3);
}

TEST_F(CompareTest, UnequalLengthsKeepAlignmentMetrics) {
  auto cfg = config("compare");
  cfg.file_e = save("e.csv", sine(1.0, 50));
  cfg.file_r = save("r.csv", sine(1.0, 60));
  const auto r = run_compare(cfg);
  EXPECT_EQ(r.tables.front().columns, (std::vector<std::string>{"dtw", "soft_dtw"}));
}

TEST_F(CompareTest, ParseErrorCarriesFileAndLine) {
  std::ofstream(dir_ / "bad.csv") << "value\n1\n2\noops\n";
  auto cfg = config("compare");
  cfg.file_e = save("e.csv", sine(1.0, 3));
  cfg.file_r = (dir_ / "bad.csv").string();
  try {
    run_compare(cfg);
    FAIL();
  } catch (const sdsc::Error &ex) {
    EXPECT_NE(std::string(ex.what()).find("bad.csv: line 4"), std::string::npos) << ex.what();
  }
}

TEST(Render, FormatsCarryVerdicts) {
  Report r{"demo", {}, {"a note"}};
  Table t{"demo", "Demo", {"x", "y"}, {}};
  t.rows.push_back({"ok", {1.0, std::nullopt}, {within("x", 1.0, 1.0, 0.0)}});
  t.rows.push_back({"bad", {2.0, 3.0}, {within("y", 3.0, 1.0, 0.5)}});
  r.tables.push_back(t);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.failed_checks(), 1u);
  EXPECT_EQ(render(r, OutputFormat::kCsv),
            "case,x,y,verdict,checks\n"
            "ok,1,,pass,x==1:pass\n"
            "bad,2,3,fail,y=1+/-0.5:fail\n");
  const auto md = render(r, OutputFormat::kMarkdown);
  EXPECT_NE(md.find("| ok | 1.0000 |  | pass |"), std::string::npos) << md;
  EXPECT_NE(md.find("Result: FAIL"), std::string::npos);
  const auto nd = render(r, OutputFormat::kNdjson);
  EXPECT_NE(nd.find(R"("values":{"x":1.0,"y":null})"), std::string::npos) << nd;
  EXPECT_NE(nd.find(R"("passed":false)"), std::string::npos);
}

TEST(Checks, Kinds) {
  EXPECT_TRUE(within("a", 0.0, 0.0, 0.0).passed);
  EXPECT_FALSE(within("a", 1e-300, 0.0, 0.0).passed);
  EXPECT_TRUE(within("a", 1.0004, 1.0, 5e-4).passed);
  EXPECT_FALSE(within("a", std::nan(""), 1.0, 5e-4).passed);
  EXPECT_TRUE(below("a", 0.1, 0.2).passed);
  EXPECT_FALSE(below("a", 0.2, 0.2).passed);
}

TEST(RunConfig, JsonRoundTripAndDeterminism) {
  auto cfg = config("alpha-sweep");
  cfg.alphas = {1.0, 10.0, 100.0};
  cfg.sigma_sdsc = 0.5;
  cfg.seed = 9;
  cfg.format = OutputFormat::kNdjson;
  const nlohmann::json j = cfg;
  const auto back = j.get<RunConfig>();
  EXPECT_EQ(nlohmann::json(back), j);
  EXPECT_EQ(render(run(back), OutputFormat::kCsv), render(run(cfg), OutputFormat::kCsv));
}

TEST(RunConfig, LossConfigSelection) {
  auto cfg = config("compare");
  EXPECT_FALSE(cfg.loss_config(10.0).adaptive());
  cfg.sigma_mse = 2.0;
  EXPECT_TRUE(cfg.loss_config(10.0).adaptive());
  cfg = config("compare");
  cfg.lambda_sdsc = 0.0;
  cfg.lambda_mse = 0.0;
  EXPECT_THROW(cfg.validate(), sdsc::Error);
  EXPECT_THROW(run(config("nope")), sdsc::Error);
}

TEST(Determinism, EveryCommandIsByteStable) {
  for (const char *cmd : {"table1", "sensitivity", "alpha-sweep", "stats"}) {
    const auto cfg = config(cmd);
    for (auto f : {OutputFormat::kCsv, OutputFormat::kNdjson, OutputFormat::kMarkdown})
      EXPECT_EQ(render(run(cfg), f), render(run(cfg), f)) << cmd;
  }
}

} // namespace
