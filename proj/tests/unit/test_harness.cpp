#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ekss/config.hpp"
#include "ekss/errors.hpp"
#include "ekss/harness.hpp"
#include "ekss/report_io.hpp"
#include "ekss_tools/cli.hpp"

using namespace ekss;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ekss_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

// Data rows of a column file, header lines skipped.
std::vector<std::vector<double>> read_columns(const fs::path& p) {
  std::vector<std::vector<double>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    double x;
    while (ls >> x) row.push_back(x);
    rows.push_back(row);
  }
  return rows;
}

SweepRow row(double eps, double T, bool censored) {
  SweepRow r;
  r.eps = eps;
  r.blowup_time = T;
  r.horizon = T;
  r.censored = censored;
  r.trigger = censored ? BlowupTrigger::None : BlowupTrigger::Gradient;
  return r;
}

}  // namespace

TEST(Config, DefaultsValidate) {
  ExperimentConfig c;
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, TextOverridesAndUnknownKeys) {
  ExperimentConfig c;
  apply_config_text(c, "[grid]\nn = 48\nL = 12\n[solver]\nmode = quasilinear\n[experiment]\neps = 0.3, 0.15\n");
  EXPECT_EQ(c.solver.grid.n, 48);
  EXPECT_DOUBLE_EQ(c.solver.grid.L, 12.0);
  EXPECT_EQ(c.solver.mode, SolverMode::Quasilinear);
  EXPECT_EQ(c.eps, (std::vector<double>{0.3, 0.15}));
  EXPECT_THROW(apply_config_text(c, "[grid]\nbogus = 1\n"), ValidationError);
  EXPECT_THROW(apply_config_text(c, "[nowhere]\nn = 1\n"), ValidationError);
  EXPECT_THROW(set_config_value(c, "grid.n", "many"), ValidationError);
}

TEST(Config, CanonicalFormRoundTripsAndHashesStably) {
  ExperimentConfig a;
  set_config_value(a, "experiment.delta", "0.2");
  set_config_value(a, "grid.n", "40");
  ExperimentConfig b;
  apply_config_text(b, a.canonical());
  EXPECT_EQ(a.canonical(), b.canonical());
  EXPECT_EQ(fnv1a64(a.canonical()), fnv1a64(b.canonical()));
  set_config_value(b, "experiment.seed", "2");
  EXPECT_NE(fnv1a64(a.canonical()), fnv1a64(b.canonical()));
}

TEST(Config, LoadsFromFile) {
  const fs::path dir = scratch("cfgfile");
  fs::create_directories(dir);
  std::ofstream(dir / "x.ini") << "[grid]\nn = 24\n[experiment]\nseed = 9\n";
  const ExperimentConfig c = load_config((dir / "x.ini").string());
  EXPECT_EQ(c.solver.grid.n, 24);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_THROW(load_config((dir / "missing.ini").string()), ValidationError);
}

TEST(ReportIo, FnvReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(hex64(0xabcull), "0000000000000abc");
}

TEST(ReportIo, CsvHeaderCarriesVersionHashAndSeed) {
  std::ostringstream os;
  write_csv_header(os, 0x1234ull, 7, {"a", "b"});
  EXPECT_EQ(os.str(), "# ekss 0.1.0 config_hash=0000000000001234 seed=7\na,b\n");
}

TEST(ReportIo, NumbersRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(num(x)), x);
}

TEST(ReportIo, ManifestHashesFiles) {
  const fs::path dir = scratch("manifest");
  Manifest m(dir);
  std::ofstream(m.path("a.txt")) << "hello";
  m.add("a.txt");
  m.write();
  const std::string text = slurp(dir / "manifest.txt");
  EXPECT_NE(text.find(hex64(fnv1a64("hello")) + "  a.txt"), std::string::npos) << text;
  EXPECT_EQ(file_hash(dir / "a.txt"), fnv1a64("hello"));
}

TEST(Lifespan, HorizonIsCapped) {
  EXPECT_DOUBLE_EQ(lifespan_horizon(1.0, 1.0, 1e9), 10 * std::exp(1.0));
  EXPECT_DOUBLE_EQ(lifespan_horizon(0.01, 1.0, 500.0), 500.0);
}

TEST(Lifespan, FitUsesOnlyUncensoredRows) {
  // log T = 0.5 + 0.3 / eps exactly.
  std::vector<SweepRow> rows;
  for (double eps : {0.4, 0.3, 0.2, 0.15}) rows.push_back(row(eps, std::exp(0.5 + 0.3 / eps), false));
  const auto fit = fit_lifespan(rows);
  ASSERT_TRUE(fit.has_value());
  EXPECT_NEAR(fit->slope, 0.3, 1e-12);
  EXPECT_NEAR(fit->intercept, 0.5, 1e-12);
  EXPECT_NEAR(fit->correlation, 1.0, 1e-12);
  EXPECT_EQ(fit->points, 4u);
  // A censored row at an absurd time must not move the fit.
  rows.push_back(row(0.1, 1e-3, true));
  const auto fit2 = fit_lifespan(rows);
  ASSERT_TRUE(fit2.has_value());
  EXPECT_EQ(fit2->slope, fit->slope);
  EXPECT_EQ(fit2->points, 4u);
}

TEST(Lifespan, FitOmittedBelowFourUncensoredRows) {
  std::vector<SweepRow> rows{row(0.4, 3.0, false), row(0.2, 9.0, false), row(0.1, 20.0, false),
                             row(0.05, 100.0, true)};
  EXPECT_FALSE(fit_lifespan(rows).has_value());
}

TEST(Lifespan, LinearSmokeSweepIsFullyCensored) {
  ExperimentConfig c;
  apply_config_text(c, "[grid]\nn = 16\nL = 10\n[solver]\nmode = linear\n[experiment]\neps = 0.4, 0.2, 0.1\nT_budget = 1\n");
  const SweepResult r = sweep_lifespan(c);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const SweepRow& s : r.rows) {
    EXPECT_TRUE(s.censored);
    EXPECT_DOUBLE_EQ(s.blowup_time, s.horizon);
  }
  EXPECT_FALSE(r.fit.has_value());
}

TEST(Lifespan, EpsListMustDecrease) {
  ExperimentConfig c;
  apply_config_text(c, "[grid]\nn = 16\nL = 10\n[experiment]\neps = 0.1, 0.2\nT_budget = 1\n");
  EXPECT_THROW(sweep_lifespan(c), ValidationError);
}

TEST(PlotData, EmptyReportsGiveHeaderOnlyFiles) {
  const fs::path dir = scratch("plot_empty");
  fs::create_directories(dir);
  emit_energy_dat((dir / "e.dat").string(), {});
  emit_kss_growth_dat((dir / "k.dat").string(), {});
  emit_ratio_hist_dat((dir / "h.dat").string(), {}, 10);
  emit_lifespan_dat((dir / "l.dat").string(), {});
  for (const char* f : {"e.dat", "k.dat", "h.dat", "l.dat"}) {
    const std::string text = slurp(dir / f);
    ASSERT_FALSE(text.empty()) << f;
    EXPECT_EQ(text[0], '#') << f;
    EXPECT_TRUE(read_columns(dir / f).empty()) << f;
  }
}

TEST(PlotData, LifespanSortedByInverseEps) {
  const fs::path dir = scratch("plot_life");
  fs::create_directories(dir);
  emit_lifespan_dat((dir / "l.dat").string(), {row(0.1, 50.0, true), row(0.4, 3.0, false), row(0.2, 9.0, false)});
  const auto rows = read_columns(dir / "l.dat");
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i][0], rows[i - 1][0]);
  EXPECT_EQ(rows[2][2], 1.0);
  EXPECT_NEAR(rows[0][1], std::log(3.0), 1e-15);
}

TEST(PlotData, KssGrowthSlopeIsTheFittedCoefficient) {
  const fs::path dir = scratch("plot_kss");
  fs::create_directories(dir);
  const KssGrowth kg = kss_free_growth(GridSpec{32, 32.0, true}, 3.0, 20.0, 0.5, 0.25, 1.0, 20.0);
  emit_kss_growth_dat((dir / "k.dat").string(), kg.growth);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& r : read_columns(dir / "k.dat")) {
    if (r[2] < 1.0 || r[2] > 20.0) continue;
    sx += r[0];
    sy += r[1];
    sxx += r[0] * r[0];
    sxy += r[0] * r[1];
    ++m;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  EXPECT_EQ(static_cast<std::size_t>(m), kg.fit.points);
  EXPECT_NEAR(slope, kg.fit.a, 1e-9 * std::abs(kg.fit.a));
}

TEST(Cli, HodgeCheckSucceeds) {
  const fs::path dir = scratch("cli_hodge");
  EXPECT_EQ(run_cli({"hodge-check", "--n", "32", "--seed", "7", "--out", dir.string()}), cli::kOk);
  EXPECT_TRUE(fs::exists(dir / "hodge.csv"));
  EXPECT_TRUE(fs::exists(dir / "manifest.txt"));
  EXPECT_TRUE(fs::exists(dir / "summary.txt"));
  const std::string csv = slurp(dir / "hodge.csv");
  EXPECT_EQ(csv.rfind("# ekss 0.1.0 config_hash=", 0), 0u) << csv;
  EXPECT_NE(csv.find("seed=7"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  std::string text;
  EXPECT_EQ(run_cli({}, &text), cli::kUsage);
  EXPECT_NE(text.find("Usage"), std::string::npos) << text;
  EXPECT_EQ(run_cli({"simulate"}, &text), cli::kUsage);
  EXPECT_NE(text.find("Usage"), std::string::npos) << text;
  EXPECT_EQ(run_cli({"hodge-check", "--frobnicate", "1"}), cli::kUsage);
  EXPECT_EQ(run_cli({"launch"}), cli::kUsage);
  EXPECT_EQ(run_cli({"simulate", "--n", "31", "--out", scratch("cli_odd").string()}), cli::kUsage);
  EXPECT_EQ(run_cli({"simulate", "--mode", "cubic", "--out", scratch("cli_mode").string()}), cli::kUsage);
}

TEST(Cli, MissingConfigFileIsUsageError) {
  EXPECT_EQ(run_cli({"simulate", "--config", "/nonexistent/ekss.ini", "--out", scratch("cli_missing").string()}),
            cli::kUsage);
}

TEST(Cli, OutputsAreBitIdenticalAcrossRuns) {
  const fs::path a = scratch("cli_det_a"), b = scratch("cli_det_b");
  for (const fs::path& d : {a, b})
    ASSERT_EQ(run_cli({"simulate", "--n", "16", "--L", "10", "--T", "0.5", "--seed", "3", "--out", d.string()}), cli::kOk);
  EXPECT_EQ(slurp(a / "run.csv"), slurp(b / "run.csv"));
  EXPECT_FALSE(slurp(a / "run.csv").empty());
  const fs::path c = scratch("cli_det_c"), d = scratch("cli_det_d");
  for (const fs::path& p : {c, d})
    ASSERT_EQ(run_cli({"hodge-check", "--n", "16", "--seed", "5", "--out", p.string()}), cli::kOk);
  EXPECT_EQ(slurp(c / "hodge.csv"), slurp(d / "hodge.csv"));
}
