// Command-line harness: metric tables over reconstructed fixtures, gradient
// sensitivity, dispersion statistics, and pairwise comparison of CSV signals.
//
// Exit codes: 0 success, 1 an embedded expected-value check failed,
// 2 usage, parse, or i/o error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sdsc/error.hpp"
#include "sdsc/harness/commands.hpp"

namespace {

using sdsc::harness::RunConfig;

constexpr const char *kOutputDirEnv = "SDSC_OUTPUT_DIR";

void add_fixture_options(CLI::App &cmd, RunConfig &cfg) {
  cmd.add_option("--n-samples", cfg.n_samples, "Samples in the base sine")->capture_default_str();
  cmd.add_option("--amplitude", cfg.amplitude, "Base sine amplitude")->capture_default_str();
  cmd.add_option("--periods", cfg.periods, "Sine periods over the window")->capture_default_str();
  cmd.add_option("--noise-sigma", cfg.noise_sigma, "Noise Sample standard deviation")->capture_default_str();
  cmd.add_option("--jitter-sigma", cfg.jitter_sigma, "Jittered standard deviation")->capture_default_str();
}

void add_loss_options(CLI::App &cmd, RunConfig &cfg) {
  cmd.add_option("--alpha", cfg.alphas, "Sigmoid Heaviside sharpness (repeatable)");
  cmd.add_option("--epsilon", cfg.epsilon, "SDSC denominator epsilon")->capture_default_str();
  auto *ls = cmd.add_option("--lambda-sdsc", cfg.lambda_sdsc, "Fixed hybrid weight on the SDSC loss");
  auto *lm = cmd.add_option("--lambda-mse", cfg.lambda_mse, "Fixed hybrid weight on MSE");
  auto *ss = cmd.add_option("--sigma-sdsc", cfg.sigma_sdsc, "Adaptive hybrid: SDSC uncertainty sigma");
  auto *sm = cmd.add_option("--sigma-mse", cfg.sigma_mse, "Adaptive hybrid: MSE uncertainty sigma");
  ss->excludes(ls)->excludes(lm);
  sm->excludes(ls)->excludes(lm);
}

void add_common_options(CLI::App &cmd, RunConfig &cfg, std::string &format) {
  cmd.add_option("--seed", cfg.seed, "Seed for noise fixtures and synthetic data")->capture_default_str();
  cmd.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "markdown", "ndjson"}))
      ->capture_default_str();
  cmd.add_option("--out", cfg.out, "Output path (default: stdout, or $SDSC_OUTPUT_DIR/<command>.<ext>)");
}

std::filesystem::path output_path(const RunConfig &cfg) {
  if (!cfg.out.empty()) return cfg.out;
  if (const char *dir = std::getenv(kOutputDirEnv); dir && *dir)
    return std::filesystem::path(dir) / (cfg.command + sdsc::harness::file_extension(cfg.format));
  return {};
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Structure-aware signal similarity: SDSC, losses, gradients and reports"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "csv";
  std::string config_path;
  bool print_config = false;
  app.add_option("--config", config_path, "Load a RunConfig JSON; command-line flags override it")
      ->check(CLI::ExistingFile);
  app.add_flag("--print-config", print_config, "Print the resolved RunConfig as JSON and exit");

  auto *table1 = app.add_subcommand("table1", "Metric panel over the reconstructed perturbation fixtures");
  add_fixture_options(*table1, cfg);
  table1->add_option("--inverted-amplitude", cfg.inverted_amplitude, "Amplitude of the Inverted row")
      ->capture_default_str();
  table1->add_option("--gamma", cfg.gamma, "Soft-DTW gamma")->capture_default_str();
  add_loss_options(*table1, cfg);
  add_common_options(*table1, cfg, format);

  auto *sensitivity = app.add_subcommand("sensitivity", "Gradient norms of MSE, MAE and SDSC loss per perturbation");
  add_fixture_options(*sensitivity, cfg);
  add_loss_options(*sensitivity, cfg);
  add_common_options(*sensitivity, cfg, format);

  auto *sweep = app.add_subcommand("alpha-sweep", "SDSC loss gradient norms across an alpha ladder");
  add_fixture_options(*sweep, cfg);
  add_loss_options(*sweep, cfg);
  add_common_options(*sweep, cfg, format);

  auto *stats = app.add_subcommand("stats", "Pearson r and SDSC spread at fixed MSE over paired samples");
  stats->add_option("--samples", cfg.samples_path, "CSV with header mse,sdsc (default: synthetic generator)")
      ->check(CLI::ExistingFile);
  stats->add_option("--band-center", cfg.band_center, "MSE band center")->capture_default_str();
  stats->add_option("--band-eps", cfg.band_eps, "MSE band half-width")->capture_default_str();
  stats->add_option("--bins", cfg.bins, "Histogram bins over [0, 1]")->capture_default_str();
  stats->add_option("--synthetic-count", cfg.synthetic_count, "Synthetic pair count")->capture_default_str();
  stats->add_option("--synthetic-r", cfg.synthetic_r, "Synthetic generator correlation")->capture_default_str();
  add_common_options(*stats, cfg, format);

  auto *compare = app.add_subcommand("compare", "Metric panel for a reference and a candidate CSV signal");
  compare->add_option("reference", cfg.file_e, "Reference signal CSV")->required();
  compare->add_option("candidate", cfg.file_r, "Candidate signal CSV")->required();
  compare->add_option("--column", cfg.column, "Column name or zero-based index");
  compare->add_option("--gamma", cfg.gamma, "Soft-DTW gamma")->capture_default_str();
  compare->add_flag("--gradients", cfg.gradients, "Also report gradient norms");
  add_loss_options(*compare, cfg);
  add_common_options(*compare, cfg, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &ex) {
    const int rc = app.exit(ex);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) {
      // Reparse so that explicit flags win over the file.
      std::ifstream in(config_path);
      cfg = nlohmann::json::parse(in).get<RunConfig>();
      format = sdsc::harness::to_string(cfg.format);
      app.parse(argc, argv);
    }
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = sdsc::harness::parse_format(format);

    if (print_config) {
      std::cout << nlohmann::json(cfg).dump(2) << '\n';
      return 0;
    }

    const auto report = sdsc::harness::run(cfg);
    const auto text = sdsc::harness::render(report, cfg.format);
    if (const auto path = output_path(cfg); !path.empty()) {
      if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
      }
      std::ofstream out(path, std::ios::binary);
      if (!out) throw sdsc::Error(sdsc::ErrorCode::kIo, "cannot write " + path.string());
      out << text;
      if (!out) throw sdsc::Error(sdsc::ErrorCode::kIo, "write failed for " + path.string());
    } else {
      std::cout << text;
    }
    if (!report.passed()) {
      std::cerr << "sdsc: " << report.failed_checks() << " expected-value check(s) failed\n";
      return 1;
    }
    return 0;
  } catch (const CLI::ParseError &ex) {
    return app.exit(ex) == 0 ? 0 : 2;
  } catch (const sdsc::Error &ex) {
    std::cerr << "sdsc: " << sdsc::to_string(ex.code()) << ": " << ex.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception &ex) {
    std::cerr << "sdsc: config: " << ex.what() << '\n';
    return 2;
  }
}
