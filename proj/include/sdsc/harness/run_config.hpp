#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdsc/harness/report.hpp"
#include "sdsc/metrics.hpp"

namespace sdsc::harness {

/// Everything a harness command reads. A run is reproducible from this
/// struct alone; it round-trips through JSON.
struct RunConfig {
  std::string command;

  // Reconstructed fixtures.
  Index n_samples = 1000;
  double amplitude = 1.0;
  double inverted_amplitude = 0.1;  // table1 Inverted row only
  double periods = 1.0;
  double noise_sigma = 0.7115;
  double jitter_sigma = 0.05;
  std::uint64_t seed = 42;  // noise uses seed, jitter uses seed + 1

  // Losses. An empty alpha list means the command's default ladder.
  std::vector<double> alphas;
  double epsilon = 1e-8;
  std::optional<double> lambda_sdsc;
  std::optional<double> lambda_mse;
  std::optional<double> sigma_sdsc;
  std::optional<double> sigma_mse;
  double gamma = 1.0;

  // stats
  std::string samples_path;
  double band_center = 1.5;
  double band_eps = 0.05;
  std::size_t bins = 20;
  std::size_t synthetic_count = 10000;
  double synthetic_r = -0.3;

  // compare
  std::string file_e;
  std::string file_r;
  std::string column;  // header name or zero-based index; empty means column 0
  bool gradients = false;

  OutputFormat format = OutputFormat::kCsv;
  std::string out;

  /// Alphas to use for `command`, applying its default ladder when empty.
  std::vector<double> effective_alphas() const;

  /// Fixed weights unless either sigma is set.
  LossConfig<double> loss_config(double alpha) const;

  bool hybrid_requested() const;

  void validate() const;
};

void to_json(nlohmann::json &j, const RunConfig &cfg);
void from_json(const nlohmann::json &j, RunConfig &cfg);

} // namespace sdsc::harness
