#include "sdsc/harness/run_config.hpp"

#include <cmath>

namespace sdsc::harness {

std::vector<double> RunConfig::effective_alphas() const {
  if (!alphas.empty()) return alphas;
  if (command == "alpha-sweep") return {1.0, 10.0, 100.0};
  return {10.0};
}

LossConfig<double> RunConfig::loss_config(double alpha) const {
  LossConfig<double> cfg;
  cfg.heaviside = HeavisideMode<double>::sigmoid(alpha);
  cfg.denom_epsilon = epsilon;
  if (sigma_sdsc || sigma_mse) {
    cfg.weighting = AdaptiveWeights<double>{sigma_sdsc.value_or(1.0), sigma_mse.value_or(1.0)};
  } else {
    cfg.weighting = FixedWeights<double>{lambda_sdsc.value_or(1.0), lambda_mse.value_or(1.0)};
  }
  cfg.validate();
  return cfg;
}

bool RunConfig::hybrid_requested() const { return lambda_sdsc || lambda_mse || sigma_sdsc || sigma_mse; }

void RunConfig::validate() const {
  if (n_samples < 2) throw Error(ErrorCode::kInvalidArgument, "--n-samples must be >= 2");
  for (double a : effective_alphas()) {
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::kInvalidArgument, "--alpha values must be > 0");
  }
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "--epsilon must be >= 0");
  if (!(gamma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "--gamma must be > 0");
  if (bins == 0) throw Error(ErrorCode::kInvalidArgument, "--bins must be > 0");
  loss_config(effective_alphas().front());
}

void to_json(nlohmann::json &j, const RunConfig &c) {
  const auto opt = [](const std::optional<double> &v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  j = nlohmann::json{{"command", c.command},
                     {"n_samples", c.n_samples},
                     {"amplitude", c.amplitude},
                     {"inverted_amplitude", c.inverted_amplitude},
                     {"periods", c.periods},
                     {"noise_sigma", c.noise_sigma},
                     {"jitter_sigma", c.jitter_sigma},
                     {"seed", c.seed},
                     {"alphas", c.alphas},
                     {"epsilon", c.epsilon},
                     {"lambda_sdsc", opt(c.lambda_sdsc)},
                     {"lambda_mse", opt(c.lambda_mse)},
                     {"sigma_sdsc", opt(c.sigma_sdsc)},
                     {"sigma_mse", opt(c.sigma_mse)},
                     {"gamma", c.gamma},
                     {"samples_path", c.samples_path},
                     {"band_center", c.band_center},
                     {"band_eps", c.band_eps},
                     {"bins", c.bins},
                     {"synthetic_count", c.synthetic_count},
                     {"synthetic_r", c.synthetic_r},
                     {"file_e", c.file_e},
                     {"file_r", c.file_r},
                     {"column", c.column},
                     {"gradients", c.gradients},
                     {"format", to_string(c.format)},
                     {"out", c.out}};
}

void from_json(const nlohmann::json &j, RunConfig &c) {
  const RunConfig defaults;
  const auto opt = [&j](const char *key) -> std::optional<double> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
  };
  c.command = j.value("command", defaults.command);
  c.n_samples = j.value("n_samples", defaults.n_samples);
  c.amplitude = j.value("amplitude", defaults.amplitude);
  c.inverted_amplitude = j.value("inverted_amplitude", defaults.inverted_amplitude);
  c.periods = j.value("periods", defaults.periods);
  c.noise_sigma = j.value("noise_sigma", defaults.noise_sigma);
  c.jitter_sigma = j.value("jitter_sigma", defaults.jitter_sigma);
  c.seed = j.value("seed", defaults.seed);
  c.alphas = j.value("alphas", defaults.alphas);
  c.epsilon = j.value("epsilon", defaults.epsilon);
  c.lambda_sdsc = opt("lambda_sdsc");
  c.lambda_mse = opt("lambda_mse");
  c.sigma_sdsc = opt("sigma_sdsc");
  c.sigma_mse = opt("sigma_mse");
  c.gamma = j.value("gamma", defaults.gamma);
  c.samples_path = j.value("samples_path", defaults.samples_path);
  c.band_center = j.value("band_center", defaults.band_center);
  c.band_eps = j.value("band_eps", defaults.band_eps);
  c.bins = j.value("bins", defaults.bins);
  c.synthetic_count = j.value("synthetic_count", defaults.synthetic_count);
  c.synthetic_r = j.value("synthetic_r", defaults.synthetic_r);
  c.file_e = j.value("file_e", defaults.file_e);
  c.file_r = j.value("file_r", defaults.file_r);
  c.column = j.value("column", defaults.column);
  c.gradients = j.value("gradients", defaults.gradients);
  c.format = parse_format(j.value("format", to_string(defaults.format)));
  c.out = j.value("out", defaults.out);
}

} // namespace sdsc::harness
