#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdsc::harness {

/// One (mse, sdsc) score pair for a model output.
struct PairedSample {
  double mse = 0;
  double sdsc = 0;
};

void validate(const PairedSample &sample);

/// Requires a `mse,sdsc` header (either column order).
std::vector<PairedSample> parse_paired_samples(std::string_view text, std::string_view source = "<samples>");
std::vector<PairedSample> load_paired_samples(const std::filesystem::path &path);
std::string to_csv(std::span<const PairedSample> samples);

double mean(std::span<const double> x);

/// Population standard deviation (divides by n).
double population_std(std::span<const double> x);

double pearson(std::span<const double> x, std::span<const double> y);

/// Inclusive linear-interpolation quantile (Hyndman-Fan type 7) of
/// ascending-sorted data: position h = (n - 1) p, interpolated between
/// floor(h) and floor(h) + 1.
double quantile_sorted(std::span<const double> sorted, double p);

struct Quartiles {
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  double iqr() const { return q3 - q1; }
};

Quartiles quartiles(std::vector<double> values);

/// Equal-width bins over [lo, hi]; values equal to hi land in the last bin,
/// values outside are dropped.
std::vector<std::size_t> histogram(std::span<const double> values, std::size_t bins, double lo = 0.0,
                                   double hi = 1.0);

struct StatsSummary {
  std::size_t n = 0;
  double pearson_r = 0;
  double band_center = 0;
  double band_eps = 0;
  std::size_t band_n = 0;
  double band_mean = 0;
  double band_std = 0;
  Quartiles band_quartiles;
  std::vector<std::size_t> histogram;  // of band sdsc values over [0, 1]
};

/// Pearson r over all samples; std, quartiles and histogram of sdsc over
/// |mse - band_center| <= band_eps.
StatsSummary summarize(std::span<const PairedSample> samples, double band_center, double band_eps,
                       std::size_t bins = 20);

/// Synthetic pairs with population correlation `target_r`:
///   mse  = mse_center  + mse_scale  * z1
///   sdsc = sdsc_center + sdsc_scale * (r z1 + sqrt(1 - r^2) z2)
/// with z1, z2 from NormalStream(seed). Values are clamped to mse >= 0 and
/// sdsc in [0, 1]; with the default scales clamping is a > 5 sigma event.
struct SyntheticPairsSpec {
  std::size_t count = 10000;
  double target_r = -0.3;
  std::uint64_t seed = 42;
  double mse_center = 1.5;
  double mse_scale = 0.3;
  double sdsc_center = 0.5;
  double sdsc_scale = 0.08;
};

std::vector<PairedSample> synthetic_pairs(const SyntheticPairsSpec &spec);

} // namespace sdsc::harness
