#include "sdsc/harness/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "sdsc/error.hpp"
#include "sdsc/random.hpp"
#include "sdsc/signal_io.hpp"

namespace sdsc::harness {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) return cells;
    start = comma + 1;
  }
}

double parse_cell(std::string_view cell, std::string_view source, std::size_t line) {
  double v = 0;
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  const auto *end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (cell.empty() || ec != std::errc() || ptr != end)
    throw Error(ErrorCode::kParse, std::string(source) + ": line " + std::to_string(line) + ": cannot parse '" +
                                       std::string(cell) + "' as a number");
  return v;
}

void require_samples(std::size_t n) {
  if (n < 2)
    throw Error(ErrorCode::kInsufficientSamples,
                "need at least 2 samples, got " + std::to_string(n));
}

} // namespace

void validate(const PairedSample &s) {
  if (!std::isfinite(s.mse) || !std::isfinite(s.sdsc))
    throw Error(ErrorCode::kNonFinite, "paired sample values must be finite");
  if (s.sdsc < 0.0 || s.sdsc > 1.0) throw Error(ErrorCode::kInvalidArgument, "paired sample sdsc must be in [0, 1]");
}

std::vector<PairedSample> parse_paired_samples(std::string_view text, std::string_view source) {
  std::vector<PairedSample> out;
  std::optional<std::size_t> mse_col, sdsc_col;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (!mse_col) {
      for (std::size_t j = 0; j < cells.size(); ++j) {
        if (cells[j] == "mse") mse_col = j;
        if (cells[j] == "sdsc") sdsc_col = j;
      }
      if (!mse_col || !sdsc_col)
        throw Error(ErrorCode::kParse, std::string(source) + ": line " + std::to_string(line_no) +
                                           ": expected header with columns mse,sdsc");
      continue;
    }
    const std::size_t need = std::max(*mse_col, *sdsc_col);
    if (cells.size() <= need)
      throw Error(ErrorCode::kParse, std::string(source) + ": line " + std::to_string(line_no) + ": missing columns");
    PairedSample s{parse_cell(cells[*mse_col], source, line_no), parse_cell(cells[*sdsc_col], source, line_no)};
    try {
      validate(s);
    } catch (const Error &ex) {
      throw Error(ex.code(), std::string(source) + ": line " + std::to_string(line_no) + ": " + ex.what());
    }
    out.push_back(s);
  }
  if (!mse_col) throw Error(ErrorCode::kParse, std::string(source) + ": missing mse,sdsc header");
  return out;
}

std::vector<PairedSample> load_paired_samples(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_paired_samples(buf.str(), path.string());
}

std::string to_csv(std::span<const PairedSample> samples) {
  std::string out = "mse,sdsc\n";
  for (const auto &s : samples) out += format_number(s.mse) + "," + format_number(s.sdsc) + "\n";
  return out;
}

double mean(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorCode::kEmptyInput, "mean of empty data");
  double acc = 0;
  for (double v : x) acc += v;
  return acc / static_cast<double>(x.size());
}

double population_std(std::span<const double> x) {
  const double m = mean(x);
  double acc = 0;
  for (double v : x) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(x.size()));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kLengthMismatch, "pearson: length mismatch");
  require_samples(x.size());
  const double mx = mean(x), my = mean(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::kInvalidArgument, "pearson: zero variance");
  return sxy / std::sqrt(sxx * syy);
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::kEmptyInput, "quantile of empty data");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "quantile p must be in [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted[lo];
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

Quartiles quartiles(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return {quantile_sorted(values, 0.25), quantile_sorted(values, 0.5), quantile_sorted(values, 0.75)};
}

std::vector<std::size_t> histogram(std::span<const double> values, std::size_t bins, double lo, double hi) {
  if (bins == 0 || !(hi > lo)) throw Error(ErrorCode::kInvalidArgument, "histogram needs bins > 0 and hi > lo");
  std::vector<std::size_t> counts(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    if (v < lo || v > hi) continue;
    auto b = static_cast<std::size_t>((v - lo) / width);
    counts[std::min(b, bins - 1)]++;
  }
  return counts;
}

StatsSummary summarize(std::span<const PairedSample> samples, double band_center, double band_eps,
                       std::size_t bins) {
  require_samples(samples.size());
  if (!(band_eps >= 0.0) || !std::isfinite(band_center))
    throw Error(ErrorCode::kInvalidArgument, "band needs a finite center and eps >= 0");
  std::vector<double> mse, sdsc, band;
  for (const auto &s : samples) {
    validate(s);
    mse.push_back(s.mse);
    sdsc.push_back(s.sdsc);
    if (std::abs(s.mse - band_center) <= band_eps) band.push_back(s.sdsc);
  }
  StatsSummary out;
  out.n = samples.size();
  out.pearson_r = pearson(mse, sdsc);
  out.band_center = band_center;
  out.band_eps = band_eps;
  out.band_n = band.size();
  if (band.size() < 2)
    throw Error(ErrorCode::kInsufficientBandSamples,
                "band |mse - " + format_number(band_center, 6) + "| <= " + format_number(band_eps, 6) +
                    " holds " + std::to_string(band.size()) + " samples, need at least 2");
  out.band_mean = mean(band);
  out.band_std = population_std(band);
  out.histogram = histogram(band, bins);
  out.band_quartiles = quartiles(std::move(band));
  return out;
}

std::vector<PairedSample> synthetic_pairs(const SyntheticPairsSpec &spec) {
  if (!(spec.target_r >= -1.0 && spec.target_r <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "synthetic target r must be in [-1, 1]");
  NormalStream normal(spec.seed);
  const double ortho = std::sqrt(1.0 - spec.target_r * spec.target_r);
  std::vector<PairedSample> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const double z1 = normal();
    const double z2 = normal();
    PairedSample s;
    s.mse = std::max(0.0, spec.mse_center + spec.mse_scale * z1);
    s.sdsc = std::clamp(spec.sdsc_center + spec.sdsc_scale * (spec.target_r * z1 + ortho * z2), 0.0, 1.0);
    out.push_back(s);
  }
  return out;
}

} // namespace sdsc::harness
