#include "sdsc/signal_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace sdsc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool parse_double(std::string_view cell, double &out) {
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto *end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, out);
  return ec == std::errc() && ptr == end;
}

[[noreturn]] void parse_error(std::string_view source, std::size_t line, const std::string &what) {
  throw Error(ErrorCode::kParse, std::string(source) + ": line " + std::to_string(line) + ": " + what);
}

} // namespace

std::string format_number(double value, int digits) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
  return std::string(buf, ptr);
}

Signal<double> parse_csv(std::string_view text, const ColumnSelector &column, std::string_view source) {
  std::vector<double> values;
  std::optional<std::size_t> index;
  if (const auto *i = std::get_if<std::size_t>(&column)) index = *i;
  bool first_row = true;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);

    if (first_row) {
      first_row = false;
      bool numeric = true;
      double scratch = 0;
      for (auto c : cells) numeric = numeric && parse_double(c, scratch);
      if (!numeric) {
        if (const auto *name = std::get_if<std::string>(&column)) {
          for (std::size_t j = 0; j < cells.size(); ++j) {
            if (cells[j] == *name) index = j;
          }
          if (!index) parse_error(source, line_no, "no column named '" + *name + "' in header");
        }
        continue;
      }
      if (!index) parse_error(source, line_no, "column selected by name but the file has no header");
    }

    if (*index >= cells.size())
      parse_error(source, line_no, "row has " + std::to_string(cells.size()) + " columns, need column " +
                                       std::to_string(*index));
    double v = 0;
    if (!parse_double(cells[*index], v))
      parse_error(source, line_no, "cannot parse '" + std::string(cells[*index]) + "' as a number");
    if (!std::isfinite(v))
      throw Error(ErrorCode::kNonFinite, std::string(source) + ": line " + std::to_string(line_no) +
                                             ": non-finite value '" + std::string(cells[*index]) + "'");
    values.push_back(v);
  }
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, std::string(source) + ": no data rows");
  return Signal<double>(std::span<const double>(values));
}

Signal<double> load_csv(const std::filesystem::path &path, const ColumnSelector &column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), column, path.string());
}

std::string to_csv(const Signal<double> &signal) {
  std::string out = "value\n";
  for (Index i = 0; i < signal.size(); ++i) {
    out += format_number(signal[i], 17);
    out += '\n';
  }
  return out;
}

void save_csv(const Signal<double> &signal, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << to_csv(signal);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::string to_ndjson(const Signal<double> &signal) {
  nlohmann::ordered_json j;
  j["n"] = signal.size();
  j["dt"] = signal.sample_period();
  j["samples"] = signal.to_vector();
  return j.dump();
}

Signal<double> from_ndjson(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
    const auto samples = j.at("samples").get<std::vector<double>>();
    if (j.at("n").get<std::size_t>() != samples.size())
      throw Error(ErrorCode::kParse, "ndjson signal: n does not match samples length");
    return Signal<double>(std::span<const double>(samples), j.value("dt", 1.0));
  } catch (const nlohmann::json::exception &ex) {
    throw Error(ErrorCode::kParse, std::string("ndjson signal: ") + ex.what());
  }
}

} // namespace sdsc
