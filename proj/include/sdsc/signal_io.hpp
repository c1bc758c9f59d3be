#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "sdsc/signal.hpp"

namespace sdsc {

/// Zero-based column index, or a header name.
using ColumnSelector = std::variant<std::size_t, std::string>;

/// Parses one column of CSV text. A first row that does not parse as numbers
/// is taken as the header. `source` names the input in error messages.
Signal<double> parse_csv(std::string_view text, const ColumnSelector &column = std::size_t{0},
                         std::string_view source = "<csv>");

Signal<double> load_csv(const std::filesystem::path &path, const ColumnSelector &column = std::size_t{0});

/// Writes a `value` header and one sample per row with 17 significant digits.
void save_csv(const Signal<double> &signal, const std::filesystem::path &path);
std::string to_csv(const Signal<double> &signal);

/// {"n": N, "dt": sample_period, "samples": [...]} on a single line.
std::string to_ndjson(const Signal<double> &signal);
Signal<double> from_ndjson(std::string_view line);

/// Formats with `digits` significant digits, shortest of %e/%f style.
std::string format_number(double value, int digits = 17);

} // namespace sdsc
