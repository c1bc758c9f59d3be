#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sdsc::harness {

enum class OutputFormat { kCsv, kMarkdown, kNdjson };

OutputFormat parse_format(const std::string &name);
std::string to_string(OutputFormat format);
std::string file_extension(OutputFormat format);

enum class CheckKind {
  kWithin,  // |actual - expected| <= tolerance; tolerance 0 means exact
  kBelow,   // actual < expected
};

struct Check {
  std::string column;
  CheckKind kind = CheckKind::kWithin;
  double actual = 0;
  double expected = 0;
  double tolerance = 0;
  bool passed = false;

  std::string describe() const;
};

Check within(std::string column, double actual, double expected, double tolerance);
Check below(std::string column, double actual, double bound);

struct ReportRow {
  std::string label;
  std::vector<std::optional<double>> values;  // one per table column; nullopt renders empty
  std::vector<Check> checks;

  /// "pass", "fail", or "info" when the row has no checks.
  std::string verdict() const;
};

struct Table {
  std::string name;
  std::string title;
  std::vector<std::string> columns;
  std::vector<ReportRow> rows;
};

struct Report {
  std::string command;
  std::vector<Table> tables;
  std::vector<std::string> notes;

  bool passed() const;
  std::size_t failed_checks() const;
};

std::string render(const Report &report, OutputFormat format);

} // namespace sdsc::harness
