#include "sdsc/harness/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "sdsc/error.hpp"
#include "sdsc/signal_io.hpp"

namespace sdsc::harness {
namespace {

constexpr int kCsvDigits = 10;

std::string csv_escape(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string failed_list(const ReportRow &row) {
  std::string out;
  for (const auto &c : row.checks) {
    if (c.passed) continue;
    if (!out.empty()) out += "; ";
    out += c.describe();
  }
  return out;
}

void render_csv(const Table &t, std::ostringstream &out) {
  out << "case";
  for (const auto &c : t.columns) out << ',' << csv_escape(c);
  out << ",verdict,checks\n";
  for (const auto &row : t.rows) {
    out << csv_escape(row.label);
    for (const auto &v : row.values) {
      out << ',';
      if (v) out << format_number(*v, kCsvDigits);
    }
    std::string checks;
    for (const auto &c : row.checks) {
      if (!checks.empty()) checks += ';';
      checks += c.describe() + ":" + (c.passed ? "pass" : "fail");
    }
    out << ',' << row.verdict() << ',' << csv_escape(checks) << '\n';
  }
}

void render_markdown(const Table &t, std::ostringstream &out) {
  out << "### " << t.title << "\n\n| Case |";
  for (const auto &c : t.columns) out << ' ' << c << " |";
  out << " Verdict |\n|---|";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << "---:|";
  out << "---|\n";
  for (const auto &row : t.rows) {
    out << "| " << row.label << " |";
    for (const auto &v : row.values) out << ' ' << (v ? fixed4(*v) : std::string("")) << " |";
    out << ' ' << row.verdict() << " |\n";
  }
  bool any_failed = false;
  for (const auto &row : t.rows) {
    const auto failed = failed_list(row);
    if (failed.empty()) continue;
    if (!any_failed) out << "\nFailed checks:\n\n";
    any_failed = true;
    out << "- " << row.label << ": " << failed << '\n';
  }
  out << '\n';
}

nlohmann::ordered_json row_json(const Table &t, const ReportRow &row) {
  nlohmann::ordered_json j;
  j["table"] = t.name;
  j["case"] = row.label;
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i < row.values.size() && row.values[i]) {
      values[t.columns[i]] = *row.values[i];
    } else {
      values[t.columns[i]] = nullptr;
    }
  }
  j["values"] = std::move(values);
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto &c : row.checks) {
    checks.push_back({{"column", c.column},
                      {"kind", c.kind == CheckKind::kWithin ? "within" : "below"},
                      {"actual", c.actual},
                      {"expected", c.expected},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed}});
  }
  j["checks"] = std::move(checks);
  j["verdict"] = row.verdict();
  return j;
}

} // namespace

OutputFormat parse_format(const std::string &name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "markdown" || name == "md") return OutputFormat::kMarkdown;
  if (name == "ndjson") return OutputFormat::kNdjson;
  throw Error(ErrorCode::kInvalidArgument, "unknown output format '" + name + "'");
}

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv: return "csv";
    case OutputFormat::kMarkdown: return "markdown";
    case OutputFormat::kNdjson: return "ndjson";
  }
  return "csv";
}

std::string file_extension(OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv: return ".csv";
    case OutputFormat::kMarkdown: return ".md";
    case OutputFormat::kNdjson: return ".ndjson";
  }
  return ".txt";
}

std::string Check::describe() const {
  if (kind == CheckKind::kBelow) return column + "<" + format_number(expected, 6);
  if (tolerance == 0.0) return column + "==" + format_number(expected, 6);
  return column + "=" + format_number(expected, 6) + "+/-" + format_number(tolerance, 6);
}

Check within(std::string column, double actual, double expected, double tolerance) {
  const bool ok = std::isfinite(actual) &&
                  (tolerance == 0.0 ? actual == expected : std::abs(actual - expected) <= tolerance);
  return {std::move(column), CheckKind::kWithin, actual, expected, tolerance, ok};
}

Check below(std::string column, double actual, double bound) {
  return {std::move(column), CheckKind::kBelow, actual, bound, 0.0, std::isfinite(actual) && actual < bound};
}

std::string ReportRow::verdict() const {
  if (checks.empty()) return "info";
  for (const auto &c : checks) {
    if (!c.passed) return "fail";
  }
  return "pass";
}

bool Report::passed() const { return failed_checks() == 0; }

std::size_t Report::failed_checks() const {
  std::size_t n = 0;
  for (const auto &t : tables) {
    for (const auto &row : t.rows) {
      for (const auto &c : row.checks) n += !c.passed;
    }
  }
  return n;
}

std::string render(const Report &report, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::kCsv:
      for (std::size_t i = 0; i < report.tables.size(); ++i) {
        if (i > 0) out << '\n';
        render_csv(report.tables[i], out);
      }
      break;
    case OutputFormat::kMarkdown:
      for (const auto &t : report.tables) render_markdown(t, out);
      if (!report.notes.empty()) {
        out << "Notes:\n\n";
        for (const auto &n : report.notes) out << "- " << n << '\n';
        out << '\n';
      }
      out << "Result: " << (report.passed() ? "PASS" : "FAIL") << " (" << report.failed_checks()
          << " failed checks)\n";
      break;
    case OutputFormat::kNdjson:
      for (const auto &t : report.tables) {
        for (const auto &row : t.rows) out << row_json(t, row).dump() << '\n';
      }
      out << nlohmann::ordered_json{{"command", report.command},
                                    {"passed", report.passed()},
                                    {"failed_checks", report.failed_checks()},
                                    {"notes", report.notes}}
                 .dump()
          << '\n';
      break;
  }
  return out.str();
}

} // namespace sdsc::harness
