#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "report.hpp"

namespace cspi::report {

using nlohmann::json;

namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(const std::string& s) const { return csv_field(s); }
  };
  return std::visit(Visitor{}, cell);
}

json cell_to_json(const Cell& cell) {
  struct Visitor {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(bool b) const { return b; }
    json operator()(std::int64_t i) const { return i; }
    json operator()(double d) const { return std::isfinite(d) ? json(d) : json(nullptr); }
    json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, cell);
}

Cell cell_from_json(const json& v) {
  if (v.is_null()) return std::monostate{};
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) return v.get<double>();
  if (v.is_string()) return v.get<std::string>();
  throw std::invalid_argument("report cell must be null, bool, number or string");
}

}  // namespace

Experiment parse_experiment(std::string_view tag) {
  if (tag == "spin-z") return Experiment::spin_z;
  if (tag == "bose-z") return Experiment::bose_z;
  if (tag == "discretize") return Experiment::discretize;
  if (tag == "semiclassics") return Experiment::semiclassics;
  if (tag == "identity-check") return Experiment::identity_check;
  if (tag == "winding-sum") return Experiment::winding_sum;
  throw ConfigError("experiment", "unknown experiment '" + std::string(tag) + "'");
}

std::string_view to_string(Experiment experiment) {
  switch (experiment) {
    case Experiment::spin_z: return "spin-z";
    case Experiment::bose_z: return "bose-z";
    case Experiment::discretize: return "discretize";
    case Experiment::semiclassics: return "semiclassics";
    case Experiment::identity_check: return "identity-check";
    case Experiment::winding_sum: return "winding-sum";
  }
  return "unknown";
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "must be a JSON object");
  ExperimentConfig config;
  json params = doc;
  if (const auto it = params.find("experiment"); it != params.end()) {
    if (!it->is_string()) throw ConfigError("experiment", "must be a string");
    config.experiment = parse_experiment(it->get<std::string>());
    params.erase("experiment");
  } else {
    throw ConfigError("experiment", "is required");
  }
  config.parameters = std::move(params);
  return config;
}

Format parse_format(std::string_view tag) {
  if (tag == "csv") return Format::csv;
  if (tag == "json") return Format::json;
  throw ConfigError("format", "must be csv or json");
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << csv_field(report.columns[i]);
  out << "\r\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\r\n";
  }
  return out.str();
}

json to_json(const Report& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < report.columns.size() && i < row.size(); ++i) obj[report.columns[i]] = cell_to_json(row[i]);
    rows.push_back(std::move(obj));
  }
  json checks = json::array();
  for (const auto& c : report.summary.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"gating", c.gating}, {"detail", c.detail}});
  return {{"schema_version", report.schema_version},
          {"experiment", report.experiment},
          {"config", report.config},
          {"columns", report.columns},
          {"rows", std::move(rows)},
          {"summary", {{"passed", report.summary.passed}, {"checks", std::move(checks)}}}};
}

std::string to_json_text(const Report& report) { return to_json(report).dump(2) + "\n"; }

void emit(const Report& report, Format format, const std::filesystem::path& path) {
  const std::string body = format == Format::csv ? to_csv(report) : to_json_text(report);
  if (path.empty() || path == "-") {
    std::cout << body << std::flush;
    if (!std::cout) throw IoError("failed writing report to stdout");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  file << body;
  file.close();
  if (!file) throw IoError("failed writing report to '" + path.string() + "'");
}

Report parse_json_report(const json& doc) {
  Report report;
  report.schema_version = doc.at("schema_version").get<int>();
  report.experiment = doc.at("experiment").get<std::string>();
  report.config = doc.at("config");
  report.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& row : doc.at("rows")) {
    std::vector<Cell> cells;
    cells.reserve(report.columns.size());
    for (const auto& name : report.columns) cells.push_back(cell_from_json(row.at(name)));
    report.rows.push_back(std::move(cells));
  }
  const auto& summary = doc.at("summary");
  report.summary.passed = summary.at("passed").get<bool>();
  for (const auto& c : summary.at("checks"))
    report.summary.checks.push_back(
        {c.at("name").get<std::string>(), c.at("passed").get<bool>(), c.at("gating").get<bool>(), c.at("detail").get<std::string>()});
  return report;
}

Report parse_json_text(std::string_view text) { return parse_json_report(json::parse(text)); }

}  // namespace cspi::report
