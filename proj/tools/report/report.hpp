#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cspi/errors.hpp"

namespace cspi::report {

inline constexpr int kSchemaVersion = 1;

enum class Experiment { spin_z, bose_z, discretize, semiclassics, identity_check, winding_sum };

Experiment parse_experiment(std::string_view tag);
std::string_view to_string(Experiment experiment);

/// Invalid or missing configuration; `field()` names the offending key.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string field, const std::string& message)
      : InvalidArgument("config field '" + field + "': " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::spin_z;
  nlohmann::json parameters = nlohmann::json::object();
};

/// Parses {"experiment": ..., key: value ...}.
ExperimentConfig config_from_json(const nlohmann::json& doc);

using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

struct Check {
  std::string name;
  bool passed = false;
  bool gating = true;  // only gating checks decide the exit status
  std::string detail;

  bool operator==(const Check&) const = default;
};

struct Summary {
  bool passed = true;
  std::vector<Check> checks;

  bool operator==(const Summary&) const = default;
};

struct Report {
  int schema_version = kSchemaVersion;
  std::string experiment;
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  Summary summary;

  bool operator==(const Report&) const = default;
};

/// Runs one experiment. Throws ConfigError for bad parameters and NumericalError for numerical failure.
Report run(const ExperimentConfig& config);

enum class Format { csv, json };
Format parse_format(std::string_view tag);

std::string to_csv(const Report& report);
nlohmann::json to_json(const Report& report);
std::string to_json_text(const Report& report);

/// Writes to `path`, or to stdout when `path` is empty or "-". Throws IoError naming the path.
void emit(const Report& report, Format format, const std::filesystem::path& path);

Report parse_json_report(const nlohmann::json& doc);
Report parse_json_text(std::string_view text);

/// Polynomial coefficients (constant first) of an expression such as "0.3 - 2*Sz + Sz^2".
std::vector<double> parse_polynomial(std::string_view text, std::string_view symbol);

}  // namespace cspi::report
