#pragma once

#include <complex>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "report.hpp"

namespace cspi::report::detail {

// Typed reads from the parameter object. Every read records the effective
// value in `echo`; keys never read are rejected by finish().
class Params {
 public:
  explicit Params(const nlohmann::json& values);

  bool has(const std::string& key) const;

  int integer(const std::string& key, int fallback, int min_value);
  double real(const std::string& key, double fallback);
  double positive(const std::string& key, double fallback);
  bool flag(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::complex<double> complex(const std::string& key, std::complex<double> fallback);
  std::vector<double> real_list(const std::string& key, const std::vector<double>& fallback);
  std::vector<int> integer_list(const std::string& key, const std::vector<int>& fallback, int min_value);
  std::vector<std::string> text_list(const std::string& key, const std::vector<std::string>& fallback);

  /// two_s from either "two_s" or "s".
  int spin(int fallback_two_s);

  void finish() const;
  const nlohmann::json& echo() const noexcept { return echo_; }

 private:
  const nlohmann::json* lookup(const std::string& key);

  const nlohmann::json& values_;
  nlohmann::json echo_ = nlohmann::json::object();
  std::set<std::string> used_;
};

}  // namespace cspi::report::detail
