#include "params.hpp"

#include <cmath>

namespace cspi::report::detail {

using nlohmann::json;

Params::Params(const json& values) : values_(values) {
  if (!values_.is_object()) throw ConfigError("parameters", "must be a JSON object");
}

bool Params::has(const std::string& key) const { return values_.contains(key); }

const json* Params::lookup(const std::string& key) {
  used_.insert(key);
  const auto it = values_.find(key);
  return it == values_.end() || it->is_null() ? nullptr : &*it;
}

int Params::integer(const std::string& key, int fallback, int min_value) {
  int value = fallback;
  if (const json* v = lookup(key)) {
    if (!v->is_number_integer()) throw ConfigError(key, "must be an integer");
    const auto raw = v->get<long long>();
    if (raw < min_value || raw > 1'000'000'000) throw ConfigError(key, "must be >= " + std::to_string(min_value));
    value = static_cast<int>(raw);
  } else if (value < min_value) {
    throw ConfigError(key, "is required");
  }
  echo_[key] = value;
  return value;
}

double Params::real(const std::string& key, double fallback) {
  double value = fallback;
  if (const json* v = lookup(key)) {
    if (!v->is_number()) throw ConfigError(key, "must be a number");
    value = v->get<double>();
  }
  if (!std::isfinite(value)) throw ConfigError(key, "must be finite");
  echo_[key] = value;
  return value;
}

double Params::positive(const std::string& key, double fallback) {
  const double value = real(key, fallback);
  if (!(value > 0.0)) throw ConfigError(key, "must be positive");
  return value;
}

bool Params::flag(const std::string& key, bool fallback) {
  bool value = fallback;
  if (const json* v = lookup(key)) {
    if (!v->is_boolean()) throw ConfigError(key, "must be true or false");
    value = v->get<bool>();
  }
  echo_[key] = value;
  return value;
}

std::string Params::text(const std::string& key, const std::string& fallback) {
  std::string value = fallback;
  if (const json* v = lookup(key)) {
    if (!v->is_string()) throw ConfigError(key, "must be a string");
    value = v->get<std::string>();
  }
  echo_[key] = value;
  return value;
}

std::complex<double> Params::complex(const std::string& key, std::complex<double> fallback) {
  std::complex<double> value = fallback;
  if (const json* v = lookup(key)) {
    if (v->is_number()) {
      value = {v->get<double>(), 0.0};
    } else if (v->is_array() && v->size() == 2 && (*v)[0].is_number() && (*v)[1].is_number()) {
      value = {(*v)[0].get<double>(), (*v)[1].get<double>()};
    } else {
      throw ConfigError(key, "must be a number or a [re, im] pair");
    }
  }
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) throw ConfigError(key, "must be finite");
  echo_[key] = json::array({value.real(), value.imag()});
  return value;
}

std::vector<double> Params::real_list(const std::string& key, const std::vector<double>& fallback) {
  std::vector<double> out = fallback;
  if (const json* v = lookup(key)) {
    out.clear();
    const json items = v->is_array() ? *v : json::array({*v});
    for (const auto& item : items) {
      if (!item.is_number()) throw ConfigError(key, "must be a number or a list of numbers");
      out.push_back(item.get<double>());
    }
  }
  if (out.empty()) throw ConfigError(key, "must not be empty");
  for (double x : out)
    if (!std::isfinite(x)) throw ConfigError(key, "must be finite");
  echo_[key] = out;
  return out;
}

std::vector<int> Params::integer_list(const std::string& key, const std::vector<int>& fallback, int min_value) {
  std::vector<int> out = fallback;
  if (const json* v = lookup(key)) {
    out.clear();
    const json items = v->is_array() ? *v : json::array({*v});
    for (const auto& item : items) {
      if (!item.is_number_integer()) throw ConfigError(key, "must be an integer or a list of integers");
      const auto raw = item.get<long long>();
      if (raw < min_value || raw > 1'000'000'000) throw ConfigError(key, "entries must be >= " + std::to_string(min_value));
      out.push_back(static_cast<int>(raw));
    }
  }
  if (out.empty()) throw ConfigError(key, "must not be empty");
  echo_[key] = out;
  return out;
}

std::vector<std::string> Params::text_list(const std::string& key, const std::vector<std::string>& fallback) {
  std::vector<std::string> out = fallback;
  if (const json* v = lookup(key)) {
    out.clear();
    const json items = v->is_array() ? *v : json::array({*v});
    for (const auto& item : items) {
      if (!item.is_string()) throw ConfigError(key, "must be a string or a list of strings");
      out.push_back(item.get<std::string>());
    }
  }
  if (out.empty()) throw ConfigError(key, "must not be empty");
  echo_[key] = out;
  return out;
}

int Params::spin(int fallback_two_s) {
  if (has("s") && has("two_s")) throw ConfigError("s", "give either s or two_s, not both");
  if (has("s")) {
    used_.insert("s");
    const json& v = values_.at("s");
    if (!v.is_number()) throw ConfigError("s", "must be a number");
    const double twice = 2.0 * v.get<double>();
    if (std::abs(twice - std::round(twice)) > 1e-12) throw ConfigError("s", "must be a multiple of 1/2");
    if (std::round(twice) < 1.0) throw ConfigError("s", "must be >= 1/2 (spin 0 is the trivial representation)");
    const int two_s = static_cast<int>(std::round(twice));
    echo_["two_s"] = two_s;
    return two_s;
  }
  if (const json* v = lookup("two_s")) {
    if (!v->is_number_integer()) throw ConfigError("two_s", "must be an integer");
    if (v->get<long long>() < 1) throw ConfigError("two_s", "must be >= 1 (spin 0 is the trivial representation)");
    if (v->get<long long>() > 400) throw ConfigError("two_s", "must be <= 400");
  }
  return integer("two_s", fallback_two_s, 1);
}

void Params::finish() const {
  for (const auto& [key, value] : values_.items())
    if (!used_.contains(key)) throw ConfigError(key, "unknown parameter for this experiment");
}

}  // namespace cspi::report::detail
