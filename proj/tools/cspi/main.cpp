#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "report.hpp"

namespace {

using nlohmann::json;
namespace rep = cspi::report;

enum class Kind { integer, real, text, flag, real_list, integer_list, text_list, complex };

struct Flag {
  std::string name;  // without leading dashes; the config key replaces '-' with '_'
  Kind kind;
  std::string help;
};

const std::map<std::string, std::vector<Flag>>& experiment_flags() {
  static const std::vector<Flag> spin = {{"two-s", Kind::integer, "twice the spin"},
                                         {"s", Kind::real, "spin (alternative to --two-s)"}};
  static const std::map<std::string, std::vector<Flag>> table = [] {
    std::map<std::string, std::vector<Flag>> t;
    auto with_spin = [](std::vector<Flag> extra) {
      std::vector<Flag> out = spin;
      out.insert(out.end(), extra.begin(), extra.end());
      return out;
    };
    t["spin-z"] = with_spin({{"hamiltonian", Kind::text, "polynomial in Sz"}, {"beta", Kind::real_list, "inverse temperatures"}});
    t["bose-z"] = {{"mu", Kind::real, "chemical potential"},
                   {"U", Kind::real, "on-site repulsion"},
                   {"beta", Kind::real_list, "inverse temperatures"},
                   {"mu-shift", Kind::flag, "apply mu -> mu + U/2 to the continuum series"},
                   {"ordering", Kind::text, "normal, weyl or naive_square"}};
    t["discretize"] = with_spin({{"system", Kind::text, "spin or bose"},
                                 {"hamiltonian", Kind::text, "polynomial in Sz (spin) or n (bose)"},
                                 {"beta", Kind::real, "inverse temperature"},
                                 {"slices", Kind::integer_list, "slice counts N"},
                                 {"modes", Kind::text_list, "exact_slice, first_order, qsymbol_exp"},
                                 {"n-theta", Kind::integer, "polar nodes"},
                                 {"n-phi", Kind::integer, "azimuthal nodes"},
                                 {"n-max", Kind::integer, "Fock cutoff"},
                                 {"h", Kind::real, "representation index"},
                                 {"mu", Kind::real, "chemical potential"},
                                 {"U", Kind::real, "on-site repulsion"},
                                 {"ordering", Kind::text, "normal, weyl or naive_square"},
                                 {"n-radial", Kind::integer, "radial nodes in r^2"},
                                 {"n-angular", Kind::integer, "angular nodes"},
                                 {"r-max", Kind::real, "radial cutoff"}});
    t["semiclassics"] = {{"mu", Kind::real, "chemical potential"},
                         {"U", Kind::real, "on-site repulsion"},
                         {"T", Kind::real, "propagation time"},
                         {"z-i", Kind::complex, "initial coherent-state label: re [im]"},
                         {"z-f", Kind::complex, "final coherent-state label: re [im]"},
                         {"h", Kind::real_list, "decreasing representation indices"}};
    t["identity-check"] = with_spin({{"n-theta", Kind::integer, "polar nodes"}, {"n-phi", Kind::integer, "azimuthal nodes"}});
    t["winding-sum"] = with_spin({{"hamiltonian", Kind::text, "polynomial in Sz"},
                                  {"beta", Kind::real, "inverse temperature"},
                                  {"k-max", Kind::integer_list, "winding cutoffs"},
                                  {"grid-size", Kind::integer, "panels per period (0: automatic)"}});
    return t;
  }();
  return table;
}

std::string config_key(const std::string& flag) {
  std::string key = flag;
  for (char& c : key)
    if (c == '-') c = '_';
  return key;
}

double to_real(const std::string& key, const std::string& raw) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (ec != std::errc{} || end != raw.data() + raw.size()) throw rep::ConfigError(key, "'" + raw + "' is not a number");
  return value;
}

long long to_integer(const std::string& key, const std::string& raw) {
  long long value = 0;
  const auto [end, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (ec != std::errc{} || end != raw.data() + raw.size()) throw rep::ConfigError(key, "'" + raw + "' is not an integer");
  return value;
}

json to_json_value(const Flag& flag, const std::vector<std::string>& raw) {
  const std::string key = config_key(flag.name);
  switch (flag.kind) {
    case Kind::integer: return to_integer(key, raw.front());
    case Kind::real: return to_real(key, raw.front());
    case Kind::text: return raw.front();
    case Kind::flag: return true;
    case Kind::real_list: {
      json out = json::array();
      for (const auto& r : raw) out.push_back(to_real(key, r));
      return out;
    }
    case Kind::integer_list: {
      json out = json::array();
      for (const auto& r : raw) out.push_back(to_integer(key, r));
      return out;
    }
    case Kind::text_list: return raw;
    case Kind::complex: {
      if (raw.size() > 2) throw rep::ConfigError(key, "expects re [im]");
      return json::array({to_real(key, raw[0]), raw.size() == 2 ? to_real(key, raw[1]) : 0.0});
    }
  }
  return nullptr;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rep::IoError("cannot read config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw rep::ConfigError("config", "'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state path integral experiments"};
  app.set_help_flag("--help", "print this help message and exit");  // -h is taken by the representation index
  app.require_subcommand(1);
  std::string config_path, out_path, format = "json";
  app.add_option("--config", config_path, "JSON config file; command-line flags override its entries");
  app.add_option("--out", out_path, "output path (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.fallthrough();

  struct Bound {
    const Flag* flag;
    std::vector<std::string> raw;
    bool set = false;
  };
  std::map<std::string, std::vector<Bound>> bound;
  std::map<std::string, CLI::App*> subcommands;
  for (const auto& [name, flags] : experiment_flags()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->set_help_flag("--help", "print this help message and exit");
    subcommands[name] = sub;
    auto& slots = bound[name];
    slots.reserve(flags.size());
    for (const auto& f : flags) slots.push_back({&f, {}, false});
    for (auto& slot : slots) {
      const std::string opt = "--" + slot.flag->name;
      if (slot.flag->kind == Kind::flag) {
        sub->add_flag(opt, slot.set, slot.flag->help);
      } else {
        auto* o = sub->add_option(opt, slot.raw, slot.flag->help);
        const bool many = slot.flag->kind == Kind::real_list || slot.flag->kind == Kind::integer_list ||
                          slot.flag->kind == Kind::text_list;
        if (many) o->expected(1, -1);
        else if (slot.flag->kind == Kind::complex) o->expected(1, 2);
        else o->expected(1);
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string experiment;
  for (const auto& [name, sub] : subcommands)
    if (sub->parsed()) experiment = name;

  try {
    json doc = json::object();
    if (!config_path.empty()) {
      doc = load_config_file(config_path);
      if (!doc.is_object()) throw rep::ConfigError("config", "must be a JSON object");
      if (doc.contains("experiment") && doc["experiment"] != experiment)
        throw rep::ConfigError("experiment", "config file is for '" + doc["experiment"].dump() + "', not '" + experiment + "'");
    }
    doc["experiment"] = experiment;
    for (auto& slot : bound[experiment]) {
      if (slot.flag->kind == Kind::flag ? slot.set : !slot.raw.empty())
        doc[config_key(slot.flag->name)] = to_json_value(*slot.flag, slot.raw);
    }
    const auto config = rep::config_from_json(doc);
    const auto report = rep::run(config);
    rep::emit(report, rep::parse_format(format), out_path);
    if (!report.summary.passed) {
      for (const auto& c : report.summary.checks)
        if (c.gating && !c.passed) std::cerr << "cspi: check failed: " << c.name << " (" << c.detail << ")\n";
      return 1;
    }
    return 0;
  } catch (const rep::IoError& e) {
    std::cerr << "cspi: I/O error: " << e.what() << '\n';
    return 3;
  } catch (const rep::ConfigError& e) {
    std::cerr << "cspi: config error: " << e.what() << '\n';
    return 2;
  } catch (const cspi::InvalidArgument& e) {
    std::cerr << "cspi: invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const cspi::NumericalError& e) {
    std::cerr << "cspi: numerical failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "cspi: error: " << e.what() << '\n';
    return 1;
  }
}
