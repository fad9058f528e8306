#pragma once

// Flat `key = value` experiment files. '#' starts a comment; blank lines are
// ignored; lists are comma separated; unknown or repeated keys are errors.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tridyson/sde.hpp"
#include "tridyson/tridiag.hpp"

namespace tridyson::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KeySpec {
  std::string_view name;
  std::string_view default_text;  // documented default, shown when the key is missing
  std::string_view help;
};

// Every key any command understands.
inline constexpr KeySpec kKeys[] = {
    {"n", "2", "matrix size"},
    {"alpha", "2,...,2 (n-1 entries)", "Bessel dimensions, comma list"},
    {"x0", "1,...,1 (n-1 entries)", "Bessel starting points, comma list"},
    {"diag0", "0,...,0 (n entries)", "initial diagonal, comma list"},
    {"dt", "0.001", "time step"},
    {"t_end", "1", "final time"},
    {"paths", "20", "number of simulated paths"},
    {"seed", "0", "master seed"},
    {"scheme", "euler_maruyama", "euler_maruyama or exact_squared_bessel"},
    {"eps_col", "1e-7", "collision threshold relative to the spectral diameter"},
    {"ranges", "(none)", "extra minor ranges p:q, comma list"},
    {"tol", "1e-13", "eigenvalue bisection tolerance"},
    {"discrepancy_tol", "0.05", "max |integrated - diagonalized| eigenvalue error"},
    {"alpha_grid", "0.5,1,1.5,2,3", "alpha values for collision-study, comma list"},
    {"beta", "2", "ensemble parameter"},
    {"samples", "10000", "number of ensemble samples"},
    {"count", "100", "instances per identity"},
    {"max_size", "7", "largest matrix size in the identity suite"},
};

inline const KeySpec* find_key(std::string_view name) {
  for (const auto& k : kKeys)
    if (k.name == name) return &k;
  return nullptr;
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class Config {
 public:
  static Config parse(std::istream& in, const std::string& source = "<config>") {
    Config c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      const std::string body = trim(line);
      if (body.empty()) continue;
      const auto eq = body.find('=');
      const std::string where = source + ":" + std::to_string(lineno);
      if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
      const std::string key = trim(std::string_view(body).substr(0, eq));
      const std::string value = trim(std::string_view(body).substr(eq + 1));
      if (!find_key(key)) throw ConfigError(where + ": unknown key '" + key + "'");
      if (c.values_.contains(key)) throw ConfigError(where + ": key '" + key + "' given twice");
      if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
      c.values_[key] = value;
    }
    return c;
  }

  static Config parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in, "<string>");
  }

  static Config load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse(in, path);
  }

  [[nodiscard]] bool has(const std::string& key) const { return values_.contains(key); }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  [[nodiscard]] const std::map<std::string, std::string>& values() const { return values_; }

  /// Raw value; a missing key is an error naming the documented default.
  [[nodiscard]] const std::string& raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
      const auto* spec = find_key(key);
      throw ConfigError("missing config key '" + key + "' (documented default: " +
                        std::string(spec ? spec->default_text : "none") + ")");
    }
    return it->second;
  }

  [[nodiscard]] double get_double(const std::string& key) const { return to_double(key, raw(key)); }
  [[nodiscard]] std::uint64_t get_uint(const std::string& key) const { return to_uint(key, raw(key)); }
  [[nodiscard]] std::vector<double> get_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split(raw(key))) out.push_back(to_double(key, item));
    return out;
  }

  [[nodiscard]] double get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
  }
  [[nodiscard]] std::uint64_t get_uint_or(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? get_uint(key) : fallback;
  }

  /// Minor ranges written as p:q.
  [[nodiscard]] std::vector<MinorRange> get_ranges(const std::string& key) const {
    std::vector<MinorRange> out;
    for (const auto& item : split(raw(key))) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ConfigError(key + ": expected p:q, got '" + item + "'");
      out.push_back({static_cast<int>(to_uint(key, trim(item.substr(0, colon)))),
                     static_cast<int>(to_uint(key, trim(item.substr(colon + 1))))});
    }
    return out;
  }

  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

 private:
  static double to_double(const std::string& key, const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw ConfigError(key + ": not a number: '" + s + "'");
    return v;
  }
  static std::uint64_t to_uint(const std::string& key, const std::string& s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ConfigError(key + ": not a nonnegative integer: '" + s + "'");
    return v;
  }

  std::map<std::string, std::string> values_;
};

/// SdeConfig from the core keys, all of which must be present.
inline SdeConfig sde_config(const Config& c) {
  SdeConfig s;
  s.n = c.get_uint("n");
  if (s.n != 1 || c.has("alpha")) s.alpha = c.get_list("alpha");
  if (s.n != 1 || c.has("x0")) s.x0 = c.get_list("x0");
  if (c.has("diag0")) s.diag0 = c.get_list("diag0");
  s.dt = c.get_double("dt");
  s.t_end = c.get_double("t_end");
  s.seed = c.get_uint("seed");
  try {
    s.scheme = parse_scheme(c.raw("scheme"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scheme: ") + e.what());
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

}  // namespace tridyson::cli
