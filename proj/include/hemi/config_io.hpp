#pragma once

// JSON configuration files:
//
//   {
//     "dim": 2,
//     "points": [[x0, y0, z0], ...],      // or, for dim 1 only, "angles": [a0, ...] in radians
//     "meta": {"label": "...", "seed": 7, "generator": "vandermonde",
//              "integers": [[-1, -1, -1], ...]}
//   }
//
// Every point must have dim+1 coordinates and a norm within 1e-6 of 1; points
// off by more than 1e-12 are renormalized with a warning.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "hemi/geometry.hpp"
#include "hemi/hemisphere.hpp"

namespace hemi {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kLoadNormTolerance = 1e-6;

struct ConfigMeta {
  std::optional<std::string> label;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> generator;
  std::optional<std::vector<IntegerVector>> integers;
};

struct ConfigFile {
  std::size_t dim = 0;
  std::vector<std::vector<double>> points;
  std::optional<std::vector<double>> angles;
  ConfigMeta meta;
};

namespace detail {

inline nlohmann::json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

inline BigInt bigint_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("meta.integers: entries must be integers or decimal strings");
}

}  // namespace detail

inline ConfigFile parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::uint64_t>() < 1) {
    throw ConfigError("config: 'dim' must be a positive integer");
  }
  ConfigFile f;
  f.dim = j["dim"].get<std::size_t>();

  const bool has_points = j.contains("points");
  const bool has_angles = j.contains("angles");
  if (has_points == has_angles) throw ConfigError("config: exactly one of 'points' or 'angles' is required");
  if (has_points) {
    const auto& pts = j["points"];
    if (!pts.is_array() || pts.empty()) throw ConfigError("config: 'points' must be a non-empty array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& p = pts[i];
      if (!p.is_array() || p.size() != f.dim + 1) {
        throw ConfigError("config: point " + std::to_string(i) + " must have dim+1 = " + std::to_string(f.dim + 1) +
                          " coordinates");
      }
      std::vector<double> v;
      v.reserve(p.size());
      for (const auto& x : p) {
        if (!x.is_number()) throw ConfigError("config: point " + std::to_string(i) + " has a non-numeric coordinate");
        v.push_back(x.get<double>());
      }
      f.points.push_back(std::move(v));
    }
  } else {
    if (f.dim != 1) throw ConfigError("config: 'angles' is only valid with dim 1");
    const auto& a = j["angles"];
    if (!a.is_array() || a.empty()) throw ConfigError("config: 'angles' must be a non-empty array");
    std::vector<double> angles;
    for (const auto& x : a) {
      if (!x.is_number()) throw ConfigError("config: angles must be numbers");
      angles.push_back(x.get<double>());
    }
    f.angles = std::move(angles);
  }

  if (j.contains("meta")) {
    const auto& m = j["meta"];
    if (!m.is_object()) throw ConfigError("config: 'meta' must be an object");
    if (m.contains("label") && m["label"].is_string()) f.meta.label = m["label"].get<std::string>();
    if (m.contains("seed") && m["seed"].is_number_unsigned()) f.meta.seed = m["seed"].get<std::uint64_t>();
    if (m.contains("generator") && m["generator"].is_string()) f.meta.generator = m["generator"].get<std::string>();
    if (m.contains("integers")) {
      if (!m["integers"].is_array()) throw ConfigError("meta.integers must be an array");
      std::vector<IntegerVector> rows;
      for (const auto& row : m["integers"]) {
        if (!row.is_array() || row.size() != f.dim + 1) throw ConfigError("meta.integers rows must have dim+1 entries");
        std::vector<BigInt> e;
        for (const auto& x : row) e.push_back(detail::bigint_from_json(x));
        try {
          rows.emplace_back(std::move(e));
        } catch (const std::invalid_argument& ex) {
          throw ConfigError(std::string("meta.integers: ") + ex.what());
        }
      }
      f.meta.integers = std::move(rows);
    }
  }
  return f;
}

inline ConfigFile parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

inline ConfigFile read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

inline nlohmann::json to_json(const ConfigFile& f) {
  nlohmann::json j;
  j["dim"] = f.dim;
  if (f.angles) {
    j["angles"] = *f.angles;
  } else {
    j["points"] = f.points;
  }
  nlohmann::json m = nlohmann::json::object();
  if (f.meta.label) m["label"] = *f.meta.label;
  if (f.meta.seed) m["seed"] = *f.meta.seed;
  if (f.meta.generator) m["generator"] = *f.meta.generator;
  if (f.meta.integers) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : *f.meta.integers) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& e : r.entries()) row.push_back(detail::bigint_to_json(e));
      rows.push_back(std::move(row));
    }
    m["integers"] = std::move(rows);
  }
  if (!m.empty()) j["meta"] = std::move(m);
  return j;
}

inline std::string dump_config(const ConfigFile& f) { return to_json(f).dump(2) + "\n"; }

inline void write_config(const std::string& path, const ConfigFile& f) {
  std::ofstream out(path);
  if (!out) throw ConfigError("config: cannot write '" + path + "'");
  out << dump_config(f);
  if (!out) throw ConfigError("config: write to '" + path + "' failed");
}

/// Validated configuration from a file. Points within 1e-6 but not 1e-12 of
/// unit norm are renormalized and a message is appended to `warnings`.
inline Configuration to_configuration(const ConfigFile& f, std::vector<std::string>* warnings = nullptr) {
  std::vector<double> packed;
  if (f.angles) {
    for (double a : *f.angles) {
      packed.push_back(std::cos(a));
      packed.push_back(std::sin(a));
    }
  } else {
    packed.reserve(f.points.size() * (f.dim + 1));
    for (std::size_t i = 0; i < f.points.size(); ++i) {
      const auto& p = f.points[i];
      if (p.size() != f.dim + 1) throw ConfigError("config: point " + std::to_string(i) + " has the wrong length");
      const double r = norm(p);
      if (!std::isfinite(r) || std::abs(r - 1.0) > kLoadNormTolerance) {
        throw ConfigError("config: point " + std::to_string(i) + " has norm " + std::to_string(r) +
                          ", not within 1e-6 of 1");
      }
      const bool fix = std::abs(r - 1.0) > kUnitNormTolerance;
      if (fix && warnings) {
        warnings->push_back("point " + std::to_string(i) + " renormalized (norm was " + std::to_string(r) + ")");
      }
      for (double x : p) packed.push_back(fix ? x / r : x);
    }
  }
  try {
    return Configuration(f.dim, std::move(packed), f.meta.label);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

inline ConfigFile to_config_file(const Configuration& c, ConfigMeta meta = {}) {
  ConfigFile f;
  f.dim = c.dim();
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto p = c.point(i);
    f.points.emplace_back(p.begin(), p.end());
  }
  if (!meta.label) meta.label = c.label();
  f.meta = std::move(meta);
  return f;
}

}  // namespace hemi
