#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

#include "qcounter/cli.hpp"

namespace qcounter::cli {

namespace {

using nlohmann::json;

enum class Type { number, integer, unsigned64, string, number_list };

struct Field {
  std::string key;
  Type type = Type::number;
  std::string unit;  // expected unit for {value, unit} objects; empty when dimensionless
  json fallback;     // null means required
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
  std::vector<std::string> choices;
};

Field number(std::string key, std::string unit, json fallback, double lo, double hi, bool lo_open = false) {
  return {std::move(key), Type::number, std::move(unit), std::move(fallback), lo, hi, lo_open, {}};
}

Field integer(std::string key, json fallback, double lo, double hi) {
  return {std::move(key), Type::integer, "", std::move(fallback), lo, hi, false, {}};
}

Field choice(std::string key, json fallback, std::vector<std::string> choices) {
  return {std::move(key), Type::string, "", std::move(fallback), 0, 0, false, std::move(choices)};
}

Field list(std::string key, json fallback, double lo) {
  return {std::move(key), Type::number_list, "", std::move(fallback), lo,
          std::numeric_limits<double>::infinity(), false, {}};
}

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Field> network_fields() {
  return {
      number("n_bar", "", 0.0, 0.0, kInf),
      number("alpha_phase_rad", "rad", 0.0, -kInf, kInf),
      number("zeta_abs", "", 0.15, 0.0, kInf),
      number("zeta_phase_rad", "rad", 0.0, -kInf, kInf),
      number("transmittance", "", 0.5, 0.0, 1.0),
      number("eta_1", "", 1.0, 0.0, 1.0),
      number("eta_2", "", 1.0, 0.0, 1.0),
      integer("cutoff", 16, 1, 64),
      number("leak_tolerance", "", 1e-6, 0.0, 1.0, true),
  };
}

const std::vector<Field>& fields_for(Kind kind) {
  static const std::map<Kind, std::vector<Field>> table = [] {
    std::map<Kind, std::vector<Field>> t;
    t[Kind::gamma] = {
        number("filter_fwhm_nm", "nm", json(), 0.0, kInf, true),
        number("pump_fwhm_nm", "nm", json(), 0.0, kInf, true),
        number("center_nm", "nm", json(), 0.0, kInf, true),
        choice("filter_shape", "gaussian", {"gaussian", "lorentzian"}),
        number("shape_correction", "", 0.9, 0.0, 1.0, true),
        number("spatial_coupling", "", 0.6, 0.0, 1.0, true),
        list("ratio_grid", json::array({0.1, 0.25, 0.5, 1.0, 2.0, 4.0}), 0.0),
        integer("quad_points", 96, 8, 384),
        number("quad_tolerance", "", 1e-8, 0.0, 1.0, true),
        number("support_sigmas", "", 6.0, 0.0, kInf, true),
    };
    t[Kind::g2] = {
        number("gamma", "", 1.0, 0.0, 1.0),
        list("n_bar_grid", json::array({0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}), 0.0),
        number("n_bar", "", json(nullptr), 0.0, kInf),
    };
    t[Kind::network] = network_fields();
    t[Kind::mc] = network_fields();
    t[Kind::mc].push_back(integer("pulses", 1'000'000, 1, 1e12));
    t[Kind::mc].push_back({"seed", Type::unsigned64, "", 1, 0, 0, false, {}});
    t[Kind::mc].push_back(integer("threads", 1, 1, 256));
    t[Kind::mc].push_back(list("n_bar_grid", json(nullptr), 0.0));
    t[Kind::order] = {
        {"expression", Type::string, "", json(), 0, 0, false, {}},
        choice("ordering", "normal", {"normal", "antinormal"}),
    };
    return t;
  }();
  return table.at(kind);
}

// Optional fields whose absence is recorded as null rather than a default.
bool nullable(const Field& f) { return f.fallback.is_null() && f.type != Type::string && f.key != "filter_fwhm_nm" &&
                                       f.key != "pump_fwhm_nm" && f.key != "center_nm"; }

std::string describe_range(const Field& f) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s%g, %g]", f.lo_open ? "(" : "[", f.lo, f.hi);
  return buf;
}

double check_number(const json& v, const Field& f, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(path, "must be finite");
  const bool below = f.lo_open ? x <= f.lo : x < f.lo;
  if (below || x > f.hi) throw SchemaError(path, "value " + v.dump() + " outside " + describe_range(f));
  return x;
}

json strip_unit(const json& v, const Field& f, const std::string& path) {
  if (!v.is_object()) return v;
  if (f.unit.empty()) throw SchemaError(path, "dimensionless field does not take a unit object");
  for (const auto& [k, _] : v.items()) {
    if (k != "value" && k != "unit") throw SchemaError(path + "/" + k, "unknown key '" + k + "'");
  }
  if (!v.contains("value") || !v.contains("unit")) throw SchemaError(path, "unit object needs 'value' and 'unit'");
  if (!v["unit"].is_string()) throw SchemaError(path + "/unit", "expected a string");
  const std::string unit = v["unit"].get<std::string>();
  if (unit != f.unit) throw SchemaError(path + "/unit", "unit mismatch: expected '" + f.unit + "', got '" + unit + "'");
  return v["value"];
}

json validate_field(const json& raw, const Field& f, const std::string& path) {
  const json v = strip_unit(raw, f, path);
  switch (f.type) {
    case Type::number:
      return check_number(v, f, path);
    case Type::integer: {
      if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
      check_number(v, f, path);
      return v.get<std::int64_t>();
    }
    case Type::unsigned64: {
      if (!v.is_number_unsigned()) throw SchemaError(path, "expected a nonnegative integer");
      return v.get<std::uint64_t>();
    }
    case Type::string: {
      if (!v.is_string()) throw SchemaError(path, "expected a string");
      const auto s = v.get<std::string>();
      if (!f.choices.empty() && std::find(f.choices.begin(), f.choices.end(), s) == f.choices.end()) {
        std::string allowed;
        for (const auto& c : f.choices) allowed += (allowed.empty() ? "" : ", ") + c;
        throw SchemaError(path, "'" + s + "' is not one of: " + allowed);
      }
      return s;
    }
    case Type::number_list: {
      if (!v.is_array() || v.empty()) throw SchemaError(path, "expected a nonempty array of numbers");
      json out = json::array();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        const double x = check_number(v[i], f, p);
        if (!out.empty() && x <= out.back().get<double>()) throw SchemaError(p, "grid must be strictly ascending");
        out.push_back(x);
      }
      return out;
    }
  }
  return v;
}

}  // namespace

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::gamma: return "gamma";
    case Kind::g2: return "g2";
    case Kind::network: return "network";
    case Kind::mc: return "mc";
    case Kind::order: return "order";
  }
  return "?";
}

Kind kind_from_string(const std::string& name) {
  for (Kind k : {Kind::gamma, Kind::g2, Kind::network, Kind::mc, Kind::order}) {
    if (to_string(k) == name) return k;
  }
  throw SchemaError("/kind", "unknown kind '" + name + "'");
}

std::string to_string(Format format) {
  switch (format) {
    case Format::csv: return "csv";
    case Format::json: return "json";
    case Format::both: return "both";
  }
  return "?";
}

Format format_from_string(const std::string& name) {
  for (Format f : {Format::csv, Format::json, Format::both}) {
    if (to_string(f) == name) return f;
  }
  throw SchemaError("/output/format", "unknown format '" + name + "' (csv, json or both)");
}

Scenario scenario_from_json(const json& doc, std::optional<Kind> expected) {
  if (!doc.is_object()) throw SchemaError("", "scenario must be a JSON object");
  Scenario s;
  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) throw SchemaError("/kind", "expected a string");
    s.kind = kind_from_string(doc["kind"].get<std::string>());
    if (expected && *expected != s.kind) {
      throw SchemaError("/kind", "scenario kind '" + to_string(s.kind) + "' does not match subcommand '" +
                                     to_string(*expected) + "'");
    }
  } else if (expected) {
    s.kind = *expected;
  } else {
    throw SchemaError("/kind", "missing scenario kind");
  }

  const auto& fields = fields_for(s.kind);
  for (const auto& [key, value] : doc.items()) {
    if (key == "kind" || key == "output") continue;
    bool known = std::any_of(fields.begin(), fields.end(), [&](const Field& f) { return f.key == key; });
    if (!known) throw SchemaError("/" + key, "unknown key '" + key + "' for " + to_string(s.kind) + " scenario");
  }
  for (const auto& f : fields) {
    const std::string path = "/" + f.key;
    if (doc.contains(f.key) && !doc[f.key].is_null()) {
      s.params[f.key] = validate_field(doc[f.key], f, path);
    } else if (!f.fallback.is_null() || nullable(f)) {
      s.params[f.key] = f.fallback;
    } else {
      throw SchemaError(path, "required field missing");
    }
  }

  if (doc.contains("output")) {
    const json& out = doc["output"];
    if (!out.is_object()) throw SchemaError("/output", "expected an object");
    for (const auto& [key, value] : out.items()) {
      if (key == "dir") {
        if (!value.is_string()) throw SchemaError("/output/dir", "expected a string");
        s.output.dir = value.get<std::string>();
      } else if (key == "format") {
        if (!value.is_string()) throw SchemaError("/output/format", "expected a string");
        s.output.format = format_from_string(value.get<std::string>());
      } else {
        throw SchemaError("/output/" + key, "unknown key '" + key + "'");
      }
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path, std::optional<Kind> expected) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("not valid JSON: ") + e.what());
  }
  return scenario_from_json(doc, expected);
}

json to_json(const Scenario& s) {
  json doc = s.params;
  for (auto it = doc.begin(); it != doc.end();) it = it->is_null() ? doc.erase(it) : std::next(it);
  doc["kind"] = to_string(s.kind);
  doc["output"] = {{"dir", s.output.dir.string()}, {"format", to_string(s.output.format)}};
  return doc;
}

std::string scenario_hash(const Scenario& s) {
  json canonical = {{"kind", to_string(s.kind)}, {"params", s.params}};
  const std::string text = canonical.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qcounter::cli
