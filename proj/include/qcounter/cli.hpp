#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qcounter::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Schema or unit violation; `path` is a JSON pointer to the offending field.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Kind { gamma, g2, network, mc, order };
enum class Format { csv, json, both };

std::string to_string(Kind kind);
Kind kind_from_string(const std::string& name);
std::string to_string(Format format);
Format format_from_string(const std::string& name);

struct OutputSpec {
  std::filesystem::path dir = ".";
  Format format = Format::both;
};

/// Validated scenario. `params` holds every field of the kind with defaults
/// filled and quantities reduced to plain numbers in their suffix unit.
struct Scenario {
  Kind kind = Kind::gamma;
  nlohmann::json params = nlohmann::json::object();
  OutputSpec output;

  bool operator==(const Scenario& rhs) const {
    return kind == rhs.kind && params == rhs.params && output.dir == rhs.output.dir &&
           output.format == rhs.output.format;
  }
};

/// Validates a parsed document. `expected` supplies the kind when the
/// document has none and must match it otherwise.
Scenario scenario_from_json(const nlohmann::json& doc, std::optional<Kind> expected = std::nullopt);

Scenario load_scenario(const std::filesystem::path& path, std::optional<Kind> expected = std::nullopt);

nlohmann::json to_json(const Scenario& s);

/// FNV-1a 64 of the canonical dump of kind and params, as 16 hex digits.
std::string scenario_hash(const Scenario& s);

struct RunManifest {
  std::string tool_version = kToolVersion;
  std::string scenario_hash;
  std::string kind;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> outputs;
  nlohmann::json conversions = nlohmann::json::object();
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

/// Runs the scenario, writes outputs and manifest.json into output.dir and
/// prints a summary table to `log` when given.
RunManifest execute(const Scenario& s, std::ostream* log = nullptr);

/// Exit status for an exception escaping execute or load_scenario:
/// 2 validation, 3 numerical failure, 1 anything else.
int exit_code_for(const std::exception& e);

}  // namespace qcounter::cli
