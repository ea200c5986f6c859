#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "qcounter/cli.hpp"

using namespace qcounter::cli;

int main(int argc, char** argv) {
  CLI::App app{"Coincidence-counting model for squeezed-light networks"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string scenario_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  bool quiet = false;

  const std::pair<Kind, const char*> commands[] = {
      {Kind::gamma, "Spectral correlation factor for filter and pump bandwidths"},
      {Kind::g2, "Modified second-order correlation over mean photon numbers"},
      {Kind::network, "Truncated Fock-space simulation of the detection network"},
      {Kind::mc, "Monte Carlo click counting"},
      {Kind::order, "Normal or antinormal ordering of an operator expression"},
  };
  for (const auto& [kind, help] : commands) {
    auto* sub = app.add_subcommand(to_string(kind), help);
    sub->add_option("--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (overrides the scenario)");
    sub->add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
    if (kind == Kind::mc) sub->add_option("--seed", seed, "RNG seed (overrides the scenario)");
    sub->add_flag("-q,--quiet", quiet, "Suppress the summary table");
  }

  CLI11_PARSE(app, argc, argv);

  const Kind kind = kind_from_string(app.get_subcommands().front()->get_name());
  try {
    Scenario s = load_scenario(scenario_path, kind);
    if (out_dir) s.output.dir = *out_dir;
    if (format) s.output.format = format_from_string(*format);
    if (seed) s.params["seed"] = *seed;
    auto manifest = execute(s, quiet ? nullptr : &std::cout);
    if (quiet) for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
