#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>

#include "qcounter/cli.hpp"
#include "qcounter/correlate.hpp"
#include "qcounter/fock.hpp"
#include "qcounter/mcsim.hpp"
#include "qcounter/network.hpp"
#include "qcounter/opalg.hpp"
#include "qcounter/spectral.hpp"

namespace qcounter::cli {

namespace {

using nlohmann::json;

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

/// Double or null for optional values.
json opt(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

class Writer {
 public:
  Writer(const Scenario& s, RunManifest& manifest) : s_(s), manifest_(manifest) {
    std::filesystem::create_directories(s.output.dir);
  }

  bool csv() const { return s_.output.format != Format::json; }
  bool json_out() const { return s_.output.format != Format::csv; }

  void write_csv(const std::string& name, const Table& t) {
    std::string text = "# scenario_hash=" + manifest_.scenario_hash + "\n";
    text += join(t.header) + "\n";
    for (const auto& row : t.rows) text += join(row) + "\n";
    write(name, text);
  }

  void write_json(const std::string& name, json doc) {
    doc["scenario_hash"] = manifest_.scenario_hash;
    doc["kind"] = to_string(s_.kind);
    write(name, doc.dump(2) + "\n");
  }

  void write(const std::string& name, const std::string& text) {
    const auto path = s_.output.dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    manifest_.outputs.push_back(name);
  }

 private:
  static std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
    return line;
  }

  const Scenario& s_;
  RunManifest& manifest_;
};

void print_table(std::ostream* log, const Table& t) {
  if (!log) return;
  std::vector<std::size_t> width(t.header.size());
  for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      *log << (i ? "  " : "") << cells[i] << std::string(width[i] - cells[i].size(), ' ');
    }
    *log << "\n";
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
}

void run_gamma(const Scenario& s, RunManifest& m, Writer& w, std::ostream* log) {
  namespace sp = spectral;
  const json& p = s.params;
  const double center_nm = p["center_nm"];
  const double filter_fwhm = sp::units::fwhm_nm_to_angular(p["filter_fwhm_nm"], center_nm);
  const double pump_fwhm = sp::units::fwhm_nm_to_angular(p["pump_fwhm_nm"], center_nm);
  const bool lorentzian = p["filter_shape"] == "lorentzian";

  // Work in units of the pump standard deviation.
  const double pump_var = sp::units::fwhm_to_variance(pump_fwhm);
  const double unit = std::sqrt(pump_var);
  m.conversions["filter_fwhm_rad_per_s"] = filter_fwhm;
  m.conversions["pump_fwhm_rad_per_s"] = pump_fwhm;
  m.conversions["frequency_unit_rad_per_s"] = unit;
  m.conversions["speed_of_light_m_per_s"] = sp::units::c;

  sp::QuadratureSpec quad;
  quad.points = p["quad_points"];
  quad.max_points = std::max(quad.max_points, quad.points);
  quad.tolerance = p["quad_tolerance"];
  quad.support_sigmas = p["support_sigmas"];

  auto evaluate = [&](double filter_width) {
    if (lorentzian) {
      sp::JointAmplitude jsa;
      jsa.pump = sp::SpectralProfile::gaussian(0.0, 1.0);
      return sp::gamma_general_4d(sp::SpectralProfile::lorentzian(0.0, filter_width), jsa, quad);
    }
    return sp::gamma_reduced_2d(sp::SpectralProfile::gaussian(0.0, filter_width),
                                sp::SpectralProfile::gaussian(0.0, 1.0), quad);
  };

  const double filter_width = lorentzian ? sp::units::fwhm_to_half_width(filter_fwhm) / unit
                                         : sp::units::fwhm_to_variance(filter_fwhm) / pump_var;
  const auto main = evaluate(filter_width);
  const double shape = p["shape_correction"];
  const double spatial = p["spatial_coupling"];
  const double chain = sp::gamma_experiment_chain(main.gamma_numeric, shape, spatial);

  json result = {{"gamma_numeric", main.gamma_numeric},
                 {"gamma_closed", opt(main.gamma_closed)},
                 {"error_estimate", main.abs_error_estimate},
                 {"tail_mass", main.tail_mass},
                 {"points", main.points},
                 {"gamma_chain", chain},
                 {"filter_width_reduced", filter_width},
                 {"params", p}};
  if (main.big_gamma2) result["big_gamma2_reduced"] = *main.big_gamma2;
  if (main.big_gamma_prime2) result["big_gamma_prime2_reduced"] = *main.big_gamma_prime2;

  Table curve{{"ratio", "gamma_numeric", "gamma_closed", "error_estimate"}, {}};
  for (const auto& r : p["ratio_grid"]) {
    const double ratio = r.get<double>();
    // The ratio is filter variance over pump variance; Lorentzians use half-width over sigma.
    const auto g = evaluate(lorentzian ? std::sqrt(ratio) : ratio);
    curve.rows.push_back({num(ratio), num(g.gamma_numeric), g.gamma_closed ? num(*g.gamma_closed) : "",
                          num(g.abs_error_estimate)});
  }

  if (w.json_out()) w.write_json("gamma.json", result);
  if (w.csv()) {
    w.write_csv("gamma.csv", {{"gamma_numeric", "gamma_closed", "error_estimate", "gamma_chain"},
                              {{num(main.gamma_numeric), main.gamma_closed ? num(*main.gamma_closed) : "",
                                num(main.abs_error_estimate), num(chain)}}});
    w.write_csv("gamma_curve.csv", curve);
  }
  if (log) {
    *log << "gamma_numeric = " << num(main.gamma_numeric) << "\n";
    if (main.gamma_closed) *log << "gamma_closed  = " << num(*main.gamma_closed) << "\n";
    *log << "gamma_chain   = " << num(chain) << "\n";
  }
  print_table(log, curve);
}

void run_g2(const Scenario& s, Writer& w, std::ostream* log) {
  const json& p = s.params;
  std::vector<double> grid;
  if (!p["n_bar"].is_null()) {
    grid.push_back(p["n_bar"]);
  } else {
    grid = p["n_bar_grid"].get<std::vector<double>>();
  }
  const double gamma = p["gamma"];
  const auto rows = correlate::g2_curve(gamma, grid);
  Table t{{"n_bar", "g2"}, {}};
  json jrows = json::array();
  for (const auto& r : rows) {
    t.rows.push_back({num(r.n_bar), num(r.g2)});
    jrows.push_back({{"n_bar", r.n_bar}, {"g2", r.g2}});
  }
  if (w.csv()) w.write_csv("g2.csv", t);
  if (w.json_out()) w.write_json("g2.json", {{"gamma", gamma}, {"rows", jrows}, {"params", p}});
  print_table(log, t);
}

network::NetworkSpec network_spec(const json& p, double n_bar) {
  network::NetworkSpec spec;
  if (n_bar > 0.0) {
    spec.input = network::InputSpec::coherent(std::polar(std::sqrt(n_bar), p["alpha_phase_rad"].get<double>()));
  }
  spec.squeezer =
      network::SqueezerSpec::from_zeta(std::polar(p["zeta_abs"].get<double>(), p["zeta_phase_rad"].get<double>()));
  const double tt = p["transmittance"];
  spec.t = std::sqrt(tt);
  spec.r = network::cplx(0.0, std::sqrt(1.0 - tt));
  spec.eta_1 = p["eta_1"];
  spec.eta_2 = p["eta_2"];
  return spec;
}

void run_network(const Scenario& s, RunManifest& m, Writer& w, std::ostream* log) {
  const json& p = s.params;
  const auto spec = network_spec(p, p["n_bar"]);
  const auto report = network::run_network(spec, fock::FockBasis(3, p["cutoff"]), p["leak_tolerance"]);
  m.warnings.insert(m.warnings.end(), report.warnings.begin(), report.warnings.end());

  Table t{{"n1", "n2", "n12", "g2", "truncation_leak"},
          {{num(report.n1), num(report.n2), num(report.n12), num(report.g2), num(report.truncation_leak)}}};
  json doc = {{"n1", report.n1},
              {"n2", report.n2},
              {"n12", report.n12},
              {"g2", report.g2},
              {"truncation_leak", report.truncation_leak},
              {"warnings", report.warnings},
              {"params", p}};
  if (report.antinormal) {
    doc["antinormal"] = {{"a_adag", report.antinormal->a_adag},
                         {"a_a_adag_adag", report.antinormal->a_a_adag_adag}};
  }
  if (w.csv()) w.write_csv("network.csv", t);
  if (w.json_out()) w.write_json("network.json", doc);
  print_table(log, t);
}

void run_mc(const Scenario& s, RunManifest& m, Writer& w, std::ostream* log) {
  const json& p = s.params;
  std::vector<double> grid;
  if (p["n_bar_grid"].is_null()) {
    grid.push_back(p["n_bar"]);
  } else {
    grid = p["n_bar_grid"].get<std::vector<double>>();
  }
  std::vector<mcsim::ShotPlan> plans;
  for (double n_bar : grid) {
    mcsim::ShotPlan plan;
    plan.pulses = p["pulses"].get<std::uint64_t>();
    plan.seed = p["seed"].get<std::uint64_t>();
    plan.network = network_spec(p, n_bar);
    plan.basis = fock::FockBasis(3, p["cutoff"]);
    plan.threads = p["threads"];
    plans.push_back(plan);
  }
  m.seeds.push_back(p["seed"].get<std::uint64_t>());
  const auto rows = mcsim::sweep(plans);

  Table t{{"n_bar", "pulses", "singles_1", "singles_2", "coincidences", "g2_estimate", "std_error", "click_g2",
           "analytic_g2"},
          {}};
  json jrows = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double click = mcsim::click_probabilities(plans[i]).g2();
    t.rows.push_back({num(r.n_bar), std::to_string(r.record.pulses), std::to_string(r.record.singles_1),
                      std::to_string(r.record.singles_2), std::to_string(r.record.coincidences),
                      r.record.g2_estimate ? num(*r.record.g2_estimate) : "",
                      r.record.std_error ? num(*r.record.std_error) : "", num(click), num(r.analytic_g2)});
    jrows.push_back({{"n_bar", r.n_bar},
                     {"pulses", r.record.pulses},
                     {"singles_1", r.record.singles_1},
                     {"singles_2", r.record.singles_2},
                     {"coincidences", r.record.coincidences},
                     {"g2_estimate", opt(r.record.g2_estimate)},
                     {"std_error", opt(r.record.std_error)},
                     {"click_g2", click},
                     {"analytic_g2", r.analytic_g2}});
  }
  if (w.csv()) w.write_csv("mc.csv", t);
  if (w.json_out()) w.write_json("mc.json", {{"rows", jrows}, {"params", p}});
  print_table(log, t);
}

void run_order(const Scenario& s, Writer& w, std::ostream* log) {
  const json& p = s.params;
  const auto expr = opalg::parse_expr(p["expression"].get<std::string>());
  const bool normal = p["ordering"] == "normal";
  const std::string result = (normal ? opalg::normal_order(expr) : opalg::antinormal_order(expr)).str();
  w.write("order.txt", result + "\n");
  if (w.json_out()) {
    w.write_json("order.json", {{"expression", p["expression"]}, {"ordering", p["ordering"]}, {"result", result}});
  }
  if (log) *log << result << "\n";
}

}  // namespace

json RunManifest::to_json() const {
  return {{"tool_version", tool_version}, {"scenario_hash", scenario_hash}, {"kind", kind},
          {"started_utc", started_utc},   {"finished_utc", finished_utc},   {"seeds", seeds},
          {"outputs", outputs},           {"conversions", conversions},     {"warnings", warnings}};
}

RunManifest execute(const Scenario& s, std::ostream* log) {
  RunManifest m;
  m.scenario_hash = scenario_hash(s);
  m.kind = to_string(s.kind);
  m.started_utc = utc_now();
  Writer w(s, m);
  switch (s.kind) {
    case Kind::gamma: run_gamma(s, m, w, log); break;
    case Kind::g2: run_g2(s, w, log); break;
    case Kind::network: run_network(s, m, w, log); break;
    case Kind::mc: run_mc(s, m, w, log); break;
    case Kind::order: run_order(s, w, log); break;
  }
  m.finished_utc = utc_now();
  if (log) {
    for (const auto& warning : m.warnings) *log << "warning: " << warning << "\n";
  }
  std::ofstream out(s.output.dir / "manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest.json");
  out << m.to_json().dump(2) << "\n";
  return m;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SchemaError*>(&e) || dynamic_cast<const opalg::ParseError*>(&e) ||
      dynamic_cast<const std::invalid_argument*>(&e)) {
    return 2;
  }
  if (dynamic_cast<const fock::TruncationError*>(&e) || dynamic_cast<const spectral::QuadratureError*>(&e) ||
      dynamic_cast<const std::domain_error*>(&e)) {
    return 3;
  }
  return 1;
}

}  // namespace qcounter::cli
