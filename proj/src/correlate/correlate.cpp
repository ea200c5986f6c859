#include "qcounter/correlate.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

namespace qcounter::correlate {

namespace {

constexpr double kNegativeCrossTolerance = 1e-9;
constexpr double kPerturbativeLimit = 0.2;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_input(const CoherentInput& input) {
  require(input.n_bar >= 0.0 && std::isfinite(input.n_bar), "n_bar must be finite and >= 0");
}

}  // namespace

void DetectionParams::validate() const {
  require(eta_1 >= 0.0 && eta_1 <= 1.0, "eta_1 must lie in [0, 1]");
  require(eta_2 >= 0.0 && eta_2 <= 1.0, "eta_2 must lie in [0, 1]");
  require(std::abs(std::norm(t) + std::norm(r) - 1.0) <= 1e-12, "splitter needs |T|^2 + |R|^2 = 1");
  require(std::abs(t * std::conj(r) + r * std::conj(t)) <= 1e-12, "splitter needs T R* = -R T*");
  require(zeta_mag >= 0.0 && std::isfinite(zeta_mag), "|zeta| must be >= 0");
}

std::pair<double, double> singles(const CoherentInput& input, const DetectionParams& det,
                                  const SpectralIntegrals& spectral) {
  check_input(input);
  det.validate();
  require(spectral.i_diag > 0.0, "singles: I_diag must be > 0");
  const double common = det.zeta_mag * det.zeta_mag * spectral.i_diag * (input.n_bar + 1.0);
  return {det.eta_1 * std::norm(det.t) * common, det.eta_2 * std::norm(det.r) * common};
}

double coincidences(const CoherentInput& input, const DetectionParams& det, const SpectralIntegrals& spectral) {
  check_input(input);
  det.validate();
  require(std::isfinite(spectral.i_diag) && std::isfinite(spectral.i_cross), "coincidences: integrals must be finite");
  if (spectral.i_cross < -kNegativeCrossTolerance) {
    throw std::domain_error("coincidences: I_cross = " + std::to_string(spectral.i_cross) + " is negative");
  }
  const double z4 = std::pow(det.zeta_mag, 4);
  const double n = input.n_bar;
  return det.eta_1 * det.eta_2 * std::norm(det.t) * std::norm(det.r) * z4 *
         (spectral.i_diag * spectral.i_diag * (n + 1.0) * (n + 1.0) + spectral.i_cross * (2.0 * n + 1.0));
}

double modified_g2(double n_bar, double gamma) {
  require(n_bar >= 0.0 && !std::isnan(n_bar), "modified_g2: n_bar must be >= 0");
  require(gamma >= 0.0 && gamma <= 1.0, "modified_g2: gamma must lie in [0, 1]");
  const double m = n_bar + 1.0;
  return 1.0 + gamma * (1.0 / m + n_bar / (m * m));
}

std::vector<G2Row> g2_curve(double gamma, const std::vector<double>& n_bar_grid) {
  require(!n_bar_grid.empty(), "g2_curve: grid must be nonempty");
  for (std::size_t i = 1; i < n_bar_grid.size(); ++i) {
    require(n_bar_grid[i] > n_bar_grid[i - 1], "g2_curve: grid must be strictly ascending");
  }
  std::vector<G2Row> rows;
  rows.reserve(n_bar_grid.size());
  for (double n : n_bar_grid) rows.push_back({n, modified_g2(n, gamma)});
  return rows;
}

CorrelationReport correlation_report(const CoherentInput& input, const DetectionParams& det,
                                     const SpectralIntegrals& spectral) {
  CorrelationReport report;
  std::tie(report.n1, report.n2) = singles(input, det, spectral);
  report.n12 = coincidences(input, det, spectral);
  report.g2 = report.n1 * report.n2 > 0.0 ? report.n12 / (report.n1 * report.n2)
                                          : std::numeric_limits<double>::quiet_NaN();
  report.gamma_used = spectral.i_cross / (spectral.i_diag * spectral.i_diag);
  report.spectral_integrals = spectral;
  const double strength = std::pow(std::sinh(det.zeta_mag), 2) * (input.n_bar + 1.0);
  if (strength > kPerturbativeLimit) {
    std::ostringstream os;
    os << "sinh^2|zeta| (n_bar + 1) = " << strength << " exceeds " << kPerturbativeLimit
       << "; the fourth-order coincidence formula is no longer reliable";
    report.warnings.push_back(os.str());
  }
  return report;
}

}  // namespace qcounter::correlate
