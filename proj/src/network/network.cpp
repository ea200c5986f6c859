#include "qcounter/network.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qcounter::network {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

double wrap_phase(double x) {
  x = std::remainder(x, 2.0 * M_PI);
  return x <= -M_PI ? x + 2.0 * M_PI : x;
}

}  // namespace

SqueezerSpec SqueezerSpec::from_zeta(cplx zeta) { return {std::abs(zeta), 1.0, std::arg(zeta)}; }

void NetworkSpec::validate() const {
  require(squeezer.s >= 0.0 && std::isfinite(squeezer.s), "squeezer gain s must be >= 0");
  require(squeezer.length > 0.0 && std::isfinite(squeezer.length), "squeezer length must be > 0");
  require(std::abs(std::norm(t) + std::norm(r) - 1.0) <= 1e-12, "splitter needs |T|^2 + |R|^2 = 1");
  require(std::abs(t * std::conj(r) + r * std::conj(t)) <= 1e-12, "splitter needs T R* = -R T*");
  require(eta_1 >= 0.0 && eta_1 <= 1.0, "eta_1 must lie in [0, 1]");
  require(eta_2 >= 0.0 && eta_2 <= 1.0, "eta_2 must lie in [0, 1]");
}

double phase_mismatch(const PhaseMatchSpec& spec) {
  require(static_cast<bool>(spec.n_of), "phase_mismatch: refractive index function missing");
  require(spec.omega > 0.0 && spec.omega < spec.omega_p, "phase_mismatch: need 0 < omega < omega_p");
  const double idler = spec.omega_p - spec.omega;
  const double np = spec.n_of(spec.omega_p);
  const double ns = spec.n_of(spec.omega);
  const double ni = spec.n_of(idler);
  require(np > 0.0 && ns > 0.0 && ni > 0.0, "phase_mismatch: refractive index must be positive");
  return (spec.omega_p * np - spec.omega * ns - idler * ni) / constants::c;
}

Coupling coupling_constant(const CouplingSpec& p) {
  require(p.power_density > 0.0, "coupling_constant: pump power density must be > 0");
  require(p.area > 0.0, "coupling_constant: area must be > 0");
  require(p.omega > 0.0 && p.omega < p.omega_p, "coupling_constant: need 0 < omega < omega_p");
  require(p.n_pump > 0.0 && p.n_signal > 0.0 && p.n_idler > 0.0,
          "coupling_constant: refractive indices must be > 0");
  require(p.hbar > 0.0 && p.epsilon0 > 0.0 && p.c > 0.0, "coupling_constant: constants must be > 0");
  const double idler = p.omega_p - p.omega;
  const double radicand = p.power_density * p.hbar * p.omega_p * p.omega * idler /
                          (8.0 * p.epsilon0 * p.c * p.c * p.c * p.area * p.n_pump * p.n_signal * p.n_idler);
  Coupling out;
  out.s = std::sqrt(radicand) * std::abs(p.chi2);
  // The leading minus sign contributes pi; a negative chi2 another pi.
  out.theta = wrap_phase(p.phi_p + M_PI + (p.chi2 < 0.0 ? M_PI : 0.0));
  return out;
}

fock::FockState detection_state(const NetworkSpec& spec, const fock::FockBasis& basis, double leak_tolerance) {
  spec.validate();
  require(basis.modes() == 3, "run_network: basis must have three modes (a, b, v)");

  const fock::FockBasis ab = basis.with_modes(2);
  const cplx zeta = spec.squeezer.zeta();
  std::vector<cplx> alphas{spec.input.kind == InputSpec::Kind::coherent ? spec.input.alpha : cplx(0.0), 0.0};
  fock::FockState state = fock::product_coherent_state(ab, alphas, leak_tolerance);
  state = fock::apply_two_mode_squeezer(state, 0, 1, zeta, leak_tolerance);
  state = fock::trace_out(state, 0);
  state = fock::append_vacuum_mode(state);
  state = fock::apply_beam_splitter(state, 0, 1, spec.t, spec.r, leak_tolerance);
  state = fock::apply_loss(state, 0, spec.eta_1);
  return fock::apply_loss(state, 1, spec.eta_2);
}

CorrelationReport run_network(const NetworkSpec& spec, const fock::FockBasis& basis, double leak_tolerance) {
  const fock::FockState state = detection_state(spec, basis, leak_tolerance);
  const cplx zeta = spec.squeezer.zeta();

  CorrelationReport report;
  report.n1 = fock::mean_photon_number(state, 0);
  report.n2 = fock::mean_photon_number(state, 1);
  const fock::Ladder coincidence[] = {{0, true}, {0, false}, {1, true}, {1, false}};
  report.n12 = fock::moments(state, coincidence).real();
  report.g2 = report.n1 * report.n2 > 0.0 ? report.n12 / (report.n1 * report.n2)
                                          : std::numeric_limits<double>::quiet_NaN();
  report.gamma_used = 1.0;
  report.truncation_leak = state.truncation_leak();

  const double sh2 = std::pow(std::sinh(std::abs(zeta)), 2);
  const double w1 = spec.eta_1 * std::norm(spec.t) * sh2;
  const double w2 = spec.eta_2 * std::norm(spec.r) * sh2;
  if (w1 > 0.0 && w2 > 0.0) {
    report.antinormal = AntinormalMoments{report.n1 / w1, report.n12 / (w1 * w2)};
  }

  const double n_bar = spec.input.n_bar();
  if (sh2 * (n_bar + 1.0) > kSmallZetaThreshold) {
    std::ostringstream os;
    os << "sinh^2|zeta| (n_bar + 1) = " << sh2 * (n_bar + 1.0) << " exceeds " << kSmallZetaThreshold
       << "; higher-order pair emission is significant";
    report.warnings.push_back(os.str());
  }
  return report;
}

}  // namespace qcounter::network
