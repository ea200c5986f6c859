#pragma once

#include <complex>
#include <functional>

#include "qcounter/fock.hpp"
#include "qcounter/report.hpp"

namespace qcounter::network {

using cplx = std::complex<double>;

namespace constants {
inline constexpr double c = 299'792'458.0;             // m/s
inline constexpr double hbar = 1.054'571'817e-34;      // J s
inline constexpr double epsilon0 = 8.854'187'8128e-12; // F/m
}  // namespace constants

/// Parametric gain s (1/m) over a crystal of length L (m) with phase theta.
struct SqueezerSpec {
  double s = 0.0;
  double length = 1.0;
  double theta = 0.0;

  cplx zeta() const { return std::polar(s * length, theta); }
  static SqueezerSpec from_zeta(cplx zeta);
};

struct PhaseMatchSpec {
  double omega_p = 0.0;  ///< rad/s
  double omega = 0.0;    ///< rad/s
  std::function<double(double)> n_of;
};

/// Refractive indices are taken at omega_p, omega and omega_p - omega.
struct CouplingSpec {
  double power_density = 0.0;  ///< pump F(omega_p)
  double chi2 = 0.0;
  double area = 0.0;           ///< m^2
  double omega_p = 0.0;
  double omega = 0.0;
  double n_pump = 1.0;
  double n_signal = 1.0;
  double n_idler = 1.0;
  double phi_p = 0.0;
  double hbar = constants::hbar;
  double epsilon0 = constants::epsilon0;
  double c = constants::c;
};

struct Coupling {
  double s = 0.0;
  double theta = 0.0;
};

struct InputSpec {
  enum class Kind { vacuum, coherent };
  Kind kind = Kind::vacuum;
  cplx alpha = 0.0;

  static InputSpec vacuum() { return {}; }
  static InputSpec coherent(cplx alpha) { return {Kind::coherent, alpha}; }
  double n_bar() const { return kind == Kind::vacuum ? 0.0 : std::norm(alpha); }
};

struct NetworkSpec {
  InputSpec input;
  SqueezerSpec squeezer;
  cplx t = 1.0 / std::sqrt(2.0);
  cplx r = cplx(0.0, 1.0 / std::sqrt(2.0));
  double eta_1 = 1.0;
  double eta_2 = 1.0;

  /// Throws std::invalid_argument on a broken invariant.
  void validate() const;
};

/// omega_p n(omega_p)/c - omega n(omega)/c - (omega_p - omega) n(omega_p - omega)/c.
double phase_mismatch(const PhaseMatchSpec& spec);

Coupling coupling_constant(const CouplingSpec& spec);

/// sinh^2|zeta| (n_bar + 1) above which the perturbative comparison warns.
inline constexpr double kSmallZetaThreshold = 0.2;

/// State of the two detected modes (d1, d2) after squeezer, splitter and
/// losses. `basis` is the three-mode (a, b, v) basis.
fock::FockState detection_state(const NetworkSpec& spec, const fock::FockBasis& basis,
                                double leak_tolerance = fock::kDefaultLeakTolerance);

/// Runs input -> squeezer(a, b) -> splitter(b, v) -> losses on (d1, d2).
/// `basis` is the three-mode (a, b, v) basis; mode a is traced out after the
/// squeezer.
CorrelationReport run_network(const NetworkSpec& spec, const fock::FockBasis& basis,
                              double leak_tolerance = fock::kDefaultLeakTolerance);

}  // namespace qcounter::network
