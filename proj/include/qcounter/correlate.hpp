#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qcounter/report.hpp"

namespace qcounter::correlate {

using cplx = std::complex<double>;

/// Stationary coherent input with mean photon number n_bar.
struct CoherentInput {
  double n_bar = 0.0;
};

struct DetectionParams {
  double eta_1 = 1.0;
  double eta_2 = 1.0;
  cplx t = 1.0 / std::sqrt(2.0);
  cplx r = cplx(0.0, 1.0 / std::sqrt(2.0));
  double zeta_mag = 0.1;

  void validate() const;
};

/// N1 = eta_1 |T|^2 |zeta|^2 I_diag (n_bar + 1), N2 likewise with eta_2 |R|^2.
std::pair<double, double> singles(const CoherentInput& input, const DetectionParams& det,
                                  const SpectralIntegrals& spectral);

/// eta_1 eta_2 |T|^2 |R|^2 |zeta|^4 [I_diag^2 (n_bar + 1)^2 + I_cross (2 n_bar + 1)].
double coincidences(const CoherentInput& input, const DetectionParams& det, const SpectralIntegrals& spectral);

/// 1 + gamma [1/(n_bar + 1) + n_bar/(n_bar + 1)^2].
double modified_g2(double n_bar, double gamma);

struct G2Row {
  double n_bar = 0.0;
  double g2 = 0.0;
};

/// One row per grid point; the grid must be nonempty, nonnegative and ascending.
std::vector<G2Row> g2_curve(double gamma, const std::vector<double>& n_bar_grid);

/// Singles, coincidences and g2 with gamma_used = I_cross / I_diag^2.
CorrelationReport correlation_report(const CoherentInput& input, const DetectionParams& det,
                                     const SpectralIntegrals& spectral);

}  // namespace qcounter::correlate
