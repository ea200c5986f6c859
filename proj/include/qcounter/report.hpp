#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qcounter {

struct SpectralIntegrals {
  double i_diag = 0.0;   ///< int dw dw1 |xi(w)|^2 |Phi(w1,w)|^2
  double i_cross = 0.0;  ///< fourfold exchange integral
};

/// Antinormal input moments implied by the detector statistics.
struct AntinormalMoments {
  double a_adag = 0.0;            ///< <a a^dag>
  double a_a_adag_adag = 0.0;     ///< <a a a^dag a^dag>
};

/// Singles, coincidences and their normalized ratio.
struct CorrelationReport {
  double n1 = 0.0;
  double n2 = 0.0;
  double n12 = 0.0;
  double g2 = 0.0;
  double gamma_used = 1.0;
  std::optional<SpectralIntegrals> spectral_integrals;
  std::optional<AntinormalMoments> antinormal;
  double truncation_leak = 0.0;
  std::vector<std::string> warnings;
};

}  // namespace qcounter
