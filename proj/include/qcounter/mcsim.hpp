#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcounter/fock.hpp"
#include "qcounter/network.hpp"

namespace qcounter::mcsim {

/// Philox4x32-10 counter-based generator.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter counter, Key key);

  /// Uniform double in [0, 1) for stream (seed, index); 53 random bits.
  static double uniform(std::uint64_t seed, std::uint64_t index);
};

struct ShotPlan {
  std::uint64_t pulses = 1;
  std::uint64_t seed = 0;
  network::NetworkSpec network;
  fock::FockBasis basis = fock::FockBasis(3, 12);
  int threads = 1;

  void validate() const;
};

struct CountRecord {
  std::uint64_t singles_1 = 0;
  std::uint64_t singles_2 = 0;
  std::uint64_t coincidences = 0;
  std::uint64_t pulses = 0;
  std::optional<double> g2_estimate;
  std::optional<double> std_error;

  bool operator==(const CountRecord&) const = default;
};

/// Exact click probabilities of the post-network state (threshold detectors).
struct ClickProbabilities {
  double p1 = 0.0;
  double p2 = 0.0;
  double p12 = 0.0;

  double g2() const { return p12 / (p1 * p2); }
};

ClickProbabilities click_probabilities(const ShotPlan& plan);

/// Samples joint photon numbers per pulse from the detected state; a
/// detector clicks when at least one photon reaches it.
CountRecord run_shots(const ShotPlan& plan);

struct SweepRow {
  double n_bar = 0.0;
  CountRecord record;
  double analytic_g2 = 0.0;
};

/// run_shots per plan, joined with the single-mode modified_g2 at gamma = 1.
/// All plans must share one basis.
std::vector<SweepRow> sweep(const std::vector<ShotPlan>& plans);

}  // namespace qcounter::mcsim
