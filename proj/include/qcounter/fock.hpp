#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcounter::fock {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultMaxAmplitudes = 10'000'000;
inline constexpr double kDefaultLeakTolerance = 1e-6;
inline constexpr int kMaxCutoff = 64;

/// Raised when probability lost beyond the photon-number cutoff exceeds the
/// configured tolerance.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Product basis of `modes` modes, each truncated at `cutoff` photons.
/// Mode 0 is the most significant digit of the flat index.
class FockBasis {
 public:
  FockBasis(int modes, int cutoff, std::size_t max_amplitudes = kDefaultMaxAmplitudes);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  int levels() const { return cutoff_ + 1; }
  std::size_t dim() const { return dim_; }
  std::size_t stride(int mode) const { return strides_.at(static_cast<std::size_t>(mode)); }

  int occupation(std::size_t index, int mode) const {
    return static_cast<int>((index / stride(mode)) % static_cast<std::size_t>(levels()));
  }

  std::size_t index(std::span<const int> occupations) const;

  FockBasis with_modes(int modes) const { return FockBasis(modes, cutoff_, max_amplitudes_); }
  std::size_t max_amplitudes() const { return max_amplitudes_; }

  bool operator==(const FockBasis& rhs) const { return modes_ == rhs.modes_ && cutoff_ == rhs.cutoff_; }

 private:
  int modes_;
  int cutoff_;
  std::size_t max_amplitudes_;
  std::size_t dim_ = 1;
  std::vector<std::size_t> strides_;
};

/// State on a truncated Fock space: one amplitude vector for a pure state,
/// or several unnormalized Kraus branches once a mode has been traced out
/// (rho = sum_k |psi_k><psi_k|). `truncation_leak` is the probability that
/// left the truncated space, so sum_k ||psi_k||^2 + truncation_leak = 1.
class FockState {
 public:
  FockState(FockBasis basis, std::vector<cplx> amplitudes, double truncation_leak = 0.0);
  FockState(FockBasis basis, std::vector<std::vector<cplx>> branches, double truncation_leak);

  static FockState vacuum(const FockBasis& basis);

  const FockBasis& basis() const { return basis_; }
  const std::vector<std::vector<cplx>>& branches() const { return branches_; }
  bool is_pure() const { return branches_.size() == 1; }
  /// Amplitudes of a pure state; throws for a branched state.
  const std::vector<cplx>& amplitudes() const;

  double truncation_leak() const { return leak_; }
  double norm_squared() const;
  bool usable(double leak_tolerance = kDefaultLeakTolerance) const { return leak_ <= leak_tolerance; }

 private:
  FockBasis basis_;
  std::vector<std::vector<cplx>> branches_;
  double leak_;
};

/// Sparse action of a single ladder operator on one mode.
class LadderOp {
 public:
  LadderOp(FockBasis basis, int mode, bool dagger);

  int mode() const { return mode_; }
  bool dagger() const { return dagger_; }

  /// Applies the operator; creation on an occupation at the cutoff is dropped.
  std::vector<cplx> apply(std::span<const cplx> psi) const;

 private:
  FockBasis basis_;
  int mode_;
  bool dagger_;
};

struct Ladder {
  int mode = 0;
  bool dagger = false;
};

/// Coherent state |alpha> in `mode`, vacuum elsewhere. Amplitudes are the
/// exact Poisson amplitudes up to the cutoff; the tail mass is the leak.
/// Requires |alpha|^2 <= cutoff/4.
FockState coherent_state(const FockBasis& basis, int mode, cplx alpha,
                         double leak_tolerance = kDefaultLeakTolerance);

/// Product of coherent states, one amplitude per mode.
FockState product_coherent_state(const FockBasis& basis, std::span<const cplx> alphas,
                                 double leak_tolerance = kDefaultLeakTolerance);

/// exp[zeta* a b - zeta a^dag b^dag] on modes (mode_a, mode_b). The unitary
/// is built block by block (n_a - n_b is conserved) by scaling-and-squaring
/// on a space padded beyond the cutoff; weight pushed past the cutoff is
/// added to the leak.
FockState apply_two_mode_squeezer(const FockState& state, int mode_a, int mode_b, cplx zeta,
                                  double leak_tolerance = kDefaultLeakTolerance);

/// Lossless splitter with Heisenberg map b -> T b + R v, v -> R b + T v.
/// Needs |T|^2 + |R|^2 = 1 and T R* + R T* = 0 to 1e-12.
FockState apply_beam_splitter(const FockState& state, int mode_1, int mode_2, cplx t, cplx r,
                              double leak_tolerance = kDefaultLeakTolerance);

/// Loss channel: splitter (sqrt(eta), i sqrt(1-eta)) against a fresh vacuum
/// ancilla, which is then traced out.
FockState apply_loss(const FockState& state, int mode, double eta);

/// Appends one vacuum mode after the existing ones.
FockState append_vacuum_mode(const FockState& state);

/// Partial trace over one mode; the result branches over its occupations.
FockState trace_out(const FockState& state, int mode);

/// Expectation of the ordered product ops[0] ops[1] ... ops[n-1].
cplx moments(const FockState& state, std::span<const Ladder> ops);

double mean_photon_number(const FockState& state, int mode);

/// Joint photon-number distribution of the listed modes, flattened with the
/// first listed mode most significant. Sums to norm_squared().
std::vector<double> photon_number_distribution(const FockState& state, std::span<const int> modes);

}  // namespace qcounter::fock
