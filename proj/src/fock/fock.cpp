#include "qcounter/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <Eigen/Dense>

namespace qcounter::fock {

namespace {

constexpr double kDropBranchBelow = 1e-32;

void require_mode(const FockBasis& basis, int mode, const char* what) {
  if (mode < 0 || mode >= basis.modes()) {
    throw std::invalid_argument(std::string(what) + ": mode index " + std::to_string(mode) +
                                " out of range for " + std::to_string(basis.modes()) + " modes");
  }
}

void check_leak(double leak, double tolerance, const char* what) {
  if (leak > tolerance) {
    throw TruncationError(std::string(what) + ": truncation leak " + std::to_string(leak) +
                          " exceeds tolerance " + std::to_string(tolerance));
  }
}

cplx ipow(cplx z, int k) {
  cplx out = 1.0;
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

double binomial(int n, int k) { return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0))); }

// Scaling and squaring with a Taylor core.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& g) {
  const auto n = g.rows();
  double norm1 = n == 0 ? 0.0 : g.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = norm1 > 0.5 ? static_cast<int>(std::ceil(std::log2(norm1 / 0.5))) : 0;
  Eigen::MatrixXcd x = g / std::ldexp(1.0, squarings);
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = term * x / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

// Maps the levels x levels amplitude block of two modes into an
// ext x ext output block (row-major, first mode major).
using PairMap = std::function<void(const std::vector<cplx>& in, std::vector<cplx>& out)>;

FockState apply_pair(const FockState& state, int m1, int m2, int ext_levels, const PairMap& map,
                     double leak_tolerance, const char* what) {
  const FockBasis& basis = state.basis();
  require_mode(basis, m1, what);
  require_mode(basis, m2, what);
  if (m1 == m2) throw std::invalid_argument(std::string(what) + ": modes must be distinct");

  const int levels = basis.levels();
  const std::size_t s1 = basis.stride(m1);
  const std::size_t s2 = basis.stride(m2);
  std::vector<cplx> in(static_cast<std::size_t>(levels * levels));
  std::vector<cplx> out(static_cast<std::size_t>(ext_levels * ext_levels));

  double leak = state.truncation_leak();
  std::vector<std::vector<cplx>> branches;
  branches.reserve(state.branches().size());
  for (const auto& psi : state.branches()) {
    std::vector<cplx> next(psi.size(), 0.0);
    for (std::size_t base = 0; base < basis.dim(); ++base) {
      if (basis.occupation(base, m1) != 0 || basis.occupation(base, m2) != 0) continue;
      bool any = false;
      for (int i = 0; i < levels; ++i) {
        for (int j = 0; j < levels; ++j) {
          cplx v = psi[base + static_cast<std::size_t>(i) * s1 + static_cast<std::size_t>(j) * s2];
          in[static_cast<std::size_t>(i * levels + j)] = v;
          any = any || v != cplx(0.0);
        }
      }
      if (!any) continue;
      std::fill(out.begin(), out.end(), cplx(0.0));
      map(in, out);
      for (int i = 0; i < ext_levels; ++i) {
        for (int j = 0; j < ext_levels; ++j) {
          cplx v = out[static_cast<std::size_t>(i * ext_levels + j)];
          if (i < levels && j < levels) {
            next[base + static_cast<std::size_t>(i) * s1 + static_cast<std::size_t>(j) * s2] = v;
          } else {
            leak += std::norm(v);
          }
        }
      }
    }
    branches.push_back(std::move(next));
  }
  check_leak(leak, leak_tolerance, what);
  return FockState(basis, std::move(branches), leak);
}

}  // namespace

FockBasis::FockBasis(int modes, int cutoff, std::size_t max_amplitudes)
    : modes_(modes), cutoff_(cutoff), max_amplitudes_(max_amplitudes) {
  if (modes < 1) throw std::invalid_argument("FockBasis: need at least one mode");
  if (cutoff < 0 || cutoff > kMaxCutoff) {
    throw std::invalid_argument("FockBasis: cutoff must be in [0, " + std::to_string(kMaxCutoff) + "]");
  }
  strides_.assign(static_cast<std::size_t>(modes), 1);
  for (int m = modes - 1; m >= 0; --m) {
    strides_[static_cast<std::size_t>(m)] = dim_;
    if (dim_ > max_amplitudes / static_cast<std::size_t>(levels())) {
      throw std::invalid_argument("FockBasis: dimension (" + std::to_string(levels()) + ")^" +
                                  std::to_string(modes) + " exceeds limit " + std::to_string(max_amplitudes));
    }
    dim_ *= static_cast<std::size_t>(levels());
  }
}

std::size_t FockBasis::index(std::span<const int> occupations) const {
  if (occupations.size() != static_cast<std::size_t>(modes_)) {
    throw std::invalid_argument("FockBasis::index: wrong number of occupations");
  }
  std::size_t idx = 0;
  for (int m = 0; m < modes_; ++m) {
    int n = occupations[static_cast<std::size_t>(m)];
    if (n < 0 || n > cutoff_) throw std::invalid_argument("FockBasis::index: occupation out of range");
    idx += static_cast<std::size_t>(n) * stride(m);
  }
  return idx;
}

FockState::FockState(FockBasis basis, std::vector<cplx> amplitudes, double truncation_leak)
    : FockState(std::move(basis), std::vector<std::vector<cplx>>{std::move(amplitudes)}, truncation_leak) {}

FockState::FockState(FockBasis basis, std::vector<std::vector<cplx>> branches, double truncation_leak)
    : basis_(std::move(basis)), branches_(std::move(branches)), leak_(truncation_leak) {
  if (branches_.empty()) branches_.emplace_back(basis_.dim(), 0.0);
  for (const auto& b : branches_) {
    if (b.size() != basis_.dim()) throw std::invalid_argument("FockState: amplitude vector has wrong size");
  }
}

FockState FockState::vacuum(const FockBasis& basis) {
  std::vector<cplx> amps(basis.dim(), 0.0);
  amps[0] = 1.0;
  return FockState(basis, std::move(amps));
}

const std::vector<cplx>& FockState::amplitudes() const {
  if (!is_pure()) throw std::logic_error("FockState::amplitudes: state has several branches");
  return branches_.front();
}

double FockState::norm_squared() const {
  double total = 0.0;
  for (const auto& b : branches_) {
    for (const auto& v : b) total += std::norm(v);
  }
  return total;
}

LadderOp::LadderOp(FockBasis basis, int mode, bool dagger) : basis_(std::move(basis)), mode_(mode), dagger_(dagger) {
  require_mode(basis_, mode, "LadderOp");
}

std::vector<cplx> LadderOp::apply(std::span<const cplx> psi) const {
  std::vector<cplx> out(psi.size(), 0.0);
  const std::size_t stride = basis_.stride(mode_);
  const int cutoff = basis_.cutoff();
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    if (psi[idx] == cplx(0.0)) continue;
    int n = basis_.occupation(idx, mode_);
    if (dagger_) {
      if (n < cutoff) out[idx + stride] += std::sqrt(n + 1.0) * psi[idx];
    } else if (n > 0) {
      out[idx - stride] += std::sqrt(static_cast<double>(n)) * psi[idx];
    }
  }
  return out;
}

namespace {

// Truncated Poisson amplitudes and the exact tail probability.
std::vector<cplx> coherent_amplitudes(cplx alpha, int cutoff, double& tail) {
  const double mean = std::norm(alpha);
  std::vector<cplx> amps(static_cast<std::size_t>(cutoff + 1));
  cplx amp = std::exp(-0.5 * mean);
  double p = std::exp(-mean);
  for (int n = 0; n <= cutoff; ++n) {
    amps[static_cast<std::size_t>(n)] = amp;
    amp *= alpha / std::sqrt(n + 1.0);
    p *= mean / (n + 1.0);
  }
  tail = 0.0;
  for (int n = cutoff + 1; p > 1e-300 && n < cutoff + 2000; ++n) {
    tail += p;
    p *= mean / (n + 1.0);
    if (p < tail * 1e-17) break;
  }
  return amps;
}

}  // namespace

FockState coherent_state(const FockBasis& basis, int mode, cplx alpha, double leak_tolerance) {
  require_mode(basis, mode, "coherent_state");
  std::vector<cplx> alphas(static_cast<std::size_t>(basis.modes()), 0.0);
  alphas[static_cast<std::size_t>(mode)] = alpha;
  return product_coherent_state(basis, alphas, leak_tolerance);
}

FockState product_coherent_state(const FockBasis& basis, std::span<const cplx> alphas, double leak_tolerance) {
  if (alphas.size() != static_cast<std::size_t>(basis.modes())) {
    throw std::invalid_argument("product_coherent_state: need one amplitude per mode");
  }
  std::vector<std::vector<cplx>> per_mode;
  double kept = 1.0;
  for (cplx alpha : alphas) {
    if (std::norm(alpha) > basis.cutoff() / 4.0) {
      throw std::invalid_argument("coherent_state: |alpha|^2 = " + std::to_string(std::norm(alpha)) +
                                  " exceeds cutoff/4 = " + std::to_string(basis.cutoff() / 4.0));
    }
    double tail = 0.0;
    per_mode.push_back(coherent_amplitudes(alpha, basis.cutoff(), tail));
    kept *= 1.0 - tail;
  }
  double leak = 1.0 - kept;
  check_leak(leak, leak_tolerance, "coherent_state");

  std::vector<cplx> amps(basis.dim());
  for (std::size_t idx = 0; idx < basis.dim(); ++idx) {
    cplx v = 1.0;
    for (int m = 0; m < basis.modes(); ++m) {
      v *= per_mode[static_cast<std::size_t>(m)][static_cast<std::size_t>(basis.occupation(idx, m))];
    }
    amps[idx] = v;
  }
  return FockState(basis, std::move(amps), leak);
}

FockState apply_two_mode_squeezer(const FockState& state, int mode_a, int mode_b, cplx zeta, double leak_tolerance) {
  const int levels = state.basis().levels();
  const int cutoff = state.basis().cutoff();
  const int ext_cutoff = cutoff + std::max(8, cutoff);
  const int ext_levels = ext_cutoff + 1;

  // Block k = n_a - n_b holds |j + k, j> (k >= 0) or |j, j - k> (k < 0).
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = -ext_cutoff; k <= ext_cutoff; ++k) {
    const int size = ext_cutoff - std::abs(k) + 1;
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(size, size);
    for (int j = 0; j + 1 < size; ++j) {
      const double na = j + std::max(k, 0);
      const double nb = j + std::max(-k, 0);
      const double c = std::sqrt((na + 1.0) * (nb + 1.0));
      g(j + 1, j) = -zeta * c;          // -zeta a^dag b^dag
      g(j, j + 1) = std::conj(zeta) * c;  // zeta* a b
    }
    blocks.push_back(expm(g));
  }

  PairMap map = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
    for (int k = -cutoff; k <= cutoff; ++k) {
      const auto& u = blocks[static_cast<std::size_t>(k + ext_cutoff)];
      const int ka = std::max(k, 0);
      const int kb = std::max(-k, 0);
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(u.cols());
      bool any = false;
      for (int j = 0; j + std::max(ka, kb) <= cutoff; ++j) {
        cplx x = in[static_cast<std::size_t>((j + ka) * levels + (j + kb))];
        v[j] = x;
        any = any || x != cplx(0.0);
      }
      if (!any) continue;
      Eigen::VectorXcd w = u * v;
      for (int j = 0; j < w.size(); ++j) {
        out[static_cast<std::size_t>((j + ka) * ext_levels + (j + kb))] = w[j];
      }
    }
  };
  return apply_pair(state, mode_a, mode_b, ext_levels, map, leak_tolerance, "apply_two_mode_squeezer");
}

FockState apply_beam_splitter(const FockState& state, int mode_1, int mode_2, cplx t, cplx r, double leak_tolerance) {
  if (std::abs(std::norm(t) + std::norm(r) - 1.0) > 1e-12 ||
      std::abs(t * std::conj(r) + r * std::conj(t)) > 1e-12) {
    throw std::invalid_argument("apply_beam_splitter: (T, R) is not a lossless splitter "
                                "(need |T|^2 + |R|^2 = 1 and T R* = -R T*)");
  }
  const int levels = state.basis().levels();
  const int cutoff = state.basis().cutoff();
  const int ext_levels = 2 * cutoff + 1;

  // Block n: |n1, n - n1> -> sum_m B[m][n1] |m, n - m>.
  std::vector<Eigen::MatrixXcd> blocks;
  for (int n = 0; n <= 2 * cutoff; ++n) {
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    for (int n1 = 0; n1 <= n; ++n1) {
      const int n2 = n - n1;
      for (int i = 0; i <= n1; ++i) {
        for (int j = 0; j <= n2; ++j) {
          const int m = i + j;
          double scale = std::exp(0.5 * (std::lgamma(m + 1.0) + std::lgamma(n - m + 1.0) -
                                         std::lgamma(n1 + 1.0) - std::lgamma(n2 + 1.0)));
          b(m, n1) += binomial(n1, i) * binomial(n2, j) * ipow(t, i) * ipow(r, n1 - i) * ipow(r, j) *
                      ipow(t, n2 - j) * scale;
        }
      }
    }
    blocks.push_back(std::move(b));
  }

  PairMap map = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
    for (int n = 0; n <= 2 * cutoff; ++n) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n + 1);
      bool any = false;
      for (int n1 = std::max(0, n - cutoff); n1 <= std::min(n, cutoff); ++n1) {
        cplx x = in[static_cast<std::size_t>(n1 * levels + (n - n1))];
        v[n1] = x;
        any = any || x != cplx(0.0);
      }
      if (!any) continue;
      Eigen::VectorXcd w = blocks[static_cast<std::size_t>(n)] * v;
      for (int m = 0; m <= n; ++m) out[static_cast<std::size_t>(m * ext_levels + (n - m))] = w[m];
    }
  };
  return apply_pair(state, mode_1, mode_2, ext_levels, map, leak_tolerance, "apply_beam_splitter");
}

FockState append_vacuum_mode(const FockState& state) {
  const FockBasis wider = state.basis().with_modes(state.basis().modes() + 1);
  const auto levels = static_cast<std::size_t>(wider.levels());
  std::vector<std::vector<cplx>> branches;
  for (const auto& psi : state.branches()) {
    std::vector<cplx> next(wider.dim(), 0.0);
    for (std::size_t idx = 0; idx < psi.size(); ++idx) next[idx * levels] = psi[idx];
    branches.push_back(std::move(next));
  }
  return FockState(wider, std::move(branches), state.truncation_leak());
}

FockState trace_out(const FockState& state, int mode) {
  const FockBasis& basis = state.basis();
  require_mode(basis, mode, "trace_out");
  if (basis.modes() == 1) throw std::invalid_argument("trace_out: cannot trace out the only mode");
  const FockBasis reduced = basis.with_modes(basis.modes() - 1);
  const std::size_t stride = basis.stride(mode);
  const auto levels = static_cast<std::size_t>(basis.levels());

  double leak = state.truncation_leak();
  std::vector<std::vector<cplx>> branches;
  for (const auto& psi : state.branches()) {
    for (std::size_t k = 0; k < levels; ++k) {
      std::vector<cplx> slice(reduced.dim());
      double weight = 0.0;
      for (std::size_t r = 0; r < reduced.dim(); ++r) {
        std::size_t idx = (r / stride) * stride * levels + k * stride + r % stride;
        slice[r] = psi[idx];
        weight += std::norm(psi[idx]);
      }
      if (weight < kDropBranchBelow) {
        leak += weight;
        continue;
      }
      branches.push_back(std::move(slice));
    }
  }
  return FockState(reduced, std::move(branches), leak);
}

FockState apply_loss(const FockState& state, int mode, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("apply_loss: eta must lie in [0, 1]");
  require_mode(state.basis(), mode, "apply_loss");
  if (eta == 1.0) return state;
  FockState widened = append_vacuum_mode(state);
  const int ancilla = widened.basis().modes() - 1;
  FockState mixed = apply_beam_splitter(widened, mode, ancilla, std::sqrt(eta), cplx(0.0, std::sqrt(1.0 - eta)),
                                        std::numeric_limits<double>::infinity());
  return trace_out(mixed, ancilla);
}

cplx moments(const FockState& state, std::span<const Ladder> ops) {
  std::vector<LadderOp> ladder;
  for (const auto& op : ops) ladder.emplace_back(state.basis(), op.mode, op.dagger);
  cplx total = 0.0;
  for (const auto& psi : state.branches()) {
    std::vector<cplx> v = psi;
    for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) v = it->apply(v);
    for (std::size_t i = 0; i < v.size(); ++i) total += std::conj(psi[i]) * v[i];
  }
  return total;
}

double mean_photon_number(const FockState& state, int mode) {
  const Ladder ops[] = {{mode, true}, {mode, false}};
  return moments(state, ops).real();
}

std::vector<double> photon_number_distribution(const FockState& state, std::span<const int> modes) {
  const FockBasis& basis = state.basis();
  for (int m : modes) require_mode(basis, m, "photon_number_distribution");
  std::size_t size = 1;
  for (std::size_t i = 0; i < modes.size(); ++i) size *= static_cast<std::size_t>(basis.levels());
  std::vector<double> dist(size, 0.0);
  for (const auto& psi : state.branches()) {
    for (std::size_t idx = 0; idx < psi.size(); ++idx) {
      double p = std::norm(psi[idx]);
      if (p == 0.0) continue;
      std::size_t flat = 0;
      for (int m : modes) flat = flat * static_cast<std::size_t>(basis.levels()) + static_cast<std::size_t>(basis.occupation(idx, m));
      dist[flat] += p;
    }
  }
  return dist;
}

}  // namespace qcounter::fock
