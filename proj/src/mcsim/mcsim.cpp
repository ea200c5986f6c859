#include "qcounter/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qcounter/correlate.hpp"

namespace qcounter::mcsim {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53;
constexpr std::uint32_t kM1 = 0xCD9E8D57;
constexpr std::uint32_t kW0 = 0x9E3779B9;
constexpr std::uint32_t kW1 = 0xBB67AE85;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

struct Tally {
  std::uint64_t s1 = 0;
  std::uint64_t s2 = 0;
  std::uint64_t c = 0;
};

// Cumulative distribution over (click_1, click_2) outcomes, indexed 0..3 as
// (no, no), (no, yes), (yes, no), (yes, yes).
struct Sampler {
  std::vector<double> cdf;
  std::vector<std::uint8_t> outcome;
};

Sampler build_sampler(const fock::FockState& state) {
  const int modes[] = {0, 1};
  const std::vector<double> dist = fock::photon_number_distribution(state, modes);
  const auto levels = static_cast<std::size_t>(state.basis().levels());
  Sampler s;
  double total = 0.0;
  for (std::size_t n1 = 0; n1 < levels; ++n1) {
    for (std::size_t n2 = 0; n2 < levels; ++n2) {
      const double p = dist[n1 * levels + n2];
      if (p <= 0.0) continue;
      total += p;
      s.cdf.push_back(total);
      s.outcome.push_back(static_cast<std::uint8_t>((n1 > 0 ? 2 : 0) | (n2 > 0 ? 1 : 0)));
    }
  }
  for (double& c : s.cdf) c /= total;
  s.cdf.back() = 1.0;
  return s;
}

Tally sample_range(const Sampler& sampler, std::uint64_t seed, std::uint64_t begin, std::uint64_t end) {
  Tally t;
  for (std::uint64_t i = begin; i < end; ++i) {
    const double u = Philox4x32::uniform(seed, i);
    const auto k = static_cast<std::size_t>(std::upper_bound(sampler.cdf.begin(), sampler.cdf.end(), u) -
                                            sampler.cdf.begin());
    const std::uint8_t o = sampler.outcome[std::min(k, sampler.outcome.size() - 1)];
    t.s1 += (o >> 1) & 1U;
    t.s2 += o & 1U;
    t.c += o == 3 ? 1U : 0U;
  }
  return t;
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, ctr[0], hi0, lo0);
    mulhilo(kM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

double Philox4x32::uniform(std::uint64_t seed, std::uint64_t index) {
  const Counter out = block({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0, 0},
                            {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  const std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void ShotPlan::validate() const {
  if (pulses < 1) throw std::invalid_argument("shot plan: pulses must be >= 1");
  if (threads < 1) throw std::invalid_argument("shot plan: threads must be >= 1");
  network.validate();
}

ClickProbabilities click_probabilities(const ShotPlan& plan) {
  plan.validate();
  const fock::FockState state = network::detection_state(plan.network, plan.basis);
  const int modes[] = {0, 1};
  const std::vector<double> dist = fock::photon_number_distribution(state, modes);
  const auto levels = static_cast<std::size_t>(state.basis().levels());
  ClickProbabilities p;
  double total = 0.0;
  for (std::size_t n1 = 0; n1 < levels; ++n1) {
    for (std::size_t n2 = 0; n2 < levels; ++n2) {
      const double q = dist[n1 * levels + n2];
      total += q;
      if (n1 > 0) p.p1 += q;
      if (n2 > 0) p.p2 += q;
      if (n1 > 0 && n2 > 0) p.p12 += q;
    }
  }
  p.p1 /= total;
  p.p2 /= total;
  p.p12 /= total;
  return p;
}

CountRecord run_shots(const ShotPlan& plan) {
  plan.validate();
  const Sampler sampler = build_sampler(network::detection_state(plan.network, plan.basis));

  const auto workers = static_cast<std::uint64_t>(std::min<std::uint64_t>(plan.threads, plan.pulses));
  std::vector<Tally> tallies(workers);
  const std::uint64_t chunk = (plan.pulses + workers - 1) / workers;
  auto job = [&](std::uint64_t w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(plan.pulses, begin + chunk);
    if (begin < end) tallies[w] = sample_range(sampler, plan.seed, begin, end);
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(job, w);
    for (auto& t : pool) t.join();
  }

  CountRecord rec;
  rec.pulses = plan.pulses;
  for (const auto& t : tallies) {
    rec.singles_1 += t.s1;
    rec.singles_2 += t.s2;
    rec.coincidences += t.c;
  }
  if (rec.singles_1 > 0 && rec.singles_2 > 0) {
    const auto n = static_cast<double>(rec.pulses);
    const double p1 = static_cast<double>(rec.singles_1) / n;
    const double p2 = static_cast<double>(rec.singles_2) / n;
    const double pc = static_cast<double>(rec.coincidences) / n;
    const double g2 = pc / (p1 * p2);
    rec.g2_estimate = g2;
    if (rec.coincidences > 0) {
      // Multinomial delta method on ln g2 = ln C - ln S1 - ln S2 + ln N.
      const double var_log = (1.0 / pc - 1.0 / p1 - 1.0 / p2 + 2.0 * pc / (p1 * p2) - 1.0) / n;
      rec.std_error = g2 * std::sqrt(std::max(var_log, 0.0));
    }
  }
  return rec;
}

std::vector<SweepRow> sweep(const std::vector<ShotPlan>& plans) {
  std::vector<SweepRow> rows;
  for (const auto& plan : plans) {
    if (!(plan.basis == plans.front().basis)) {
      throw std::invalid_argument("sweep: all plans must share the same Fock basis");
    }
  }
  for (const auto& plan : plans) {
    const double n_bar = plan.network.input.n_bar();
    rows.push_back({n_bar, run_shots(plan), correlate::modified_g2(n_bar, 1.0)});
  }
  return rows;
}

}  // namespace qcounter::mcsim
