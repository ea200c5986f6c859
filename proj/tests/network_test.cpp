#include <cmath>
#include <random>

#include <doctest.h>

#include "qcounter/network.hpp"

using namespace qcounter::network;
using qcounter::fock::FockBasis;

namespace {

NetworkSpec make_spec(InputSpec input, double zeta_mag, double eta1 = 1.0, double eta2 = 1.0) {
  NetworkSpec spec;
  spec.input = input;
  spec.squeezer = SqueezerSpec::from_zeta(std::polar(zeta_mag, 0.4));
  spec.eta_1 = eta1;
  spec.eta_2 = eta2;
  return spec;
}

cplx phase_i(double phi) { return std::polar(1.0, phi); }

}  // namespace

TEST_CASE("phase mismatch") {
  PhaseMatchSpec p{3.0e15, 1.2e15, [](double) { return 1.66; }};
  CHECK(phase_mismatch(p) == 0.0);

  PhaseMatchSpec degenerate{3.0e15, 1.5e15, [](double w) { return 1.5 + 1e-17 * w; }};
  const double expected = 3.0e15 * ((1.5 + 3e-2) - (1.5 + 1.5e-2)) / constants::c;
  CHECK(phase_mismatch(degenerate) == doctest::Approx(expected).epsilon(1e-12));

  const double a = 1.6;
  const double b = 2.0e-17;
  PhaseMatchSpec linear{2.4e15, 0.9e15, [=](double w) { return a + b * w; }};
  // omega_p n_p - omega n_s - (omega_p - omega) n_i with n linear collapses to
  // b (omega_p^2 - omega^2 - (omega_p - omega)^2) = 2 b omega (omega_p - omega).
  const double oracle = 2.0 * b * 0.9e15 * (2.4e15 - 0.9e15) / constants::c;
  CHECK(phase_mismatch(linear) == doctest::Approx(oracle).epsilon(1e-9));

  CHECK_THROWS_AS(phase_mismatch({1.0e15, 1.5e15, [](double) { return 1.0; }}), std::invalid_argument);
  CHECK_THROWS_AS(phase_mismatch({1.0e15, 0.0, [](double) { return 1.0; }}), std::invalid_argument);
}

TEST_CASE("coupling constant") {
  CouplingSpec p;
  p.power_density = 2.5e-9;
  p.chi2 = 4.0e-12;
  p.area = 1.0e-8;
  p.omega_p = 4.77e15;
  p.omega = 2.1e15;
  p.n_pump = 1.68;
  p.n_signal = 1.65;
  p.n_idler = 1.64;
  p.phi_p = 0.3;

  Coupling k = coupling_constant(p);
  const double radicand = 2.5e-9 * constants::hbar * 4.77e15 * 2.1e15 * (4.77e15 - 2.1e15) /
                          (8 * constants::epsilon0 * std::pow(constants::c, 3) * 1.0e-8 * 1.68 * 1.65 * 1.64);
  CHECK(k.s == doctest::Approx(std::sqrt(radicand) * 4.0e-12).epsilon(1e-12));
  CHECK(std::abs(phase_i(k.theta) - phase_i(0.3 + M_PI)) < 1e-12);

  CouplingSpec swapped = p;
  swapped.omega = p.omega_p - p.omega;
  std::swap(swapped.n_signal, swapped.n_idler);
  Coupling ks = coupling_constant(swapped);
  CHECK(ks.s == doctest::Approx(k.s).epsilon(1e-14));
  CHECK(ks.theta == k.theta);

  CouplingSpec zero = p;
  zero.chi2 = 0.0;
  CHECK(coupling_constant(zero).s == 0.0);

  CouplingSpec bad = p;
  bad.area = -1.0;
  CHECK_THROWS_AS(coupling_constant(bad), std::invalid_argument);
}

TEST_CASE("network validation") {
  NetworkSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.t = 0.8;
  spec.r = 0.6;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = NetworkSpec{};
  spec.eta_1 = 1.2;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  CHECK_THROWS_AS(run_network(NetworkSpec{}, FockBasis(2, 6)), std::invalid_argument);
}

TEST_CASE("vacuum input gives g2 = 2") {
  auto spec = make_spec(InputSpec::vacuum(), 0.15, 0.3, 0.3);
  auto report = run_network(spec, FockBasis(3, 12));
  CHECK(std::abs(report.g2 - 2.0) < 5e-3);
  const double sh2 = std::pow(std::sinh(0.15), 2);
  CHECK(report.n1 == doctest::Approx(0.3 * 0.5 * sh2).epsilon(1e-10));
  CHECK(report.n12 == doctest::Approx(2.0 * 0.09 * 0.25 * sh2 * sh2).epsilon(1e-8));
  REQUIRE(report.antinormal);
  CHECK(report.antinormal->a_adag == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(report.antinormal->a_a_adag_adag == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(report.warnings.empty());
}

TEST_CASE("coherent input with n_bar = 1 gives g2 = 1.75") {
  auto spec = make_spec(InputSpec::coherent(std::polar(1.0, 0.9)), 0.1, 0.7, 0.4);
  auto report = run_network(spec, FockBasis(3, 20));
  CHECK(std::abs(report.g2 - 1.75) < 1e-2);
  REQUIRE(report.antinormal);
  CHECK(report.antinormal->a_adag == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(report.antinormal->a_a_adag_adag == doctest::Approx(7.0).epsilon(1e-6));
}

TEST_CASE("halving eta_1 leaves g2 unchanged") {
  auto spec = make_spec(InputSpec::coherent(0.7), 0.12, 0.8, 0.5);
  auto full = run_network(spec, FockBasis(3, 16));
  spec.eta_1 *= 0.5;
  auto half = run_network(spec, FockBasis(3, 16));
  CHECK(std::abs(full.g2 - half.g2) < 1e-9);
  CHECK(half.n1 == doctest::Approx(0.5 * full.n1).epsilon(1e-10));
}

TEST_CASE("g2 is invariant over splitters and efficiencies") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FockBasis basis(3, 14);
  auto base = make_spec(InputSpec::coherent(std::polar(1.2, 0.3)), 0.1);
  const double reference = run_network(base, basis).g2;
  const double expected_singles_ratio = 1.0;
  for (int trial = 0; trial < 30; ++trial) {
    auto spec = base;
    const double tt = 0.05 + 0.9 * u(rng);
    const double phi = 6.283 * u(rng);
    spec.t = std::polar(std::sqrt(tt), phi);
    spec.r = std::polar(std::sqrt(1.0 - tt), phi + (u(rng) < 0.5 ? M_PI / 2 : -M_PI / 2));
    spec.eta_1 = 0.01 + 0.99 * u(rng);
    spec.eta_2 = 0.01 + 0.99 * u(rng);
    auto report = run_network(spec, basis);
    CHECK(std::abs(report.g2 - reference) / reference < 1e-8);

    // Singles scale as eta_1 |T|^2.
    auto unit = spec;
    unit.eta_1 = 1.0;
    unit.eta_2 = 1.0;
    auto ref = run_network(unit, basis);
    const double ratio = report.n1 / (spec.eta_1 * ref.n1);
    CHECK(std::abs(ratio - expected_singles_ratio) < 1e-10);
    CHECK(std::abs(ref.n1 / std::norm(spec.t) - ref.n2 / std::norm(spec.r)) < 1e-10 * ref.n1);
  }
}

TEST_CASE("antinormal moments track the input for several amplitudes") {
  for (double n_bar : {0.0, 0.5, 1.0, 2.0}) {
    auto spec = make_spec(InputSpec::coherent(std::sqrt(n_bar)), 0.1, 0.6, 0.9);
    auto report = run_network(spec, FockBasis(3, 22));
    REQUIRE(report.antinormal);
    CHECK(report.antinormal->a_adag == doctest::Approx(n_bar + 1.0).epsilon(1e-7));
    CHECK(report.antinormal->a_a_adag_adag == doctest::Approx(n_bar * n_bar + 4 * n_bar + 2).epsilon(1e-6));
    CHECK(report.g2 == doctest::Approx(1.0 + (2 * n_bar + 1) / std::pow(n_bar + 1, 2)).epsilon(1e-6));
  }
}

TEST_CASE("large squeezing triggers the perturbative warning") {
  auto spec = make_spec(InputSpec::coherent(1.0), 0.4);
  auto report = run_network(spec, FockBasis(3, 30));
  CHECK(report.warnings.size() == 1);
}
