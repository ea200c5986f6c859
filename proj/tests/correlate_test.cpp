#include <cmath>
#include <random>

#include <doctest.h>

#include "qcounter/correlate.hpp"
#include "qcounter/network.hpp"
#include "qcounter/spectral.hpp"

using namespace qcounter::correlate;
using qcounter::SpectralIntegrals;

namespace {

DetectionParams detector(double eta1, double eta2, double tt, double zeta = 0.1) {
  DetectionParams d;
  d.eta_1 = eta1;
  d.eta_2 = eta2;
  d.t = std::sqrt(tt);
  d.r = cplx(0.0, std::sqrt(1.0 - tt));
  d.zeta_mag = zeta;
  return d;
}

}  // namespace

TEST_CASE("singles") {
  SpectralIntegrals s{2.0, 3.0};
  auto [vac1, vac2] = singles({0.0}, detector(0.5, 0.25, 0.5), s);
  CHECK(vac1 == doctest::Approx(0.5 * 0.5 * 0.01 * 2.0));
  CHECK(vac2 == doctest::Approx(0.25 * 0.5 * 0.01 * 2.0));
  auto [n3, n3b] = singles({3.0}, detector(0.5, 0.25, 0.5), s);
  CHECK(n3 == doctest::Approx(4.0 * vac1));
  CHECK(n3b == doctest::Approx(4.0 * vac2));
  CHECK(singles({1.0}, detector(0.0, 0.25, 0.5), s).first == 0.0);
  CHECK_THROWS_AS(singles({-1.0}, detector(0.5, 0.5, 0.5), s), std::invalid_argument);
  CHECK_THROWS_AS(singles({1.0}, detector(0.5, 0.5, 0.5), {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("coincidences") {
  const double i_diag = 1.7;
  auto det = detector(0.3, 0.6, 0.4, 0.12);
  const double pref = 0.3 * 0.6 * 0.4 * 0.6 * std::pow(0.12, 4);
  CHECK(coincidences({0.0}, det, {i_diag, i_diag * i_diag}) == doctest::Approx(2.0 * pref * i_diag * i_diag));

  // Uncorrelated limit: product of singles.
  auto [n1, n2] = singles({2.0}, det, {i_diag, 0.0});
  CHECK(coincidences({2.0}, det, {i_diag, 0.0}) == doctest::Approx(n1 * n2).epsilon(1e-14));

  CHECK_THROWS_AS(coincidences({0.0}, det, {1.0, -1e-6}), std::domain_error);
  CHECK_NOTHROW(coincidences({0.0}, det, {1.0, -1e-12}));

  const double big = 1e8;
  auto report = correlation_report({big}, det, {i_diag, 0.9 * i_diag * i_diag});
  CHECK(report.g2 == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("modified correlation") {
  CHECK(modified_g2(0.0, 1.0) == 2.0);
  CHECK(modified_g2(1.0, 1.0) == 1.75);
  CHECK(modified_g2(0.0, 0.45) == 1.45);
  CHECK(modified_g2(5.0, 0.0) == 1.0);
  CHECK_THROWS_AS(modified_g2(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(modified_g2(1.0, 1.5), std::invalid_argument);

  // Matches the single-mode antinormal ratio (n^2 + 4n + 2)/(n + 1)^2.
  for (double n = 0.0; n < 20.0; n += 0.37) {
    CHECK(modified_g2(n, 1.0) == doctest::Approx((n * n + 4 * n + 2) / ((n + 1) * (n + 1))).epsilon(1e-14));
  }

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double n = 50.0 * u(rng);
    const double g = u(rng);
    CHECK(modified_g2(n, g) - 1.0 >= 0.0);
    if (g > 0.0) CHECK(modified_g2(n, g) > 1.0);
  }
}

TEST_CASE("g2 curve") {
  auto flat = g2_curve(0.0, {0.0, 1.0, 2.0});
  for (const auto& row : flat) CHECK(row.g2 == 1.0);
  auto curve = g2_curve(1.0, {0.0, 1.0, 1e6});
  CHECK(curve[0].g2 == 2.0);
  CHECK(curve[1].g2 == 1.75);
  CHECK(curve[2].g2 == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(g2_curve(1.0, {2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(g2_curve(1.0, {}), std::invalid_argument);

  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back(0.1 * i);
  auto dense = g2_curve(0.6, grid);
  for (std::size_t i = 1; i < dense.size(); ++i) CHECK(dense[i].g2 < dense[i - 1].g2);
}

TEST_CASE("report ratio and detector independence") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const SpectralIntegrals s{1.3, 0.8 * 1.3 * 1.3};
  const double reference = correlation_report({1.5}, detector(1, 1, 0.5), s).g2;
  for (int i = 0; i < 200; ++i) {
    auto det = detector(u(rng), u(rng), u(rng) * 0.95);
    auto report = correlation_report({1.5}, det, s);
    CHECK(std::abs(report.g2 - report.n12 / (report.n1 * report.n2)) < 1e-12);
    CHECK(std::abs(report.g2 - reference) < 1e-13);
  }
  CHECK(std::abs(reference - modified_g2(1.5, 0.8)) < 1e-13);
}

TEST_CASE("gaussian spectral integrals reproduce the closed-form gamma") {
  using namespace qcounter::spectral;
  for (double ratio : {0.1, 0.25, 1.0, 4.0}) {
    auto filter = SpectralProfile::gaussian(0.0, ratio);
    JointAmplitude jsa;
    jsa.pump = SpectralProfile::gaussian(0.0, 1.0);
    auto integrals = spectral_integrals(filter, jsa);
    const double gamma = gamma_closed_form(ratio, 1.0).gamma;
    for (double n : {0.0, 1.0, 4.0}) {
      auto report = correlation_report({n}, detector(0.7, 0.4, 0.5), integrals);
      CHECK(std::abs(report.g2 - modified_g2(n, gamma)) < 1e-6);
    }
  }
}

TEST_CASE("factorizable amplitude reduces to the single-mode network") {
  using namespace qcounter::spectral;
  JointAmplitude jsa;
  jsa.kernel = [](double w1, double w2) { return std::exp(-w1 * w1) * std::exp(-w2 * w2 / 2.0); };
  jsa.kernel_support = std::pair{-8.0, 8.0};
  auto integrals = spectral_integrals(SpectralProfile::gaussian(0.0, 0.5), jsa);
  for (double n : {0.0, 1.0, 2.0}) {
    auto report = correlation_report({n}, detector(0.5, 0.5, 0.5, 0.1), integrals);
    qcounter::network::NetworkSpec spec;
    spec.input = qcounter::network::InputSpec::coherent(std::sqrt(n));
    spec.squeezer = qcounter::network::SqueezerSpec::from_zeta(0.1);
    auto fock = qcounter::network::run_network(spec, qcounter::fock::FockBasis(3, 20));
    CHECK(std::abs(report.g2 - fock.g2) < 1e-2);
  }
}

TEST_CASE("perturbative warning") {
  auto quiet = correlation_report({1.0}, detector(1, 1, 0.5, 0.1), {1.0, 1.0});
  CHECK(quiet.warnings.empty());
  auto loud = correlation_report({1.0}, detector(1, 1, 0.5, 0.5), {1.0, 1.0});
  CHECK(loud.warnings.size() == 1);
}
