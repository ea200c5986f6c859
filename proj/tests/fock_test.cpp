#include <cmath>
#include <random>

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "qcounter/fock.hpp"
#include "support/ladder_oracle.hpp"

using namespace qcounter::fock;

namespace {

double total_probability(const FockState& s) { return s.norm_squared() + s.truncation_leak(); }

FockState fock_number_state(const FockBasis& basis, std::vector<int> occ) {
  std::vector<cplx> amps(basis.dim(), 0.0);
  amps[basis.index(occ)] = 1.0;
  return FockState(basis, std::move(amps));
}

cplx moment(const FockState& s, std::initializer_list<Ladder> ops) {
  std::vector<Ladder> v(ops);
  return moments(s, v);
}

}  // namespace

TEST_CASE("basis indexing and limits") {
  FockBasis b(3, 4);
  CHECK(b.dim() == 125);
  CHECK(b.stride(0) == 25);
  CHECK(b.stride(2) == 1);
  std::vector<int> occ{1, 2, 3};
  auto idx = b.index(occ);
  CHECK(b.occupation(idx, 0) == 1);
  CHECK(b.occupation(idx, 1) == 2);
  CHECK(b.occupation(idx, 2) == 3);
  CHECK_THROWS_AS(FockBasis(8, 20), std::invalid_argument);
  CHECK_THROWS_AS(FockBasis(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(FockBasis(1, kMaxCutoff + 1), std::invalid_argument);
}

TEST_CASE("ladder operators match the matrix oracle") {
  FockBasis basis(2, 5);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<cplx> psi(basis.dim());
  for (auto& x : psi) x = {g(rng), g(rng)};
  for (int mode = 0; mode < 2; ++mode) {
    oracle::SparseOp a = oracle::annihilator(mode, 2, basis.levels());
    oracle::Vec v = Eigen::Map<oracle::Vec>(psi.data(), static_cast<Eigen::Index>(psi.size()));
    oracle::Vec ref_a = a * v;
    oracle::Vec ref_adag = oracle::SparseOp(a.adjoint()) * v;
    auto out_a = LadderOp(basis, mode, false).apply(psi);
    auto out_adag = LadderOp(basis, mode, true).apply(psi);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      CHECK(std::abs(out_a[i] - ref_a[static_cast<Eigen::Index>(i)]) < 1e-12);
      CHECK(std::abs(out_adag[i] - ref_adag[static_cast<Eigen::Index>(i)]) < 1e-12);
    }
  }
}

TEST_CASE("commutator holds below the cutoff") {
  FockBasis basis(1, 10);
  for (int n = 0; n < 10; ++n) {
    auto s = fock_number_state(basis, {n});
    cplx aad = moment(s, {{0, false}, {0, true}});
    cplx ada = moment(s, {{0, true}, {0, false}});
    CHECK(std::abs(aad - ada - 1.0) < 1e-12);
  }
}

TEST_CASE("coherent states") {
  FockBasis basis(1, 20);
  auto vac = coherent_state(basis, 0, 0.0);
  CHECK(mean_photon_number(vac, 0) == doctest::Approx(0.0));
  auto one = coherent_state(basis, 0, 1.0);
  CHECK(std::abs(mean_photon_number(one, 0) - 1.0) < 1e-9);
  CHECK(std::abs(total_probability(one) - 1.0) < 1e-12);
  CHECK_THROWS_AS(coherent_state(basis, 0, std::sqrt(30.0)), std::invalid_argument);
  CHECK_THROWS_AS(coherent_state(FockBasis(1, 4), 0, 1.0), TruncationError);

  FockBasis wide(1, 25);
  auto c = coherent_state(wide, 0, 1.0);
  cplx m = moment(c, {{0, false}, {0, false}, {0, true}, {0, true}});
  CHECK(std::abs(m - 7.0) < 1e-6);
  CHECK(std::abs(moment(vac, {{0, false}, {0, true}}) - 1.0) < 1e-12);
  CHECK(std::abs(moment(vac, {{0, true}, {0, false}})) < 1e-12);
}

TEST_CASE("two-mode squeezer on vacuum") {
  FockBasis basis(2, 20);
  auto vac = FockState::vacuum(basis);
  auto same = apply_two_mode_squeezer(vac, 0, 1, 0.0);
  CHECK(same.amplitudes() == vac.amplitudes());

  auto s = apply_two_mode_squeezer(vac, 0, 1, 0.2);
  const double sh2 = std::pow(std::sinh(0.2), 2);
  CHECK(std::abs(mean_photon_number(s, 1) - sh2) < 1e-8);
  CHECK(std::abs(mean_photon_number(s, 0) - sh2) < 1e-8);
  CHECK(std::abs(total_probability(s) - 1.0) < 1e-10);
  cplx nanb = moment(s, {{0, true}, {0, false}, {1, true}, {1, false}});
  const double ch2 = std::pow(std::cosh(0.2), 2);
  CHECK(std::abs(nanb - (sh2 * ch2 + sh2 * sh2)) < 1e-8);
  CHECK_THROWS_AS(apply_two_mode_squeezer(vac, 0, 0, 0.2), std::invalid_argument);
}

TEST_CASE("two-mode squeezer matches a dense matrix exponential") {
  const int cutoff = 12;
  FockBasis basis(2, cutoff);
  const cplx zeta = std::polar(0.2, 0.7);
  oracle::SparseOp a = oracle::annihilator(0, 2, cutoff + 1);
  oracle::SparseOp b = oracle::annihilator(1, 2, cutoff + 1);
  Eigen::MatrixXcd ab = Eigen::MatrixXcd(a * b);
  Eigen::MatrixXcd gen = std::conj(zeta) * ab - zeta * Eigen::MatrixXcd(ab.adjoint());
  Eigen::MatrixXcd u = gen.exp();
  oracle::Vec ref = u.col(0);

  auto s = apply_two_mode_squeezer(FockState::vacuum(basis), 0, 1, zeta);
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    CHECK(std::abs(s.amplitudes()[i] - ref[static_cast<Eigen::Index>(i)]) < 1e-9);
  }
}

TEST_CASE("squeezer Heisenberg moments") {
  FockBasis basis(2, 24);
  const double r = 0.3;
  const double theta = 1.1;
  const cplx zeta = std::polar(r, theta);
  const cplx alpha(0.6, -0.4);
  std::vector<cplx> alphas{alpha, 0.0};
  auto in = product_coherent_state(basis, alphas);
  auto s = apply_two_mode_squeezer(in, 0, 1, zeta);
  const cplx phase = std::polar(1.0, theta);
  // a -> a cosh r - b^dag e^{i theta} sinh r; b -> b cosh r - a^dag e^{i theta} sinh r.
  CHECK(std::abs(moment(s, {{0, false}}) - std::cosh(r) * alpha) < 1e-7);
  CHECK(std::abs(moment(s, {{1, false}}) + phase * std::sinh(r) * std::conj(alpha)) < 1e-7);
  const double n_expected = std::pow(std::cosh(r), 2) * std::norm(alpha) + std::pow(std::sinh(r), 2);
  CHECK(std::abs(mean_photon_number(s, 0) - n_expected) < 1e-7);
  cplx ab = moment(s, {{0, false}, {1, false}});
  cplx ab_expected = -phase * std::sinh(r) * std::cosh(r) * (std::norm(alpha) + 1.0);
  CHECK(std::abs(ab - ab_expected) < 1e-7);
}

TEST_CASE("beam splitter") {
  FockBasis basis(2, 6);
  const cplx h = 1.0 / std::sqrt(2.0);
  auto one = fock_number_state(basis, {1, 0});
  auto id = apply_beam_splitter(one, 0, 1, 1.0, 0.0);
  CHECK(id.amplitudes() == one.amplitudes());

  auto split = apply_beam_splitter(one, 0, 1, h, cplx(0.0, 1.0) * h);
  CHECK(mean_photon_number(split, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mean_photon_number(split, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(apply_beam_splitter(one, 0, 1, 0.8, 0.6), std::invalid_argument);

  // Hong-Ou-Mandel: |1,1> never leaves as one photon per port.
  auto hom = apply_beam_splitter(fock_number_state(basis, {1, 1}), 0, 1, h, cplx(0.0, 1.0) * h);
  CHECK(std::norm(hom.amplitudes()[basis.index(std::vector<int>{1, 1})]) < 1e-24);

  // Heisenberg map on coherent input: b -> T b + R v, v -> R b + T v.
  FockBasis wide(2, 20);
  const cplx t = std::polar(0.6, 0.3);
  const cplx r = std::polar(0.8, 0.3 + M_PI / 2);
  const cplx beta(0.9, 0.5);
  const cplx gamma(-0.3, 0.7);
  std::vector<cplx> alphas{beta, gamma};
  auto s = apply_beam_splitter(product_coherent_state(wide, alphas), 0, 1, t, r);
  CHECK(std::abs(moment(s, {{0, false}}) - (t * beta + r * gamma)) < 1e-9);
  CHECK(std::abs(moment(s, {{1, false}}) - (r * beta + t * gamma)) < 1e-9);
}

TEST_CASE("loss channel") {
  FockBasis basis(1, 16);
  auto c = coherent_state(basis, 0, std::sqrt(0.5));
  auto same = apply_loss(c, 0, 1.0);
  CHECK(same.amplitudes() == c.amplitudes());
  auto lossy = apply_loss(c, 0, 0.4);
  CHECK(std::abs(mean_photon_number(lossy, 0) - 0.2) < 1e-10);
  CHECK(std::abs(total_probability(lossy) - 1.0) < 1e-10);
  auto dark = apply_loss(c, 0, 0.0);
  std::vector<int> modes{0};
  auto dist = photon_number_distribution(dark, modes);
  CHECK(std::abs(dist[0] - dark.norm_squared()) < 1e-14);
  CHECK_THROWS_AS(apply_loss(c, 0, 1.5), std::invalid_argument);

  // A number state keeps its binomial statistics.
  auto three = fock_number_state(basis, {3});
  auto d3 = photon_number_distribution(apply_loss(three, 0, 0.25), modes);
  CHECK(d3[0] == doctest::Approx(std::pow(0.75, 3)).epsilon(1e-12));
  CHECK(d3[1] == doctest::Approx(3 * 0.25 * 0.75 * 0.75).epsilon(1e-12));
  CHECK(d3[3] == doctest::Approx(std::pow(0.25, 3)).epsilon(1e-12));
}

TEST_CASE("trace out and append round trip") {
  FockBasis basis(2, 8);
  auto s = apply_two_mode_squeezer(FockState::vacuum(basis), 0, 1, 0.25);
  auto reduced = trace_out(s, 0);
  CHECK(reduced.basis().modes() == 1);
  CHECK(mean_photon_number(reduced, 0) == doctest::Approx(mean_photon_number(s, 1)).epsilon(1e-12));
  auto widened = append_vacuum_mode(reduced);
  CHECK(mean_photon_number(widened, 1) == doctest::Approx(0.0));
  CHECK(mean_photon_number(widened, 0) == doctest::Approx(mean_photon_number(s, 1)).epsilon(1e-12));
  CHECK_THROWS(FockState(basis, std::vector<cplx>(3)));
  CHECK_THROWS(reduced.amplitudes());
}

TEST_CASE("random channel sequences preserve probability and photon bookkeeping") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    FockBasis basis(3, 10);
    std::vector<cplx> alphas{std::polar(0.8 * u(rng), 6.28 * u(rng)), 0.0, 0.0};
    FockState s = product_coherent_state(basis, alphas);
    s = apply_two_mode_squeezer(s, 0, 1, std::polar(0.15 * u(rng), 6.28 * u(rng)));
    double before = mean_photon_number(s, 1) + mean_photon_number(s, 2);
    const double tt = u(rng);
    const double phi = 6.28 * u(rng);
    const cplx t = std::polar(std::sqrt(tt), phi);
    const cplx r = std::polar(std::sqrt(1 - tt), phi + M_PI / 2);
    auto split = apply_beam_splitter(s, 1, 2, t, r);
    double after = mean_photon_number(split, 1) + mean_photon_number(split, 2);
    CHECK(std::abs(before - after) < 1e-10);
    CHECK(std::abs(total_probability(split) - 1.0) < 1e-10);

    const double eta1 = u(rng);
    const double eta2 = u(rng);
    auto l1 = apply_loss(apply_loss(split, 1, eta1), 2, eta2);
    auto l2 = apply_loss(apply_loss(split, 2, eta2), 1, eta1);
    CHECK(std::abs(total_probability(l1) - 1.0) < 1e-10);
    CHECK(std::abs(mean_photon_number(l1, 1) - eta1 * mean_photon_number(split, 1)) < 1e-10);
    cplx c1 = moment(l1, {{1, true}, {1, false}, {2, true}, {2, false}});
    cplx c2 = moment(l2, {{1, true}, {1, false}, {2, true}, {2, false}});
    CHECK(std::abs(c1 - c2) < 1e-12);
  }
}
