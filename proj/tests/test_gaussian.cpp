#include "oracles.hpp"
#include "skr/errors.hpp"
#include "skr/gaussian.hpp"

#include <doctest.h>

#include <random>

using namespace skr;
using doctest::Approx;

namespace {

double total_photons(const GaussianState& s) {
  return (s.cov().trace() - static_cast<double>(s.cov().rows())) / 4.0;
}

// Random physical state: thermal modes scrambled by random beamsplitters.
GaussianState random_state(std::mt19937_64& rng, std::size_t modes) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GaussianState s = thermal_state(3.0 * u(rng));
  for (std::size_t m = 1; m < modes; ++m) s = direct_sum(s, thermal_state(3.0 * u(rng)));
  s = direct_sum(s, tmsv_state(5.0 * u(rng)));
  for (int k = 0; k < 6; ++k) {
    const auto a = static_cast<std::size_t>(rng() % s.n_modes());
    auto b = static_cast<std::size_t>(rng() % s.n_modes());
    if (a == b) b = (a + 1) % s.n_modes();
    s = beamsplitter(s, a, b, u(rng));
  }
  return s;
}

}  // namespace

TEST_SUITE("gaussian") {

TEST_CASE("g_entropy reference values") {
  CHECK(g_entropy(0.0) == 0.0);
  CHECK(g_entropy(1.0) == 2.0);
  CHECK(g_entropy(-1e-13) == 0.0);
  CHECK_THROWS_AS(g_entropy(-1e-6), DomainError);
  // 40-digit evaluations of (x+1)log2(x+1) - x log2(x).
  const std::pair<double, double> table[] = {
      {1e-8, 2.801811980720134e-07}, {0.3, 1.0131547884797105}, {2.5, 3.0209219899832087},
      {10.0, 4.834466856136646},     {77.0, 7.718809437747965}, {1e5, 18.052342728776935}};
  for (const auto& [x, ref] : table) {
    CHECK(g_entropy(x) == Approx(ref).epsilon(1e-14));
    // The literal two-term form loses ~x eps to cancellation.
    CHECK(oracle::g(x) == Approx(ref).epsilon(1e-15 * std::max(1.0, x)));
  }
}

TEST_CASE("g_entropy large arguments stay accurate") {
  // g(x) ~ log2(x) + 1/ln2 for large x.
  const double x = 1e12;
  CHECK(g_entropy(x) == Approx(std::log2(x) + 1.0 / std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("g_entropy is nonnegative, increasing and concave") {
  const double h = 1e-3;
  for (double x = h; x < 50.0; x += 0.37) {
    CHECK(g_entropy(x) >= 0.0);
    CHECK(g_entropy(x + h) > g_entropy(x));
    CHECK(g_entropy(x + h) - 2.0 * g_entropy(x) + g_entropy(x - h) <= 1e-8);
  }
}

TEST_CASE("tmsv covariance") {
  const auto vac = tmsv_state(0.0);
  CHECK(vac.cov().isApprox(Eigen::MatrixXd::Identity(4, 4)));
  const auto s = tmsv_state(1.0);
  for (int i = 0; i < 4; ++i) CHECK(s.cov()(i, i) == Approx(3.0));
  CHECK(s.cov()(0, 2) == Approx(2.0 * std::sqrt(2.0)));
  CHECK(s.cov()(1, 3) == Approx(-2.0 * std::sqrt(2.0)));
  CHECK(s.cov()(0, 3) == 0.0);
  CHECK_THROWS_AS(tmsv_state(-0.1), DomainError);
}

TEST_CASE("thermal state") {
  CHECK(thermal_state(0.0).cov().isApprox(Eigen::MatrixXd::Identity(2, 2)));
  CHECK(thermal_state(0.5).cov().isApprox(2.0 * Eigen::MatrixXd::Identity(2, 2)));
  CHECK_THROWS_AS(thermal_state(-1.0), DomainError);
  for (double n : {0.0, 0.2, 4.0, 1e3}) {
    CHECK(von_neumann_entropy(thermal_state(n)) == Approx(g_entropy(n)).epsilon(1e-12));
    CHECK(thermal_state(n).mean_photon_number(0) == Approx(n));
  }
}

TEST_CASE("covariance validation") {
  Eigen::MatrixXd odd = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(GaussianState{odd}, DomainError);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(2, 2);
  asym(0, 1) = 1e-6;
  CHECK_THROWS_AS(GaussianState{asym}, DomainError);
  Eigen::MatrixXd nearly = Eigen::MatrixXd::Identity(2, 2);
  nearly(0, 1) = 1e-14;
  const GaussianState s{nearly};
  CHECK(s.cov()(0, 1) == s.cov()(1, 0));
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(GaussianState{bad}, DomainError);
  CHECK(s.mean().isZero());
}

TEST_CASE("beamsplitter limits") {
  const auto s = direct_sum(thermal_state(2.0), thermal_state(0.5));
  CHECK(beamsplitter(s, 0, 1, 1.0).cov().isApprox(s.cov()));
  const auto swapped = beamsplitter(s, 0, 1, 0.0);
  CHECK(swapped.mean_photon_number(0) == Approx(0.5));
  CHECK(swapped.mean_photon_number(1) == Approx(2.0));
  CHECK_THROWS_AS(beamsplitter(s, 0, 1, 1.5), DomainError);
  CHECK_THROWS_AS(beamsplitter(s, 0, 0, 0.5), DomainError);
  CHECK_THROWS_AS(beamsplitter(s, 0, 2, 0.5), DomainError);
}

TEST_CASE("beamsplitter mixes signal with thermal noise") {
  const double mu = 7.0, n_e = 1.3, eta = 0.35;
  const auto s = beamsplitter(direct_sum(thermal_state(mu), thermal_state(n_e)), 0, 1, eta);
  CHECK(s.cov()(0, 0) == Approx(2.0 * (eta * mu + (1.0 - eta) * n_e) + 1.0).epsilon(1e-12));
}

TEST_CASE("beamsplitter conserves photon number") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_state(rng, 3);
    const auto t = beamsplitter(s, 1, 3, 0.37);
    CHECK(std::abs(total_photons(t) - total_photons(s)) <= 1e-10 * std::max(1.0, total_photons(s)));
    CHECK(t.is_physical());
  }
}

TEST_CASE("partial_state") {
  const auto s = direct_sum(tmsv_state(2.0), thermal_state(0.25));
  const std::vector<std::size_t> all = {0, 1, 2};
  CHECK(partial_state(s, all).cov().isApprox(s.cov()));
  const auto one = partial_state(s, {1});
  CHECK(one.cov().isApprox(5.0 * Eigen::MatrixXd::Identity(2, 2)));
  const auto perm = partial_state(s, {2, 0});
  CHECK(perm.cov()(0, 0) == Approx(1.5));
  CHECK(perm.cov()(2, 2) == Approx(5.0));
  CHECK_THROWS_AS(partial_state(s, std::span<const std::size_t>{}), DomainError);
  CHECK_THROWS_AS(partial_state(s, {3}), DomainError);
}

TEST_CASE("symplectic spectrum") {
  for (double nu : symplectic_eigenvalues(vacuum_state(4)).eigenvalues) CHECK(nu == Approx(1.0));
  CHECK(symplectic_eigenvalues(thermal_state(3.0)).eigenvalues[0] == Approx(7.0));
  for (double mu : {0.1, 1.0, 10.0}) {
    for (double nu : symplectic_eigenvalues(tmsv_state(mu)).eigenvalues) {
      CHECK(nu == Approx(1.0).epsilon(1e-9));
    }
  }
  // Rounding the entries of TMSV(1e6) already moves nu by ~eps (2mu)^2 ~ 1e-3;
  // the state must still count as physical.
  const auto big = tmsv_state(1e6);
  CHECK(big.is_physical());
  for (double nu : symplectic_eigenvalues(big).eigenvalues) CHECK(nu - 1.0 <= 2e-3);
  const auto mixed = direct_sum(thermal_state(4.0), thermal_state(1.0));
  const auto nus = symplectic_eigenvalues(beamsplitter(mixed, 0, 1, 0.3)).eigenvalues;
  REQUIRE(nus.size() == 2);
  CHECK(nus[0] == Approx(9.0));
  CHECK(nus[1] == Approx(3.0));
}

TEST_CASE("symplectic spectrum agrees with the determinant oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_state(rng, 2);
    const auto two = partial_state(s, {0, 2});
    const auto nus = symplectic_eigenvalues(two).eigenvalues;
    const auto ref = oracle::spectrum_2mode(Eigen::Matrix4d(two.cov()));
    CHECK(nus[0] == Approx(ref[0]).epsilon(1e-9));
    CHECK(nus[1] == Approx(std::max(ref[1], 1.0)).epsilon(1e-9));
    CHECK(von_neumann_entropy(two) ==
          Approx(oracle::entropy_2mode(Eigen::Matrix4d(two.cov()))).epsilon(1e-8).scale(1));
  }
}

TEST_CASE("unphysical covariance is rejected") {
  const GaussianState squeezed_too_far{0.5 * Eigen::MatrixXd::Identity(2, 2)};
  CHECK_FALSE(squeezed_too_far.is_physical());
  CHECK_THROWS_AS(symplectic_eigenvalues(squeezed_too_far), DomainError);
}

TEST_CASE("entropy of pure constructions vanishes") {
  for (double mu : {0.1, 1.0, 10.0}) {
    const auto s = tmsv_state(mu);
    CHECK(von_neumann_entropy(s) <= 1e-9);
    CHECK(von_neumann_entropy(partial_state(s, {0})) == Approx(g_entropy(mu)).epsilon(1e-9));
    CHECK(von_neumann_entropy(partial_state(s, {1})) == Approx(g_entropy(mu)).epsilon(1e-9));
  }
  GaussianState s = direct_sum(direct_sum(tmsv_state(3.0), tmsv_state(0.7)), vacuum_state(2));
  s = beamsplitter(s, 1, 2, 0.3);
  s = beamsplitter(s, 2, 4, 0.8);
  s = beamsplitter(s, 0, 5, 0.5);
  CHECK(von_neumann_entropy(s) <= 1e-9);
}

TEST_CASE("heterodyne conditioning") {
  const auto product = direct_sum(thermal_state(2.0), thermal_state(1.0));
  CHECK(heterodyne_condition(product, 1).cov().isApprox(thermal_state(2.0).cov()));
  for (double mu : {0.1, 1.0, 10.0, 1e4}) {
    const auto s = tmsv_state(mu);
    for (std::size_t m : {0u, 1u}) {
      const auto c = heterodyne_condition(s, m);
      CHECK(c.cov().isApprox(Eigen::MatrixXd::Identity(2, 2), 1e-9));
      CHECK(von_neumann_entropy(c) <= 1e-9);
    }
  }
  CHECK_THROWS_AS(heterodyne_condition(thermal_state(1.0), 0), DomainError);
  CHECK_THROWS_AS(heterodyne_condition(product, 2), DomainError);
}

TEST_CASE("conditioning never increases entropy") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = random_state(rng, 2);
    const auto measured = static_cast<std::size_t>(rng() % s.n_modes());
    std::vector<std::size_t> rest;
    for (std::size_t m = 0; m < s.n_modes(); ++m) {
      if (m != measured) rest.push_back(m);
    }
    const double before = von_neumann_entropy(partial_state(s, rest));
    const double after = von_neumann_entropy(heterodyne_condition(s, measured));
    CHECK(after <= before + 1e-9);
  }
}

TEST_CASE("conditioning on a large-mu parent stays physical") {
  // Entries ~2e7 cancel to O(1) in the Schur complement.
  GaussianState s = direct_sum(tmsv_state(6.3e6), vacuum_state(1));
  s = beamsplitter(s, 1, 2, 0.0026);
  const auto c = heterodyne_condition(partial_state(s, {0, 2}), 0);
  CHECK(c.is_physical());
  CHECK_NOTHROW(von_neumann_entropy(c));
}

}  // TEST_SUITE
