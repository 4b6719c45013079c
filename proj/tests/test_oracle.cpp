#include <doctest.h>

#include <cmath>
#include <random>

#include "entdyn/oracle.hpp"
#include "test_support.hpp"

using namespace entdyn;

TEST_CASE("mode_propagator: t = 0 is the identity") {
  const auto u = mode_propagator({1.3, -0.7}, 0.0);
  CHECK((u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("mode_propagator: hy = 0 is diagonal with phases exp(-/+ i hz t)") {
  using namespace std::complex_literals;
  const double hz = 0.9, t = 2.4;
  const auto u = mode_propagator({hz, 0.0}, t);
  CHECK(std::abs(u(0, 0) - std::exp(-1i * hz * t)) < 1e-13);
  CHECK(std::abs(u(1, 1) - std::exp(1i * hz * t)) < 1e-13);
  CHECK(std::abs(u(0, 1)) < 1e-15);
  CHECK(std::abs(u(1, 0)) < 1e-15);
}

TEST_CASE("mode_propagator is unitary for random inputs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> h(-5.0, 5.0);
  std::uniform_real_distribution<double> tdist(0.0, 25.0);
  for (int rep = 0; rep < 100; ++rep) {
    const auto u = mode_propagator({h(rng), h(rng)}, tdist(rng));
    CHECK((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("oracle_mode_factor: trivial limits, symmetry, hy flip invariance") {
  const ModeHamiltonian a{0.4, -1.1}, b{-2.0, 0.3};
  for (double t : {0.0, 1.7, 9.2}) CHECK(oracle_mode_factor(a, a, t) ==
                                         doctest::Approx(1.0).epsilon(1e-13));
  CHECK(oracle_mode_factor(a, b, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  for (double t : {0.6, 4.4}) {
    CHECK(oracle_mode_factor(a, b, t) == doctest::Approx(oracle_mode_factor(b, a, t))
                                             .epsilon(1e-13));
    const ModeHamiltonian af{a.hz, -a.hy}, bf{b.hz, -b.hy};
    CHECK(oracle_mode_factor(a, b, t) == doctest::Approx(oracle_mode_factor(af, bf, t))
                                             .epsilon(1e-13));
  }
}

TEST_CASE("assemble_werner_density: P = 0 is the maximally mixed state") {
  for (int d : {2, 3, 4}) {
    std::vector<double> factors(d * (d - 1) / 2, 0.5);
    const auto rho = assemble_werner_density(WernerParams{0.0, d}, factors);
    CHECK((rho - Eigen::MatrixXcd::Identity(d * d, d * d) / (d * d))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    CHECK(negativity_eigen_oracle(rho, d) == 0.0);
  }
}

TEST_CASE("assemble_pure_density: undamped Bell pair is a rank-1 projector") {
  const auto rho = assemble_pure_density(maximally_entangled(2), {1.0});
  CHECK((rho * rho - rho).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(rho.trace().real() - 1.0) < 1e-14);
}

TEST_CASE("assembled matrices are Hermitian, unit trace, PSD") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + rep % 3;
    const auto factors = entdyn_test::random_factor_set(rng, d);
    const auto rho = assemble_werner_density(WernerParams{u(rng), d}, factors);
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("maximally entangled qutrit pair has negativity 1") {
  const auto rho = assemble_pure_density(maximally_entangled(3), {1.0, 1.0, 1.0});
  CHECK(negativity_eigen_oracle(rho, 3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qutrit Werner eigen-negativity matches the closed form") {
  const double p = 0.8;
  std::vector<double> factors(3, 0.9);
  const auto rho = assemble_werner_density(WernerParams{p, 3}, factors);
  const double closed = negativity_werner_general(p, 3, factors);
  CHECK(std::abs(negativity_eigen_oracle(rho, 3) - closed) <= 1e-10);
}

TEST_CASE("negativity_eigen_oracle rejects invalid density matrices") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(4, 4);
  bad(0, 1) = 1.0; // not Hermitian
  CHECK_THROWS_AS(negativity_eigen_oracle(bad, 2), std::invalid_argument);

  Eigen::MatrixXcd scaled = Eigen::MatrixXcd::Identity(4, 4); // trace 4
  CHECK_THROWS_AS(negativity_eigen_oracle(scaled, 2), std::invalid_argument);

  Eigen::MatrixXcd indefinite = Eigen::MatrixXcd::Identity(4, 4) / 2.0;
  indefinite(3, 3) = -0.5;
  CHECK_THROWS_AS(negativity_eigen_oracle(indefinite, 2), std::invalid_argument);

  CHECK_THROWS_AS(negativity_eigen_oracle(Eigen::MatrixXcd::Identity(3, 3), 2),
                  std::invalid_argument);
}

TEST_CASE("full-product oracle agrees with the closed-form product") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> lam(0.0, 4.0);
  std::uniform_real_distribution<double> g(0.0, 2.0);
  std::uniform_real_distribution<double> tdist(0.0, 20.0);
  const int sizes[] = {11, 51, 101};
  for (int rep = 0; rep < 30; ++rep) {
    ChainConfig cfg{sizes[rep % 3], lam(rng), g(rng)};
    auto bs = branch_lambdas(cfg, 2);
    auto s0 = build_spectrum(cfg, bs.lambdas[0]);
    auto s1 = build_spectrum(cfg, bs.lambdas[1]);
    const double t = tdist(rng);
    CHECK(std::abs(factor_modulus(s0, s1, t) -
                   oracle_factor_modulus(cfg, bs.lambdas[0], bs.lambdas[1], t)) <= 1e-8);
  }
}
