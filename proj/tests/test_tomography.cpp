#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qps/operators.hpp"
#include "qps/states.hpp"
#include "qps/su2.hpp"
#include "qps/tomography.hpp"

using qps::Operator;
using qps::Vec;
namespace tomo = qps::tomography;
namespace su2 = qps::su2;

TEST_CASE("exact projection records hold the rotated-basis populations") {
  std::mt19937_64 rng(71);
  double j = 1.0;
  Operator rho = qps::random_density(3, rng);
  double phi = 0.8, theta = 1.4;

  auto rec = tomo::simulate_projections(rho, j, phi, theta);
  REQUIRE(rec.probabilities.size() == 3);
  CHECK(rec.shots == 0);

  Operator u = su2::euler_rotation(j, phi, theta, 0.0);
  Operator rotated = u.adjoint() * rho * u;
  double total = 0.0;
  for (int m = 0; m < 3; ++m) {
    CHECK(rec.probabilities[m] ==
          doctest::Approx(rotated(m, m).real()).scale(1).epsilon(1e-12));
    total += rec.probabilities[m];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("projection parities assemble the phase-space value") {
  std::mt19937_64 rng(72);
  for (double j : {0.5, 1.5}) {
    int d = su2::dim_of(j);
    Operator rho = qps::random_density(d, rng);
    Operator gen = su2::parity(j, 0.0);
    std::vector<double> pdiag(d);
    for (int m = 0; m < d; ++m) pdiag[m] = gen(m, m).real();

    for (double theta : {0.3, 2.0})
      for (double phi : {0.0, 3.3}) {
        auto rec = tomo::simulate_projections(rho, j, phi, theta);
        double got = tomo::wigner_from_projections(rec, pdiag);
        double want = su2::evaluate(rho, j, 0.0, theta, phi).real();
        CHECK(got == doctest::Approx(want).scale(1).epsilon(1e-11));
      }
  }
}

TEST_CASE("finite-shot records are normalized frequencies with fixed seeds") {
  Operator rho = qps::states::spin_coherent(1.0, 1.1, 0.5);
  auto rec = tomo::simulate_projections(rho, 1.0, 0.5, 1.1, 0.0, 5000, 13);
  CHECK(rec.shots == 5000);
  double total = 0.0;
  for (double p : rec.probabilities) {
    total += p;
    // every frequency is a multiple of 1/shots
    CHECK(std::abs(p * 5000 - std::round(p * 5000)) < 1e-9);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  auto rerun = tomo::simulate_projections(rho, 1.0, 0.5, 1.1, 0.0, 5000, 13);
  for (size_t m = 0; m < rec.probabilities.size(); ++m)
    CHECK(rerun.probabilities[m] == rec.probabilities[m]);
}

TEST_CASE("the standard net has (4j+2)^2 nodes inside the open domain") {
  for (double j : {0.5, 1.0, 2.0}) {
    auto net = tomo::standard_net(j);
    std::size_t side = static_cast<std::size_t>(std::lround(4 * j + 2));
    CHECK(net.size() == side * side);
    for (const auto& gnode : net) {
      CHECK(gnode.theta > 0.0);
      CHECK(gnode.theta <= qps::pi);
      CHECK(gnode.phi >= 0.0);
      CHECK(gnode.phi < 2 * qps::pi);
    }
  }
  CHECK(tomo::standard_net(0.5).size() == 16);
}

TEST_CASE("reconstruction from the standard net recovers random states") {
  std::mt19937_64 rng(74);
  for (double j : {0.5, 1.0, 1.5, 2.0}) {
    int d = su2::dim_of(j);
    for (int trial = 0; trial < 5; ++trial) {
      Operator rho = qps::random_density(d, rng);
      auto samples = tomo::sample_standard_net(rho, j, 0.0);
      auto rep = tomo::reconstruct_from_grid(j, samples, 0.0);
      CAPTURE(j);
      CHECK((rep.rho - rho).norm() < 1e-9);
      CHECK(rep.fit_residual < 1e-9);
      CHECK(rep.hermiticity_residual < 1e-9);
      CHECK(rep.condition_number < 100.0);
      CHECK(rep.trace_renormalization < 1e-9);
    }
  }
}

TEST_CASE("reconstruction works from Husimi-side samples") {
  std::mt19937_64 rng(75);
  double j = 1.0;
  Operator rho = qps::random_density(3, rng);
  auto samples = tomo::sample_standard_net(rho, j, -1.0);
  auto rep = tomo::reconstruct_from_grid(j, samples, -1.0);
  CHECK((rep.rho - rho).norm() < 1e-9);
}

TEST_CASE("reconstruction degrades gracefully under sampling noise") {
  std::mt19937_64 rng(76);
  double j = 1.0;
  Operator rho = qps::states::spin_coherent(j, 0.7, 2.0);
  auto samples = tomo::sample_standard_net(rho, j, 0.0);
  std::normal_distribution<double> noise(0.0, 1e-4);
  for (auto& gnode : samples) gnode.value += noise(rng);

  auto rep = tomo::reconstruct_from_grid(j, samples, 0.0);
  CHECK((rep.rho - rho).norm() < 1e-2);
  CHECK(std::abs(rep.rho.trace().real() - 1.0) < 1e-12);
  CHECK(qps::hermiticity_defect(rep.rho) < 1e-12);
}

TEST_CASE("underdetermined grids are rejected") {
  double j = 1.0;
  std::vector<tomo::GridSample> few = {{0.3, 0.1, 0.5}, {1.0, 2.0, 0.4}};
  CHECK_THROWS_AS(tomo::reconstruct_from_grid(j, few, 0.0), qps::Error);
}
