#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qps/foundation.hpp"
#include "qps/metrics.hpp"
#include "qps/operators.hpp"
#include "qps/states.hpp"
#include "qps/su2.hpp"

using oracle::cd;
using qps::Family;
using qps::KernelSpec;
using qps::Operator;
using qps::Vec;
namespace mt = qps::metrics;

namespace {

KernelSpec su2_spec(double j, double s = 0.0) {
  KernelSpec spec;
  spec.family = Family::SU2;
  spec.j = j;
  spec.s = s;
  return spec;
}

}  // namespace

TEST_CASE("matrix metrics agree with spectral oracles") {
  std::mt19937_64 rng(61);
  for (int d : {2, 3, 5})
    for (int trial = 0; trial < 8; ++trial) {
      Operator a = qps::random_density(d, rng);
      Operator b = qps::random_density(d, rng);
      CHECK(mt::purity(a) == doctest::Approx(oracle::purity(a)).epsilon(1e-12));
      CHECK(mt::trace_distance(a, b) ==
            doctest::Approx(oracle::trace_distance(a, b)).epsilon(1e-11));
    }
}

TEST_CASE("phase-space purity and overlap integrals match the matrix values") {
  std::mt19937_64 rng(62);
  for (double j : {0.5, 1.0, 1.5}) {
    int d = qps::su2::dim_of(j);
    auto frame = qps::make_frame(su2_spec(j));
    Operator a = qps::random_density(d, rng);
    Operator b = qps::random_density(d, rng);

    auto w_a = qps::evaluate_frame(*frame, a, 0.0);
    CHECK(mt::purity_from_samples(*frame, w_a) ==
          doctest::Approx(oracle::purity(a)).epsilon(1e-10));

    for (double s : {0.0, -1.0, 0.4}) {
      mt::SampledFunction f1{s, qps::evaluate_frame(*frame, a, s)};
      mt::SampledFunction f2{-s, qps::evaluate_frame(*frame, b, -s)};
      CHECK(mt::fidelity_ps(*frame, f1, f2) ==
            doctest::Approx(oracle::overlap(a, b)).epsilon(1e-10));
    }

    mt::SampledFunction bad1{0.3, {}}, bad2{0.4, {}};
    CHECK_THROWS_AS(mt::fidelity_ps(*frame, bad1, bad2), qps::Error);
  }
}

TEST_CASE("qubit trace distance through phase space matches the spectral value") {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 10; ++trial) {
    Operator a = qps::random_density(2, rng);
    Operator b = qps::random_density(2, rng);
    CHECK(mt::trace_distance_qubit_ps(a, b) ==
          doctest::Approx(oracle::trace_distance(a, b)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(mt::trace_distance_qubit_ps(qps::states::maximally_mixed(3),
                                              qps::states::maximally_mixed(3)),
                  qps::Error);
}

TEST_CASE("pauli vector is the normalized string expansion") {
  Operator bell = qps::states::bell(0);
  auto f = mt::pauli_vector(bell);
  REQUIRE(f.size() == 16);
  // nonzero strings of Phi+: II, XX, YY (negative), ZZ, each 1/2 after
  // normalization by sqrt(4)
  auto idx = [](int a, int b) { return a * 4 + b; };
  CHECK(f[idx(0, 0)] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f[idx(1, 1)] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f[idx(2, 2)] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(f[idx(3, 3)] == doctest::Approx(0.5).epsilon(1e-12));
  double sq = 0.0;
  for (double v : f) sq += v * v;
  CHECK(sq == doctest::Approx(1.0).epsilon(1e-12));  // purity of a pure state

  std::mt19937_64 rng(64);
  Operator rho = qps::random_density(4, rng);
  auto fr = mt::pauli_vector(rho);
  double sum = 0.0;
  for (double v : fr) sum += v * v;
  CHECK(sum == doctest::Approx(oracle::purity(rho)).epsilon(1e-12));
}

TEST_CASE("discrete fidelity contracts the dual pair of Pauli vectors") {
  std::mt19937_64 rng(65);
  Operator target = qps::states::ghz(3);
  Operator actual = 0.85 * target + 0.15 * qps::states::maximally_mixed(8);
  double want = (target * actual).trace().real();
  CHECK(mt::fidelity_discrete(mt::pauli_vector(actual), mt::pauli_vector(target)) ==
        doctest::Approx(want).epsilon(1e-11));
  // non-pure reference is rejected
  CHECK_THROWS_AS(
      mt::fidelity_discrete(mt::pauli_vector(actual), mt::pauli_vector(qps::states::maximally_mixed(8))),
      qps::Error);
}

TEST_CASE("direct fidelity estimation is exact in the large-sample stabilizer limit") {
  Operator bell = qps::states::bell(0);
  auto run = mt::dfe_sample(bell, bell, 4000, 19);
  CHECK(run.estimate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(run.std_error < 1e-9);
  // stabilizer weights concentrate on one magnitude
  CHECK(run.min_sampled_weight == doctest::Approx(run.max_sampled_weight).epsilon(1e-12));

  Operator depol = 0.9 * bell + 0.1 * qps::states::maximally_mixed(4);
  auto run2 = mt::dfe_sample(bell, depol, 200000, 7);
  double truth = (bell * depol).trace().real();
  CHECK(std::abs(run2.estimate - truth) < 4.0 * run2.std_error + 1e-12);

  auto rerun = mt::dfe_sample(bell, depol, 200000, 7);
  CHECK(rerun.estimate == run2.estimate);
}

TEST_CASE("negative volume of the spin-up qubit matches the closed form") {
  Operator up = qps::states::spin_up(0.5);
  double got = mt::negativity_volume(up, 0.5, 1e-9);
  CHECK(got == doctest::Approx(oracle::qubit_up_negativity()).epsilon(1e-7));

  // positive-definite functions have zero negative volume
  CHECK(mt::negativity_volume(qps::states::maximally_mixed(2), 0.5, 1e-9) ==
        doctest::Approx(0.0).scale(1).epsilon(1e-9));
}

TEST_CASE("discrete negative volume reads the lattice table") {
  // Pauli eigenstates sit on lattice lines: their tables stay non-negative.
  CHECK(mt::negativity_volume_discrete(qps::states::spin_up(0.5)) ==
        doctest::Approx(0.0).scale(1).epsilon(1e-14));
  CHECK(mt::negativity_volume_discrete(qps::states::maximally_mixed(2)) ==
        doctest::Approx(0.0).scale(1).epsilon(1e-14));

  // Bloch vector opposite the (0,0) lattice direction -(1,1,1)/sqrt(3):
  // table (1 - sqrt(3))/2 once, (1 + 1/sqrt(3))/2 three times, so the
  // negative volume is (sqrt(3) - 1)/4.
  double theta = std::acos(-1.0 / std::sqrt(3.0));
  Operator magic = qps::states::spin_coherent(0.5, theta, 3.0 * qps::pi / 4.0);
  CHECK(mt::negativity_volume_discrete(magic) ==
        doctest::Approx((std::sqrt(3.0) - 1.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("Wehrl entropy of the maximally mixed qubit is ln 2") {
  CHECK(mt::wehrl_entropy(qps::states::maximally_mixed(2), 0.5) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("Wehrl entropy of a coherent state matches dense quadrature") {
  // Q(Omega) = cos^{4j}(geodesic/2); reference value from a fine product rule
  // computed right here, independent of the adaptive integrator.
  double j = 1.0;
  Operator rho = qps::states::spin_coherent(j, 0.0, 0.0);
  auto grid = qps::sphere_quadrature(160, 2.0 * j + 1.0);
  double want = qps::integrate(grid, [&](double t, double) {
    double q = std::pow(std::cos(0.5 * t), 4.0 * j);
    return q > 0.0 ? -q * std::log(q) : 0.0;
  });
  CHECK(mt::wehrl_entropy(rho, j) == doctest::Approx(want).epsilon(1e-7));
}

TEST_CASE("first angular moments return the spin expectations") {
  std::mt19937_64 rng(66);
  for (double j : {0.5, 1.5}) {
    int d = qps::su2::dim_of(j);
    Operator rho = qps::random_density(d, rng);
    double jx = (rho * qps::spin_jx(j)).trace().real();
    double jy = (rho * qps::spin_jy(j)).trace().real();
    double jz = (rho * qps::spin_jz(j)).trace().real();
    CHECK(mt::expectation_from_moments(rho, j, mt::SpinAxis::X) ==
          doctest::Approx(jx).scale(1).epsilon(1e-10));
    CHECK(mt::expectation_from_moments(rho, j, mt::SpinAxis::Y) ==
          doctest::Approx(jy).scale(1).epsilon(1e-10));
    CHECK(mt::expectation_from_moments(rho, j, mt::SpinAxis::Z) ==
          doctest::Approx(jz).scale(1).epsilon(1e-10));
  }
}
