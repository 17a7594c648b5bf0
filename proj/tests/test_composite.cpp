#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qps/composite.hpp"
#include "qps/hw.hpp"
#include "qps/operators.hpp"
#include "qps/states.hpp"
#include "qps/su2.hpp"
#include "qps/sun.hpp"
#include "qps/wootters.hpp"

using oracle::cd;
using qps::Family;
using qps::KernelSpec;
using qps::Operator;
using qps::Vec;
namespace cp = qps::composite;

namespace {

KernelSpec su2_spec(double j, double s = 0.0) {
  KernelSpec spec;
  spec.family = Family::SU2;
  spec.j = j;
  spec.s = s;
  return spec;
}

}  // namespace

TEST_CASE("tensor kernels multiply factor values on product states") {
  std::mt19937_64 rng(4);
  Operator rho_a = qps::random_density(2, rng);
  Operator rho_b = qps::random_density(3, rng);
  Operator rho = qps::kron(rho_a, rho_b);

  std::vector<KernelSpec> specs = {su2_spec(0.5), su2_spec(1.0)};
  cp::CompositePoint point = {cp::FactorPoint::at(0.7, 1.9), cp::FactorPoint::at(2.1, 0.3)};

  Operator k = cp::tensor_kernel(specs, point);
  CHECK(std::abs(k.trace() - cd(1, 0)) < 1e-12);
  REQUIRE(k.rows() == 6);

  double joint = cp::evaluate(rho, specs, point);
  double wa = qps::su2::evaluate(rho_a, 0.5, 0.0, 0.7, 1.9).real();
  double wb = qps::su2::evaluate(rho_b, 1.0, 0.0, 2.1, 0.3).real();
  CHECK(joint == doctest::Approx(wa * wb).epsilon(1e-12));
}

TEST_CASE("mixed-family factors compose") {
  std::mt19937_64 rng(9);
  int cutoff = 12;
  Operator rho_cv = Operator::Zero(cutoff + 1, cutoff + 1);
  rho_cv.topLeftCorner(3, 3) = qps::random_density(3, rng);
  Operator rho_q = qps::random_density(2, rng);
  Operator rho = qps::kron(rho_cv, rho_q);

  KernelSpec hw_spec;
  hw_spec.family = Family::HW;
  hw_spec.cutoff = cutoff;
  KernelSpec wt_spec;
  wt_spec.family = Family::Wootters;

  std::vector<KernelSpec> specs = {hw_spec, wt_spec};
  cd alpha(0.4, -0.2);
  cp::CompositePoint point = {cp::FactorPoint::at(alpha), cp::FactorPoint::at(1, 0)};
  double joint = cp::evaluate(rho, specs, point);
  double w_cv = qps::hw::wigner(rho_cv, alpha);
  double w_q = qps::wootters::wigner(rho_q)[2];  // (z, x) = (1, 0)
  CHECK(joint == doctest::Approx(w_cv * w_q).epsilon(1e-10));

  // arity and point-kind mismatches are rejected
  CHECK_THROWS_AS(cp::evaluate(rho, specs, {point[0]}), qps::Error);
  CHECK_THROWS_AS(
      cp::tensor_kernel(specs, {cp::FactorPoint::at(0.1, 0.2), cp::FactorPoint::at(1, 0)}),
      qps::Error);
}

TEST_CASE("hybrid multiqubit kernel is the rotated SU(2^n) kernel") {
  std::mt19937_64 rng(23);
  for (int n : {1, 2, 3}) {
    std::vector<cp::EulerPoint> pts(n);
    std::uniform_real_distribution<double> u(0.0, qps::pi);
    for (auto& p : pts) {
      p.theta = u(rng);
      p.phi = 2.0 * u(rng);
    }
    for (double s : {0.0, -1.0}) {
      Operator k = cp::hybrid_multiqubit_kernel(n, pts, s);
      // same kernel through the SU(N) vector route: the rotated lowest weight
      // is the tensor product of per-qubit rotated down states
      Vec v = Vec::Ones(1);
      for (const auto& p : pts) {
        Operator u1 = qps::su2::euler_rotation(0.5, p.phi, p.theta, 0.0);
        Vec down = u1 * Vec::Unit(2, 1);
        Vec next(v.size() * 2);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
          next(2 * i) = v(i) * down(0);
          next(2 * i + 1) = v(i) * down(1);
        }
        v = next;
      }
      Operator want = qps::sun::kernel_from_vector(s, v);
      CAPTURE(n);
      CAPTURE(s);
      CHECK((k - want).norm() < 1e-12);
    }
  }
  CHECK(cp::hybrid_angle_count(4) == 8);
  CHECK(cp::sun_route_angle_count(4) == 30);
}

TEST_CASE("GHZ equatorial slice follows the closed form and its crossing count") {
  for (int n : {3, 4}) {
    Operator rho = qps::states::ghz(n);
    std::vector<KernelSpec> specs(n, su2_spec(0.5));
    std::vector<double> phis;
    for (int i = 0; i < 241; ++i) phis.push_back(2.0 * qps::pi * i / 241.0);

    auto samples = cp::slice_evaluate(rho, specs, cp::SliceSpec::equatorial(), phis);
    REQUIRE(samples.size() == phis.size());
    for (std::size_t i = 0; i < samples.size(); i += 13) {
      double want = oracle::ghz_equatorial(n, samples[i].u);
      CHECK(samples[i].value == doctest::Approx(want).scale(1).epsilon(1e-11));
    }
    CHECK(cp::count_sign_changes(samples) == 2 * n);
  }
}

TEST_CASE("equal-angle slice of a product state factorizes") {
  Operator one = qps::states::spin_coherent(0.5, 0.9, 0.4);
  Operator rho = qps::kron(qps::kron(one, one), one);
  std::vector<KernelSpec> specs(3, su2_spec(0.5));
  std::vector<double> us = {0.0, 0.8, 2.2};
  std::vector<double> vs = {0.3, 4.0};
  auto samples = cp::slice_evaluate(rho, specs, cp::SliceSpec::equal_angle(), us, vs);
  REQUIRE(samples.size() == us.size() * vs.size());
  for (const auto& smp : samples) {
    double w1 = qps::su2::evaluate(one, 0.5, 0.0, smp.u, smp.v).real();
    CHECK(smp.value == doctest::Approx(w1 * w1 * w1).scale(1).epsilon(1e-11));
  }
}

TEST_CASE("marginals agree with the partial-trace route") {
  std::mt19937_64 rng(31);
  auto grid = qps::sphere_quadrature(3, 2.0);

  SUBCASE("product state") {
    Operator rho = qps::kron(qps::random_density(2, rng), qps::random_density(2, rng));
    auto res = cp::marginal_wigner(rho, {su2_spec(0.5), su2_spec(0.5)}, 0, grid);
    CHECK(res.max_difference < 1e-12);
  }
  SUBCASE("entangled state, either factor kept") {
    Operator rho = qps::states::bell(0);
    for (std::size_t keep : {std::size_t(0), std::size_t(1)}) {
      auto res = cp::marginal_wigner(rho, {su2_spec(0.5), su2_spec(0.5)}, keep, grid);
      CHECK(res.max_difference < 1e-12);
      // Bell marginals are maximally mixed: flat function of value 1/2
      for (double v : res.values) CHECK(v == doctest::Approx(0.5).epsilon(1e-11));
    }
  }
  SUBCASE("three factors with unequal spins") {
    Operator rho = qps::kron(qps::random_density(2, rng),
                             qps::kron(qps::random_density(3, rng), qps::random_density(2, rng)));
    auto res =
        cp::marginal_wigner(rho, {su2_spec(0.5), su2_spec(1.0), su2_spec(0.5)}, 1, grid);
    CHECK(res.max_difference < 1e-11);
  }
}

TEST_CASE("CV x qubit hybrid points factorize on product states") {
  std::mt19937_64 rng(44);
  int cutoff = 10;
  Operator rho_cv = Operator::Zero(cutoff + 1, cutoff + 1);
  rho_cv.topLeftCorner(2, 2) = qps::random_density(2, rng);
  Operator rho_q = qps::random_density(2, rng);
  Operator rho = qps::kron(rho_cv, rho_q);

  cd alpha(0.5, 0.2);
  double w = cp::hybrid_cv_dv_point(rho, cutoff, alpha, 1.1, 0.7);
  double want = qps::hw::wigner(rho_cv, alpha) * qps::su2::evaluate(rho_q, 0.5, 0.0, 1.1, 0.7).real();
  CHECK(w == doctest::Approx(want).scale(1).epsilon(1e-10));

  auto grid = qps::sphere_quadrature(2, 2.0);
  auto samples = cp::hybrid_cv_dv_grid(rho, cutoff, {alpha, cd(0, 0)}, grid);
  REQUIRE(samples.size() == 2 * grid.size());
  for (const auto& smp : samples) CHECK(smp.alpha_envelope > 0.0);
}

TEST_CASE("entangled hybrid states show nonfactorizable structure") {
  // |0>|up> + |1>|down> Bell-like pairing between the mode and the qubit
  int cutoff = 8;
  int d = (cutoff + 1) * 2;
  Vec psi = Vec::Zero(d);
  psi(0) = 1.0 / std::sqrt(2.0);  // |n=0, up>
  psi(3) = 1.0 / std::sqrt(2.0);  // |n=1, down>
  Operator rho = qps::projector(psi);

  // the qubit direction conditioned on alpha flips between the Fock lobes
  double north_at_origin = cp::hybrid_cv_dv_point(rho, cutoff, cd(0, 0), 0.0, 0.0);
  double south_at_origin = cp::hybrid_cv_dv_point(rho, cutoff, cd(0, 0), qps::pi, 0.0);
  CHECK(north_at_origin > south_at_origin);
}
