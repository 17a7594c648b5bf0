#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qps/operators.hpp"
#include "qps/su2.hpp"
#include "qps/wootters.hpp"

using oracle::cd;
using qps::Operator;
using qps::Vec;
namespace wt = qps::wootters;

namespace {

Operator pauli(int which) {
  switch (which) {
    case 1: return qps::pauli_x();
    case 2: return qps::pauli_y();
    default: return qps::pauli_z();
  }
}

}  // namespace

TEST_CASE("phase-point operators tile the lattice orthogonally") {
  Operator sum = Operator::Zero(2, 2);
  for (int z = 0; z < 2; ++z)
    for (int x = 0; x < 2; ++x) {
      Operator a = wt::phase_point_operator(z, x);
      CHECK(qps::hermiticity_defect(a) < 1e-15);
      CHECK(std::abs(a.trace() - cd(1, 0)) < 1e-15);
      sum += a;

      for (int z2 = 0; z2 < 2; ++z2)
        for (int x2 = 0; x2 < 2; ++x2) {
          double want = (z == z2 && x == x2) ? 2.0 : 0.0;
          cd got = (a * wt::phase_point_operator(z2, x2)).trace();
          CHECK(std::abs(got - cd(want, 0)) < 1e-14);
        }
    }
  // half-weight sum over the four points resolves the identity
  CHECK((0.5 * sum - Operator::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("phase-point expectations recover the Bloch signs") {
  // at s = 0 each component is +-1; the full Bloch vector has length sqrt(3)
  for (int z = 0; z < 2; ++z)
    for (int x = 0; x < 2; ++x) {
      Operator a = wt::phase_point_operator(z, x);
      double sz = (a * pauli(3)).trace().real();
      double sx = (a * pauli(1)).trace().real();
      double sy = (a * pauli(2)).trace().real();
      CHECK(sz == doctest::Approx(z ? -1.0 : 1.0).epsilon(1e-13));
      CHECK(sx == doctest::Approx(x ? -1.0 : 1.0).epsilon(1e-13));
      CHECK(sy == doctest::Approx((z + x) % 2 ? -1.0 : 1.0).epsilon(1e-13));
      CHECK(sz * sz + sx * sx + sy * sy == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("discrete displacements form the projective Pauli group") {
  CHECK((wt::displacement(0, 0) - Operator::Identity(2, 2)).norm() < 1e-15);
  CHECK((wt::displacement(1, 0) - qps::pauli_z()).norm() < 1e-15);
  CHECK((wt::displacement(0, 1) - qps::pauli_x()).norm() < 1e-15);
  // e^{i pi/2} sx sz = i sx sz = sy
  CHECK((wt::displacement(1, 1) - qps::pauli_y()).norm() < 1e-15);
}

TEST_CASE("measured lattice probabilities equal the s = 0 table") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    Operator rho = qps::random_density(2, rng);
    auto p = wt::feynman_probabilities(rho);
    auto w = wt::wigner(rho);
    double psum = 0.0;
    for (int i = 0; i < 4; ++i) {
      CHECK(p[i] == doctest::Approx(w[i]).scale(1).epsilon(1e-13));
      psum += p[i];
    }
    // table is a quasi-probability: halves sum to one
    CHECK(0.5 * psum == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("characteristic table inverts and Fourier-pairs with the Wigner table") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 25; ++trial) {
    Operator rho = qps::random_density(2, rng);
    auto chi = wt::discrete_weyl(rho);
    CHECK((wt::weyl_inverse(chi) - rho).norm() < 1e-14);

    auto w = wt::dft_weyl_to_wigner(chi);
    auto w_direct = wt::wigner(rho);
    for (int i = 0; i < 4; ++i) CHECK(w[i] == doctest::Approx(w_direct[i]).scale(1).epsilon(1e-13));

    auto chi_back = wt::dft_wigner_to_weyl(w);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(chi_back[i] - chi[i]) < 1e-13);
  }
}

TEST_CASE("pure eigenstates of the Pauli axes have classical tables") {
  for (int axis = 1; axis <= 3; ++axis)
    for (double sign : {1.0, -1.0}) {
      Operator rho = 0.5 * (Operator::Identity(2, 2) + sign * pauli(axis));
      auto w = wt::wigner(rho);
      double total = 0.0;
      for (double v : w) {
        CHECK(v >= -1e-14);
        total += v;
      }
      CHECK(0.5 * total == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("lattice points embed as spin-1/2 kernel directions") {
  for (double s : {-1.0, 0.0, 1.0})
    for (int z = 0; z < 2; ++z)
      for (int x = 0; x < 2; ++x) {
        auto ang = wt::stratonovich_embedding(z, x);
        Operator lattice = wt::phase_point_operator(z, x, s);
        Operator sphere = qps::su2::kernel(0.5, s, ang[0], ang[1]);
        CAPTURE(s);
        CAPTURE(z);
        CAPTURE(x);
        CHECK((lattice - sphere).norm() < 1e-13);
        CHECK(ang[0] >= 0.0);
        CHECK(ang[0] <= qps::pi);
        CHECK(ang[1] >= 0.0);
        CHECK(ang[1] < 2 * qps::pi);
      }
}

TEST_CASE("embedded directions form the regular tetrahedron") {
  auto dir = [](std::array<double, 2> a) {
    return std::array<double, 3>{std::sin(a[0]) * std::cos(a[1]),
                                 -std::sin(a[0]) * std::sin(a[1]), std::cos(a[0])};
  };
  std::array<std::array<double, 3>, 4> n;
  int i = 0;
  for (int z = 0; z < 2; ++z)
    for (int x = 0; x < 2; ++x) n[i++] = dir(wt::stratonovich_embedding(z, x));
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      double dot = n[a][0] * n[b][0] + n[a][1] * n[b][1] + n[a][2] * n[b][2];
      CHECK(dot == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("s deformation keeps the trace and rescales the Bloch radius") {
  for (double s : {-1.0, -0.3, 0.6, 1.0}) {
    Operator a = wt::phase_point_operator(0, 1, s);
    CHECK(std::abs(a.trace() - cd(1, 0)) < 1e-14);
    double radius = std::pow(3.0, 0.5 * s);
    CHECK((a * pauli(1)).trace().real() == doctest::Approx(-radius).epsilon(1e-12));
    CHECK((a * pauli(3)).trace().real() == doctest::Approx(radius).epsilon(1e-12));
  }
}
