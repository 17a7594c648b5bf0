#include "qps/composite.hpp"

#include <cmath>

#include "qps/hw.hpp"
#include "qps/operators.hpp"
#include "qps/su2.hpp"
#include "qps/wootters.hpp"

namespace qps::composite {

FactorPoint FactorPoint::at(double theta, double phi, double Phi) {
  FactorPoint p;
  p.kind = Kind::Euler;
  p.euler = {theta, phi, Phi};
  return p;
}

FactorPoint FactorPoint::at(cd alpha) {
  FactorPoint p;
  p.kind = Kind::CV;
  p.cv = {alpha};
  return p;
}

FactorPoint FactorPoint::at(int z, int x) {
  FactorPoint p;
  p.kind = Kind::Lattice;
  p.lattice = {z, x};
  return p;
}

namespace {

Operator factor_kernel(const KernelSpec& spec, const FactorPoint& point) {
  switch (spec.family) {
    case Family::SU2:
      require(point.kind == FactorPoint::Kind::Euler, "composite.point",
              "SU2 factor expects an Euler point");
      return su2::kernel(spec.j, spec.s, point.euler.theta, point.euler.phi);
    case Family::HW:
      require(point.kind == FactorPoint::Kind::CV, "composite.point",
              "HW factor expects a CV point");
      return hw::kernel(spec.cutoff, point.cv.alpha, spec.s);
    case Family::Wootters:
      require(point.kind == FactorPoint::Kind::Lattice, "composite.point",
              "Wootters factor expects a lattice point");
      return wootters::phase_point_operator(point.lattice.z, point.lattice.x, spec.s);
    default:
      fail("composite.family", "composite factors must be SU2, HW, or Wootters");
  }
}

}  // namespace

Operator tensor_kernel(const std::vector<KernelSpec>& specs, const CompositePoint& point) {
  require(!specs.empty(), "composite.arity", "at least one factor required");
  require(specs.size() == point.size(), "composite.arity",
          "factor count and point arity disagree");
  Operator acc = factor_kernel(specs[0], point[0]);
  for (std::size_t i = 1; i < specs.size(); ++i) acc = kron(acc, factor_kernel(specs[i], point[i]));
  return acc;
}

double evaluate(const Operator& rho, const std::vector<KernelSpec>& specs,
                const CompositePoint& point) {
  Operator k = tensor_kernel(specs, point);
  require(rho.rows() == k.rows() && rho.cols() == k.cols(), "composite.dim",
          "state dimension does not match factor product");
  return (rho * k).trace().real();
}

int hybrid_angle_count(int n) { return 2 * n; }

int sun_route_angle_count(int n) { return 2 * ((1 << n) - 1); }

Operator hybrid_multiqubit_kernel(int n, const std::vector<EulerPoint>& points, double s) {
  require(n >= 1 && n <= 10, "hybrid.size", "hybrid kernel supports 1..10 qubits");
  require(points.size() == static_cast<std::size_t>(n), "hybrid.points",
          "need one Euler point per qubit");
  const int dim = 1 << n;
  Operator rot = Operator::Identity(1, 1);
  for (const auto& p : points)
    rot = kron(rot, su2::euler_rotation(0.5, p.phi, p.theta, p.Phi)).eval();

  // SU(2^n) generalized parity about the lowest-weight vector.
  double c = std::pow(dim + 1.0, 0.5 * (1.0 + s));
  Operator par = Operator::Identity(dim, dim) * ((1.0 - c) / dim);
  par(dim - 1, dim - 1) += c;
  return rot * par * rot.adjoint();
}

SliceSpec SliceSpec::equal_angle() {
  SliceSpec sp;
  sp.kind = Kind::EqualAngle;
  return sp;
}

SliceSpec SliceSpec::equatorial() {
  SliceSpec sp;
  sp.kind = Kind::Equatorial;
  return sp;
}

SliceSpec SliceSpec::axis_pair() {
  SliceSpec sp;
  sp.kind = Kind::AxisPair;
  return sp;
}

SliceSpec SliceSpec::custom(std::vector<AngleBinding> bindings) {
  SliceSpec sp;
  sp.kind = Kind::Custom;
  sp.bindings = std::move(bindings);
  return sp;
}

namespace {

std::vector<AngleBinding> resolve_bindings(const SliceSpec& slice, std::size_t n_factors) {
  std::vector<AngleBinding> out(n_factors);
  switch (slice.kind) {
    case SliceSpec::Kind::EqualAngle:
      for (auto& b : out) b = {0, 0.0, 1, 0.0};
      break;
    case SliceSpec::Kind::Equatorial:
      for (auto& b : out) b = {-1, pi / 2.0, 0, 0.0};
      break;
    case SliceSpec::Kind::AxisPair:
      for (std::size_t i = 0; i < n_factors; ++i) out[i] = {i == 0 ? 0 : 1, 0.0, -1, 0.0};
      break;
    case SliceSpec::Kind::Custom:
      require(slice.bindings.size() == n_factors, "slice.bindings",
              "custom slice must bind every factor");
      out = slice.bindings;
      break;
  }
  return out;
}

bool uses_variable(const std::vector<AngleBinding>& bindings, int var) {
  for (const auto& b : bindings)
    if (b.theta_var == var || b.phi_var == var) return true;
  return false;
}

}  // namespace

std::vector<SliceSample> slice_evaluate(const Operator& rho, const std::vector<KernelSpec>& specs,
                                        const SliceSpec& slice, const std::vector<double>& u_grid,
                                        const std::vector<double>& v_grid) {
  require(!specs.empty(), "slice.factors", "at least one factor required");
  for (const auto& sp : specs)
    require(sp.family == Family::SU2, "slice.family", "slices are defined for SU2 factors");
  auto bindings = resolve_bindings(slice, specs.size());
  require(uses_variable(bindings, 0), "slice.vars", "slice must use free variable 0");
  std::vector<double> vg = uses_variable(bindings, 1) ? v_grid : std::vector<double>{0.0};
  require(!u_grid.empty() && !vg.empty(), "slice.grid", "variable grids must be nonempty");

  std::vector<SliceSample> out;
  out.reserve(u_grid.size() * vg.size());
  for (double u : u_grid)
    for (double v : vg) {
      CompositePoint point;
      point.reserve(specs.size());
      for (const auto& b : bindings) {
        double theta = b.theta_var == 0 ? u : (b.theta_var == 1 ? v : b.theta_fix);
        double phi = b.phi_var == 0 ? u : (b.phi_var == 1 ? v : b.phi_fix);
        point.push_back(FactorPoint::at(theta, phi));
      }
      out.push_back({u, v, evaluate(rho, specs, point)});
    }
  return out;
}

int count_sign_changes(const std::vector<SliceSample>& samples) {
  int count = 0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if ((samples[i - 1].value < 0.0) != (samples[i].value < 0.0)) ++count;
  return count;
}

MarginalResult marginal_wigner(const Operator& rho, const std::vector<KernelSpec>& specs,
                               std::size_t keep, const SphereGrid& grid) {
  require(keep < specs.size(), "marginal.index", "keep index out of range");
  for (const auto& sp : specs)
    require(sp.family == Family::SU2, "marginal.family",
            "marginals are defined for SU2 factors");

  // Quadrature grids over the discarded factors; kernel harmonic content of a
  // spin-j factor is band-limited to 2j, so exact_degree 2j suffices.
  std::vector<SphereGrid> discard_grids(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i)
    if (i != keep)
      discard_grids[i] = sphere_quadrature(std::max(2, static_cast<int>(2.0 * specs[i].j)),
                                           2.0 * specs[i].j + 1.0);

  int dim_before = 1, dim_keep = su2::dim_of(specs[keep].j), dim_after = 1;
  for (std::size_t i = 0; i < keep; ++i) dim_before *= specs[i].dim();
  for (std::size_t i = keep + 1; i < specs.size(); ++i) dim_after *= specs[i].dim();

  Operator reduced = rho;
  if (dim_after > 1) reduced = partial_trace(reduced, dim_before * dim_keep, dim_after, 1);
  if (dim_before > 1) reduced = partial_trace(reduced, dim_before, dim_keep, 0);

  MarginalResult res;
  res.values.reserve(grid.nodes.size());
  res.from_partial_trace.reserve(grid.nodes.size());

  // Enumerate the product of discarded grids by mixed-radix counting.
  std::vector<std::size_t> radix, idx;
  for (std::size_t i = 0; i < specs.size(); ++i)
    if (i != keep) radix.push_back(discard_grids[i].nodes.size());

  for (const auto& node : grid.nodes) {
    double acc = 0.0;
    idx.assign(radix.size(), 0);
    bool done = radix.empty();
    if (done) {
      acc = evaluate(rho, specs, {FactorPoint::at(node.theta, node.phi)});
    }
    while (!done) {
      CompositePoint point;
      double w = 1.0;
      std::size_t cursor = 0;
      for (std::size_t i = 0; i < specs.size(); ++i) {
        if (i == keep) {
          point.push_back(FactorPoint::at(node.theta, node.phi));
        } else {
          const auto& dn = discard_grids[i].nodes[idx[cursor++]];
          point.push_back(FactorPoint::at(dn.theta, dn.phi));
          w *= dn.weight;
        }
      }
      acc += w * evaluate(rho, specs, point);
      std::size_t pos = 0;
      while (pos < idx.size()) {
        if (++idx[pos] < radix[pos]) break;
        idx[pos++] = 0;
      }
      done = pos == idx.size();
    }
    res.values.push_back(acc);
    res.from_partial_trace.push_back(
        (reduced * su2::kernel(specs[keep].j, specs[keep].s, node.theta, node.phi))
            .trace()
            .real());
    res.max_difference =
        std::max(res.max_difference, std::abs(res.values.back() - res.from_partial_trace.back()));
  }
  return res;
}

double hybrid_cv_dv_point(const Operator& rho, int cutoff, cd alpha, double theta, double phi,
                          double s) {
  const int dim = (cutoff + 1) * 2;
  require(rho.rows() == dim && rho.cols() == dim, "hybrid.dim",
          "state must live on Fock(cutoff) x qubit");
  Operator k = kron(hw::kernel(cutoff, alpha, s), su2::kernel(0.5, s, theta, phi));
  return (rho * k).trace().real();
}

std::vector<HybridSample> hybrid_cv_dv_grid(const Operator& rho, int cutoff,
                                            const std::vector<cd>& alphas, const SphereGrid& grid,
                                            double s) {
  std::vector<HybridSample> out;
  out.reserve(alphas.size() * grid.nodes.size());
  for (cd alpha : alphas) {
    std::size_t first = out.size();
    double env = 0.0;
    for (const auto& node : grid.nodes) {
      double v = hybrid_cv_dv_point(rho, cutoff, alpha, node.theta, node.phi, s);
      env = std::max(env, std::abs(v));
      out.push_back({alpha, node.theta, node.phi, v, 0.0});
    }
    for (std::size_t i = first; i < out.size(); ++i) out[i].alpha_envelope = env;
  }
  return out;
}

}  // namespace qps::composite
