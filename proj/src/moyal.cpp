#include "qps/moyal.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "qps/io.hpp"

namespace qps::moyal {

bool PhaseGrid::matches(const PhaseGrid& o) const {
  return nq == o.nq && np == o.np && std::abs(q_min - o.q_min) < 1e-12 &&
         std::abs(q_max - o.q_max) < 1e-12 && std::abs(p_min - o.p_min) < 1e-12 &&
         std::abs(p_max - o.p_max) < 1e-12 && std::abs(hbar - o.hbar) < 1e-12;
}

void PhaseGrid::validate() const {
  require(nq >= 4 && np >= 4, "grid.size", "phase grid needs at least 4 nodes per axis");
  require(q_max > q_min && p_max > p_min, "grid.range", "phase grid ranges must be increasing");
  require(hbar > 0.0, "grid.hbar", "hbar must be positive");
}

namespace {

using Poly = std::vector<Monomial>;

void poly_canonicalize(Poly& p) {
  std::map<std::pair<int, int>, cd> acc;
  for (const auto& m : p) acc[{m.qpow, m.ppow}] += m.coeff;
  p.clear();
  for (const auto& [key, c] : acc)
    if (std::abs(c) > 1e-300) p.push_back({key.first, key.second, c});
}

int poly_degree(const Poly& p) {
  int d = 0;
  for (const auto& m : p) d = std::max(d, m.qpow + m.ppow);
  return d;
}

Poly poly_dq(const Poly& p) {
  Poly out;
  for (const auto& m : p)
    if (m.qpow > 0) out.push_back({m.qpow - 1, m.ppow, m.coeff * static_cast<double>(m.qpow)});
  return out;
}

Poly poly_dp(const Poly& p) {
  Poly out;
  for (const auto& m : p)
    if (m.ppow > 0) out.push_back({m.qpow, m.ppow - 1, m.coeff * static_cast<double>(m.ppow)});
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& ma : a)
    for (const auto& mb : b)
      out.push_back({ma.qpow + mb.qpow, ma.ppow + mb.ppow, ma.coeff * mb.coeff});
  poly_canonicalize(out);
  return out;
}

Eigen::MatrixXcd poly_eval_grid(const PhaseGrid& grid, const Poly& poly) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(grid.nq, grid.np);
  for (const auto& m : poly)
    for (int i = 0; i < grid.nq; ++i) {
      cd qv = std::pow(grid.q(i), m.qpow);
      for (int k = 0; k < grid.np; ++k)
        out(i, k) += m.coeff * qv * std::pow(grid.p(k), m.ppow);
    }
  return out;
}

double binomial(int n, int k) {
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc *= static_cast<double>(n - k + i) / i;
  return acc;
}

double factorial(int n) {
  double acc = 1.0;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

Eigen::MatrixXcd fft2_fwd(const Eigen::MatrixXcd& in) {
  auto& fft = fft_engine();
  Eigen::MatrixXcd tmp(in.rows(), in.cols());
  Eigen::VectorXcd vec_in, vec_out;
  for (int r = 0; r < in.rows(); ++r) {
    vec_in = in.row(r).transpose();
    fft.fwd(vec_out, vec_in);
    tmp.row(r) = vec_out;
  }
  Eigen::MatrixXcd out(in.rows(), in.cols());
  for (int c = 0; c < in.cols(); ++c) {
    vec_in = tmp.col(c);
    fft.fwd(vec_out, vec_in);
    out.col(c) = vec_out;
  }
  return out;
}

Eigen::MatrixXcd fft2_inv(const Eigen::MatrixXcd& in) {
  auto& fft = fft_engine();
  Eigen::MatrixXcd tmp(in.rows(), in.cols());
  Eigen::VectorXcd vec_in, vec_out;
  for (int r = 0; r < in.rows(); ++r) {
    vec_in = in.row(r).transpose();
    fft.inv(vec_out, vec_in);
    tmp.row(r) = vec_out;
  }
  Eigen::MatrixXcd out(in.rows(), in.cols());
  for (int c = 0; c < in.cols(); ++c) {
    vec_in = tmp.col(c);
    fft.inv(vec_out, vec_in);
    out.col(c) = vec_out;
  }
  return out;
}

// Wrapped angular wavenumbers; Nyquist zeroed when zero_nyquist (odd
// derivative orders have no well-defined Nyquist sign).
std::vector<double> wavenumbers(int n, double length, bool zero_nyquist) {
  std::vector<double> k(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    int wrapped = m <= n / 2 ? m : m - n;
    k[static_cast<std::size_t>(m)] = 2.0 * pi * wrapped / length;
  }
  if (zero_nyquist && n % 2 == 0) k[static_cast<std::size_t>(n / 2)] = 0.0;
  return k;
}

void check_aliasing(const PhaseGrid& grid, const Eigen::MatrixXcd& modes, double tol,
                    const char* who) {
  double total = modes.squaredNorm();
  if (total <= 0.0) return;
  double tail = 0.0;
  for (int i = 0; i < grid.nq; ++i) {
    int wi = std::min(i, grid.nq - i);
    for (int k = 0; k < grid.np; ++k) {
      int wk = std::min(k, grid.np - k);
      if (3 * wi > grid.nq || 3 * wk > grid.np) tail += std::norm(modes(i, k));
    }
  }
  if (tail > tol * total)
    fail("moyal.aliasing", std::string(who) +
                               ": spectral tail energy exceeds the band-limit threshold "
                               "(refine or enlarge the grid)");
}

// Spectral mixed derivative d_q^a d_p^b from cached forward modes.
Eigen::MatrixXcd spectral_derivative(const PhaseGrid& grid, const Eigen::MatrixXcd& modes,
                                     int a, int b) {
  if (a == 0 && b == 0) return fft2_inv(modes);
  auto kq = wavenumbers(grid.nq, grid.q_max - grid.q_min, a % 2 == 1);
  auto kp = wavenumbers(grid.np, grid.p_max - grid.p_min, b % 2 == 1);
  Eigen::MatrixXcd scaled(grid.nq, grid.np);
  cd ipow = std::pow(cd(0.0, 1.0), a + b);
  for (int i = 0; i < grid.nq; ++i) {
    double fq = std::pow(kq[static_cast<std::size_t>(i)], a);
    for (int k = 0; k < grid.np; ++k)
      scaled(i, k) = modes(i, k) * ipow * fq * std::pow(kp[static_cast<std::size_t>(k)], b);
  }
  return fft2_inv(scaled);
}

// Terminating Bopp series with the polynomial factor on `side` (0 = left).
Eigen::MatrixXcd star_poly_grid(const PhaseGrid& grid, const Poly& poly,
                                const Eigen::MatrixXcd& other, int side, double aliasing_tol) {
  const int deg = poly_degree(poly);
  Eigen::MatrixXcd modes;
  bool have_modes = false;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(grid.nq, grid.np);
  const double h2 = grid.hbar / 2.0;
  for (int k = 0; k <= deg; ++k) {
    cd pref = std::pow(cd(0.0, h2), k) / factorial(k);
    for (int j = 0; j <= k; ++j) {
      Poly dpoly = poly;
      // left factor carries d_q^{k-j} d_p^j, right factor the transpose pair
      int pq = side == 0 ? k - j : j;
      int pp = side == 0 ? j : k - j;
      for (int t = 0; t < pq; ++t) dpoly = poly_dq(dpoly);
      for (int t = 0; t < pp; ++t) dpoly = poly_dp(dpoly);
      if (dpoly.empty()) continue;
      int gq = side == 0 ? j : k - j;
      int gp = side == 0 ? k - j : j;
      if ((gq > 0 || gp > 0) && !have_modes) {
        modes = fft2_fwd(other);
        check_aliasing(grid, modes, aliasing_tol, "star_product");
        have_modes = true;
      }
      Eigen::MatrixXcd gderiv =
          (gq == 0 && gp == 0) ? other : spectral_derivative(grid, modes, gq, gp);
      double sign = j % 2 == 0 ? 1.0 : -1.0;
      out += (pref * sign * binomial(k, j)) * poly_eval_grid(grid, dpoly).cwiseProduct(gderiv);
    }
  }
  return out;
}

Poly star_poly_poly(double hbar, const Poly& f, const Poly& g) {
  Poly out;
  const int deg = std::min(poly_degree(f), poly_degree(g));
  for (int k = 0; k <= deg; ++k) {
    cd pref = std::pow(cd(0.0, hbar / 2.0), k) / factorial(k);
    for (int j = 0; j <= k; ++j) {
      Poly df = f, dg = g;
      for (int t = 0; t < k - j; ++t) df = poly_dq(df);
      for (int t = 0; t < j; ++t) df = poly_dp(df);
      for (int t = 0; t < k - j; ++t) dg = poly_dp(dg);
      for (int t = 0; t < j; ++t) dg = poly_dq(dg);
      if (df.empty() || dg.empty()) continue;
      double sign = j % 2 == 0 ? 1.0 : -1.0;
      Poly term = poly_mul(df, dg);
      for (auto& m : term) m.coeff *= pref * sign * binomial(k, j);
      out.insert(out.end(), term.begin(), term.end());
    }
  }
  poly_canonicalize(out);
  return out;
}

Eigen::MatrixXcd star_grid_grid(const PhaseGrid& grid, const Eigen::MatrixXcd& f,
                                const Eigen::MatrixXcd& g, double aliasing_tol) {
  const long total = static_cast<long>(grid.nq) * grid.np;
  require(total <= (1 << 14), "moyal.size",
          "grid-only star product is quadratic in node count; use <= 16384 nodes or give "
          "one factor a polynomial form");
  Eigen::MatrixXcd cf = fft2_fwd(f);
  Eigen::MatrixXcd cg = fft2_fwd(g);
  check_aliasing(grid, cf, aliasing_tol, "star_product (left)");
  check_aliasing(grid, cg, aliasing_tol, "star_product (right)");
  double norm = static_cast<double>(total);
  auto kq = wavenumbers(grid.nq, grid.q_max - grid.q_min, false);
  auto kp = wavenumbers(grid.np, grid.p_max - grid.p_min, false);

  // Plane waves obey e^{ia.x} * e^{ib.x} = e^{i(a+b).x} exp(-i hbar/2 (aq bp - ap bq)),
  // so mode u of the product collects v, w = u - v (cyclically) with that twist.
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(grid.nq, grid.np);
  for (int uq = 0; uq < grid.nq; ++uq)
    for (int up = 0; up < grid.np; ++up) {
      cd acc = 0.0;
      for (int vq = 0; vq < grid.nq; ++vq) {
        int wq = uq - vq;
        if (wq < 0) wq += grid.nq;
        for (int vp = 0; vp < grid.np; ++vp) {
          cd fv = cf(vq, vp);
          if (std::norm(fv) < 1e-280) continue;
          int wp = up - vp;
          if (wp < 0) wp += grid.np;
          double omega = kq[static_cast<std::size_t>(vq)] * kp[static_cast<std::size_t>(wp)] -
                         kp[static_cast<std::size_t>(vp)] * kq[static_cast<std::size_t>(wq)];
          acc += fv * cg(wq, wp) * std::exp(cd(0.0, -0.5 * grid.hbar * omega));
        }
      }
      d(uq, up) = acc / norm;
    }
  return fft2_inv(d);
}

}  // namespace

GridFunction GridFunction::from_poly(const PhaseGrid& grid, std::vector<Monomial> poly) {
  grid.validate();
  poly_canonicalize(poly);
  GridFunction f;
  f.grid = grid;
  f.values = poly_eval_grid(grid, poly);
  f.poly = std::move(poly);
  return f;
}

GridFunction GridFunction::from_samples(const PhaseGrid& grid, Eigen::MatrixXcd values) {
  grid.validate();
  require(values.rows() == grid.nq && values.cols() == grid.np, "grid.shape",
          "sample matrix does not match the grid");
  require(values.allFinite(), "grid.finite", "samples must be finite");
  GridFunction f;
  f.grid = grid;
  f.values = std::move(values);
  return f;
}

GridFunction GridFunction::constant(const PhaseGrid& grid, cd value) {
  return from_poly(grid, {{0, 0, value}});
}

bool GridFunction::is_real(double tol) const {
  return values.imag().cwiseAbs().maxCoeff() <= tol * std::max(1.0, max_abs());
}

double GridFunction::max_abs() const { return values.cwiseAbs().maxCoeff(); }

double GridFunction::boundary_decay() const {
  double m = max_abs();
  if (m <= 0.0) return 0.0;
  double edge = 0.0;
  for (int i = 0; i < grid.nq; ++i) {
    edge = std::max(edge, std::abs(values(i, 0)));
    edge = std::max(edge, std::abs(values(i, grid.np - 1)));
  }
  for (int k = 0; k < grid.np; ++k) {
    edge = std::max(edge, std::abs(values(0, k)));
    edge = std::max(edge, std::abs(values(grid.nq - 1, k)));
  }
  return edge / m;
}

GridFunction coherent_wigner(const PhaseGrid& grid, double q0, double p0) {
  grid.validate();
  Eigen::MatrixXcd vals(grid.nq, grid.np);
  for (int i = 0; i < grid.nq; ++i)
    for (int k = 0; k < grid.np; ++k) {
      double dq = grid.q(i) - q0, dp = grid.p(k) - p0;
      vals(i, k) = 2.0 * std::exp(-(dq * dq + dp * dp) / grid.hbar);
    }
  return GridFunction::from_samples(grid, std::move(vals));
}

GridFunction named_hamiltonian(const PhaseGrid& grid, const std::string& name) {
  if (name == "harmonic")
    return GridFunction::from_poly(grid, {{2, 0, 0.5}, {0, 2, 0.5}});
  if (name == "linear") return GridFunction::from_poly(grid, {{1, 0, 1.0}});
  if (name == "quartic")
    return GridFunction::from_poly(grid, {{0, 2, 0.5}, {4, 0, 0.25}});
  fail("moyal.hamiltonian", "unknown Hamiltonian '" + name +
                                "' (expected harmonic, linear, quartic, or a file)");
}

GridFunction star_product(const GridFunction& f, const GridFunction& g, double aliasing_tol) {
  require(f.grid.matches(g.grid), "grid.mismatch", "star product needs a shared grid");
  GridFunction out;
  out.grid = f.grid;
  if (f.poly && g.poly) {
    Poly prod = star_poly_poly(f.grid.hbar, *f.poly, *g.poly);
    out.values = poly_eval_grid(f.grid, prod);
    out.poly = std::move(prod);
  } else if (f.poly) {
    out.values = star_poly_grid(f.grid, *f.poly, g.values, 0, aliasing_tol);
  } else if (g.poly) {
    out.values = star_poly_grid(f.grid, *g.poly, f.values, 1, aliasing_tol);
  } else {
    out.values = star_grid_grid(f.grid, f.values, g.values, aliasing_tol);
  }
  return out;
}

GridFunction moyal_bracket(const GridFunction& f, const GridFunction& g, double aliasing_tol) {
  GridFunction fg = star_product(f, g, aliasing_tol);
  GridFunction gf = star_product(g, f, aliasing_tol);
  GridFunction out;
  out.grid = f.grid;
  out.values = (fg.values - gf.values) / cd(0.0, f.grid.hbar);
  if (fg.poly && gf.poly) {
    Poly b = *fg.poly;
    for (auto& m : *gf.poly) b.push_back({m.qpow, m.ppow, -m.coeff});
    for (auto& m : b) m.coeff /= cd(0.0, f.grid.hbar);
    poly_canonicalize(b);
    out.poly = std::move(b);
  }
  if (f.is_real() && g.is_real()) out.values = out.values.real().cast<cd>();
  return out;
}

double mass(const GridFunction& w) {
  double cell = w.grid.dq() * w.grid.dp() / (2.0 * pi * w.grid.hbar);
  return w.values.real().sum() * cell;
}

double purity_integral(const GridFunction& w) {
  double cell = w.grid.dq() * w.grid.dp() / (2.0 * pi * w.grid.hbar);
  return w.values.real().array().square().sum() * cell;
}

namespace {

// Bidifferential Poisson power D_k(H, W) assembled from precomputed grids of
// the nonzero H derivatives and spectral derivatives of W.
struct BracketPlan {
  struct Term {
    Eigen::MatrixXd h_grid;  // coefficient field c_k sign C(k,j) (d^a_q d^b_p H)
    int w_dq = 0;            // spectral d_q order on W
    int w_dp = 0;
  };
  std::vector<Term> terms;
};

BracketPlan make_plan(const PhaseGrid& grid, const Poly& h) {
  BracketPlan plan;
  const int deg = poly_degree(h);
  for (int k = 1; k <= deg; k += 2) {
    double ck = (2.0 / grid.hbar) * std::pow(grid.hbar / 2.0, k) / factorial(k) *
                ((k - 1) / 2 % 2 == 0 ? 1.0 : -1.0);
    for (int j = 0; j <= k; ++j) {
      Poly dh = h;
      for (int t = 0; t < k - j; ++t) dh = poly_dq(dh);
      for (int t = 0; t < j; ++t) dh = poly_dp(dh);
      if (dh.empty()) continue;
      double sign = j % 2 == 0 ? 1.0 : -1.0;
      BracketPlan::Term term;
      term.h_grid = (ck * sign * binomial(k, j)) * poly_eval_grid(grid, dh).real();
      term.w_dq = j;
      term.w_dp = k - j;
      plan.terms.push_back(std::move(term));
    }
  }
  return plan;
}

Eigen::MatrixXd apply_plan(const PhaseGrid& grid, const BracketPlan& plan,
                           const Eigen::MatrixXd& w) {
  Eigen::MatrixXcd modes = fft2_fwd(w.cast<cd>());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(grid.nq, grid.np);
  for (const auto& term : plan.terms) {
    Eigen::MatrixXcd deriv = spectral_derivative(grid, modes, term.w_dq, term.w_dp);
    out += term.h_grid.cwiseProduct(deriv.real());
  }
  return out;
}

}  // namespace

EvolveReport evolve(const GridFunction& w0, const GridFunction& h, double dt, int steps) {
  require(w0.grid.matches(h.grid), "grid.mismatch", "state and Hamiltonian grids differ");
  require(h.poly.has_value(), "evolve.hamiltonian",
          "evolution needs a polynomial Hamiltonian (named form or coefficient file)");
  require(dt > 0.0 && steps > 0, "evolve.steps", "need positive dt and step count");
  require(w0.is_real(), "evolve.state", "initial function must be real");
  require(w0.boundary_decay() < 1e-8, "evolve.boundary",
          "initial function must decay below 1e-8 of its peak at the grid edge");

  const PhaseGrid& grid = w0.grid;
  BracketPlan plan = make_plan(grid, *h.poly);

  // Advection bound: RK4 covers the imaginary axis to ~2.83; the spectral
  // advection eigenvalues reach kq_max |dH/dp| + kp_max |dH/dq|.
  double vq = poly_eval_grid(grid, poly_dp(*h.poly)).cwiseAbs().maxCoeff();
  double vp = poly_eval_grid(grid, poly_dq(*h.poly)).cwiseAbs().maxCoeff();
  double rate = pi / grid.dq() * vq + pi / grid.dp() * vp;
  double dt_limit = rate > 0.0 ? 2.8 / rate : std::numeric_limits<double>::infinity();
  require(dt <= dt_limit * (1.0 + 1e-12), "evolve.step_bound",
          "dt exceeds the advection stability bound " + format_double(dt_limit));

  EvolveReport rep;
  rep.dt = dt;
  rep.steps = steps;
  rep.dt_limit = dt_limit;

  Eigen::MatrixXd w = w0.values.real();
  double cell = grid.dq() * grid.dp() / (2.0 * pi * grid.hbar);
  rep.mass_initial = w.sum() * cell;
  rep.purity_initial = w.array().square().sum() * cell;

  for (int s = 0; s < steps; ++s) {
    Eigen::MatrixXd k1 = apply_plan(grid, plan, w);
    Eigen::MatrixXd k2 = apply_plan(grid, plan, w + 0.5 * dt * k1);
    Eigen::MatrixXd k3 = apply_plan(grid, plan, w + 0.5 * dt * k2);
    Eigen::MatrixXd k4 = apply_plan(grid, plan, w + dt * k3);
    w += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rep.mass_drift = std::max(rep.mass_drift, std::abs(w.sum() * cell - rep.mass_initial));
  }

  rep.mass_final = w.sum() * cell;
  rep.purity_final = w.array().square().sum() * cell;
  rep.result = GridFunction::from_samples(grid, w.cast<cd>());
  return rep;
}

void write_csv(const GridFunction& f, const std::string& path) {
  bool complex = !f.is_real(1e-14);
  std::ostringstream out;
  out << (complex ? "q,p,re,im\n" : "q,p,value\n");
  for (int i = 0; i < f.grid.nq; ++i)
    for (int k = 0; k < f.grid.np; ++k) {
      out << format_double(f.grid.q(i)) << ',' << format_double(f.grid.p(k)) << ','
          << format_double(f.values(i, k).real());
      if (complex) out << ',' << format_double(f.values(i, k).imag());
      out << '\n';
    }
  write_file_atomic(path, out.str());
}

namespace {

constexpr char snapshot_magic[8] = {'Q', 'P', 'S', 'G', 'R', 'I', 'D', '1'};

template <typename T>
void put_raw(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T get_raw(const std::string& in, std::size_t& pos) {
  require(pos + sizeof(T) <= in.size(), "snapshot.truncated", "snapshot file is truncated");
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

void write_snapshot(const GridFunction& f, const std::string& path) {
  require(f.is_real(1e-10), "snapshot.complex", "snapshots store real functions");
  std::string out;
  out.reserve(48 + sizeof(double) * static_cast<std::size_t>(f.grid.nq) * f.grid.np);
  out.append(snapshot_magic, sizeof(snapshot_magic));
  put_raw<std::int32_t>(out, f.grid.nq);
  put_raw<std::int32_t>(out, f.grid.np);
  put_raw<double>(out, f.grid.q_min);
  put_raw<double>(out, f.grid.q_max);
  put_raw<double>(out, f.grid.p_min);
  put_raw<double>(out, f.grid.p_max);
  put_raw<double>(out, f.grid.hbar);
  for (int i = 0; i < f.grid.nq; ++i)
    for (int k = 0; k < f.grid.np; ++k) put_raw<double>(out, f.values(i, k).real());
  write_file_atomic(path, out);
}

GridFunction read_snapshot(const std::string& path) {
  std::string in = read_file(path);
  require(in.size() >= sizeof(snapshot_magic) &&
              std::memcmp(in.data(), snapshot_magic, sizeof(snapshot_magic)) == 0,
          "snapshot.magic", "not a grid snapshot file");
  std::size_t pos = sizeof(snapshot_magic);
  PhaseGrid grid;
  grid.nq = get_raw<std::int32_t>(in, pos);
  grid.np = get_raw<std::int32_t>(in, pos);
  grid.q_min = get_raw<double>(in, pos);
  grid.q_max = get_raw<double>(in, pos);
  grid.p_min = get_raw<double>(in, pos);
  grid.p_max = get_raw<double>(in, pos);
  grid.hbar = get_raw<double>(in, pos);
  grid.validate();
  Eigen::MatrixXcd vals(grid.nq, grid.np);
  for (int i = 0; i < grid.nq; ++i)
    for (int k = 0; k < grid.np; ++k) vals(i, k) = get_raw<double>(in, pos);
  return GridFunction::from_samples(grid, std::move(vals));
}

}  // namespace qps::moyal
