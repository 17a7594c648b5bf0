#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qps/composite.hpp"
#include "qps/foundation.hpp"
#include "qps/hw.hpp"
#include "qps/io.hpp"
#include "qps/manifest.hpp"
#include "qps/metrics.hpp"
#include "qps/moyal.hpp"
#include "qps/states.hpp"
#include "qps/su2.hpp"
#include "qps/tomography.hpp"
#include "qps/types.hpp"
#include "qps/wootters.hpp"

namespace {

using json = nlohmann::json;
using namespace qps;

std::string g_command;

std::string join_command(int argc, char** argv) {
  std::ostringstream out;
  for (int i = 0; i < argc; ++i) {
    if (i) out << ' ';
    std::string a = argv[i];
    if (a.find(' ') != std::string::npos) out << '"' << a << '"';
    else out << a;
  }
  return out.str();
}

// Bare filenames land in $QPS_OUT_DIR when it is set.
std::string out_path(const std::string& arg) {
  if (arg.empty() || arg.find('/') != std::string::npos) return arg;
  const char* dir = std::getenv("QPS_OUT_DIR");
  if (!dir || !*dir) return arg;
  return std::string(dir) + "/" + arg;
}

// Tracks one command invocation: outputs, wall time, manifest sidecar.
class CommandRun {
 public:
  CommandRun(json params, std::uint64_t seed = 0) : t0_(std::chrono::steady_clock::now()) {
    man_.command = g_command;
    man_.parameters_json = params.dump();
    man_.seed = seed;
  }

  void emit(const std::string& path, const std::string& bytes) { man_.emit_output(path, bytes); }

  // Records a file some other writer already produced.
  void note(const std::string& path) { man_.outputs.emplace_back(path, hash_file(path)); }

  // Returns warnings for inclusion in stdout documents; writes the manifest
  // next to the first output file when any file was produced.
  std::vector<std::string> finish() {
    man_.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    man_.warnings = drain_warnings();
    if (!man_.outputs.empty()) man_.write(man_.outputs.front().first + ".manifest.json");
    return man_.warnings;
  }

  double wall_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  RunManifest man_;
  std::chrono::steady_clock::time_point t0_;
};

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  return out.str();
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    if (first) {
      while (std::getline(cells, cell, ',')) csv.header.push_back(cell);
      first = false;
      continue;
    }
    std::vector<double> row;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        fail("csv.parse", "non-numeric cell '" + cell + "'");
      }
      require(used == cell.size(), "csv.parse", "trailing junk in cell '" + cell + "'");
      row.push_back(v);
    }
    require(row.size() == csv.header.size(), "csv.parse",
            "row with " + std::to_string(row.size()) + " cells under a " +
                std::to_string(csv.header.size()) + "-column header");
    csv.rows.push_back(std::move(row));
  }
  require(!csv.header.empty(), "csv.parse", "empty CSV");
  return csv;
}

// --state accepts a file path or a built-in name; built-ins draw their
// parameters from the invoking command (j, qubit count, cutoff).
struct StateCtx {
  double j = 0.5;
  int qubits = 2;
  int cutoff = hw::default_cutoff;
  int dim_hint = 2;
};

Operator resolve_state(const std::string& arg, const StateCtx& ctx) {
  if (std::filesystem::exists(arg)) return states::load(arg);
  if (arg == "spin_up") return states::spin_up(ctx.j);
  if (arg == "spin_down") return states::spin_down(ctx.j);
  if (arg == "vacuum") return states::fock(ctx.cutoff, 0);
  if (arg == "ghz") return states::ghz(ctx.qubits);
  if (arg == "w_state") return states::w_state(ctx.qubits);
  if (arg == "bell") return states::bell(0);
  if (arg == "mixed") return states::maximally_mixed(ctx.dim_hint);
  fail("state.resolve", "'" + arg + "' is neither a file nor a built-in state name");
}

double infer_j(const Operator& rho, std::optional<double> j_opt) {
  if (j_opt) return *j_opt;
  return (rho.rows() - 1) / 2.0;
}

void print_json(const json& doc) { std::cout << doc.dump(2) << '\n'; }

json report_json(const AxiomReport& rep) {
  json doc;
  doc["family"] = family_name(rep.spec.family);
  doc["s"] = rep.spec.s;
  if (rep.spec.family == Family::SU2) doc["j"] = rep.spec.j;
  if (rep.spec.family == Family::SUN) doc["n"] = rep.spec.n;
  if (rep.spec.family == Family::HW) doc["cutoff"] = rep.spec.cutoff;
  doc["seed"] = rep.seed;
  doc["monte_carlo"] = rep.monte_carlo;
  doc["cutoff_caveat"] = rep.cutoff_caveat;
  doc["wall_seconds"] = rep.wall_seconds;
  doc["all_pass"] = rep.all_pass();
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  doc["checks"] = std::move(checks);
  return doc;
}

// ---------------------------------------------------------------- kernel verify

struct VerifyArgs {
  std::string family = "su2";
  double s = 0.0;
  double j = 0.5;
  int n = 2;
  int cutoff = hw::default_cutoff;
  std::uint64_t seed = 1;
  bool mc = false;
  int mc_samples = 100000;
  int trials = 4;
  double extent = 4.5;
  int points = 61;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  auto fam = family_from_name(a.family);
  require(fam.has_value(), "cli.family", "unknown family '" + a.family + "'");
  KernelSpec spec;
  spec.family = *fam;
  spec.s = a.s;
  spec.j = a.j;
  spec.n = a.n;
  spec.cutoff = a.cutoff;
  VerifyOptions opts;
  opts.monte_carlo = a.mc;
  opts.mc_samples = a.mc_samples;
  opts.trials = a.trials;
  opts.frame.hw_extent = a.extent;
  opts.frame.hw_points = a.points;

  json params = {{"family", a.family}, {"s", a.s},       {"seed", a.seed},
                 {"monte_carlo", a.mc}, {"trials", a.trials}};
  if (spec.family == Family::SU2) params["j"] = a.j;
  if (spec.family == Family::SUN) { params["n"] = a.n; params["mc_samples"] = a.mc_samples; }
  if (spec.family == Family::HW) {
    params["cutoff"] = a.cutoff;
    params["extent"] = a.extent;
    params["points"] = a.points;
  }
  CommandRun run(params, a.seed);

  AxiomReport rep = verify_stratonovich_weyl(spec, a.seed, opts);
  json doc = report_json(rep);
  if (!a.out.empty()) {
    run.emit(out_path(a.out), doc.dump(2) + "\n");
    doc["warnings"] = run.finish();
  } else {
    doc["warnings"] = run.finish();
  }
  print_json(doc);
  return rep.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string family = "su2";
  std::optional<double> j;
  int cutoff = hw::default_cutoff;
  std::string state;
  std::string grid;  // ThetaxPhi | QxP | net
  int degree = 0;    // su2 quadrature degree override
  double extent = 4.5;
  int points = 61;
  std::string out;
};

// kind: 0 = s-function at the given s, 1 = characteristic (Weyl) function.
int run_eval(const EvalArgs& a, int kind, double s, const char* name) {
  auto fam = family_from_name(a.family);
  require(fam.has_value(), "cli.family", "unknown family '" + a.family + "'");
  StateCtx ctx;
  ctx.cutoff = a.cutoff;
  if (a.j) { ctx.j = *a.j; ctx.dim_hint = static_cast<int>(std::lround(2.0 * *a.j + 1.0)); }
  Operator rho = resolve_state(a.state, ctx);

  json params = {{"family", a.family}, {"function", name}, {"state", a.state},
                 {"grid", a.grid},     {"s", s}};
  CommandRun run(params);

  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  if (*fam == Family::SU2) {
    double j = infer_j(rho, a.j);
    require(rho.rows() == su2::dim_of(j), "cli.dim",
            "state dimension does not match 2j+1 for j=" + format_double(j));
    params["j"] = j;
    if (a.grid == "net") {
      require(kind == 0, "cli.grid", "the reconstruction net serves s-function sampling only");
      header = {"theta", "phi", "value"};
      for (const auto& p : tomography::sample_standard_net(rho, j, s))
        rows.push_back({p.theta, p.phi, p.value});
    } else {
      require(a.grid == "ThetaxPhi", "cli.grid",
              "family su2 supports --grid ThetaxPhi or net, got '" + a.grid + "'");
      KernelSpec spec;
      spec.family = Family::SU2;
      spec.j = j;
      FrameOptions fopts;
      fopts.exact_degree = a.degree;
      auto frame = make_frame(spec, fopts);
      if (kind == 0) {
        header = {"theta", "phi", "value"};
        auto values = evaluate_frame(*frame, rho, s);
        for (std::size_t i = 0; i < frame->size(); ++i) {
          auto c = frame->coords(i);
          rows.push_back({c[0], c[1], values[i]});
        }
      } else {
        header = {"theta", "phi", "re", "im"};
        for (std::size_t i = 0; i < frame->size(); ++i) {
          auto c = frame->coords(i);
          cd v = su2::weyl(rho, j, c[1], c[0], 0.0);
          rows.push_back({c[0], c[1], v.real(), v.imag()});
        }
      }
    }
  } else if (*fam == Family::HW) {
    require(a.grid == "QxP", "cli.grid",
            "family hw supports --grid QxP, got '" + a.grid + "'");
    require(rho.rows() == a.cutoff + 1, "cli.dim",
            "state dimension does not match cutoff+1");
    params["cutoff"] = a.cutoff;
    params["extent"] = a.extent;
    params["points"] = a.points;
    KernelSpec spec;
    spec.family = Family::HW;
    spec.cutoff = a.cutoff;
    FrameOptions fopts;
    fopts.hw_extent = a.extent;
    fopts.hw_points = a.points;
    auto frame = make_frame(spec, fopts);
    double r2 = std::sqrt(2.0);
    if (kind == 0) {
      header = {"q", "p", "value"};
      auto values = evaluate_frame(*frame, rho, s);
      for (std::size_t i = 0; i < frame->size(); ++i) {
        auto c = frame->coords(i);
        rows.push_back({r2 * c[0], r2 * c[1], values[i]});
      }
    } else {
      header = {"u", "v", "re", "im"};
      for (std::size_t i = 0; i < frame->size(); ++i) {
        auto c = frame->coords(i);
        cd v = hw::characteristic(rho, cd(c[0], c[1]), 0.0);
        rows.push_back({r2 * c[0], r2 * c[1], v.real(), v.imag()});
      }
    }
  } else if (*fam == Family::Wootters) {
    require(rho.rows() == 2, "cli.dim", "the discrete lattice is a single-qubit phase space");
    if (kind == 0) {
      header = {"z", "x", "value"};
      auto table = wootters::wigner(rho, s);
      for (int i = 0; i < 4; ++i)
        rows.push_back({double(i / 2), double(i % 2), table[(std::size_t)i]});
    } else {
      header = {"zt", "xt", "re", "im"};
      auto table = wootters::discrete_weyl(rho);
      for (int i = 0; i < 4; ++i)
        rows.push_back(
            {double(i / 2), double(i % 2), table[(std::size_t)i].real(), table[(std::size_t)i].imag()});
    }
  } else {
    fail("cli.family", "eval supports families su2, hw, wootters");
  }

  run.emit(out_path(a.out), csv_text(header, rows));
  run.finish();
  return 0;
}

// ---------------------------------------------------------------- transform

struct TransformArgs {
  std::string family = "su2";
  double j = 0.5;
  int cutoff = hw::default_cutoff;
  double from_s = 0.0;
  double to_s = 0.0;
  int degree = 0;
  double extent = 4.5;
  int points = 61;
  std::string in;
  std::string out;
};

int run_transform(const TransformArgs& a) {
  auto fam = family_from_name(a.family);
  require(fam.has_value(), "cli.family", "unknown family '" + a.family + "'");
  require(*fam != Family::SUN && *fam != Family::Composite, "cli.family",
          "transform supports families su2, hw, wootters");
  KernelSpec spec;
  spec.family = *fam;
  spec.j = a.j;
  spec.cutoff = a.cutoff;
  FrameOptions fopts;
  fopts.exact_degree = a.degree;
  fopts.hw_extent = a.extent;
  fopts.hw_points = a.points;
  auto frame = make_frame(spec, fopts);

  json params = {{"family", a.family}, {"from_s", a.from_s}, {"to_s", a.to_s}, {"in", a.in}};
  if (*fam == Family::SU2) params["j"] = a.j;
  if (*fam == Family::HW) {
    params["cutoff"] = a.cutoff;
    params["extent"] = a.extent;
    params["points"] = a.points;
  }
  CommandRun run(params);

  Csv csv = parse_csv(read_file(a.in));
  require(csv.header.size() == 3, "transform.columns",
          "expected a 3-column CSV (two coordinates and a value)");
  require(csv.rows.size() == frame->size(), "transform.grid",
          "CSV has " + std::to_string(csv.rows.size()) + " rows but the frame has " +
              std::to_string(frame->size()) + " nodes; pass the grid options used by eval");
  double coord_scale = *fam == Family::HW ? std::sqrt(2.0) : 1.0;
  std::vector<double> values(csv.rows.size());
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    auto c = frame->coords(i);
    require(std::abs(csv.rows[i][0] - coord_scale * c[0]) < 1e-9 &&
                std::abs(csv.rows[i][1] - coord_scale * c[1]) < 1e-9,
            "transform.grid", "row " + std::to_string(i) + " coordinates do not match the frame (" +
                frame->describe(i) + ")");
    values[i] = csv.rows[i][2];
  }

  auto out_values = generalized_fourier(*frame, values, a.from_s, a.to_s);
  std::vector<std::vector<double>> rows(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    rows[i] = {csv.rows[i][0], csv.rows[i][1], out_values[i]};
  run.emit(out_path(a.out), csv_text(csv.header, rows));
  run.finish();
  return 0;
}

// ---------------------------------------------------------------- slice

struct SliceArgs {
  std::string state;
  int qubits = 3;
  double s = 0.0;
  int points = 181;
  std::string out;
};

int run_slice(const SliceArgs& a, const std::string& kind) {
  StateCtx ctx;
  ctx.qubits = a.qubits;
  ctx.dim_hint = 1 << a.qubits;
  Operator rho = resolve_state(a.state, ctx);
  require(rho.rows() == (Eigen::Index{1} << a.qubits), "cli.dim",
          "state dimension does not match 2^qubits");

  std::vector<KernelSpec> specs(static_cast<std::size_t>(a.qubits));
  for (auto& f : specs) {
    f.family = Family::SU2;
    f.j = 0.5;
    f.s = a.s;
  }

  composite::SliceSpec slice;
  std::vector<double> u_grid, v_grid{0.0};
  auto fill = [](std::vector<double>& g, int n, double lo, double hi, bool endpoint) {
    g.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      g[(std::size_t)i] = lo + (hi - lo) * i / double(endpoint ? n - 1 : n);
  };
  if (kind == "equal-angle") {
    slice = composite::SliceSpec::equal_angle();
    fill(u_grid, a.points, 0.0, pi, true);
    fill(v_grid, a.points, 0.0, 2.0 * pi, false);
  } else if (kind == "equatorial") {
    slice = composite::SliceSpec::equatorial();
    fill(u_grid, a.points, 0.0, 2.0 * pi, false);
  } else {
    slice = composite::SliceSpec::axis_pair();
    fill(u_grid, a.points, 0.0, pi, true);
    fill(v_grid, a.points, 0.0, pi, true);
  }

  json params = {{"slice", kind},   {"state", a.state}, {"qubits", a.qubits},
                 {"s", a.s},        {"points", a.points}};
  CommandRun run(params);

  auto samples = composite::slice_evaluate(rho, specs, slice, u_grid, v_grid);
  std::vector<std::vector<double>> rows;
  rows.reserve(samples.size());
  for (const auto& p : samples) rows.push_back({p.u, p.v, p.value});
  run.emit(out_path(a.out), csv_text({"u", "v", "value"}, rows));
  run.finish();
  return 0;
}

// ---------------------------------------------------------------- metrics

struct MetricsArgs {
  std::string state;
  std::string state2;
  std::string family;
  std::optional<double> j;
  double s = 0.0;
  std::string method = "matrix";
  std::string axis = "z";
  std::optional<double> tol;
  std::string out;
};

int run_metrics(const MetricsArgs& a, const std::string& which) {
  StateCtx ctx;
  if (a.j) { ctx.j = *a.j; ctx.dim_hint = static_cast<int>(std::lround(2.0 * *a.j + 1.0)); }
  Operator rho = resolve_state(a.state, ctx);
  double j = infer_j(rho, a.j);

  json params = {{"metric", which}, {"state", a.state}};
  if (!a.state2.empty()) params["state2"] = a.state2;
  CommandRun run(params);

  json doc;
  doc["metric"] = which;

  auto frame_for = [&](Family f) {
    KernelSpec spec;
    spec.family = f;
    spec.j = j;
    return make_frame(spec);
  };

  if (which == "purity") {
    if (a.family == "su2") {
      auto frame = frame_for(Family::SU2);
      doc["value"] = metrics::purity_from_samples(*frame, evaluate_frame(*frame, rho, 0.0));
      doc["method"] = "phase-space";
    } else {
      doc["value"] = metrics::purity(rho);
      doc["method"] = "matrix";
    }
  } else if (which == "fidelity") {
    require(!a.state2.empty(), "cli.state2", "fidelity needs --state2");
    Operator sigma = resolve_state(a.state2, ctx);
    require(sigma.rows() == rho.rows(), "cli.dim", "states have different dimensions");
    if (!a.family.empty()) {
      auto fam = family_from_name(a.family);
      require(fam.has_value(), "cli.family", "unknown family '" + a.family + "'");
      auto frame = frame_for(*fam);
      metrics::SampledFunction f1{a.s, evaluate_frame(*frame, rho, a.s)};
      metrics::SampledFunction f2{-a.s, evaluate_frame(*frame, sigma, -a.s)};
      doc["value"] = metrics::fidelity_ps(*frame, f1, f2);
      doc["method"] = "phase-space";
      doc["s"] = a.s;
    } else {
      doc["value"] = (rho * sigma).trace().real();
      doc["method"] = "matrix";
    }
  } else if (which == "trace-distance") {
    require(!a.state2.empty(), "cli.state2", "trace-distance needs --state2");
    Operator sigma = resolve_state(a.state2, ctx);
    require(sigma.rows() == rho.rows(), "cli.dim", "states have different dimensions");
    if (a.method == "phase-space") {
      doc["value"] = metrics::trace_distance_qubit_ps(rho, sigma);
      doc["method"] = "phase-space";
    } else {
      doc["value"] = metrics::trace_distance(rho, sigma);
      doc["method"] = "matrix";
    }
  } else if (which == "negativity") {
    if (a.family == "wootters") {
      doc["value"] = metrics::negativity_volume_discrete(rho);
    } else {
      doc["value"] = metrics::negativity_volume(rho, j, a.tol.value_or(1e-7));
      doc["j"] = j;
    }
  } else if (which == "wehrl") {
    doc["value"] = metrics::wehrl_entropy(rho, j, a.tol.value_or(1e-9));
    doc["j"] = j;
  } else if (which == "expect") {
    metrics::SpinAxis axis = a.axis == "x"   ? metrics::SpinAxis::X
                             : a.axis == "y" ? metrics::SpinAxis::Y
                                             : metrics::SpinAxis::Z;
    require(a.axis == "x" || a.axis == "y" || a.axis == "z", "cli.axis",
            "--axis must be x, y or z");
    doc["value"] = metrics::expectation_from_moments(rho, j, axis);
    doc["axis"] = a.axis;
    doc["j"] = j;
  } else {
    fail("cli.metric", "unknown metric '" + which + "'");
  }

  if (!a.out.empty()) run.emit(out_path(a.out), doc.dump(2) + "\n");
  doc["warnings"] = run.finish();
  print_json(doc);
  return 0;
}

// ---------------------------------------------------------------- dfe

struct DfeArgs {
  std::string target;
  std::string state;
  int qubits = 2;
  long samples = 100000;
  std::uint64_t seed = 1;
  std::string out;
};

int run_dfe(const DfeArgs& a) {
  StateCtx ctx;
  ctx.qubits = a.qubits;
  ctx.dim_hint = 1 << a.qubits;
  Operator target = resolve_state(a.target, ctx);
  Operator actual = a.state.empty() ? target : resolve_state(a.state, ctx);

  json params = {{"target", a.target}, {"samples", a.samples}, {"seed", a.seed}};
  if (!a.state.empty()) params["state"] = a.state;
  CommandRun run(params, a.seed);

  auto est = metrics::dfe_sample(target, actual, a.samples, a.seed, a.target);
  json doc = {{"target", est.target},
              {"samples", est.samples},
              {"seed", est.seed},
              {"estimate", est.estimate},
              {"std_error", est.std_error},
              {"min_sampled_weight", est.min_sampled_weight},
              {"max_sampled_weight", est.max_sampled_weight}};
  if (!a.out.empty()) run.emit(out_path(a.out), doc.dump(2) + "\n");
  doc["warnings"] = run.finish();
  print_json(doc);
  return 0;
}

// ---------------------------------------------------------------- reconstruct

struct ReconstructArgs {
  double j = 0.5;
  std::string samples;
  double s = 0.0;
  std::string out;
};

int run_reconstruct(const ReconstructArgs& a) {
  json params = {{"j", a.j}, {"samples", a.samples}, {"s", a.s}};
  CommandRun run(params);

  Csv csv = parse_csv(read_file(a.samples));
  require(csv.header == std::vector<std::string>({"theta", "phi", "value"}), "reconstruct.columns",
          "expected header theta,phi,value");
  std::vector<tomography::GridSample> samples;
  samples.reserve(csv.rows.size());
  for (const auto& row : csv.rows) samples.push_back({row[0], row[1], row[2]});

  auto rec = tomography::reconstruct_from_grid(a.j, samples, a.s);
  json doc;
  doc["report"] = {{"condition_number", rec.condition_number},
                   {"fit_residual", rec.fit_residual},
                   {"hermiticity_residual", rec.hermiticity_residual},
                   {"trace_renormalization", rec.trace_renormalization}};
  doc["state"] = json::parse(states::to_json(rec.rho));
  if (!a.out.empty()) run.emit(out_path(a.out), doc.dump(2) + "\n");
  doc["warnings"] = run.finish();
  print_json(doc);
  return 0;
}

// ---------------------------------------------------------------- evolve

struct EvolveArgs {
  std::string hamiltonian = "harmonic";
  std::string state = "coherent";
  std::string grid = "128x128";
  double qmin = -6.0, qmax = 6.0, pmin = -6.0, pmax = 6.0;
  double hbar = 1.0;
  double q0 = 0.0, p0 = 0.0;
  int cutoff = hw::default_cutoff;
  double dt = 0.01;
  int steps = 100;
  std::string out;
  std::string csv;
};

moyal::PhaseGrid parse_grid(const EvolveArgs& a) {
  auto xpos = a.grid.find('x');
  require(xpos != std::string::npos, "cli.grid", "--grid expects NQxNP, e.g. 128x128");
  moyal::PhaseGrid g;
  try {
    g.nq = std::stoi(a.grid.substr(0, xpos));
    g.np = std::stoi(a.grid.substr(xpos + 1));
  } catch (const std::exception&) {
    fail("cli.grid", "--grid expects NQxNP, e.g. 128x128");
  }
  g.q_min = a.qmin;
  g.q_max = a.qmax;
  g.p_min = a.pmin;
  g.p_max = a.pmax;
  g.hbar = a.hbar;
  g.validate();
  return g;
}

moyal::GridFunction hamiltonian_from_file(const moyal::PhaseGrid& grid, const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    fail("hamiltonian.parse", std::string("not valid JSON: ") + e.what());
  }
  require(doc.contains("terms") && doc["terms"].is_array(), "hamiltonian.schema",
          "expected {\"terms\": [{\"q\": int, \"p\": int, \"coeff\": number}, ...]}");
  std::vector<moyal::Monomial> poly;
  for (const auto& t : doc["terms"]) {
    moyal::Monomial m;
    m.qpow = t.at("q").get<int>();
    m.ppow = t.at("p").get<int>();
    m.coeff = t.at("coeff").get<double>();
    require(m.qpow >= 0 && m.ppow >= 0, "hamiltonian.schema", "powers must be non-negative");
    poly.push_back(m);
  }
  return moyal::GridFunction::from_poly(grid, std::move(poly));
}

bool is_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[8] = {};
  in.read(magic, 8);
  return in.gcount() == 8 && std::string(magic, 8) == "QPSGRID1";
}

int run_evolve(const EvolveArgs& a) {
  json params = {{"hamiltonian", a.hamiltonian},
                 {"state", a.state},
                 {"grid", a.grid},
                 {"q_range", {a.qmin, a.qmax}},
                 {"p_range", {a.pmin, a.pmax}},
                 {"hbar", a.hbar},
                 {"dt", a.dt},
                 {"steps", a.steps}};
  CommandRun run(params);

  moyal::GridFunction w0 = [&] {
    if (a.state == "coherent") {
      moyal::PhaseGrid grid = parse_grid(a);
      return moyal::coherent_wigner(grid, a.q0, a.p0);
    }
    require(std::filesystem::exists(a.state), "state.resolve",
            "'" + a.state + "' is neither a file nor 'coherent'");
    if (is_snapshot_file(a.state)) return moyal::read_snapshot(a.state);
    require(a.hbar == 1.0, "cli.hbar",
            "Fock-space states sample the hbar = 1 Wigner convention");
    Operator rho = states::load(a.state);
    require(rho.rows() == a.cutoff + 1, "cli.dim", "state dimension does not match cutoff+1");
    moyal::PhaseGrid grid = parse_grid(a);
    Eigen::MatrixXcd values(grid.nq, grid.np);
    for (int i = 0; i < grid.nq; ++i)
      for (int k = 0; k < grid.np; ++k)
        values(i, k) = hw::wigner(rho, cd(grid.q(i), grid.p(k)) / std::sqrt(2.0));
    return moyal::GridFunction::from_samples(grid, std::move(values));
  }();

  moyal::GridFunction h = [&] {
    if (a.hamiltonian == "harmonic" || a.hamiltonian == "linear" || a.hamiltonian == "quartic")
      return moyal::named_hamiltonian(w0.grid, a.hamiltonian);
    require(std::filesystem::exists(a.hamiltonian), "cli.hamiltonian",
            "--hamiltonian must be harmonic, linear, quartic or a JSON file");
    return hamiltonian_from_file(w0.grid, a.hamiltonian);
  }();

  auto rep = moyal::evolve(w0, h, a.dt, a.steps);
  moyal::write_snapshot(rep.result, out_path(a.out));
  run.note(out_path(a.out));
  if (!a.csv.empty()) {
    moyal::write_csv(rep.result, out_path(a.csv));
    run.note(out_path(a.csv));
  }

  json doc = {{"dt", rep.dt},
              {"steps", rep.steps},
              {"dt_limit", rep.dt_limit},
              {"mass_initial", rep.mass_initial},
              {"mass_final", rep.mass_final},
              {"mass_drift", rep.mass_drift},
              {"purity_initial", rep.purity_initial},
              {"purity_final", rep.purity_final},
              {"out", out_path(a.out)}};
  doc["warnings"] = run.finish();
  print_json(doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  g_command = join_command(argc, argv);

  CLI::App app{"phase-space kernels, transforms, metrics and Moyal dynamics"};
  app.set_version_flag("--version", library_version);
  app.require_subcommand(1);
  app.add_option_function<int>(
      "--threads", [](int t) { if (t > 0) Eigen::setNbThreads(t); },
      "cap internal parallelism");

  int rc = 0;

  // kernel verify
  VerifyArgs va;
  auto* kernel = app.add_subcommand("kernel", "kernel-level operations");
  kernel->require_subcommand(1);
  auto* verify = kernel->add_subcommand("verify", "check the correspondence axioms numerically");
  verify->add_option("--family", va.family, "hw | su2 | wootters | sun")->required();
  verify->add_option("--s", va.s, "ordering parameter in [-1, 1]");
  verify->add_option("--j", va.j, "spin (su2)");
  verify->add_option("--n", va.n, "dimension (sun)");
  verify->add_option("--cutoff", va.cutoff, "Fock cutoff (hw)");
  verify->add_option("--seed", va.seed, "random seed")->required();
  verify->add_flag("--mc", va.mc, "Monte Carlo sampling for sun instead of moment calculus");
  verify->add_option("--mc-samples", va.mc_samples, "Monte Carlo sample count");
  verify->add_option("--trials", va.trials, "random operator pairs per check");
  verify->add_option("--extent", va.extent, "alpha-grid half-width (hw)");
  verify->add_option("--points", va.points, "alpha-grid points per axis (hw)");
  verify->add_option("--out", va.out, "write the report JSON here as well");
  verify->callback([&] { rc = run_verify(va); });

  // wigner/qfunc/weyl eval
  EvalArgs ea;
  auto add_eval = [&](const char* name, const char* blurb, int kind, double s) {
    auto* top = app.add_subcommand(name, blurb);
    top->require_subcommand(1);
    auto* ev = top->add_subcommand("eval", "evaluate on a grid and write CSV");
    ev->add_option("--family", ea.family, "su2 | hw | wootters");
    ev->add_option("--j", ea.j, "spin (su2; inferred from the state when omitted)");
    ev->add_option("--cutoff", ea.cutoff, "Fock cutoff (hw)");
    ev->add_option("--state", ea.state, "state file or built-in name")->required();
    ev->add_option("--grid", ea.grid, "ThetaxPhi | QxP | net");
    ev->add_option("--degree", ea.degree, "quadrature degree override (su2)");
    ev->add_option("--extent", ea.extent, "alpha-grid half-width (hw)");
    ev->add_option("--points", ea.points, "alpha-grid points per axis (hw)");
    ev->add_option("--out", ea.out, "output CSV path")->required();
    ev->callback([&, kind, s, name] {
      if (ea.grid.empty()) ea.grid = ea.family == "hw" ? "QxP" : "ThetaxPhi";
      double sv = s;
      rc = run_eval(ea, kind, sv, name);
    });
  };
  add_eval("wigner", "s = 0 phase-space function", 0, 0.0);
  add_eval("qfunc", "s = -1 (Husimi) phase-space function", 0, -1.0);
  add_eval("weyl", "characteristic function", 1, 0.0);

  // transform
  TransformArgs ta;
  auto* tr = app.add_subcommand("transform", "re-express samples at a different ordering parameter");
  tr->add_option("--family", ta.family, "su2 | hw | wootters");
  tr->add_option("--j", ta.j, "spin (su2)");
  tr->add_option("--cutoff", ta.cutoff, "Fock cutoff (hw)");
  tr->add_option("--from-s", ta.from_s, "ordering parameter of the input samples")->required();
  tr->add_option("--to-s", ta.to_s, "ordering parameter of the output")->required();
  tr->add_option("--degree", ta.degree, "quadrature degree override (su2)");
  tr->add_option("--extent", ta.extent, "alpha-grid half-width (hw)");
  tr->add_option("--points", ta.points, "alpha-grid points per axis (hw)");
  tr->add_option("--in", ta.in, "input CSV (from eval, same grid options)")->required();
  tr->add_option("--out", ta.out, "output CSV path")->required();
  tr->callback([&] { rc = run_transform(ta); });

  // slice
  SliceArgs sa;
  auto* slice = app.add_subcommand("slice", "low-dimensional cuts of multiqubit functions");
  slice->require_subcommand(1);
  for (const char* kind : {"equal-angle", "equatorial", "axis-pair"}) {
    auto* sub = slice->add_subcommand(kind);
    sub->add_option("--state", sa.state, "state file or built-in name")->required();
    sub->add_option("--qubits", sa.qubits, "qubit count")->required();
    sub->add_option("--s", sa.s, "ordering parameter");
    sub->add_option("--points", sa.points, "grid points per free variable");
    sub->add_option("--out", sa.out, "output CSV path")->required();
    sub->callback([&, kind] { rc = run_slice(sa, kind); });
  }

  // metrics
  MetricsArgs ma;
  auto* metrics_cmd = app.add_subcommand("metrics", "scalar diagnostics");
  metrics_cmd->require_subcommand(1);
  for (const char* which :
       {"purity", "fidelity", "trace-distance", "negativity", "wehrl", "expect"}) {
    auto* sub = metrics_cmd->add_subcommand(which);
    sub->add_option("--state", ma.state, "state file or built-in name")->required();
    sub->add_option("--state2", ma.state2, "second state (fidelity, trace-distance)");
    sub->add_option("--family", ma.family, "phase-space route (su2 | wootters | hw)");
    sub->add_option("--j", ma.j, "spin (inferred from the state when omitted)");
    sub->add_option("--s", ma.s, "ordering parameter (phase-space fidelity)");
    sub->add_option("--method", ma.method, "matrix | phase-space (trace-distance)");
    sub->add_option("--axis", ma.axis, "x | y | z (expect)");
    sub->add_option("--tol", ma.tol, "integration tolerance (negativity, wehrl)");
    sub->add_option("--out", ma.out, "write the JSON here as well");
    sub->callback([&, which] { rc = run_metrics(ma, which); });
  }

  // dfe
  DfeArgs da;
  auto* dfe = app.add_subcommand("dfe", "direct fidelity estimation by Pauli sampling");
  dfe->add_option("--target", da.target, "pure target state (file or built-in)")->required();
  dfe->add_option("--state", da.state, "actual state (defaults to the target)");
  dfe->add_option("--qubits", da.qubits, "qubit count for built-in names");
  dfe->add_option("--samples", da.samples, "Pauli samples")->required();
  dfe->add_option("--seed", da.seed, "random seed")->required();
  dfe->add_option("--out", da.out, "write the JSON here as well");
  dfe->callback([&] { rc = run_dfe(da); });

  // reconstruct
  ReconstructArgs ra;
  auto* rec = app.add_subcommand("reconstruct", "density operator from phase-space samples");
  rec->add_option("--j", ra.j, "spin")->required();
  rec->add_option("--samples", ra.samples, "CSV with header theta,phi,value")->required();
  rec->add_option("--s", ra.s, "ordering parameter of the samples");
  rec->add_option("--out", ra.out, "write the state + report JSON here as well");
  rec->callback([&] { rc = run_reconstruct(ra); });

  // evolve
  EvolveArgs ev;
  auto* evolve = app.add_subcommand("evolve", "Moyal-bracket time evolution on a phase grid");
  evolve->add_option("--hamiltonian", ev.hamiltonian, "harmonic | linear | quartic | JSON file");
  evolve->add_option("--state", ev.state, "'coherent', a snapshot file, or a Fock StateFile");
  evolve->add_option("--grid", ev.grid, "NQxNP, e.g. 128x128");
  evolve->add_option("--qmin", ev.qmin, "q lower edge");
  evolve->add_option("--qmax", ev.qmax, "q upper edge");
  evolve->add_option("--pmin", ev.pmin, "p lower edge");
  evolve->add_option("--pmax", ev.pmax, "p upper edge");
  evolve->add_option("--hbar", ev.hbar, "Planck constant of the grid");
  evolve->add_option("--q0", ev.q0, "coherent-state centre q");
  evolve->add_option("--p0", ev.p0, "coherent-state centre p");
  evolve->add_option("--cutoff", ev.cutoff, "Fock cutoff for StateFile inputs");
  evolve->add_option("--dt", ev.dt, "time step")->required();
  evolve->add_option("--steps", ev.steps, "step count")->required();
  evolve->add_option("--out", ev.out, "output snapshot path")->required();
  evolve->add_option("--csv", ev.csv, "also write the final grid as CSV");
  evolve->callback([&] { rc = run_evolve(ev); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    json err = {{"error", {{"code", "cli.usage"}, {"message", e.what()}}}};
    std::cerr << err.dump() << '\n';
    return 2;
  } catch (const Error& e) {
    json err = {{"error", {{"code", e.code()}, {"message", e.what()}}}};
    std::cerr << err.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    json err = {{"error", {{"code", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << '\n';
    return 3;
  }
  return rc;
}
