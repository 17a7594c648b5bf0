#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qps/io.hpp"
#include "qps/manifest.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const fs::path& scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("qps_cli." + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string at(const std::string& name) { return (scratch() / name).string(); }

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  ++counter;
  std::string so = at("stdout." + std::to_string(counter));
  std::string se = at("stderr." + std::to_string(counter));
  std::string cmd = std::string("\"") + QPS_CLI_PATH + "\" " + args + " >" + so + " 2>" + se;
  int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = qps::read_file(so);
  r.err = qps::read_file(se);
  return r;
}

// Rows of a small numeric CSV, header dropped.
std::vector<std::vector<double>> csv_rows(const std::string& path) {
  std::string text = qps::read_file(path);
  std::vector<std::vector<double>> rows;
  std::size_t pos = text.find('\n');
  REQUIRE(pos != std::string::npos);
  ++pos;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::vector<double> row;
    std::size_t cell = pos;
    while (cell < eol) {
      std::size_t comma = text.find(',', cell);
      if (comma == std::string::npos || comma > eol) comma = eol;
      row.push_back(std::stod(text.substr(cell, comma - cell)));
      cell = comma + 1;
    }
    if (!row.empty()) rows.push_back(std::move(row));
    pos = eol + 1;
  }
  return rows;
}

std::string write_state(const std::string& name, const json& doc) {
  std::string path = at(name);
  qps::write_file_atomic(path, doc.dump() + "\n");
  return path;
}

}  // namespace

TEST_CASE("version flag prints the library version") {
  auto r = run_cli("--version");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("kernel verify reports per-axiom checks and writes a hashed manifest") {
  auto r = run_cli("kernel verify --family su2 --j 1 --seed 5 --out " + at("report.json"));
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["family"] == "su2");
  CHECK(doc["j"] == 1.0);
  CHECK(doc["all_pass"] == true);
  CHECK(doc["checks"].size() >= 5);
  for (const auto& c : doc["checks"]) {
    CHECK(c["pass"] == true);
    CHECK(c["residual"].get<double>() < c["tolerance"].get<double>());
  }

  json saved = json::parse(qps::read_file(at("report.json")));
  CHECK(saved["all_pass"] == true);

  json man = json::parse(qps::read_file(at("report.json.manifest.json")));
  CHECK(man["seed"] == 5);
  CHECK(man["parameters"]["family"] == "su2");
  std::string recorded = man["outputs"][at("report.json")];
  CHECK(recorded == qps::fnv1a_hex(qps::read_file(at("report.json"))));
}

TEST_CASE("kernel verify exits 1 when a check fails and 2 on bad usage") {
  auto coarse = run_cli("kernel verify --family hw --cutoff 16 --points 41 --seed 3");
  CHECK(coarse.code == 1);
  json doc = json::parse(coarse.out);
  CHECK(doc["all_pass"] == false);

  auto bad = run_cli("kernel verify --family su9 --seed 3");
  CHECK(bad.code == 2);
  json err = json::parse(bad.err);
  CHECK(err["error"]["code"] == "cli.family");
}

TEST_CASE("eval output is byte-identical across reruns") {
  std::string state = write_state(
      "tilted.json",
      {{"kind", "spin_coherent"}, {"params", {{"j", 1.0}, {"theta", 0.9}, {"phi", 0.4}}}});
  auto r1 = run_cli("wigner eval --family su2 --state " + state + " --out " + at("w1.csv"));
  auto r2 = run_cli("wigner eval --family su2 --state " + state + " --out " + at("w2.csv"));
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  CHECK(qps::read_file(at("w1.csv")) == qps::read_file(at("w2.csv")));
}

TEST_CASE("transform inverts eval output onto the dual ordering and back") {
  std::string state = write_state(
      "tilted2.json",
      {{"kind", "spin_coherent"}, {"params", {{"j", 1.5}, {"theta", 1.1}, {"phi", 2.0}}}});
  CHECK(run_cli("wigner eval --family su2 --state " + state + " --out " + at("w.csv")).code == 0);
  CHECK(run_cli("qfunc eval --family su2 --state " + state + " --out " + at("q_direct.csv")).code ==
        0);
  CHECK(run_cli("transform --family su2 --j 1.5 --from-s 0 --to-s -1 --in " + at("w.csv") +
                " --out " + at("q.csv"))
            .code == 0);
  CHECK(run_cli("transform --family su2 --j 1.5 --from-s -1 --to-s 0 --in " + at("q.csv") +
                " --out " + at("w_back.csv"))
            .code == 0);

  auto q = csv_rows(at("q.csv"));
  auto q_direct = csv_rows(at("q_direct.csv"));
  auto w = csv_rows(at("w.csv"));
  auto w_back = csv_rows(at("w_back.csv"));
  REQUIRE(q.size() == q_direct.size());
  REQUIRE(w.size() == w_back.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    CHECK(std::abs(q[i][2] - q_direct[i][2]) < 1e-10);
  for (std::size_t i = 0; i < w.size(); ++i)
    CHECK(std::abs(w[i][2] - w_back[i][2]) < 1e-10);
}

TEST_CASE("transform rejects samples that do not match the frame") {
  std::string stray = at("stray.csv");
  qps::write_file_atomic(stray, "theta,phi,value\n0.1,0.2,0.3\n");
  auto r = run_cli("transform --family su2 --j 1 --from-s 0 --to-s -1 --in " + stray + " --out " +
                   at("junk.csv"));
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error"]["code"] == "transform.grid");
}

TEST_CASE("missing state files produce a structured error") {
  auto r = run_cli("wigner eval --family su2 --state " + at("no_such_state.json") + " --out " +
                   at("junk2.csv"));
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error"]["code"] == "state.resolve");
}

TEST_CASE("negativity metric matches the qubit closed form") {
  auto r = run_cli("metrics negativity --state spin_up --j 0.5");
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(std::abs(doc["value"].get<double>() - (1.0 / std::sqrt(3.0) - 0.5)) < 1e-5);
}

TEST_CASE("seeded estimators reproduce their output files exactly") {
  std::string args = "dfe --target bell --qubits 2 --samples 20000 --seed 7 --out ";
  auto r1 = run_cli(args + at("dfe1.json"));
  auto r2 = run_cli(args + at("dfe2.json"));
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  CHECK(qps::read_file(at("dfe1.json")) == qps::read_file(at("dfe2.json")));
  json doc = json::parse(qps::read_file(at("dfe1.json")));
  CHECK(doc["estimate"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(doc["std_error"].get<double>() < 1e-9);
}

TEST_CASE("equatorial slice of a three-qubit GHZ state changes sign six times") {
  auto r = run_cli("slice equatorial --state ghz --qubits 3 --points 240 --out " + at("ghz.csv"));
  CHECK(r.code == 0);
  auto rows = csv_rows(at("ghz.csv"));
  REQUIRE(rows.size() == 240);
  int flips = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double a = rows[i][2];
    double b = rows[(i + 1) % rows.size()][2];
    if (a * b < 0.0) ++flips;
  }
  CHECK(flips == 6);
}

TEST_CASE("evolve writes reproducible snapshots that chain as inputs") {
  std::string args =
      "evolve --hamiltonian harmonic --grid 64x64 --q0 1 --dt 0.01 --steps 50 --out ";
  auto r1 = run_cli(args + at("snap1.bin"));
  auto r2 = run_cli(args + at("snap2.bin"));
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  CHECK(qps::read_file(at("snap1.bin")) == qps::read_file(at("snap2.bin")));

  json doc = json::parse(r1.out);
  CHECK(doc["mass_drift"].get<double>() < 1e-8);
  CHECK(doc["dt_limit"].get<double>() > 0.01);

  auto chained = run_cli("evolve --hamiltonian harmonic --state " + at("snap1.bin") +
                         " --dt 0.01 --steps 50 --out " + at("snap3.bin"));
  CHECK(chained.code == 0);
  CHECK(json::parse(chained.out)["mass_drift"].get<double>() < 1e-8);
}
