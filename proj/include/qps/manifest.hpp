#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qps {

// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a(std::string_view bytes);
std::string fnv1a_hex(std::string_view bytes);
std::string hash_file(const std::string& path);

// Provenance sidecar written next to every CLI output file. The output
// hashes are over file contents, so a rerun with the same command and seed
// reproduces them even though wall time differs.
struct RunManifest {
  std::string command;
  std::string parameters_json = "{}";
  std::uint64_t seed = 0;
  std::string version;
  double wall_seconds = 0.0;
  std::vector<std::pair<std::string, std::string>> outputs;
  std::vector<std::string> warnings;

  RunManifest();

  // Writes bytes to path atomically and records its content hash.
  void emit_output(const std::string& path, const std::string& bytes);
  std::string to_json() const;
  // Conventionally written to <first output>.manifest.json.
  void write(const std::string& path) const;
};

}  // namespace qps
