#include "qps/manifest.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qps/io.hpp"
#include "qps/types.hpp"

namespace qps {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

std::string hash_file(const std::string& path) { return fnv1a_hex(read_file(path)); }

RunManifest::RunManifest() : version(library_version) {}

void RunManifest::emit_output(const std::string& path, const std::string& bytes) {
  write_file_atomic(path, bytes);
  outputs.emplace_back(path, fnv1a_hex(bytes));
}

std::string RunManifest::to_json() const {
  nlohmann::json doc;
  doc["command"] = command;
  doc["parameters"] = nlohmann::json::parse(parameters_json);
  doc["seed"] = seed;
  doc["version"] = version;
  doc["wall_seconds"] = wall_seconds;
  nlohmann::json outs = nlohmann::json::object();
  for (const auto& [path, hash] : outputs) outs[path] = hash;
  doc["outputs"] = std::move(outs);
  doc["warnings"] = warnings;
  return doc.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const { write_file_atomic(path, to_json()); }

void write_file_atomic(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), "io.write", "cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    require(out.good(), "io.write", "short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    fail("io.write", "cannot rename into '" + path + "': " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "io.read", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace qps
