#pragma once

#include <string>

namespace qps {

// Writes via a temp file in the same directory plus rename, so readers never
// observe a partial file.
void write_file_atomic(const std::string& path, const std::string& bytes);

std::string read_file(const std::string& path);

// Shortest round-trip decimal form (17 significant digits).
std::string format_double(double v);

}  // namespace qps
