#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace test_helpers {

// Digit vector from a string of single-character digits; separators and
// whitespace are ignored, so expected values can be written block by block.
inline std::vector<std::uint64_t> dv(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (char c : text)
    if (c >= '0' && c <= '9') out.push_back(static_cast<std::uint64_t>(c - '0'));
  return out;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(ALTSS_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace test_helpers
