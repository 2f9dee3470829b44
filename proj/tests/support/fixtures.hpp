#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "lenslab/format.hpp"

namespace fixtures {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline std::string example_path() { return std::string(LENSLAB_DATA_DIR) + "/example_4_2.lenslab"; }

/// The worked example: A, B, C, D, F, G, Ḡ, F̄, COSPAN_EX4, SPAN_EX4, SQ_EX4.
inline lenslab::Workspace example() { return lenslab::parse(read_file(example_path())); }

}  // namespace fixtures
