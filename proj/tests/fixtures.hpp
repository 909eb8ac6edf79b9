#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "crn/model.hpp"

inline std::string fixture_path(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline crn::ReactionNetwork load_fixture(const std::string& name) {
  return crn::parse_network(read_fixture(name));
}
