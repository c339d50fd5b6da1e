#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "rankvote/ballots.hpp"

namespace testing_support {

inline std::string fixture_path(const std::string& name) { return std::string(RANKVOTE_FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline rankvote::Profile load(const std::string& name) { return rankvote::parse_profile(read_fixture(name)); }

}  // namespace testing_support
