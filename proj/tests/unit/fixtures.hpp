#pragma once

#include <string>

#include "eulercert/io.hpp"

inline std::string fixture(const std::string& rel) { return std::string(EULERCERT_FIXTURE_DIR) + "/" + rel; }

inline eulercert::GroupPtr fixture_group(const std::string& name) {
  return eulercert::io::load_group(fixture("groups/" + name + ".json"));
}
