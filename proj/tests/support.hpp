#pragma once

#include <string>

#include "freecat/io.hpp"

inline freecat::ParsedCategory fixture(const std::string& name) {
  return freecat::load_category(std::string(FREECAT_FIXTURE_DIR) + "/" + name + ".cat");
}

inline std::string fixture_path(const std::string& file) { return std::string(FREECAT_FIXTURE_DIR) + "/" + file; }
