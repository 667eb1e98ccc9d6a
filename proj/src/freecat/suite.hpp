#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freecat/checkers.hpp"
#include "freecat/report.hpp"

namespace freecat {

struct SuiteOptions {
  int bound = 4;
  int max_shape = 3;
  bool dual = false;
  std::vector<std::string> checks;  // names from check_names(), or "all"
  std::optional<std::pair<std::string, std::string>> sigma_exp;  // families A, B
  bool presheaf_omega = false;
  std::optional<std::string> presheaf_path;  // presheaf file to summarize
};

// Parses the category text, runs the requested checks in check_names()
// order, and records the requested constructions under extras.
// Throws ParseError / CategoryError / InvalidArgument / Io.
ReportDocument run_suite(const std::string& category_text, const SuiteOptions& opts);
ReportDocument run_suite_file(const std::string& path, const SuiteOptions& opts);

}  // namespace freecat
