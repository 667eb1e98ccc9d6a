#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freecat/freecat.h"

namespace {

int fail(const char* what) {
  std::cerr << "freecat: " << what << ": " << freecat_last_error() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite categories, their free coproduct completion, and presheaf checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(freecat_version()));

  auto* run = app.add_subcommand("run", "Run checks and constructions on a category file");
  std::string category_path;
  int bound = 4;
  int max_shape = 3;
  bool dual = false;
  std::vector<std::string> checks;
  std::vector<std::string> sigma_exp;
  bool presheaf_omega = false;
  std::string presheaf_path;
  std::string format = "text";
  std::string out_path;

  run->add_option("category", category_path, "Category file")->required();
  run->add_option("--bound", bound, "Size bound for family and presheaf quantifications")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--max-shape", max_shape, "Diagram shapes: objects and arrows")->check(CLI::NonNegativeNumber);
  run->add_option("--check", checks, "Check name, or all (repeatable)");
  run->add_flag("--dual", dual, "Work in the dual category");
  run->add_option("--sigma-exp", sigma_exp, "Exponential of two families, e.g. --sigma-exp a 0")->expected(2);
  run->add_flag("--presheaf-omega", presheaf_omega, "Report the sizes of Ω");
  run->add_option("--presheaf", presheaf_path, "Presheaf file to summarize");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "machine"}));
  run->add_option("--out", out_path, "Write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  freecat_category* category = nullptr;
  if (freecat_category_load(category_path.c_str(), &category) != FREECAT_OK) return fail(category_path.c_str());

  std::vector<const char*> names;
  for (const auto& c : checks) names.push_back(c.c_str());
  freecat_run_options options;
  freecat_run_options_init(&options);
  options.bound = bound;
  options.max_shape = max_shape;
  options.dual = dual;
  options.checks = names.data();
  options.check_count = names.size();
  if (sigma_exp.size() == 2) {
    options.sigma_exp_base = sigma_exp[0].c_str();
    options.sigma_exp_target = sigma_exp[1].c_str();
  }
  options.presheaf_omega = presheaf_omega;
  if (!presheaf_path.empty()) options.presheaf_path = presheaf_path.c_str();

  freecat_report* report = nullptr;
  const auto status = freecat_run(category, &options, &report);
  freecat_category_free(category);
  if (status != FREECAT_OK) return fail("run");

  char* text = nullptr;
  const auto rendered =
      freecat_report_render(report, format == "machine" ? FREECAT_FORMAT_MACHINE : FREECAT_FORMAT_TEXT, &text);
  freecat_report_free(report);
  if (rendered != FREECAT_OK) return fail("render");

  int code = 0;
  if (out_path.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "freecat: cannot write " << out_path << "\n";
      code = 2;
    }
  }
  freecat_string_free(text);
  return code;
}
