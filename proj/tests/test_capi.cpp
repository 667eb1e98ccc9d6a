#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "freecat/freecat.h"

namespace {

std::string fixture_path(const std::string& name) { return std::string(FREECAT_FIXTURE_DIR) + "/" + name; }

int cli(const std::string& args) {
  const std::string cmd = std::string(FREECAT_CLI) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Loaded {
  freecat_category* k = nullptr;
  explicit Loaded(const std::string& name) {
    REQUIRE(freecat_category_load(fixture_path(name).c_str(), &k) == FREECAT_OK);
  }
  ~Loaded() { freecat_category_free(k); }
};

}  // namespace

TEST_CASE("load, inspect and free") {
  Loaded c("chain2.cat");
  CHECK(freecat_category_object_count(c.k) == 2);
  CHECK(freecat_category_morphism_count(c.k) == 3);
  CHECK(freecat_category_closure_count(c.k) == 0);
  CHECK(freecat_category_closure(c.k, 0) == nullptr);

  freecat_category* k = nullptr;
  REQUIRE(freecat_category_parse("objects: a b\nmorphisms:\nf a b\ng b a\n", &k) == FREECAT_OK);
  CHECK(freecat_category_closure_count(k) == 2);
  CHECK(std::string(freecat_category_closure(k, 0)) == "f g = id_b");
  freecat_category_free(k);
  freecat_category_free(nullptr);
  CHECK(std::string(freecat_version()) == "0.1.0");
}

TEST_CASE("error statuses") {
  freecat_category* k = nullptr;
  CHECK(freecat_category_load("/nonexistent/x.cat", &k) == FREECAT_ERR_IO);
  CHECK(k == nullptr);
  CHECK(std::string(freecat_last_error()).size() > 0);
  CHECK(freecat_category_parse("objects: a\nmorphisms:\nf a c\n", &k) == FREECAT_ERR_PARSE);
  CHECK(std::string(freecat_last_error()).find("line 3") != std::string::npos);
  CHECK(freecat_category_parse("objects: a\nmorphisms:\nf a a\n", &k) == FREECAT_ERR_MALFORMED_TABLE);
  CHECK(freecat_category_parse(nullptr, &k) == FREECAT_ERR_INVALID_ARGUMENT);
  CHECK(std::string(freecat_status_name(FREECAT_ERR_PARSE)) == "ParseError");

  Loaded c("chain2.cat");
  freecat_run_options opts;
  freecat_run_options_init(&opts);
  const char* bogus[] = {"no-such-check"};
  opts.checks = bogus;
  opts.check_count = 1;
  freecat_report* r = nullptr;
  CHECK(freecat_run(c.k, &opts, &r) == FREECAT_ERR_INVALID_ARGUMENT);
  CHECK(r == nullptr);
  opts.checks = nullptr;
  opts.check_count = 0;
  opts.bound = -3;
  CHECK(freecat_run(c.k, &opts, &r) == FREECAT_ERR_INVALID_ARGUMENT);
  CHECK(freecat_report_parse("{", &r) == FREECAT_ERR_PARSE);
}

TEST_CASE("run, render, parse back") {
  Loaded c("m3.cat");
  freecat_run_options opts;
  freecat_run_options_init(&opts);
  CHECK(opts.bound == 4);
  CHECK(opts.max_shape == 3);
  const char* checks[] = {"cartesian-multi-closed", "strict-initial"};
  opts.checks = checks;
  opts.check_count = 2;
  opts.sigma_exp_base = "a";
  opts.sigma_exp_target = "0";
  freecat_report* r = nullptr;
  REQUIRE(freecat_run(c.k, &opts, &r) == FREECAT_OK);
  REQUIRE(freecat_report_count(r) == 2);
  CHECK(std::string(freecat_report_name(r, 0)) == "cartesian-multi-closed");
  CHECK(std::string(freecat_report_verdict(r, 0)) == "fails-with-witness");
  CHECK(std::string(freecat_report_verdict(r, 1)) == "holds-constructively");
  CHECK(freecat_report_name(r, 2) == nullptr);

  char* machine = nullptr;
  REQUIRE(freecat_report_render(r, FREECAT_FORMAT_MACHINE, &machine) == FREECAT_OK);
  freecat_report* back = nullptr;
  REQUIRE(freecat_report_parse(machine, &back) == FREECAT_OK);
  CHECK(freecat_report_equal(r, back));

  char* text = nullptr;
  REQUIRE(freecat_report_render(r, FREECAT_FORMAT_TEXT, &text) == FREECAT_OK);
  CHECK(std::string(text).find("[fails-with-witness] cartesian-multi-closed") != std::string::npos);

  freecat_report* again = nullptr;
  REQUIRE(freecat_run(c.k, &opts, &again) == FREECAT_OK);
  char* machine2 = nullptr;
  REQUIRE(freecat_report_render(again, FREECAT_FORMAT_MACHINE, &machine2) == FREECAT_OK);
  CHECK(std::string(machine) == std::string(machine2));

  freecat_string_free(machine);
  freecat_string_free(machine2);
  freecat_string_free(text);
  freecat_report_free(r);
  freecat_report_free(back);
  freecat_report_free(again);
}

TEST_CASE("command line exit codes") {
  const std::string chain2 = fixture_path("chain2.cat");
  CHECK(cli("run " + chain2 + " --check multi-topos") == 0);
  CHECK(cli("run " + fixture_path("parallel_pair.cat") + " --check all --bound 2 --max-shape 2") == 0);
  CHECK(cli("run /nonexistent.cat") == 2);
  CHECK(cli("run " + chain2 + " --check bogus") == 2);
  CHECK(cli("run " + chain2 + " --sigma-exp zz 0") == 2);
  CHECK(cli("run " + chain2 + " --format yaml") != 0);
  CHECK(cli("") != 0);

  const std::string out = "capi_cli_out.json";
  REQUIRE(cli("run " + chain2 + " --check strict-initial --presheaf-omega --format machine --out " + out) == 0);
  const auto text = slurp(out);
  freecat_report* r = nullptr;
  REQUIRE(freecat_report_parse(text.c_str(), &r) == FREECAT_OK);
  CHECK(freecat_report_count(r) == 1);
  freecat_report_free(r);
  std::remove(out.c_str());
}
