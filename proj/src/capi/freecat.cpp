#include "freecat/freecat.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "freecat/io.hpp"
#include "freecat/suite.hpp"

struct freecat_category {
  std::string text;
  freecat::ParsedCategory parsed;
};

struct freecat_report {
  freecat::ReportDocument document;
};

namespace {

thread_local std::string last_error;

freecat_status status_of(freecat::ErrorCode code) {
  using freecat::ErrorCode;
  switch (code) {
    case ErrorCode::MalformedTable: return FREECAT_ERR_MALFORMED_TABLE;
    case ErrorCode::LawViolation: return FREECAT_ERR_LAW_VIOLATION;
    case ErrorCode::UnknownObject: return FREECAT_ERR_UNKNOWN_OBJECT;
    case ErrorCode::UnknownMorphism: return FREECAT_ERR_UNKNOWN_MORPHISM;
    case ErrorCode::NotComposable: return FREECAT_ERR_NOT_COMPOSABLE;
    case ErrorCode::NotProductComplete: return FREECAT_ERR_NOT_PRODUCT_COMPLETE;
    case ErrorCode::NoPullbacks: return FREECAT_ERR_NO_PULLBACKS;
    case ErrorCode::NotAClassifier: return FREECAT_ERR_NOT_A_CLASSIFIER;
    case ErrorCode::NotFinitelyComplete: return FREECAT_ERR_NOT_FINITELY_COMPLETE;
    case ErrorCode::NotMono: return FREECAT_ERR_NOT_MONO;
    case ErrorCode::NotEquivalenceRelation: return FREECAT_ERR_NOT_EQUIVALENCE_RELATION;
    case ErrorCode::ParseError: return FREECAT_ERR_PARSE;
    case ErrorCode::InvalidArgument: return FREECAT_ERR_INVALID_ARGUMENT;
    case ErrorCode::Io: return FREECAT_ERR_IO;
  }
  return FREECAT_ERR_INTERNAL;
}

template <class F>
freecat_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return FREECAT_OK;
  } catch (const freecat::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  }
  return FREECAT_ERR_INTERNAL;
}

freecat_status invalid(const char* message) {
  last_error = message;
  return FREECAT_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* freecat_version(void) { return freecat::kToolVersion.data(); }

const char* freecat_last_error(void) { return last_error.c_str(); }

const char* freecat_status_name(freecat_status status) {
  switch (status) {
    case FREECAT_OK: return "ok";
    case FREECAT_ERR_INTERNAL: return "internal";
    default: break;
  }
  const int index = static_cast<int>(status) - 1;
  if (index < 0 || index > static_cast<int>(freecat::ErrorCode::Io)) return "unknown";
  return freecat::to_string(static_cast<freecat::ErrorCode>(index)).data();
}

void freecat_run_options_init(freecat_run_options* options) {
  if (!options) return;
  *options = freecat_run_options{};
  options->bound = 4;
  options->max_shape = 3;
}

freecat_status freecat_category_parse(const char* text, freecat_category** out) {
  if (!text || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<freecat_category>();
    c->text = text;
    c->parsed = freecat::parse_category(c->text);
    *out = c.release();
  });
}

freecat_status freecat_category_load(const char* path, freecat_category** out) {
  if (!path || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<freecat_category>();
    c->text = freecat::read_file(path);
    c->parsed = freecat::parse_category(c->text);
    *out = c.release();
  });
}

void freecat_category_free(freecat_category* category) { delete category; }

int freecat_category_object_count(const freecat_category* category) {
  return category ? category->parsed.category.object_count() : 0;
}

int freecat_category_morphism_count(const freecat_category* category) {
  return category ? category->parsed.category.morphism_count() : 0;
}

size_t freecat_category_closure_count(const freecat_category* category) {
  return category ? category->parsed.closure.size() : 0;
}

const char* freecat_category_closure(const freecat_category* category, size_t index) {
  if (!category || index >= category->parsed.closure.size()) return nullptr;
  return category->parsed.closure[index].c_str();
}

freecat_status freecat_run(const freecat_category* category, const freecat_run_options* options,
                           freecat_report** out) {
  if (!category || !options || !out) return invalid("null argument");
  if (options->check_count && !options->checks) return invalid("checks is null");
  if (!options->sigma_exp_base != !options->sigma_exp_target)
    return invalid("sigma exponential needs both a base and a target");
  *out = nullptr;
  return guarded([&] {
    freecat::SuiteOptions s;
    s.bound = options->bound;
    s.max_shape = options->max_shape;
    s.dual = options->dual != 0;
    for (size_t i = 0; i < options->check_count; ++i) {
      if (!options->checks[i]) throw freecat::Error(freecat::ErrorCode::InvalidArgument, "null check name");
      s.checks.emplace_back(options->checks[i]);
    }
    if (options->sigma_exp_base) s.sigma_exp.emplace(options->sigma_exp_base, options->sigma_exp_target);
    s.presheaf_omega = options->presheaf_omega != 0;
    if (options->presheaf_path) s.presheaf_path = options->presheaf_path;
    auto r = std::make_unique<freecat_report>();
    r->document = freecat::run_suite(category->text, s);
    *out = r.release();
  });
}

freecat_status freecat_report_parse(const char* machine_text, freecat_report** out) {
  if (!machine_text || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    auto r = std::make_unique<freecat_report>();
    r->document = freecat::parse_machine(machine_text);
    *out = r.release();
  });
}

freecat_status freecat_report_render(const freecat_report* report, freecat_format format, char** out) {
  if (!report || !out) return invalid("null argument");
  if (format != FREECAT_FORMAT_TEXT && format != FREECAT_FORMAT_MACHINE) return invalid("unknown format");
  *out = nullptr;
  return guarded([&] {
    *out = copy_string(format == FREECAT_FORMAT_TEXT ? freecat::render_text(report->document)
                                                     : freecat::render_machine(report->document));
  });
}

size_t freecat_report_count(const freecat_report* report) { return report ? report->document.reports.size() : 0; }

const char* freecat_report_name(const freecat_report* report, size_t index) {
  if (!report || index >= report->document.reports.size()) return nullptr;
  return report->document.reports[index].name.c_str();
}

const char* freecat_report_verdict(const freecat_report* report, size_t index) {
  if (!report || index >= report->document.reports.size()) return nullptr;
  return freecat::to_string(report->document.reports[index].verdict).data();
}

int freecat_report_equal(const freecat_report* a, const freecat_report* b) {
  return a && b && a->document == b->document;
}

void freecat_report_free(freecat_report* report) { delete report; }

void freecat_string_free(char* s) { std::free(s); }

}
