#ifndef FREECAT_FREECAT_H
#define FREECAT_FREECAT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(FREECAT_BUILDING)
#define FREECAT_API __attribute__((visibility("default")))
#else
#define FREECAT_API
#endif

typedef enum freecat_status {
  FREECAT_OK = 0,
  FREECAT_ERR_MALFORMED_TABLE,
  FREECAT_ERR_LAW_VIOLATION,
  FREECAT_ERR_UNKNOWN_OBJECT,
  FREECAT_ERR_UNKNOWN_MORPHISM,
  FREECAT_ERR_NOT_COMPOSABLE,
  FREECAT_ERR_NOT_PRODUCT_COMPLETE,
  FREECAT_ERR_NO_PULLBACKS,
  FREECAT_ERR_NOT_A_CLASSIFIER,
  FREECAT_ERR_NOT_FINITELY_COMPLETE,
  FREECAT_ERR_NOT_MONO,
  FREECAT_ERR_NOT_EQUIVALENCE_RELATION,
  FREECAT_ERR_PARSE,
  FREECAT_ERR_INVALID_ARGUMENT,
  FREECAT_ERR_IO,
  FREECAT_ERR_INTERNAL
} freecat_status;

typedef enum freecat_format { FREECAT_FORMAT_TEXT = 0, FREECAT_FORMAT_MACHINE = 1 } freecat_format;

typedef struct freecat_category freecat_category;
typedef struct freecat_report freecat_report;

typedef struct freecat_run_options {
  int bound;
  int max_shape;
  int dual;
  const char* const* checks; /* check names or "all" */
  size_t check_count;
  const char* sigma_exp_base;   /* family text, e.g. "a,b"; NULL to skip */
  const char* sigma_exp_target; /* required when sigma_exp_base is set */
  int presheaf_omega;
  const char* presheaf_path; /* NULL to skip */
} freecat_run_options;

FREECAT_API const char* freecat_version(void);
/* Message of the last failed call on this thread; empty when none. */
FREECAT_API const char* freecat_last_error(void);
FREECAT_API const char* freecat_status_name(freecat_status status);

/* Defaults: bound 4, max_shape 3, no checks. */
FREECAT_API void freecat_run_options_init(freecat_run_options* options);

FREECAT_API freecat_status freecat_category_parse(const char* text, freecat_category** out);
FREECAT_API freecat_status freecat_category_load(const char* path, freecat_category** out);
FREECAT_API void freecat_category_free(freecat_category* category);
FREECAT_API int freecat_category_object_count(const freecat_category* category);
FREECAT_API int freecat_category_morphism_count(const freecat_category* category);
/* Composites filled in by the parser, as "g f = h". */
FREECAT_API size_t freecat_category_closure_count(const freecat_category* category);
FREECAT_API const char* freecat_category_closure(const freecat_category* category, size_t index);

FREECAT_API freecat_status freecat_run(const freecat_category* category, const freecat_run_options* options,
                                       freecat_report** out);
FREECAT_API freecat_status freecat_report_parse(const char* machine_text, freecat_report** out);
/* The caller releases *out with freecat_string_free. */
FREECAT_API freecat_status freecat_report_render(const freecat_report* report, freecat_format format, char** out);
FREECAT_API size_t freecat_report_count(const freecat_report* report);
FREECAT_API const char* freecat_report_name(const freecat_report* report, size_t index);
/* "holds-constructively", "fails-with-witness" or "not-applicable". */
FREECAT_API const char* freecat_report_verdict(const freecat_report* report, size_t index);
FREECAT_API int freecat_report_equal(const freecat_report* a, const freecat_report* b);
FREECAT_API void freecat_report_free(freecat_report* report);
FREECAT_API void freecat_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
