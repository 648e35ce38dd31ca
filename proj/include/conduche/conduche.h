/* C interface to the conduche library. All strings are UTF-8 and owned by
 * the library; they stay valid until the owning handle is freed. */
#ifndef CONDUCHE_H
#define CONDUCHE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CONDUCHE_API __declspec(dllexport)
#else
#define CONDUCHE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum conduche_status {
  CONDUCHE_OK = 0,
  CONDUCHE_E_INVALID_ARGUMENT = 1,
  CONDUCHE_E_IO = 2,
  CONDUCHE_E_SYNTAX = 3,
  CONDUCHE_E_UNRESOLVED = 4,
  CONDUCHE_E_VALIDATION = 5,
  CONDUCHE_E_BUDGET = 6,
  CONDUCHE_E_NOT_EXPONENTIABLE = 7,
  CONDUCHE_E_AMBIGUOUS = 8,
  CONDUCHE_E_INTERNAL = 9
} conduche_status;

typedef enum conduche_kind {
  CONDUCHE_CATEGORY = 0,
  CONDUCHE_FUNCTOR = 1,
  CONDUCHE_SSET = 2,
  CONDUCHE_PROFUNCTOR = 3
} conduche_kind;

typedef struct conduche_workspace conduche_workspace;
typedef struct conduche_report conduche_report;

typedef struct conduche_options {
  int json;
  int fail_fast;
  int force;
  uint64_t seed;
  size_t max_objects;
  size_t max_morphisms;
  size_t count;
  size_t x_objects;
  size_t x_morphisms;
  uint64_t budget; /* 0: CONDUCHE_BUDGET or the built-in default */
  const char* functor;        /* NULL: the only functor in the file */
  const char* second_functor; /* exponent target P -> B; NULL: same as functor */
  const char* pair_u;         /* complete-horn: restrict to (pair_u, pair_v) */
  const char* pair_v;
} conduche_options;

CONDUCHE_API const char* conduche_version(void);

/* Message of the last failed call on this thread, or "". */
CONDUCHE_API const char* conduche_last_error(void);

CONDUCHE_API void conduche_options_init(conduche_options* options);

CONDUCHE_API conduche_status conduche_workspace_parse(const char* text, size_t length, uint64_t closure_budget,
                                                      conduche_workspace** out);
CONDUCHE_API conduche_status conduche_workspace_load(const char* path, uint64_t closure_budget,
                                                     conduche_workspace** out);
CONDUCHE_API void conduche_workspace_free(conduche_workspace* ws);
CONDUCHE_API size_t conduche_workspace_count(const conduche_workspace* ws, conduche_kind kind);
CONDUCHE_API const char* conduche_workspace_name(const conduche_workspace* ws, conduche_kind kind, size_t index);

/* Runs a command on a parsed workspace (ws may be NULL for "corpus"). */
CONDUCHE_API conduche_status conduche_run(const char* command, const conduche_workspace* ws, const char* input,
                                          const conduche_options* options, conduche_report** out);

/* Reads and parses `path` first; parse failures become a report with exit
 * code 2 rather than an error status. */
CONDUCHE_API conduche_status conduche_run_file(const char* command, const char* path,
                                               const conduche_options* options, conduche_report** out);

CONDUCHE_API int conduche_report_exit_code(const conduche_report* r);
CONDUCHE_API const char* conduche_report_output(const conduche_report* r);
CONDUCHE_API const char* conduche_report_error(const conduche_report* r);
CONDUCHE_API void conduche_report_free(conduche_report* r);

/* Quick verdict: 1 exponentiable, 0 not, -1 on error. */
CONDUCHE_API int conduche_is_exponentiable(const conduche_workspace* ws, const char* functor);

#ifdef __cplusplus
}
#endif

#endif
