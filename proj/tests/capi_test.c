/* Exercises the shared library through its C header only. */
#include <stdio.h>
#include <string.h>

#include "conduche/conduche.h"

static int failures = 0;

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

static const char* kD1 =
    "category E { objects: a, c; arrows: m: a -> c }\n"
    "category B { objects: 0, 1, 2; arrows: u: 0 -> 1, v: 1 -> 2, w: 0 -> 2; compose: v . u = w }\n"
    "functor d1 : E -> B { objects: a -> 0, c -> 2; arrows: m -> w }\n"
    "functor id : B -> B { objects: 0 -> 0, 1 -> 1, 2 -> 2; arrows: u -> u, v -> v, w -> w }\n";

static void test_workspace(void) {
  conduche_workspace* ws = NULL;
  EXPECT(conduche_workspace_parse(kD1, strlen(kD1), 0, &ws) == CONDUCHE_OK);
  EXPECT(ws != NULL);
  EXPECT(conduche_workspace_count(ws, CONDUCHE_CATEGORY) == 2);
  EXPECT(conduche_workspace_count(ws, CONDUCHE_FUNCTOR) == 2);
  EXPECT(conduche_workspace_count(ws, CONDUCHE_SSET) == 0);
  EXPECT(strcmp(conduche_workspace_name(ws, CONDUCHE_FUNCTOR, 0), "d1") == 0);
  EXPECT(conduche_workspace_name(ws, CONDUCHE_FUNCTOR, 2) == NULL);

  EXPECT(conduche_is_exponentiable(ws, "d1") == 0);
  EXPECT(conduche_is_exponentiable(ws, "id") == 1);
  EXPECT(conduche_is_exponentiable(ws, "nope") == -1);
  EXPECT(strstr(conduche_last_error(), "nope") != NULL);

  conduche_options o;
  conduche_options_init(&o);
  o.json = 1;
  o.functor = "d1";
  conduche_report* r = NULL;
  EXPECT(conduche_run("check-exp", ws, "inline", &o, &r) == CONDUCHE_OK);
  EXPECT(conduche_report_exit_code(r) == 1);
  EXPECT(strstr(conduche_report_output(r), "\"non_surjective\"") != NULL);
  conduche_report_free(r);

  o.functor = "id";
  EXPECT(conduche_run("check-pushout", ws, "inline", &o, &r) == CONDUCHE_OK);
  EXPECT(conduche_report_exit_code(r) == 0);
  conduche_report_free(r);

  /* Two functors and none chosen is a usage error. */
  o.functor = NULL;
  EXPECT(conduche_run("check-exp", ws, "inline", &o, &r) == CONDUCHE_OK);
  EXPECT(conduche_report_exit_code(r) == 2);
  EXPECT(strlen(conduche_report_error(r)) > 0);
  conduche_report_free(r);

  conduche_workspace_free(ws);
}

static void test_errors(void) {
  conduche_workspace* ws = NULL;
  const char* bad = "category A { objects x }";
  EXPECT(conduche_workspace_parse(bad, strlen(bad), 0, &ws) == CONDUCHE_E_SYNTAX);
  EXPECT(ws == NULL);
  EXPECT(strlen(conduche_last_error()) > 0);

  const char* loop = "category M { objects: o; arrows: e: o -> o }";
  EXPECT(conduche_workspace_parse(loop, strlen(loop), 100, &ws) == CONDUCHE_E_BUDGET);

  const char* unresolved = "functor f : A -> B { }";
  EXPECT(conduche_workspace_parse(unresolved, strlen(unresolved), 0, &ws) == CONDUCHE_E_UNRESOLVED);

  EXPECT(conduche_workspace_parse(NULL, 4, 0, &ws) == CONDUCHE_E_INVALID_ARGUMENT);
  EXPECT(conduche_workspace_load("/nonexistent/x.fincat", 0, &ws) == CONDUCHE_E_IO);

  conduche_report* r = NULL;
  EXPECT(conduche_run("check-exp", NULL, "x", NULL, &r) == CONDUCHE_E_INVALID_ARGUMENT);
  EXPECT(conduche_run_file("check-exp", "/nonexistent/x.fincat", NULL, &r) == CONDUCHE_E_IO);
  EXPECT(conduche_report_exit_code(NULL) == 2);
  conduche_report_free(NULL);
  conduche_workspace_free(NULL);
}

static void test_corpus(void) {
  conduche_options o;
  conduche_options_init(&o);
  EXPECT(o.max_objects == 5);
  EXPECT(o.max_morphisms == 15);
  o.count = 3;
  o.max_objects = 3;
  o.max_morphisms = 8;
  conduche_report* a = NULL;
  conduche_report* b = NULL;
  EXPECT(conduche_run_file("corpus", NULL, &o, &a) == CONDUCHE_OK);
  EXPECT(conduche_run("corpus", NULL, "", &o, &b) == CONDUCHE_OK);
  EXPECT(conduche_report_exit_code(a) == 0);
  EXPECT(strcmp(conduche_report_output(a), conduche_report_output(b)) == 0);
  EXPECT(strstr(conduche_report_output(a), "functor f0") != NULL);
  conduche_report_free(a);
  conduche_report_free(b);
}

int main(void) {
  EXPECT(strlen(conduche_version()) > 0);
  test_workspace();
  test_errors();
  test_corpus();
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("capi: all checks passed\n");
  return failures ? 1 : 0;
}
