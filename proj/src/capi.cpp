#include "conduche/conduche.h"

#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "conduche/commands.hpp"
#include "conduche/dsl.hpp"
#include "conduche/error.hpp"
#include "conduche/exponentiable.hpp"

struct conduche_workspace {
  conduche::Workspace ws;
};

struct conduche_report {
  conduche::CommandResult result;
};

namespace {

thread_local std::string g_last_error;

conduche_status status_of(conduche::ErrorKind kind) {
  using conduche::ErrorKind;
  switch (kind) {
    case ErrorKind::Syntax: return CONDUCHE_E_SYNTAX;
    case ErrorKind::UnresolvedName: return CONDUCHE_E_UNRESOLVED;
    case ErrorKind::BudgetExceeded:
    case ErrorKind::ClosureBudgetExceeded: return CONDUCHE_E_BUDGET;
    case ErrorKind::NotExponentiable: return CONDUCHE_E_NOT_EXPONENTIABLE;
    case ErrorKind::AmbiguousComposition: return CONDUCHE_E_AMBIGUOUS;
    case ErrorKind::InvalidArgument: return CONDUCHE_E_INVALID_ARGUMENT;
    default: return CONDUCHE_E_VALIDATION;
  }
}

conduche_status fail(conduche_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
conduche_status guarded(Body&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const conduche::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CONDUCHE_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CONDUCHE_E_INTERNAL, e.what());
  }
}

conduche::CommandOptions to_options(const conduche_options* o) {
  conduche::CommandOptions c;
  if (!o) return c;
  c.json = o->json != 0;
  c.fail_fast = o->fail_fast != 0;
  c.force = o->force != 0;
  c.seed = o->seed;
  c.max_objects = o->max_objects;
  c.max_morphisms = o->max_morphisms;
  c.count = o->count;
  c.x_objects = o->x_objects;
  c.x_morphisms = o->x_morphisms;
  if (o->budget) c.budget = o->budget;
  if (o->functor || o->second_functor) c.functors.emplace_back(o->functor ? o->functor : "");
  if (o->second_functor) c.functors.emplace_back(o->second_functor);
  if (o->pair_u && o->pair_v) c.pair = std::make_pair(std::string(o->pair_u), std::string(o->pair_v));
  return c;
}

bool read_file(const char* path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace

extern "C" {

const char* conduche_version(void) { return conduche::kToolVersion; }

const char* conduche_last_error(void) { return g_last_error.c_str(); }

void conduche_options_init(conduche_options* o) {
  if (!o) return;
  const conduche::CommandOptions d;
  *o = conduche_options{};
  o->seed = d.seed;
  o->max_objects = d.max_objects;
  o->max_morphisms = d.max_morphisms;
  o->count = d.count;
  o->x_objects = d.x_objects;
  o->x_morphisms = d.x_morphisms;
}

conduche_status conduche_workspace_parse(const char* text, size_t length, uint64_t closure_budget,
                                         conduche_workspace** out) {
  if (!out || (!text && length > 0)) return fail(CONDUCHE_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    conduche::ParseOptions po;
    if (closure_budget) po.closure_budget = closure_budget;
    auto* handle = new conduche_workspace{conduche::parse_workspace(std::string_view(text ? text : "", length), po)};
    *out = handle;
    return CONDUCHE_OK;
  });
}

conduche_status conduche_workspace_load(const char* path, uint64_t closure_budget, conduche_workspace** out) {
  if (!path || !out) return fail(CONDUCHE_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  std::string text;
  if (!read_file(path, text)) return fail(CONDUCHE_E_IO, std::string("cannot read ") + path);
  return conduche_workspace_parse(text.data(), text.size(), closure_budget, out);
}

void conduche_workspace_free(conduche_workspace* ws) { delete ws; }

size_t conduche_workspace_count(const conduche_workspace* ws, conduche_kind kind) {
  if (!ws) return 0;
  switch (kind) {
    case CONDUCHE_CATEGORY: return ws->ws.categories.size();
    case CONDUCHE_FUNCTOR: return ws->ws.functors.size();
    case CONDUCHE_SSET: return ws->ws.ssets.size();
    case CONDUCHE_PROFUNCTOR: return ws->ws.profunctors.size();
  }
  return 0;
}

const char* conduche_workspace_name(const conduche_workspace* ws, conduche_kind kind, size_t index) {
  if (!ws || index >= conduche_workspace_count(ws, kind)) return nullptr;
  switch (kind) {
    case CONDUCHE_CATEGORY: return ws->ws.categories[index].name.c_str();
    case CONDUCHE_FUNCTOR: return ws->ws.functors[index].name.c_str();
    case CONDUCHE_SSET: return ws->ws.ssets[index].name.c_str();
    case CONDUCHE_PROFUNCTOR: return ws->ws.profunctors[index].name.c_str();
  }
  return nullptr;
}

conduche_status conduche_run(const char* command, const conduche_workspace* ws, const char* input,
                             const conduche_options* options, conduche_report** out) {
  if (!command || !out) return fail(CONDUCHE_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  const std::string_view cmd(command);
  if (!ws && cmd != "corpus") return fail(CONDUCHE_E_INVALID_ARGUMENT, "command needs a workspace");
  return guarded([&] {
    const conduche::Workspace empty;
    auto* r = new conduche_report{
        conduche::run_command(cmd, ws ? ws->ws : empty, input ? input : "", to_options(options))};
    *out = r;
    return CONDUCHE_OK;
  });
}

conduche_status conduche_run_file(const char* command, const char* path, const conduche_options* options,
                                  conduche_report** out) {
  if (!command || !out) return fail(CONDUCHE_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  std::string text;
  if (std::string_view(command) != "corpus") {
    if (!path) return fail(CONDUCHE_E_INVALID_ARGUMENT, "command needs an input file");
    if (!read_file(path, text)) return fail(CONDUCHE_E_IO, std::string("cannot read ") + path);
  }
  return guarded([&] {
    *out = new conduche_report{conduche::run_command(command, path ? path : "", text, to_options(options))};
    return CONDUCHE_OK;
  });
}

int conduche_report_exit_code(const conduche_report* r) { return r ? r->result.exit_code : 2; }

const char* conduche_report_output(const conduche_report* r) { return r ? r->result.output.c_str() : ""; }

const char* conduche_report_error(const conduche_report* r) { return r ? r->result.error.c_str() : ""; }

void conduche_report_free(conduche_report* r) { delete r; }

int conduche_is_exponentiable(const conduche_workspace* ws, const char* functor) {
  if (!ws || !functor) {
    fail(CONDUCHE_E_INVALID_ARGUMENT, "null argument");
    return -1;
  }
  int verdict = -1;
  const conduche_status s = guarded([&] {
    const conduche::FinFunctor* f = ws->ws.find_functor(functor);
    if (!f) return fail(CONDUCHE_E_INVALID_ARGUMENT, std::string("no functor named ") + functor);
    verdict = conduche::check_exponentiable(*f, conduche::CheckOptions{true}).accepted() ? 1 : 0;
    return CONDUCHE_OK;
  });
  return s == CONDUCHE_OK ? verdict : -1;
}

}  // extern "C"
