// Command-line front end. Talks to the library only through conduche.h.
#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "conduche/conduche.h"

namespace {

struct Args {
  std::string file;
  bool json = false;
  bool fail_fast = false;
  bool force = false;
  std::uint64_t seed = 0;
  std::size_t max_objects = 0;
  std::size_t max_morphisms = 0;
  std::size_t count = 0;
  std::vector<std::size_t> x_bound;
  std::uint64_t budget = 0;
  std::vector<std::string> functors;
  std::vector<std::string> pair;
};

void add_common(CLI::App* cmd, Args& a, bool needs_file) {
  if (needs_file) cmd->add_option("file", a.file, "input .fincat file")->required();
  cmd->add_flag("--json", a.json, "machine-readable report");
  cmd->add_flag("--fail-fast", a.fail_fast, "stop at the first witness");
  cmd->add_option("--seed", a.seed, "random seed");
  cmd->add_option("--max-objects", a.max_objects, "corpus bound on objects");
  cmd->add_option("--max-morphisms", a.max_morphisms, "corpus bound on morphisms");
  cmd->add_option("--count", a.count, "corpus size");
  cmd->add_option("--X-bound", a.x_bound, "test categories: objects,morphisms")->delimiter(',')->expected(2);
  cmd->add_option("--budget", a.budget, "search and closure node budget (default: CONDUCHE_BUDGET)");
  cmd->add_flag("--force", a.force, "build the exponential even when the criterion fails");
  cmd->add_option("--functor", a.functors, "functor to use; a second one is the exponent P -> B")->expected(1, 2);
  cmd->add_option("--pair", a.pair, "complete-horn: composable pair u,v")->delimiter(',')->expected(2);
}

const char* kDescriptions[][2] = {
    {"validate", "parse and validate a workspace"},
    {"check-exp", "coend criterion for exponentiability"},
    {"check-pushout", "horn-completion criterion for exponentiability"},
    {"build-exp", "construct the exponential of f and g over B"},
    {"verify-up", "check the exponential's universal property on small test categories"},
    {"complete-horn", "complete horn gluings and compare with the pullback along [2]"},
    {"compose-prof", "compose the declared hom profunctors"},
    {"nerve-check", "Segal and inner lifting checks"},
    {"corpus", "generate a seeded corpus of functors"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite category toolkit: exponentiable functors, exponentials, nerves"};
  app.set_version_flag("--version", conduche_version());
  app.require_subcommand(1);
  Args args;
  std::vector<CLI::App*> commands;
  for (const auto& d : kDescriptions) {
    CLI::App* cmd = app.add_subcommand(d[0], d[1]);
    add_common(cmd, args, std::string(d[0]) != "corpus");
    commands.push_back(cmd);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::string command;
  for (CLI::App* cmd : commands)
    if (cmd->parsed()) command = cmd->get_name();

  conduche_options o;
  conduche_options_init(&o);
  o.json = args.json;
  o.fail_fast = args.fail_fast;
  o.force = args.force;
  o.seed = args.seed;
  if (args.max_objects) o.max_objects = args.max_objects;
  if (args.max_morphisms) o.max_morphisms = args.max_morphisms;
  if (args.count) o.count = args.count;
  if (args.x_bound.size() == 2) {
    o.x_objects = args.x_bound[0];
    o.x_morphisms = args.x_bound[1];
  }
  o.budget = args.budget;
  if (!args.functors.empty()) o.functor = args.functors[0].c_str();
  if (args.functors.size() > 1) o.second_functor = args.functors[1].c_str();
  if (args.pair.size() == 2) {
    o.pair_u = args.pair[0].c_str();
    o.pair_v = args.pair[1].c_str();
  }

  conduche_report* report = nullptr;
  if (conduche_run_file(command.c_str(), args.file.empty() ? nullptr : args.file.c_str(), &o, &report) !=
      CONDUCHE_OK) {
    std::fprintf(stderr, "error: %s\n", conduche_last_error());
    return 2;
  }
  std::fputs(conduche_report_output(report), stdout);
  const std::string error = conduche_report_error(report);
  if (!error.empty()) std::fprintf(stderr, "error: %s\n", error.c_str());
  const int code = conduche_report_exit_code(report);
  conduche_report_free(report);
  return code;
}
