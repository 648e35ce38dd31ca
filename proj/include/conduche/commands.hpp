#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conduche/certificate.hpp"
#include "conduche/dsl.hpp"

namespace conduche {

inline constexpr const char* kToolVersion = "0.1.0";

struct CommandOptions {
  bool json = false;
  bool fail_fast = false;
  std::uint64_t seed = 0;
  std::size_t max_objects = 5;
  std::size_t max_morphisms = 15;
  std::size_t count = 200;  // corpus size
  std::size_t x_objects = 2;
  std::size_t x_morphisms = 4;
  std::optional<std::uint64_t> budget;
  bool force = false;
  std::vector<std::string> functors;  // f, then optionally g for the exponential
  std::optional<std::pair<std::string, std::string>> pair;  // (u, v) for complete-horn
};

/// Exit codes: 0 accepted or verified, 1 refuted with witnesses, 2 usage or
/// validation error (message in `error`).
struct CommandResult {
  int exit_code = 0;
  std::string output;
  std::string error;
};

const std::vector<std::string>& command_names();

// Parses `text` (ignored by `corpus`) and runs the command. `input` names the
// source in reports.
CommandResult run_command(std::string_view command, std::string_view input, std::string_view text,
                          const CommandOptions& options);

CommandResult run_command(std::string_view command, const Workspace& ws, std::string_view input,
                          const CommandOptions& options);

// Certificate in the report schema, as produced by check-exp.
std::string certificate_json(std::string_view kind, std::string_view input, const FinFunctor& f,
                             const Certificate& cert, std::uint64_t seed);
std::string certificate_text(const FinFunctor& f, const Certificate& cert);

}  // namespace conduche
