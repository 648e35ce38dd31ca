#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conduche {

enum class ErrorKind {
  NonAssociative,
  MissingComposite,
  BadUnit,
  IllTypedComposite,
  ClosureBudgetExceeded,
  Collapse,
  DuplicateName,
  NotAFunctor,
  BudgetExceeded,
  NotComposable,
  FunctorialityFailure,
  NotExponentiable,
  AmbiguousComposition,
  Syntax,
  UnresolvedName,
  InvalidArgument,
  SimplicialIdentity,
};

const char* to_string(ErrorKind kind);

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
};

// Single exception type for the whole library; `kind()` discriminates.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}
  Error(ErrorKind kind, const std::string& message, SourceLocation loc)
      : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " +
                           to_string(kind) + ": " + message),
        kind_(kind),
        location_(loc),
        has_location_(true) {}

  ErrorKind kind() const noexcept { return kind_; }
  bool has_location() const noexcept { return has_location_; }
  SourceLocation location() const noexcept { return location_; }

 private:
  ErrorKind kind_;
  SourceLocation location_{};
  bool has_location_ = false;
};

}  // namespace conduche
