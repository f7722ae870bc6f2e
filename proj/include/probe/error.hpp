#pragma once

#include <stdexcept>
#include <string>

namespace probe {

enum class Errc {
  SelfLoop,
  UnknownNode,
  BadParams,
  DisconnectedGraph,
  DisconnectedWorld,
  InvalidRecipe,
  BudgetExceeded,
  Forbidden,
  NotFound,
  LocalityViolation,
  Ambiguous,
  NoDominantOperation,
  OperationDominated,
  ImpactUnavailable,
  DegenerateJ,
  ReferenceZero,
  DegenerateKernel,
  ParseError,
};

const char* to_string(Errc code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace probe
