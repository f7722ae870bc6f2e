#include "probe/error.hpp"

namespace probe {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::BadParams: return "BadParams";
    case Errc::DisconnectedGraph: return "DisconnectedGraph";
    case Errc::DisconnectedWorld: return "DisconnectedWorld";
    case Errc::InvalidRecipe: return "InvalidRecipe";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::Forbidden: return "Forbidden";
    case Errc::NotFound: return "NotFound";
    case Errc::LocalityViolation: return "LocalityViolation";
    case Errc::Ambiguous: return "Ambiguous";
    case Errc::NoDominantOperation: return "NoDominantOperation";
    case Errc::OperationDominated: return "OperationDominated";
    case Errc::ImpactUnavailable: return "ImpactUnavailable";
    case Errc::DegenerateJ: return "DegenerateJ";
    case Errc::ReferenceZero: return "ReferenceZero";
    case Errc::DegenerateKernel: return "DegenerateKernel";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace probe
