#include "plpx/error.hpp"

namespace plpx {

std::string_view error_class(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
      return "parse";
    case ErrorKind::Load:
    case ErrorKind::UnknownPredicate:
      return "load";
    case ErrorKind::EmptyUniverse:
    case ErrorKind::StochasticGrounding:
    case ErrorKind::DuplicateFact:
    case ErrorKind::NonGroundAfterGrounding:
      return "grounding";
    case ErrorKind::NonGroundProbClause:
      return "nonground";
    case ErrorKind::TooManyFacts:
    case ErrorKind::LimitExceeded:
      return "resource";
    case ErrorKind::UnsafeUnsupported:
      return "unsupported";
    case ErrorKind::NotSuccessful:
      return "internal";
  }
  return "internal";
}

Error::Error(ErrorKind kind, std::string detail)
    : std::runtime_error(std::string(error_class(kind)) + ": " + detail),
      kind_(kind),
      detail_(std::move(detail)) {}

}  // namespace plpx
