#ifndef PLPX_ERROR_HPP
#define PLPX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace plpx {

enum class ErrorKind {
  Parse,
  Load,
  UnknownPredicate,
  EmptyUniverse,
  StochasticGrounding,
  DuplicateFact,
  NonGroundAfterGrounding,
  NonGroundProbClause,
  TooManyFacts,
  LimitExceeded,
  UnsafeUnsupported,
  NotSuccessful,
};

// Short lowercase class used in `error: <class>: <detail>` diagnostics.
std::string_view error_class(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail);

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace plpx

#endif  // PLPX_ERROR_HPP
