#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netcfg {

/// Broad classes of failure. The CLI maps these onto exit codes and the
/// "ERROR:<category>:" prefix on standard error.
enum class ErrorCategory {
  usage,       // bad flags or parameter combinations
  input,       // malformed documents, unreadable files
  validation,  // well-formed input that violates a model invariant
  limit,       // a size cap was exceeded
  internal,    // an internal consistency check failed
};

std::string_view to_string(ErrorCategory c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory c, const std::string& what) {
  throw Error(c, what);
}

}  // namespace netcfg
