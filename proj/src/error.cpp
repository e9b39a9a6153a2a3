#include "netcfg/error.hpp"

namespace netcfg {

std::string_view to_string(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::usage: return "usage";
    case ErrorCategory::input: return "input";
    case ErrorCategory::validation: return "validation";
    case ErrorCategory::limit: return "limit";
    case ErrorCategory::internal: return "internal";
  }
  return "internal";
}

}  // namespace netcfg
