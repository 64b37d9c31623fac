#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsrl {

// Machine-readable error categories. The CLI prints the category name on the
// single error line it emits before exiting.
enum class ErrorCategory {
  format,        // malformed input document
  invariant,     // a domain invariant would be violated
  lookup,        // a label does not resolve in the inventory
  precondition,  // caller passed arguments outside the operation's contract
  contract,      // internal API misuse (dimension mismatch, empty candidates)
  alignment,     // gold and predicted corpora do not line up
  backend,       // remote service unreachable or failing
  protocol,      // remote service answered with a malformed payload
  io,            // file could not be read or written
  usage,         // bad command-line configuration
};

std::string_view category_name(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace dsrl
