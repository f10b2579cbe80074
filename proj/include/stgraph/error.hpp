#pragma once

#include <stdexcept>
#include <string>

namespace stgraph {

// Error categories map 1:1 onto CLI exit codes:
//   Syntax/Schema/Io -> 3 (parse error), Invariant -> 2 (validation
//   failure), Usage -> 4.
enum class ErrorCategory {
  Syntax,     // malformed input text
  Schema,     // well-formed text, wrong shape (unknown field, bad type)
  Invariant,  // shape ok, domain rule violated
  Usage,      // bad CLI invocation or operation precondition
  Io,         // file system failure
  Internal,   // should not happen
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string message)
      : std::runtime_error(std::move(message)), category_(category) {}

  ErrorCategory category() const { return category_; }

  int exit_code() const {
    switch (category_) {
      case ErrorCategory::Invariant: return 2;
      case ErrorCategory::Usage: return 4;
      default: return 3;
    }
  }

  const char* category_name() const {
    switch (category_) {
      case ErrorCategory::Syntax: return "syntax";
      case ErrorCategory::Schema: return "schema";
      case ErrorCategory::Invariant: return "invariant";
      case ErrorCategory::Usage: return "usage";
      case ErrorCategory::Io: return "io";
      case ErrorCategory::Internal: return "internal";
    }
    return "unknown";
  }

 private:
  ErrorCategory category_;
};

inline Error syntax_error(std::string msg) { return Error(ErrorCategory::Syntax, std::move(msg)); }
inline Error schema_error(std::string msg) { return Error(ErrorCategory::Schema, std::move(msg)); }
inline Error invariant_error(std::string msg) { return Error(ErrorCategory::Invariant, std::move(msg)); }
inline Error usage_error(std::string msg) { return Error(ErrorCategory::Usage, std::move(msg)); }
inline Error io_error(std::string msg) { return Error(ErrorCategory::Io, std::move(msg)); }
inline Error internal_error(std::string msg) { return Error(ErrorCategory::Internal, std::move(msg)); }

}  // namespace stgraph
