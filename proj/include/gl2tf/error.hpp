#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gl2tf {

enum class ErrorCode {
  NotPrimitive,
  CapacityExceeded,
  SymbolMismatch,
  Singular,
  NotAdmissible,
  NotOnStableSet,
  NotOnUnstableSet,
  NotARectangle,
  NotHomoclinic,
  InvalidMeasure,
  PreconditionViolated,
  NoAdmissibleConnector,
  ParseError,
  SchemaError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; `path` carries a JSON-pointer style
// location when the error originates from problem-spec validation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {})
      : std::runtime_error(message), code_(code), path_(std::move(path)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

}  // namespace gl2tf
