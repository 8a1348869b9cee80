#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace egsr {

enum class ErrorCode {
  EmptyInput,
  InsufficientPoints,
  InvalidTarget,
  InvalidArgument,
  BehindCamera,
  AllPointsCulled,
  InvalidCalibration,
  ImageTooSmall,
  TooFewPoints,
  DegenerateCollinear,
  HullFailed,
  EmptySet,
  TooFewVertices,
  EmptyEdgeMap,
  MalformedHeader,
  UnsupportedFormat,
  TruncatedData,
  UnsupportedMagic,
  EmptyCloud,
  ShapeOutOfFrame,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every library failure is reported through this exception; `code()` lets
/// callers (the CLI in particular) branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace egsr
