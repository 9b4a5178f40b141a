#pragma once

#include <stdexcept>
#include <string>

namespace dyadscan {

enum class ErrorCode {
  MalformedRecord,
  EmptyDataset,
  InconsistentChannelCount,
  IoFailure,
  SingularExtinction,
  SeriesTooShort,
  InvalidBand,
  ZeroChannel,
  EmptySeries,
  WindowTooNarrow,
  InvalidPath,
  ShapeMismatch,
  EmptySplit,
  TooFewSamples,
  LengthMismatch,
  EmptySample,
  DegenerateSample,
  MissingReactionTime,
  InvalidParams,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

// Single exception type carrying a machine-checkable code plus a human
// message. Loader errors also carry the 1-based line of the offending record
// (0 when not applicable).
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0)
      : std::runtime_error(format(code, message, line)), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

private:
  static std::string format(ErrorCode code, const std::string& message, std::size_t line);

  ErrorCode code_;
  std::size_t line_;
};

} // namespace dyadscan
