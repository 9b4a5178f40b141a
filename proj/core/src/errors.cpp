#include "dyadscan/errors.hpp"

namespace dyadscan {

const char* error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::MalformedRecord: return "MalformedRecord";
  case ErrorCode::EmptyDataset: return "EmptyDataset";
  case ErrorCode::InconsistentChannelCount: return "InconsistentChannelCount";
  case ErrorCode::IoFailure: return "IoFailure";
  case ErrorCode::SingularExtinction: return "SingularExtinction";
  case ErrorCode::SeriesTooShort: return "SeriesTooShort";
  case ErrorCode::InvalidBand: return "InvalidBand";
  case ErrorCode::ZeroChannel: return "ZeroChannel";
  case ErrorCode::EmptySeries: return "EmptySeries";
  case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
  case ErrorCode::InvalidPath: return "InvalidPath";
  case ErrorCode::ShapeMismatch: return "ShapeMismatch";
  case ErrorCode::EmptySplit: return "EmptySplit";
  case ErrorCode::TooFewSamples: return "TooFewSamples";
  case ErrorCode::LengthMismatch: return "LengthMismatch";
  case ErrorCode::EmptySample: return "EmptySample";
  case ErrorCode::DegenerateSample: return "DegenerateSample";
  case ErrorCode::MissingReactionTime: return "MissingReactionTime";
  case ErrorCode::InvalidParams: return "InvalidParams";
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

std::string Error::format(ErrorCode code, const std::string& message, std::size_t line) {
  std::string out = error_code_name(code);
  out += ": ";
  out += message;
  if (line > 0) {
    out += " (line ";
    out += std::to_string(line);
    out += ")";
  }
  return out;
}

} // namespace dyadscan
