#include "dyadscan/domain.hpp"

#include <cmath>

namespace dyadscan {

const char* to_string(SexComposition sex) {
  return sex == SexComposition::MM ? "MM" : "FF";
}

const char* to_string(TaskType task) {
  return task == TaskType::Cooperation ? "coop" : "comp";
}

SexComposition sex_from_string(const std::string& s) {
  if (s == "MM") return SexComposition::MM;
  if (s == "FF") return SexComposition::FF;
  throw Error(ErrorCode::InvalidArgument, "unknown sex composition '" + s + "' (expected MM or FF)");
}

TaskType task_from_string(const std::string& s) {
  if (s == "coop") return TaskType::Cooperation;
  if (s == "comp") return TaskType::Competition;
  throw Error(ErrorCode::InvalidArgument, "unknown task '" + s + "' (expected coop or comp)");
}

void TrialSeries::validate() const {
  if (!(fs_hz > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "sampling rate must be positive");
  }
  if (channels.empty()) {
    throw Error(ErrorCode::InvalidParams, "trial has no channels");
  }
  const std::size_t t = channels.front().size();
  if (t == 0) {
    throw Error(ErrorCode::InvalidParams, "channels must hold at least one sample");
  }
  for (const auto& ch : channels) {
    if (ch.size() != t) {
      throw Error(ErrorCode::InvalidParams, "channel rows have unequal lengths");
    }
    for (double v : ch) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::InvalidParams, "channel sample is not finite");
      }
    }
  }
  if (reaction_time_s && !std::isfinite(*reaction_time_s)) {
    throw Error(ErrorCode::InvalidParams, "reaction time is not finite");
  }
}

void DyadTrial::validate() const {
  a.validate();
  b.validate();
  if (a.dyad_id != b.dyad_id) {
    throw Error(ErrorCode::InvalidParams, "participants disagree on dyad id");
  }
  if (a.task != b.task || a.sex_comp != b.sex_comp) {
    throw Error(ErrorCode::InvalidParams, "participants disagree on trial labels");
  }
  if (a.channel_count() != b.channel_count()) {
    throw Error(ErrorCode::InvalidParams, "participants have unequal channel counts");
  }
  if (a.fs_hz != b.fs_hz) {
    throw Error(ErrorCode::InvalidParams, "participants have unequal sampling rates");
  }
}

void SimilaritySample::validate() const {
  if (scores.empty()) {
    throw Error(ErrorCode::InvalidParams, "similarity sample has no scores");
  }
  for (double s : scores) {
    if (!(s > 0.0) || !(s <= 1.0)) {
      throw Error(ErrorCode::InvalidParams, "similarity score outside (0, 1]");
    }
  }
}

void Dataset::validate() const {
  if (samples.empty()) {
    throw Error(ErrorCode::EmptyDataset, "dataset holds no samples");
  }
  const std::size_t c = samples.front().scores.size();
  for (const auto& s : samples) {
    s.validate();
    if (s.scores.size() != c) {
      throw Error(ErrorCode::InconsistentChannelCount, "samples have mixed channel counts");
    }
  }
}

} // namespace dyadscan
