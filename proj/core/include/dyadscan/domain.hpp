#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dyadscan/errors.hpp"

namespace dyadscan {

// Channel count of a conformant recording (18 usable HbO channels).
inline constexpr std::size_t kConformantChannels = 18;
inline constexpr double kDefaultSamplingHz = 10.0;

enum class Participant { A, B };
enum class SexComposition { MM, FF };
enum class TaskType { Cooperation, Competition };
enum class Provenance { Real, Synthetic };

const char* to_string(SexComposition sex);   // "MM" / "FF"
const char* to_string(TaskType task);        // "coop" / "comp"
SexComposition sex_from_string(const std::string& s);
TaskType task_from_string(const std::string& s);

// One participant's multi-channel HbO time series for a single trial.
struct TrialSeries {
  std::string dyad_id;
  Participant participant = Participant::A;
  SexComposition sex_comp = SexComposition::MM;
  TaskType task = TaskType::Cooperation;
  double fs_hz = kDefaultSamplingHz;
  std::vector<std::vector<double>> channels; // [channel][sample]
  std::optional<double> reaction_time_s;

  std::size_t channel_count() const { return channels.size(); }
  std::size_t sample_count() const { return channels.empty() ? 0 : channels.front().size(); }
  bool conformant_channel_count() const { return channels.size() == kConformantChannels; }

  // Throws Error(InvalidParams / ...) when an invariant is violated.
  void validate() const;
};

// Both participants of one trial.
struct DyadTrial {
  TrialSeries a;
  TrialSeries b;

  std::size_t channel_count() const { return a.channel_count(); }
  void validate() const;
};

// The 18-element channel-wise DTW similarity vector with its class labels.
struct SimilaritySample {
  std::string dyad_id;
  SexComposition label_sex = SexComposition::MM;
  TaskType label_task = TaskType::Cooperation;
  std::vector<double> scores; // each in (0, 1]

  void validate() const;
  bool operator==(const SimilaritySample& other) const = default;
};

struct Dataset {
  std::vector<SimilaritySample> samples;
  Provenance provenance = Provenance::Real;
  std::optional<std::uint64_t> seed;

  std::size_t size() const { return samples.size(); }
  std::size_t channel_count() const { return samples.empty() ? 0 : samples.front().scores.size(); }

  // Non-empty, all samples valid, all samples share one channel count.
  void validate() const;
};

} // namespace dyadscan
