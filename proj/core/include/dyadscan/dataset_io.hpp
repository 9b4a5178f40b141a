#pragma once

#include <string>
#include <vector>

#include "dyadscan/domain.hpp"

namespace dyadscan {

enum class FileFormat { Jsonl, Csv };

FileFormat format_from_string(const std::string& s); // "jsonl" / "csv"

// Similarity-score datasets.
//
// JSONL record, one sample per line:
//   {"dyad_id": str, "sex": "MM"|"FF", "task": "coop"|"comp", "scores": [f, ...]}
// CSV: header `dyad_id,sex,task,s01,...,sNN`, one row per sample.
// Scores round-trip bit-for-bit in both formats.
Dataset load_dataset(const std::string& path, FileFormat format);
void save_dataset(const Dataset& ds, const std::string& path, FileFormat format);

// Dyad trials, JSONL only. One trial per line:
//   {"dyad_id": str, "sex": "MM"|"FF", "task": "coop"|"comp", "fs_hz": f,
//    "a": {"channels": [[f, ...], ...], "reaction_time_s": f|null},
//    "b": {...}}
std::vector<DyadTrial> load_trials(const std::string& path);
void save_trials(const std::vector<DyadTrial>& trials, const std::string& path);

// Shortest text form of a double that parses back to the same bits.
std::string format_double(double v);

} // namespace dyadscan
