#include "dyadscan/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace dyadscan {

using nlohmann::json;

FileFormat format_from_string(const std::string& s) {
  if (s == "jsonl") return FileFormat::Jsonl;
  if (s == "csv") return FileFormat::Csv;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + s + "' (expected jsonl or csv)");
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for reading");
  }
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  }
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) {
    throw Error(ErrorCode::IoFailure, "write to '" + path + "' failed");
  }
}

double parse_double_field(const std::string& text, std::size_t line) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw Error(ErrorCode::MalformedRecord, "cannot parse number '" + text + "'", line);
  }
  return v;
}

void validate_sample_or_throw(const SimilaritySample& sample, std::size_t line) {
  try {
    sample.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedRecord, e.what(), line);
  }
}

SimilaritySample sample_from_json(const json& rec, std::size_t line) {
  if (!rec.is_object()) {
    throw Error(ErrorCode::MalformedRecord, "record is not a JSON object", line);
  }
  SimilaritySample sample;
  try {
    sample.dyad_id = rec.at("dyad_id").get<std::string>();
    sample.label_sex = sex_from_string(rec.at("sex").get<std::string>());
    sample.label_task = task_from_string(rec.at("task").get<std::string>());
    const auto& scores = rec.at("scores");
    if (!scores.is_array()) {
      throw Error(ErrorCode::MalformedRecord, "'scores' is not an array", line);
    }
    sample.scores.reserve(scores.size());
    for (const auto& v : scores) {
      if (!v.is_number()) {
        throw Error(ErrorCode::MalformedRecord, "score is not a number", line);
      }
      sample.scores.push_back(v.get<double>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what(), line);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedRecord) throw;
    throw Error(ErrorCode::MalformedRecord, e.what(), line);
  }
  validate_sample_or_throw(sample, line);
  return sample;
}

json sample_to_json(const SimilaritySample& sample) {
  json rec;
  rec["dyad_id"] = sample.dyad_id;
  rec["sex"] = to_string(sample.label_sex);
  rec["task"] = to_string(sample.label_task);
  rec["scores"] = sample.scores;
  return rec;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

Dataset load_dataset_jsonl(const std::string& path) {
  auto in = open_input(path);
  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, e.what(), line_no);
    }
    ds.samples.push_back(sample_from_json(rec, line_no));
  }
  return ds;
}

Dataset load_dataset_csv(const std::string& path) {
  auto in = open_input(path);
  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t expected_fields = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (!header_seen) {
      if (fields.size() < 4 || fields[0] != "dyad_id" || fields[1] != "sex" || fields[2] != "task") {
        throw Error(ErrorCode::MalformedRecord, "bad CSV header (expected dyad_id,sex,task,s01,...)", line_no);
      }
      expected_fields = fields.size();
      header_seen = true;
      continue;
    }
    if (fields.size() != expected_fields) {
      throw Error(ErrorCode::MalformedRecord, "row has " + std::to_string(fields.size()) +
                      " fields, header has " + std::to_string(expected_fields), line_no);
    }
    SimilaritySample sample;
    sample.dyad_id = fields[0];
    try {
      sample.label_sex = sex_from_string(fields[1]);
      sample.label_task = task_from_string(fields[2]);
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRecord, e.what(), line_no);
    }
    sample.scores.reserve(expected_fields - 3);
    for (std::size_t i = 3; i < fields.size(); ++i) {
      sample.scores.push_back(parse_double_field(fields[i], line_no));
    }
    validate_sample_or_throw(sample, line_no);
    ds.samples.push_back(std::move(sample));
  }
  return ds;
}

} // namespace

Dataset load_dataset(const std::string& path, FileFormat format) {
  Dataset ds = format == FileFormat::Jsonl ? load_dataset_jsonl(path) : load_dataset_csv(path);
  if (ds.samples.empty()) {
    throw Error(ErrorCode::EmptyDataset, "no records in '" + path + "'");
  }
  const std::size_t c = ds.samples.front().scores.size();
  for (const auto& s : ds.samples) {
    if (s.scores.size() != c) {
      throw Error(ErrorCode::InconsistentChannelCount,
                  "records mix channel counts (" + std::to_string(c) + " vs " +
                      std::to_string(s.scores.size()) + ") in '" + path + "'");
    }
  }
  return ds;
}

void save_dataset(const Dataset& ds, const std::string& path, FileFormat format) {
  ds.validate();
  auto out = open_output(path);
  if (format == FileFormat::Jsonl) {
    for (const auto& sample : ds.samples) {
      out << sample_to_json(sample).dump() << '\n';
    }
  } else {
    out << "dyad_id,sex,task";
    const std::size_t c = ds.channel_count();
    char col[16];
    for (std::size_t i = 1; i <= c; ++i) {
      std::snprintf(col, sizeof(col), ",s%02zu", i);
      out << col;
    }
    out << '\n';
    for (const auto& sample : ds.samples) {
      out << sample.dyad_id << ',' << to_string(sample.label_sex) << ',' << to_string(sample.label_task);
      for (double v : sample.scores) {
        out << ',' << format_double(v);
      }
      out << '\n';
    }
  }
  finish_output(out, path);
}

namespace {

TrialSeries series_from_json(const json& obj, const json& rec, Participant who, std::size_t line) {
  TrialSeries s;
  s.participant = who;
  try {
    s.dyad_id = rec.at("dyad_id").get<std::string>();
    s.sex_comp = sex_from_string(rec.at("sex").get<std::string>());
    s.task = task_from_string(rec.at("task").get<std::string>());
    s.fs_hz = rec.value("fs_hz", kDefaultSamplingHz);
    const auto& chans = obj.at("channels");
    if (!chans.is_array() || chans.empty()) {
      throw Error(ErrorCode::MalformedRecord, "'channels' must be a non-empty array", line);
    }
    for (const auto& row : chans) {
      if (!row.is_array()) {
        throw Error(ErrorCode::MalformedRecord, "channel row is not an array", line);
      }
      s.channels.emplace_back(row.get<std::vector<double>>());
    }
    if (obj.contains("reaction_time_s") && !obj.at("reaction_time_s").is_null()) {
      s.reaction_time_s = obj.at("reaction_time_s").get<double>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what(), line);
  }
  return s;
}

json series_to_json(const TrialSeries& s) {
  json obj;
  obj["channels"] = s.channels;
  if (s.reaction_time_s) {
    obj["reaction_time_s"] = *s.reaction_time_s;
  } else {
    obj["reaction_time_s"] = nullptr;
  }
  return obj;
}

} // namespace

std::vector<DyadTrial> load_trials(const std::string& path) {
  auto in = open_input(path);
  std::vector<DyadTrial> trials;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, e.what(), line_no);
    }
    if (!rec.is_object() || !rec.contains("a") || !rec.contains("b")) {
      throw Error(ErrorCode::MalformedRecord, "trial record needs 'a' and 'b' participants", line_no);
    }
    DyadTrial trial;
    trial.a = series_from_json(rec.at("a"), rec, Participant::A, line_no);
    trial.b = series_from_json(rec.at("b"), rec, Participant::B, line_no);
    try {
      trial.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRecord, e.what(), line_no);
    }
    trials.push_back(std::move(trial));
  }
  if (trials.empty()) {
    throw Error(ErrorCode::EmptyDataset, "no trial records in '" + path + "'");
  }
  return trials;
}

void save_trials(const std::vector<DyadTrial>& trials, const std::string& path) {
  auto out = open_output(path);
  for (const auto& trial : trials) {
    trial.validate();
    json rec;
    rec["dyad_id"] = trial.a.dyad_id;
    rec["sex"] = to_string(trial.a.sex_comp);
    rec["task"] = to_string(trial.a.task);
    rec["fs_hz"] = trial.a.fs_hz;
    rec["a"] = series_to_json(trial.a);
    rec["b"] = series_to_json(trial.b);
    out << rec.dump() << '\n';
  }
  finish_output(out, path);
}

} // namespace dyadscan
