// Copyright 2026 The Touch Audition Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "touch_audition/data/manifest.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "touch_audition/binary_io.hpp"
#include "touch_audition/error.hpp"

namespace touch_audition::data {
namespace {

constexpr std::string_view kHeader = "path,participant,round,task,label,split";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

int parse_int_field(const std::string& s, std::size_t line_no, const char* what) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DataError("manifest line " + std::to_string(line_no) + ": bad " + what + " '" + s + "'");
  }
  return v;
}

}  // namespace

Split parse_split(std::string_view name) {
  if (name.empty() || name == "none") return Split::none;
  if (name == "train") return Split::train;
  if (name == "val") return Split::val;
  if (name == "test") return Split::test;
  throw DataError("unknown split '" + std::string(name) + "'");
}

std::string_view split_name(Split split) {
  switch (split) {
    case Split::none: return "";
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "";
}

std::filesystem::path Manifest::resolve(const ManifestRecord& record) const {
  const std::filesystem::path p(record.path);
  return p.is_absolute() ? p : base_dir / p;
}

void Manifest::validate() const {
  std::set<std::string> seen;
  for (const ManifestRecord& r : records) {
    if (!seen.insert(r.path).second) throw DataError("duplicate manifest path '" + r.path + "'");
    if (r.task == RecordingKind::gesture && !is_gesture(r.label)) {
      throw LabelError("'" + r.label + "' is not a gesture label");
    }
    if (r.task == RecordingKind::emotion && !is_emotion(r.label)) {
      throw LabelError("'" + r.label + "' is not an emotion label");
    }
    if (r.participant < 1 || r.round < 1) {
      throw DataError("participant and round must be positive for '" + r.path + "'");
    }
  }
}

std::vector<ManifestRecord> Manifest::select(RecordingKind kind, Split split) const {
  std::vector<ManifestRecord> out;
  for (const ManifestRecord& r : records) {
    if (r.task == kind && r.split == split) out.push_back(r);
  }
  return out;
}

Manifest parse_manifest(std::string_view csv, const std::filesystem::path& base_dir) {
  Manifest m;
  m.base_dir = base_dir;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kHeader) {
        throw DataError("manifest header must be '" + std::string(kHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 6) {
      throw DataError("manifest line " + std::to_string(line_no) + ": expected 6 fields");
    }
    ManifestRecord r;
    r.path = f[0];
    r.participant = parse_int_field(f[1], line_no, "participant");
    r.round = parse_int_field(f[2], line_no, "round");
    r.task = parse_recording_kind(f[3]);
    r.label = f[4];
    r.split = parse_split(f[5]);
    m.records.push_back(std::move(r));
  }
  if (!header_seen) throw DataError("manifest is empty");
  m.validate();
  return m;
}

std::string format_manifest(const Manifest& manifest) {
  std::string s(kHeader);
  s += "\n";
  for (const ManifestRecord& r : manifest.records) {
    s += r.path + "," + std::to_string(r.participant) + "," + std::to_string(r.round) + "," +
         std::string(recording_kind_name(r.task)) + "," + r.label + "," +
         std::string(split_name(r.split)) + "\n";
  }
  return s;
}

Manifest read_manifest(const std::filesystem::path& path) {
  return parse_manifest(binary::read_file(path), path.parent_path());
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
  binary::write_file(path, format_manifest(manifest));
}

}  // namespace touch_audition::data
