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

#ifndef TOUCH_AUDITION_DATA_MANIFEST_HPP_
#define TOUCH_AUDITION_DATA_MANIFEST_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "touch_audition/data/taxonomy.hpp"

namespace touch_audition::data {

// `none` marks records left out of every split.
enum class Split { none, train, val, test };

Split parse_split(std::string_view name);
std::string_view split_name(Split split);

struct ManifestRecord {
  std::string path;
  int participant = 1;
  int round = 1;
  RecordingKind task = RecordingKind::gesture;
  std::string label;
  Split split = Split::none;

  bool operator==(const ManifestRecord&) const = default;
};

// Dataset index, stored as CSV with header path,participant,round,task,label,split.
// Relative paths resolve against the manifest's directory.
struct Manifest {
  std::vector<ManifestRecord> records;
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const ManifestRecord& record) const;
  // Throws LabelError for labels outside the record's task taxonomy and
  // DataError for duplicate paths or out-of-range participant/round values.
  void validate() const;
  std::vector<ManifestRecord> select(RecordingKind kind, Split split) const;
};

Manifest parse_manifest(std::string_view csv, const std::filesystem::path& base_dir = {});
std::string format_manifest(const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

}  // namespace touch_audition::data

#endif  // TOUCH_AUDITION_DATA_MANIFEST_HPP_
