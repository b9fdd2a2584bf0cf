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

#ifndef TOUCH_AUDITION_DATA_SPLITS_HPP_
#define TOUCH_AUDITION_DATA_SPLITS_HPP_

#include <cstdint>

#include "touch_audition/data/manifest.hpp"

namespace touch_audition::data {

struct SplitCounts {
  long train = 0;
  long val = 0;
  long test = 0;

  long total() const { return train + val + test; }
  bool operator==(const SplitCounts&) const = default;
};

// 366/42/84 for gestures, 660/80/100 for emotions.
SplitCounts default_counts(RecordingKind kind);

// 60/20/20 of `clips_per_class` per class, used for generated corpora.
SplitCounts proportional_counts(long clips_per_class, long classes);

struct SplitOptions {
  SplitCounts counts;
  std::uint64_t seed = 0;
  // Keep every participant inside one split. Counts then act as proportions
  // over participants and the exact totals are not guaranteed.
  bool by_participant = false;
};

// Assigns splits to the records of `kind`, stratified by label. Records of
// the other kind are returned untouched. Clips beyond the requested counts
// keep Split::none. Throws SplitError when the counts cannot be met.
Manifest make_splits(const Manifest& manifest, RecordingKind kind, const SplitOptions& options);

}  // namespace touch_audition::data

#endif  // TOUCH_AUDITION_DATA_SPLITS_HPP_
