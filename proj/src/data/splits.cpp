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

#include "touch_audition/data/splits.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "touch_audition/error.hpp"

namespace touch_audition::data {
namespace {

// Largest-remainder apportionment of `total` over `weights`.
std::vector<long> apportion(long total, const std::vector<long>& weights) {
  const long sum = std::accumulate(weights.begin(), weights.end(), 0L);
  std::vector<long> out(weights.size(), 0);
  if (sum == 0) return out;
  std::vector<std::pair<long, std::size_t>> remainders;
  long assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const long num = total * weights[i];
    out[i] = num / sum;
    assigned += out[i];
    remainders.emplace_back(num % sum, i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (long k = 0; k < total - assigned; ++k) ++out[remainders[static_cast<std::size_t>(k)].second];
  return out;
}

void check_counts(const SplitCounts& c, long available, std::size_t classes) {
  if (c.train < 0 || c.val < 0 || c.test < 0) throw SplitError("split counts must be non-negative");
  if (c.total() > available) {
    throw SplitError("split counts sum to " + std::to_string(c.total()) + " but only " +
                     std::to_string(available) + " clips are available");
  }
  for (long n : {c.train, c.val, c.test}) {
    if (n > 0 && n < static_cast<long>(classes)) {
      throw SplitError("a split of " + std::to_string(n) + " clips cannot hold all " +
                       std::to_string(classes) + " classes");
    }
  }
}

void split_by_label(std::vector<ManifestRecord*>& pool, const SplitOptions& options) {
  std::map<std::string, std::vector<ManifestRecord*>> by_label;
  for (ManifestRecord* r : pool) by_label[r->label].push_back(r);

  std::vector<long> sizes;
  for (const auto& [label, recs] : by_label) sizes.push_back(static_cast<long>(recs.size()));
  check_counts(options.counts, static_cast<long>(pool.size()), by_label.size());

  const auto train = apportion(options.counts.train, sizes);
  const auto val = apportion(options.counts.val, sizes);
  const auto test = apportion(options.counts.test, sizes);

  std::mt19937_64 rng(options.seed);
  std::size_t c = 0;
  for (auto& [label, recs] : by_label) {
    const long need = train[c] + val[c] + test[c];
    if (need > sizes[c]) {
      throw SplitError("class '" + label + "' has " + std::to_string(sizes[c]) +
                       " clips but the stratified counts need " + std::to_string(need));
    }
    std::shuffle(recs.begin(), recs.end(), rng);
    long i = 0;
    for (; i < train[c]; ++i) recs[i]->split = Split::train;
    for (; i < train[c] + val[c]; ++i) recs[i]->split = Split::val;
    for (; i < need; ++i) recs[i]->split = Split::test;
    ++c;
  }
}

void split_by_participant(std::vector<ManifestRecord*>& pool, const SplitOptions& options) {
  std::vector<int> participants;
  for (const ManifestRecord* r : pool) participants.push_back(r->participant);
  std::sort(participants.begin(), participants.end());
  participants.erase(std::unique(participants.begin(), participants.end()), participants.end());

  const SplitCounts& c = options.counts;
  if (c.train < 0 || c.val < 0 || c.test < 0 || c.total() == 0) {
    throw SplitError("split counts must be non-negative with a positive total");
  }
  const auto groups = apportion(static_cast<long>(participants.size()), {c.train, c.val, c.test});
  for (std::size_t s = 0; s < 3; ++s) {
    const long requested = s == 0 ? c.train : s == 1 ? c.val : c.test;
    if (requested > 0 && groups[s] == 0) {
      throw SplitError("too few participants (" + std::to_string(participants.size()) +
                       ") to give every split its own group");
    }
  }

  std::mt19937_64 rng(options.seed);
  std::shuffle(participants.begin(), participants.end(), rng);
  std::map<int, Split> assignment;
  std::size_t p = 0;
  const Split order[3] = {Split::train, Split::val, Split::test};
  for (std::size_t s = 0; s < 3; ++s) {
    for (long k = 0; k < groups[s]; ++k) assignment[participants[p++]] = order[s];
  }
  for (ManifestRecord* r : pool) r->split = assignment.at(r->participant);
}

}  // namespace

SplitCounts default_counts(RecordingKind kind) {
  return kind == RecordingKind::gesture ? SplitCounts{366, 42, 84} : SplitCounts{660, 80, 100};
}

SplitCounts proportional_counts(long clips_per_class, long classes) {
  const long train = (clips_per_class * 3 + 2) / 5;
  const long val = (clips_per_class - train) / 2;
  const long test = clips_per_class - train - val;
  return {train * classes, val * classes, test * classes};
}

Manifest make_splits(const Manifest& manifest, RecordingKind kind, const SplitOptions& options) {
  Manifest out = manifest;
  std::vector<ManifestRecord*> pool;
  for (ManifestRecord& r : out.records) {
    if (r.task != kind) continue;
    r.split = Split::none;
    pool.push_back(&r);
  }
  if (pool.empty()) throw SplitError("manifest has no " + std::string(recording_kind_name(kind)) + " records");
  if (options.by_participant) {
    split_by_participant(pool, options);
  } else {
    split_by_label(pool, options);
  }
  return out;
}

}  // namespace touch_audition::data
