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

#ifndef TOUCH_AUDITION_DATA_BATCH_HPP_
#define TOUCH_AUDITION_DATA_BATCH_HPP_

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "touch_audition/dsp/mel.hpp"
#include "touch_audition/nn/tensor.hpp"

namespace touch_audition::data {

inline constexpr std::size_t kDefaultBatchSize = 32;

struct Batch {
  nn::Tensor<float> features;  // N x 1 x T x F
  std::vector<int> targets;

  nn::Index size() const { return static_cast<nn::Index>(targets.size()); }
  nn::Index frames() const { return features.dim(2); }
};

// Stacks equally long crops. Throws ShapeError when lengths or bin counts
// differ, or when the counts of crops and targets disagree.
Batch assemble_batch(std::span<const dsp::FeatureMatrix> crops, std::span<const int> targets);

// Index lists covering [0, count) in chunks of at most `batch_size`. With an
// rng the order is shuffled first; the last batch may be short.
std::vector<std::vector<std::size_t>> plan_batches(std::size_t count, std::size_t batch_size,
                                                   std::mt19937_64* shuffle = nullptr);

}  // namespace touch_audition::data

#endif  // TOUCH_AUDITION_DATA_BATCH_HPP_
