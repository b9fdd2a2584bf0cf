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

#include "touch_audition/data/batch.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "touch_audition/error.hpp"

namespace touch_audition::data {

Batch assemble_batch(std::span<const dsp::FeatureMatrix> crops, std::span<const int> targets) {
  if (crops.empty()) throw ShapeError("cannot assemble an empty batch");
  if (crops.size() != targets.size()) {
    throw ShapeError(std::to_string(crops.size()) + " crops but " +
                     std::to_string(targets.size()) + " targets");
  }
  const nn::Index t = crops[0].rows();
  const nn::Index f = crops[0].cols();
  const auto n = static_cast<nn::Index>(crops.size());
  Batch batch{nn::Tensor<float>({n, 1, t, f}), std::vector<int>(targets.begin(), targets.end())};
  for (nn::Index i = 0; i < n; ++i) {
    const dsp::FeatureMatrix& c = crops[static_cast<std::size_t>(i)];
    if (c.rows() != t || c.cols() != f) {
      throw ShapeError("batch mixes crop shapes " + std::to_string(t) + "x" + std::to_string(f) +
                       " and " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
    }
    batch.features.matrix(t, f, i * t * f) = c;
  }
  return batch;
}

std::vector<std::vector<std::size_t>> plan_batches(std::size_t count, std::size_t batch_size,
                                                   std::mt19937_64* shuffle) {
  if (batch_size == 0) throw ConfigError("batch size must be at least 1");
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle) std::shuffle(order.begin(), order.end(), *shuffle);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < count; i += batch_size) {
    out.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                     order.begin() + static_cast<std::ptrdiff_t>(std::min(count, i + batch_size)));
  }
  return out;
}

}  // namespace touch_audition::data
