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

#ifndef TOUCH_AUDITION_ANALYSIS_RECEPTIVE_FIELD_HPP_
#define TOUCH_AUDITION_ANALYSIS_RECEPTIVE_FIELD_HPP_

#include <cstddef>
#include <vector>

namespace touch_audition::model {
struct ModelConfig;
}

namespace touch_audition::analysis {

// One layer of a single-axis chain.
struct ChainLayer {
  enum class Kind { conv, pool };
  Kind kind = Kind::conv;
  long kernel = 1;
  long stride = 1;
  long dilation = 1;

  static ChainLayer conv(long kernel, long dilation = 1, long stride = 1) {
    return {Kind::conv, kernel, stride, dilation};
  }
  static ChainLayer pool(long kernel, long stride) { return {Kind::pool, kernel, stride, 1}; }

  long dilated_extent() const { return kernel + (kernel - 1) * (dilation - 1); }
};

using LayerChainSpec = std::vector<ChainLayer>;

// Receptive field after each layer, relative to the chain input. Starts from
// R_0 = 1 and grows by (dilated kernel extent - 1) times the accumulated
// stride of the earlier layers. For stride-1 chains this is exactly
// R_i = (R_{i-1} - 1) + k + (k - 1)(r - 1).
std::vector<long> receptive_field(const LayerChainSpec& chain);

// Smallest input extent that yields at least one output position, found by
// propagating the required size backwards through the chain.
long required_extent(const LayerChainSpec& chain);

// Output extent for a given input extent; 0 if some layer cannot fit.
long output_extent(const LayerChainSpec& chain, long input);

// Per-branch chains of a model config along one axis.
LayerChainSpec time_chain(const model::ModelConfig& config, std::size_t branch);
LayerChainSpec freq_chain(const model::ModelConfig& config, std::size_t branch);

// Minimum number of input frames for which every branch yields at least one
// position after its final block.
long min_input_frames(const model::ModelConfig& config, std::size_t branch);
long min_input_frames(const model::ModelConfig& config);

// (frames - 1) * hop + window: the shortest clip that frames to `frames`.
double frames_to_clip_seconds(long frames, double hop_s, double window_s);
// frames * hop: the frame-count approximation of a duration.
double frames_to_seconds(long frames, double hop_s);

}  // namespace touch_audition::analysis

#endif  // TOUCH_AUDITION_ANALYSIS_RECEPTIVE_FIELD_HPP_
