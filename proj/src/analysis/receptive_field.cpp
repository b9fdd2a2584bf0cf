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

#include "touch_audition/analysis/receptive_field.hpp"

#include <algorithm>

#include "touch_audition/error.hpp"
#include "touch_audition/model/config.hpp"

namespace touch_audition::analysis {
namespace {

void check_chain(const LayerChainSpec& chain) {
  if (chain.empty()) throw ConfigError("receptive field of an empty layer chain");
  for (const ChainLayer& l : chain) {
    if (l.kernel < 1 || l.stride < 1 || l.dilation < 1) {
      throw ConfigError("layer chain entries need kernel, stride and dilation >= 1");
    }
  }
}

LayerChainSpec chain_for(const model::ModelConfig& config, std::size_t branch, bool time) {
  if (branch >= config.kernels.size()) throw ConfigError("branch index out of range");
  LayerChainSpec chain;
  const std::vector<int>& dilations = time ? config.time_dilations : config.freq_dilations;
  for (std::size_t l = 0; l < config.filters.size(); ++l) {
    chain.push_back(ChainLayer::conv(config.kernels[branch], dilations.at(l)));
    if (config.pooling) {
      chain.push_back(time ? ChainLayer::pool(config.pooling->kernel_time, config.pooling->stride_time)
                           : ChainLayer::pool(config.pooling->kernel_freq, config.pooling->stride_freq));
    }
  }
  return chain;
}

}  // namespace

std::vector<long> receptive_field(const LayerChainSpec& chain) {
  check_chain(chain);
  std::vector<long> out;
  long rf = 1;
  long jump = 1;
  for (const ChainLayer& l : chain) {
    rf += (l.dilated_extent() - 1) * jump;
    jump *= l.stride;
    out.push_back(rf);
  }
  return out;
}

long required_extent(const LayerChainSpec& chain) {
  check_chain(chain);
  long need = 1;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    need = (need - 1) * it->stride + it->dilated_extent();
  }
  return need;
}

long output_extent(const LayerChainSpec& chain, long input) {
  long size = input;
  for (const ChainLayer& l : chain) {
    if (size < l.dilated_extent()) return 0;
    size = (size - l.dilated_extent()) / l.stride + 1;
  }
  return size;
}

LayerChainSpec time_chain(const model::ModelConfig& config, std::size_t branch) {
  return chain_for(config, branch, true);
}

LayerChainSpec freq_chain(const model::ModelConfig& config, std::size_t branch) {
  return chain_for(config, branch, false);
}

long min_input_frames(const model::ModelConfig& config, std::size_t branch) {
  return required_extent(time_chain(config, branch));
}

long min_input_frames(const model::ModelConfig& config) {
  long best = 0;
  for (std::size_t b = 0; b < config.kernels.size(); ++b) {
    best = std::max(best, min_input_frames(config, b));
  }
  return best;
}

double frames_to_clip_seconds(long frames, double hop_s, double window_s) {
  return static_cast<double>(frames - 1) * hop_s + window_s;
}

double frames_to_seconds(long frames, double hop_s) { return static_cast<double>(frames) * hop_s; }

}  // namespace touch_audition::analysis
