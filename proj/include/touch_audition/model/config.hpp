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

#ifndef TOUCH_AUDITION_MODEL_CONFIG_HPP_
#define TOUCH_AUDITION_MODEL_CONFIG_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "touch_audition/data/taxonomy.hpp"

namespace touch_audition::model {

struct PoolingSpec {
  int kernel_time = 2;
  int kernel_freq = 2;
  int stride_time = 2;
  int stride_freq = 2;

  bool operator==(const PoolingSpec&) const = default;
};

// Declarative description of the multi-temporal-resolution CNN. Every branch
// uses a square kernel and shares the per-layer filter and dilation lists.
struct ModelConfig {
  data::Task task = data::Task::gesture;
  int n_mels = 64;
  std::vector<int> kernels{3, 5, 7};
  std::vector<int> filters{16, 32, 64};
  std::vector<int> time_dilations{1, 2, 3};
  std::vector<int> freq_dilations{1, 1, 1};
  // Applied after every conv block; nullopt disables pooling.
  std::optional<PoolingSpec> pooling = PoolingSpec{};
  int embedding_dim = 64;
  int fusion_dim = 64;
  int num_classes = 6;
  double dropout_p = 0.2;
  // Front-end timing, used to express frame counts in seconds.
  double hop_s = 0.010;
  double window_s = 0.032;

  static ModelConfig defaults(data::Task task);

  std::size_t num_branches() const { return kernels.size(); }
  std::size_t num_conv_layers() const { return filters.size(); }
  int concat_dim() const { return embedding_dim * static_cast<int>(kernels.size()); }

  // Throws ConfigError on a structurally invalid architecture.
  void validate() const;

  // Plain-text `key = value` form, one key per line. Doubles are written in
  // shortest round-trip form so parse(to_text(c)) == c exactly.
  std::string to_text() const;
  static ModelConfig from_text(std::string_view text);

  bool operator==(const ModelConfig&) const = default;
};

}  // namespace touch_audition::model

#endif  // TOUCH_AUDITION_MODEL_CONFIG_HPP_
