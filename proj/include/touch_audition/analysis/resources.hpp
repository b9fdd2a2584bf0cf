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

#ifndef TOUCH_AUDITION_ANALYSIS_RESOURCES_HPP_
#define TOUCH_AUDITION_ANALYSIS_RESOURCES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "touch_audition/model/config.hpp"

namespace touch_audition::analysis {

// mac counts one multiply-accumulate as one operation, two_mac as two.
enum class FlopConvention { mac, two_mac };

FlopConvention parse_convention(std::string_view name);
std::string_view convention_name(FlopConvention c);

// Static cost of one layer for a single input sample.
//
// macs: multiply-accumulates of conv and dense layers (bias adds excluded).
// aux_ops: element operations of the parameter-free or per-channel layers:
//   batch norm and ReLU one per output element, average pooling and global
//   pooling one per input element read.
struct LayerCost {
  std::string name;
  std::string kind;
  std::vector<long> out_shape;
  long params = 0;
  long macs = 0;
  long aux_ops = 0;
};

// Layer-by-layer costs of the full network at `input_frames` frames.
// Throws MinLengthError if the input is shorter than the network minimum.
std::vector<LayerCost> layer_costs(const model::ModelConfig& config, long input_frames);

// Closed-form trainable parameter count.
long count_params(const model::ModelConfig& config);

long count_macs(const model::ModelConfig& config, long input_frames);
// Conv + dense work of each branch's layers, in branch order.
std::vector<long> branch_macs(const model::ModelConfig& config, long input_frames);

double count_flops(const model::ModelConfig& config, long input_frames, FlopConvention convention,
                   bool include_aux = false);

struct FlopCell {
  double seconds = 0.0;
  long frames = 0;
  FlopConvention convention = FlopConvention::mac;
  double flops = 0.0;
  bool within_budget = true;
  // |flops - reference| <= tolerance * reference.
  bool reconciles = false;
};

struct AnalyzeOptions {
  std::vector<double> lengths_s{1.10, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0};
  // Seconds become frames relative to a nominal clip: 10 s frames to 997.
  long clip_frames = 997;
  double clip_seconds = 10.0;
  // Input length for the layer table; 0 means clip_frames.
  long table_frames = 0;
  bool include_aux = false;
  double device_flops = 11.46e9;
  double reference_flops = 0.708e9;
  double reconcile_tolerance = 0.10;
};

struct ResourceReport {
  model::ModelConfig config;
  // Time-axis receptive field after every layer (conv and pool) per branch.
  std::vector<std::vector<long>> receptive_fields;
  // Time-axis receptive field of the conv layers alone (pooling removed).
  std::vector<std::vector<long>> conv_only_receptive_fields;
  std::vector<long> branch_min_frames;
  long min_input_frames = 0;
  double min_input_seconds = 0.0;         // (frames - 1) * hop + window
  double min_input_seconds_approx = 0.0;  // frames * hop
  long param_count = 0;
  long model_size_bytes = 0;
  double model_size_mb = 0.0;
  double model_size_mib = 0.0;
  long table_frames = 0;
  std::vector<LayerCost> layers;
  std::vector<long> branch_macs;
  std::vector<FlopCell> grid;
  double device_flops = 0.0;
  double reference_flops = 0.0;
  double reconcile_tolerance = 0.0;
  bool budget_pass = true;
};

ResourceReport analyze(const model::ModelConfig& config, const AnalyzeOptions& options = {});

// Human-readable aligned text.
std::string format_report(const ResourceReport& report);
// CSV with header layer,out_shape,params,macs.
std::string layer_table_csv(const ResourceReport& report);
// CSV with header seconds,frames,convention,flops,within_budget,reconciles.
std::string flops_grid_csv(const ResourceReport& report);

}  // namespace touch_audition::analysis

#endif  // TOUCH_AUDITION_ANALYSIS_RESOURCES_HPP_
