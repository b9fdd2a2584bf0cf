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

#ifndef TOUCH_AUDITION_DSP_STANDARDIZE_HPP_
#define TOUCH_AUDITION_DSP_STANDARDIZE_HPP_

#include <span>

#include <Eigen/Core>

#include "touch_audition/dsp/mel.hpp"

namespace touch_audition::dsp {

// Per-bin statistics over every frame of a feature set.
struct FeatureStats {
  Eigen::VectorXf mean;
  Eigen::VectorXf std;

  static FeatureStats identity(Eigen::Index bins);
  Eigen::Index bins() const { return mean.size(); }
};

inline constexpr float kStdFloor = 1e-5f;

// Population std, floored at kStdFloor. Accumulates in double.
FeatureStats compute_stats(std::span<const FeatureMatrix> features);

FeatureMatrix standardize(const FeatureMatrix& frames, const FeatureStats& stats);
MelFeature standardize(const MelFeature& feature, const FeatureStats& stats);

}  // namespace touch_audition::dsp

#endif  // TOUCH_AUDITION_DSP_STANDARDIZE_HPP_
