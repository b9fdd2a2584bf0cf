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

#ifndef TOUCH_AUDITION_DATA_CROP_HPP_
#define TOUCH_AUDITION_DATA_CROP_HPP_

#include <cstdint>
#include <random>
#include <string_view>

#include "touch_audition/dsp/mel.hpp"

namespace touch_audition::data {

enum class CropMode { random, center, full };

CropMode parse_crop_mode(std::string_view name);
std::string_view crop_mode_name(CropMode mode);

inline constexpr double kMinCropSeconds = 1.10;

// Frame count of a `length_s` crop of `feature`.
Eigen::Index crop_frames(const dsp::MelFeature& feature, double length_s);

// Fixed-length window of `feature`. `full` ignores `length_s`. Random offsets
// are uniform over every valid start. Throws ConfigError for lengths below
// kMinCropSeconds and TooShortError when the clip is shorter than requested.
dsp::MelFeature crop(const dsp::MelFeature& feature, double length_s, CropMode mode,
                     std::mt19937_64& rng);
dsp::MelFeature crop(const dsp::MelFeature& feature, double length_s, CropMode mode,
                     std::uint64_t seed);

}  // namespace touch_audition::data

#endif  // TOUCH_AUDITION_DATA_CROP_HPP_
