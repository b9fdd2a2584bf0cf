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

#include "touch_audition/data/crop.hpp"

#include <algorithm>
#include <string>

#include "touch_audition/dsp/framing.hpp"
#include "touch_audition/error.hpp"

namespace touch_audition::data {

CropMode parse_crop_mode(std::string_view name) {
  if (name == "random") return CropMode::random;
  if (name == "center") return CropMode::center;
  if (name == "full") return CropMode::full;
  throw ConfigError("unknown crop mode '" + std::string(name) + "'");
}

std::string_view crop_mode_name(CropMode mode) {
  switch (mode) {
    case CropMode::random: return "random";
    case CropMode::center: return "center";
    case CropMode::full: return "full";
  }
  return "";
}

Eigen::Index crop_frames(const dsp::MelFeature& feature, double length_s) {
  if (!(length_s >= kMinCropSeconds - 1e-9)) {
    throw ConfigError("crop length " + std::to_string(length_s) + " s is below the " +
                      std::to_string(kMinCropSeconds) + " s minimum");
  }
  double duration = feature.duration_s;
  if (duration <= 0.0) duration = static_cast<double>(feature.num_frames()) * feature.frame_hop_s;
  if (length_s > duration + 1e-9) {
    throw TooShortError("requested " + std::to_string(length_s) + " s crop from a " +
                        std::to_string(duration) + " s clip");
  }
  return std::min(dsp::crop_frame_count(length_s, feature.num_frames(), duration),
                  feature.num_frames());
}

dsp::MelFeature crop(const dsp::MelFeature& feature, double length_s, CropMode mode,
                     std::mt19937_64& rng) {
  if (mode == CropMode::full) return feature;
  const Eigen::Index frames = crop_frames(feature, length_s);
  const Eigen::Index slack = feature.num_frames() - frames;
  Eigen::Index start = slack / 2;
  if (mode == CropMode::random) {
    start = std::uniform_int_distribution<Eigen::Index>(0, slack)(rng);
  }
  dsp::MelFeature out = feature;
  out.frames = feature.frames.middleRows(start, frames);
  out.duration_s = length_s;
  return out;
}

dsp::MelFeature crop(const dsp::MelFeature& feature, double length_s, CropMode mode,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return crop(feature, length_s, mode, rng);
}

}  // namespace touch_audition::data
