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

#ifndef TOUCH_AUDITION_DSP_FEATURE_IO_HPP_
#define TOUCH_AUDITION_DSP_FEATURE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "touch_audition/dsp/mel.hpp"

namespace touch_audition::dsp {

// MELF record: "MELF", u32 version, u32 T, u32 F, T*F little-endian f32,
// time-major.
inline constexpr std::uint32_t kMelfVersion = 1;

std::string encode_melf(const FeatureMatrix& frames);
FeatureMatrix decode_melf(std::string_view bytes);

void write_melf(const std::filesystem::path& path, const FeatureMatrix& frames);
FeatureMatrix read_melf(const std::filesystem::path& path);

}  // namespace touch_audition::dsp

#endif  // TOUCH_AUDITION_DSP_FEATURE_IO_HPP_
