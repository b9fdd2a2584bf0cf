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

#ifndef TOUCH_AUDITION_MODEL_CHECKPOINT_HPP_
#define TOUCH_AUDITION_MODEL_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "touch_audition/model/mtrcnn.hpp"

namespace touch_audition::model {

// Layout (little-endian):
//   "MTRC" | u32 version | u32 config length | config text (UTF-8)
//   then, until end of file, one record per tensor:
//   u16 name length | name | u8 ndim | u32 dims[ndim] | f32 data[prod(dims)]
inline constexpr std::uint32_t kCheckpointVersion = 1;

std::string encode_checkpoint(const Mtrcnn& model);
Mtrcnn decode_checkpoint(std::string_view bytes);

void save_checkpoint(const Mtrcnn& model, const std::filesystem::path& path);
Mtrcnn load_checkpoint(const std::filesystem::path& path);

}  // namespace touch_audition::model

#endif  // TOUCH_AUDITION_MODEL_CHECKPOINT_HPP_
