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

#include "touch_audition/dsp/feature_io.hpp"

#include "touch_audition/binary_io.hpp"
#include "touch_audition/error.hpp"

namespace touch_audition::dsp {

std::string encode_melf(const FeatureMatrix& frames) {
  std::string out = "MELF";
  binary::put_uint<std::uint32_t>(out, kMelfVersion);
  binary::put_uint<std::uint32_t>(out, static_cast<std::uint32_t>(frames.rows()));
  binary::put_uint<std::uint32_t>(out, static_cast<std::uint32_t>(frames.cols()));
  out.reserve(out.size() + 4 * static_cast<std::size_t>(frames.size()));
  for (Eigen::Index i = 0; i < frames.size(); ++i) {
    binary::put_f32(out, frames.data()[i]);
  }
  return out;
}

FeatureMatrix decode_melf(std::string_view bytes) {
  binary::Reader<DecodeError> r(bytes);
  if (r.take(4, "MELF magic") != "MELF") throw DecodeError("not a MELF feature file");
  const auto version = r.uint<std::uint32_t>("MELF version");
  if (version != kMelfVersion) {
    throw DecodeError("unsupported MELF version " + std::to_string(version));
  }
  const auto rows = r.uint<std::uint32_t>("MELF frame count");
  const auto cols = r.uint<std::uint32_t>("MELF bin count");
  if (r.remaining() != 4ull * rows * cols) {
    throw DecodeError("MELF payload size does not match its header");
  }
  FeatureMatrix frames(rows, cols);
  for (Eigen::Index i = 0; i < frames.size(); ++i) frames.data()[i] = r.f32("MELF data");
  return frames;
}

void write_melf(const std::filesystem::path& path, const FeatureMatrix& frames) {
  binary::write_file(path, encode_melf(frames));
}

FeatureMatrix read_melf(const std::filesystem::path& path) {
  return decode_melf(binary::read_file(path));
}

}  // namespace touch_audition::dsp
