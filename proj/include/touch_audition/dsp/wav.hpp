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

#ifndef TOUCH_AUDITION_DSP_WAV_HPP_
#define TOUCH_AUDITION_DSP_WAV_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace touch_audition::dsp {

// Mono PCM audio. Samples are normalized to [-1, 1].
struct Waveform {
  Eigen::VectorXf samples;
  int sample_rate = 16000;

  Eigen::Index size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// Decodes a RIFF/WAVE container holding 16-bit integer PCM or 32-bit float
// samples. Multi-channel audio is averaged to mono.
Waveform decode_wav(std::string_view bytes);
Waveform load_wav(const std::filesystem::path& path);

// 16-bit PCM mono encoding. Samples are clipped to [-1, 1] and rounded to the
// nearest integer code (full scale is 32767).
std::string encode_wav_pcm16(const Waveform& wave);
void save_wav_pcm16(const std::filesystem::path& path, const Waveform& wave);

}  // namespace touch_audition::dsp

#endif  // TOUCH_AUDITION_DSP_WAV_HPP_
