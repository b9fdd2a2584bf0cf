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

#include "touch_audition/dsp/framing.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "touch_audition/error.hpp"

namespace touch_audition::dsp {

Eigen::Index frame_count(Eigen::Index num_samples, Eigen::Index window,
                         Eigen::Index hop) {
  if (window <= 0 || hop <= 0) throw ConfigError("window and hop must be positive");
  if (num_samples < window) {
    throw TooShortError("signal of " + std::to_string(num_samples) +
                        " samples is shorter than one window of " +
                        std::to_string(window));
  }
  return (num_samples - window) / hop + 1;
}

Eigen::VectorXd hamming_window(Eigen::Index length) {
  Eigen::VectorXd w(length);
  for (Eigen::Index n = 0; n < length; ++n) {
    w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                  static_cast<double>(length));
  }
  return w;
}

Eigen::Index seconds_to_samples(double seconds, int sample_rate) {
  return static_cast<Eigen::Index>(std::llround(seconds * sample_rate));
}

Eigen::Index crop_frame_count(double length_s, Eigen::Index clip_frames, double clip_duration_s) {
  if (!(clip_duration_s > 0.0)) throw ConfigError("clip duration must be positive");
  return static_cast<Eigen::Index>(
      std::llround(length_s * static_cast<double>(clip_frames) / clip_duration_s));
}

FrameMatrix frame_signal(const Waveform& wave, Eigen::Index window,
                         Eigen::Index hop) {
  if (window <= hop) throw ConfigError("window must be longer than hop");
  const Eigen::Index frames = frame_count(wave.size(), window, hop);
  const Eigen::VectorXd w = hamming_window(window);
  FrameMatrix out(frames, window);
  for (Eigen::Index t = 0; t < frames; ++t) {
    out.row(t) = (wave.samples.segment(t * hop, window).cast<double>().array() *
                  w.array()).transpose();
  }
  return out;
}

FrameMatrix frame_signal(const Waveform& wave, double window_s, double hop_s) {
  if (!(hop_s > 0.0) || !(window_s > hop_s)) {
    throw ConfigError("framing requires window_s > hop_s > 0");
  }
  return frame_signal(wave, seconds_to_samples(window_s, wave.sample_rate),
                      seconds_to_samples(hop_s, wave.sample_rate));
}

}  // namespace touch_audition::dsp
