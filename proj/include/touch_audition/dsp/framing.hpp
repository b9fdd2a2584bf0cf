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

#ifndef TOUCH_AUDITION_DSP_FRAMING_HPP_
#define TOUCH_AUDITION_DSP_FRAMING_HPP_

#include <Eigen/Core>

#include "touch_audition/dsp/wav.hpp"

namespace touch_audition::dsp {

using FrameMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// floor((num_samples - window) / hop) + 1; throws TooShortError when the
// signal cannot hold a single window.
Eigen::Index frame_count(Eigen::Index num_samples, Eigen::Index window,
                         Eigen::Index hop);

// Periodic Hamming window, w[n] = 0.54 - 0.46 cos(2 pi n / N).
Eigen::VectorXd hamming_window(Eigen::Index length);

// Seconds to samples, rounded to the nearest sample.
Eigen::Index seconds_to_samples(double seconds, int sample_rate);

// Number of frames covering `length_s` of a clip that framed to
// `clip_frames` frames over `clip_duration_s` seconds, rounded to nearest.
Eigen::Index crop_frame_count(double length_s, Eigen::Index clip_frames, double clip_duration_s);

// T x window matrix of Hamming-weighted frames (no centering, no padding).
FrameMatrix frame_signal(const Waveform& wave, Eigen::Index window,
                         Eigen::Index hop);
FrameMatrix frame_signal(const Waveform& wave, double window_s, double hop_s);

}  // namespace touch_audition::dsp

#endif  // TOUCH_AUDITION_DSP_FRAMING_HPP_
