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

#ifndef TOUCH_AUDITION_DSP_MEL_HPP_
#define TOUCH_AUDITION_DSP_MEL_HPP_

#include <Eigen/Core>

#include "touch_audition/dsp/framing.hpp"
#include "touch_audition/dsp/wav.hpp"

namespace touch_audition::dsp {

struct FrontEndConfig {
  int sample_rate = 16000;
  double window_s = 0.032;
  double hop_s = 0.010;
  int n_mels = 64;
  double f_min = 0.0;
  double f_max = 0.0;  // 0 means Nyquist
  double log_floor = 1e-10;

  Eigen::Index window_samples() const { return seconds_to_samples(window_s, sample_rate); }
  Eigen::Index hop_samples() const { return seconds_to_samples(hop_s, sample_rate); }
  // The FFT length equals the window length.
  Eigen::Index fft_bins() const { return window_samples() / 2 + 1; }
  double upper_edge_hz() const { return f_max > 0.0 ? f_max : 0.5 * sample_rate; }
};

using FeatureMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// T x F log-mel energies, time-major.
struct MelFeature {
  FeatureMatrix frames;
  double frame_hop_s = 0.010;
  double window_s = 0.032;
  // Duration of the source clip; crops convert seconds to frames relative to it.
  double duration_s = 0.0;

  Eigen::Index num_frames() const { return frames.rows(); }
  Eigen::Index num_bins() const { return frames.cols(); }
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// n_mels x fft_bins matrix of triangular filters equally spaced on the mel
// scale between f_min and the upper edge. Weights are evaluated at the exact
// bin frequencies and peak at 1.
Eigen::MatrixXd mel_filterbank(const FrontEndConfig& config);

// |rfft(frame)|^2 per row, T x (window/2 + 1).
Eigen::MatrixXd power_spectrum(const FrameMatrix& frames);

MelFeature mel_spectrogram(const Waveform& wave, const FrontEndConfig& config = {});

}  // namespace touch_audition::dsp

#endif  // TOUCH_AUDITION_DSP_MEL_HPP_
