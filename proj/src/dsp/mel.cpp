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

#include "touch_audition/dsp/mel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "touch_audition/error.hpp"

namespace touch_audition::dsp {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

Eigen::MatrixXd mel_filterbank(const FrontEndConfig& config) {
  const Eigen::Index bins = config.fft_bins();
  const double upper = config.upper_edge_hz();
  if (config.n_mels < 1) throw ConfigError("n_mels must be positive");
  if (!(config.f_min >= 0.0) || !(upper > config.f_min) ||
      upper > 0.5 * config.sample_rate + 1e-9) {
    throw ConfigError("invalid mel frequency range");
  }
  const double mel_lo = hz_to_mel(config.f_min);
  const double mel_hi = hz_to_mel(upper);
  std::vector<double> edges(static_cast<std::size_t>(config.n_mels) + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                      static_cast<double>(config.n_mels + 1));
  }
  const double bin_hz = static_cast<double>(config.sample_rate) /
                        static_cast<double>(config.window_samples());

  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(config.n_mels, bins);
  for (int m = 0; m < config.n_mels; ++m) {
    const double left = edges[m];
    const double center = edges[m + 1];
    const double right = edges[m + 2];
    for (Eigen::Index k = 0; k < bins; ++k) {
      const double f = bin_hz * static_cast<double>(k);
      const double rise = (f - left) / (center - left);
      const double fall = (right - f) / (right - center);
      fb(m, k) = std::max(0.0, std::min(rise, fall));
    }
  }
  return fb;
}

Eigen::MatrixXd power_spectrum(const FrameMatrix& frames) {
  const Eigen::Index n = frames.cols();
  const Eigen::Index bins = n / 2 + 1;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> in(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> out;
  Eigen::MatrixXd power(frames.rows(), bins);
  for (Eigen::Index t = 0; t < frames.rows(); ++t) {
    for (Eigen::Index i = 0; i < n; ++i) in[static_cast<std::size_t>(i)] = frames(t, i);
    fft.fwd(out, in);
    for (Eigen::Index k = 0; k < bins; ++k) {
      power(t, k) = std::norm(out[static_cast<std::size_t>(k)]);
    }
  }
  return power;
}

MelFeature mel_spectrogram(const Waveform& wave, const FrontEndConfig& config) {
  if (wave.sample_rate != config.sample_rate) {
    throw UnsupportedFormatError("sample rate " + std::to_string(wave.sample_rate) +
                                 " Hz does not match the configured " +
                                 std::to_string(config.sample_rate) + " Hz");
  }
  const FrameMatrix frames =
      frame_signal(wave, config.window_samples(), config.hop_samples());
  const Eigen::MatrixXd power = power_spectrum(frames);
  const Eigen::MatrixXd fb = mel_filterbank(config);
  const Eigen::MatrixXd mel = power * fb.transpose();

  MelFeature feature;
  feature.frames = (mel.array() + config.log_floor).log().cast<float>().matrix();
  feature.frame_hop_s = config.hop_s;
  feature.window_s = config.window_s;
  feature.duration_s = wave.duration_s();
  return feature;
}

}  // namespace touch_audition::dsp
