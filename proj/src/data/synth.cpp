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

#include "touch_audition/data/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "touch_audition/error.hpp"

namespace touch_audition::data {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// RBJ cookbook biquad, direct form I.
class Biquad {
 public:
  static Biquad lowpass(double fc, double q, double sr) { return make(0, fc, q, sr); }
  static Biquad highpass(double fc, double q, double sr) { return make(1, fc, q, sr); }
  static Biquad bandpass(double fc, double q, double sr) { return make(2, fc, q, sr); }

  double operator()(double x) {
    const double y = b0_ * x + b1_ * x1_ + b2_ * x2_ - a1_ * y1_ - a2_ * y2_;
    x2_ = x1_;
    x1_ = x;
    y2_ = y1_;
    y1_ = y;
    return y;
  }

 private:
  static Biquad make(int type, double fc, double q, double sr) {
    const double w = kTwoPi * fc / sr;
    const double alpha = std::sin(w) / (2.0 * q);
    const double c = std::cos(w);
    double b0, b1, b2;
    if (type == 0) {
      b0 = (1 - c) / 2, b1 = 1 - c, b2 = (1 - c) / 2;
    } else if (type == 1) {
      b0 = (1 + c) / 2, b1 = -(1 + c), b2 = (1 + c) / 2;
    } else {
      b0 = alpha, b1 = 0, b2 = -alpha;
    }
    const double a0 = 1 + alpha;
    Biquad f;
    f.b0_ = b0 / a0, f.b1_ = b1 / a0, f.b2_ = b2 / a0;
    f.a1_ = -2 * c / a0, f.a2_ = (1 - alpha) / a0;
    return f;
  }

  double b0_ = 1, b1_ = 0, b2_ = 0, a1_ = 0, a2_ = 0;
  double x1_ = 0, x2_ = 0, y1_ = 0, y2_ = 0;
};

class Renderer {
 public:
  Renderer(double duration_s, int sr, std::uint64_t seed)
      : sr_(sr), buf_(static_cast<std::size_t>(std::llround(duration_s * sr)), 0.0), rng_(seed) {}

  double duration() const { return static_cast<double>(buf_.size()) / sr_; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double gauss() { return normal_(rng_); }
  double exponential(double rate) { return std::exponential_distribution<double>(rate)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  void noise_floor(double amp) {
    for (double& s : buf_) s += amp * gauss();
  }

  // Continuous filtered noise, optionally under a raised-cosine envelope.
  void sustained(double amp, Biquad filter, double am_rate = 0.0, double am_depth = 0.0) {
    const double phase = uniform(0.0, kTwoPi);
    for (std::size_t i = 0; i < buf_.size(); ++i) {
      const double t = static_cast<double>(i) / sr_;
      const double env = 1.0 - am_depth * 0.5 * (1.0 + std::cos(kTwoPi * am_rate * t + phase));
      buf_[i] += amp * env * filter(gauss());
    }
  }

  // Exponentially decaying sinusoid with a short noisy attack.
  void click(double t0, double amp, double freq, double decay_s) {
    const double phase = uniform(0.0, kTwoPi);
    const auto len = static_cast<std::size_t>(6.0 * decay_s * sr_) + 1;
    const std::size_t onset = start(t0);
    for (std::size_t k = 0; k < len && onset + k < buf_.size(); ++k) {
      const double t = static_cast<double>(k) / sr_;
      const double env = std::exp(-t / decay_s);
      const double attack = t < 0.001 ? 0.3 * gauss() : 0.0;
      buf_[onset + k] += amp * env * (std::sin(kTwoPi * freq * t + phase) + attack);
    }
  }

  // Harmonic tone with 1/h partial amplitudes.
  void tone(double t0, double amp, double f0, int harmonics, double decay_s) {
    const auto len = static_cast<std::size_t>(5.0 * decay_s * sr_) + 1;
    const std::size_t onset = start(t0);
    for (std::size_t k = 0; k < len && onset + k < buf_.size(); ++k) {
      const double t = static_cast<double>(k) / sr_;
      const double rise = std::min(1.0, t / 0.005);
      double v = 0.0;
      for (int h = 1; h <= harmonics; ++h) v += std::sin(kTwoPi * h * f0 * t) / h;
      buf_[onset + k] += amp * rise * std::exp(-t / decay_s) * v;
    }
  }

  // Hann-windowed filtered noise burst.
  void burst(double t0, double amp, double length_s, Biquad filter) {
    const auto len = static_cast<std::size_t>(length_s * sr_) + 1;
    const std::size_t onset = start(t0);
    for (std::size_t k = 0; k < len && onset + k < buf_.size(); ++k) {
      const double w = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(len));
      buf_[onset + k] += amp * w * filter(gauss());
    }
  }

  // Event onsets with mean spacing 1/rate; `jitter` is the relative spread.
  std::vector<double> periodic(double rate, double jitter) {
    std::vector<double> times;
    const double period = 1.0 / rate;
    for (double t = uniform(0.0, period); t < duration(); t += period * uniform(1.0 - jitter, 1.0 + jitter)) {
      times.push_back(t);
    }
    return times;
  }

  std::vector<double> poisson(double rate) {
    std::vector<double> times;
    for (double t = exponential(rate); t < duration(); t += exponential(rate)) times.push_back(t);
    return times;
  }

  dsp::Waveform finish() {
    double peak = 0.0;
    for (double s : buf_) peak = std::max(peak, std::abs(s));
    const double gain = peak > 0.95 ? 0.95 / peak : 1.0;
    dsp::Waveform w;
    w.sample_rate = sr_;
    w.samples.resize(static_cast<Eigen::Index>(buf_.size()));
    for (std::size_t i = 0; i < buf_.size(); ++i) {
      w.samples[static_cast<Eigen::Index>(i)] = static_cast<float>(gain * buf_[i]);
    }
    return w;
  }

  int sample_rate() const { return sr_; }

 private:
  std::size_t start(double t0) const {
    return static_cast<std::size_t>(std::max(0.0, t0) * sr_);
  }

  int sr_;
  std::vector<double> buf_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

void render_gesture(Renderer& r, std::string_view label) {
  const double sr = r.sample_rate();
  if (label == "hold") {
    r.sustained(0.05, Biquad::lowpass(r.uniform(2000.0, 3000.0), 0.707, sr));
  } else if (label == "rub") {
    r.sustained(0.5, Biquad::bandpass(r.uniform(700.0, 900.0), 1.2, sr), r.uniform(0.6, 1.0), 0.8);
  } else if (label == "tap") {
    const double freq = r.uniform(2500.0, 3500.0);
    for (double t : r.periodic(r.uniform(3.5, 4.5), 0.1)) r.click(t, r.uniform(0.4, 0.6), freq, 0.006);
  } else if (label == "pat") {
    for (double t : r.periodic(r.uniform(1.5, 2.0), 0.15)) {
      r.burst(t, r.uniform(1.5, 2.0), 0.08, Biquad::lowpass(500.0, 0.707, sr));
    }
  } else if (label == "poke") {
    const double freq = r.uniform(1200.0, 1600.0);
    for (double t : r.periodic(r.uniform(0.5, 0.7), 0.3)) r.click(t, r.uniform(0.5, 0.7), freq, 0.02);
  } else if (label == "tickle") {
    for (double c : r.poisson(2.5)) {
      const int n = r.integer(6, 10);
      for (int k = 0; k < n; ++k) {
        r.click(c + r.uniform(0.0, 0.15), r.uniform(0.1, 0.2), r.uniform(5000.0, 7000.0), 0.002);
      }
    }
  } else {
    throw LabelError("'" + std::string(label) + "' is not a gesture label");
  }
}

void render_emotion(Renderer& r, std::string_view label) {
  const AffectCoordinates a = map_emotion(label);
  // Members of one quadrant differ slightly in rate and pitch.
  int member = 0;
  for (std::string_view e : kEmotions) {
    if (e == label) break;
    if (map_emotion(e).quadrant == a.quadrant) ++member;
  }
  const double shade = 1.0 + 0.12 * member;

  double rate = 3.0, amp = 0.3;
  if (a.arousal == Arousal::high) rate = 7.0, amp = 0.55;
  if (a.arousal == Arousal::low) rate = 1.2, amp = 0.15;
  rate *= shade * r.uniform(0.9, 1.1);
  amp *= r.uniform(0.9, 1.1);

  const double sr = r.sample_rate();
  if (a.arousal == Arousal::low) r.sustained(0.1, Biquad::bandpass(600.0, 1.0, sr));
  switch (a.valence) {
    case Valence::positive: {
      const double f0 = r.uniform(350.0, 550.0) * shade;
      for (double t : r.periodic(rate, 0.1)) r.tone(t, amp, f0, 4, 0.06);
      break;
    }
    case Valence::neutral: {
      const double freq = r.uniform(1400.0, 1600.0);
      for (double t : r.periodic(rate, 0.1)) r.click(t, amp, freq, 0.02);
      break;
    }
    case Valence::negative: {
      for (double t : r.poisson(rate)) {
        r.burst(t, 2.0 * amp, 0.03, Biquad::highpass(1000.0, 0.707, sr));
        r.click(t, amp, r.uniform(3500.0, 4500.0) * shade, 0.004);
      }
      break;
    }
  }
}

}  // namespace

dsp::Waveform synth_clip(RecordingKind kind, std::string_view label, std::uint64_t seed,
                         double duration_s, int sample_rate) {
  if (duration_s <= 0.0 || sample_rate <= 0) throw ConfigError("synth needs a positive duration and rate");
  Renderer r(duration_s, sample_rate, seed);
  r.noise_floor(0.002);
  if (kind == RecordingKind::gesture) {
    render_gesture(r, label);
  } else {
    render_emotion(r, label);
  }
  return r.finish();
}

Manifest synth_corpus(const SynthOptions& options, const std::filesystem::path& out_dir) {
  if (options.per_class < 1) throw ConfigError("per-class count must be at least 1");
  std::vector<std::string_view> labels;
  if (options.kind == RecordingKind::gesture) {
    labels.assign(kGestures.begin(), kGestures.end());
  } else {
    labels.assign(kEmotions.begin(), kEmotions.end());
  }

  std::filesystem::create_directories(out_dir / "wav");
  Manifest manifest;
  manifest.base_dir = out_dir;
  for (std::size_t c = 0; c < labels.size(); ++c) {
    for (int i = 0; i < options.per_class; ++i) {
      std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                        static_cast<std::uint32_t>(options.seed >> 32),
                        static_cast<std::uint32_t>(options.kind), static_cast<std::uint32_t>(c),
                        static_cast<std::uint32_t>(i)};
      std::uint32_t words[2];
      seq.generate(words, words + 2);
      const std::uint64_t clip_seed = (std::uint64_t{words[0]} << 32) | words[1];

      char name[64];
      std::snprintf(name, sizeof(name), "wav/%.*s_%03d.wav", static_cast<int>(labels[c].size()),
                    labels[c].data(), i);
      dsp::save_wav_pcm16(out_dir / name, synth_clip(options.kind, labels[c], clip_seed,
                                                     options.duration_s, options.sample_rate));
      ManifestRecord rec;
      rec.path = name;
      rec.participant = i % 28 + 1;
      rec.round = (i / 28) % 3 + 1;
      rec.task = options.kind;
      rec.label = std::string(labels[c]);
      manifest.records.push_back(std::move(rec));
    }
  }

  SplitOptions split;
  split.counts = options.counts.value_or(
      proportional_counts(options.per_class, static_cast<long>(labels.size())));
  split.seed = options.seed;
  if (split.counts.total() > 0) manifest = make_splits(manifest, options.kind, split);
  write_manifest(out_dir / "manifest.csv", manifest);
  return manifest;
}

}  // namespace touch_audition::data
