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

#ifndef TOUCH_AUDITION_DATA_SYNTH_HPP_
#define TOUCH_AUDITION_DATA_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "touch_audition/data/manifest.hpp"
#include "touch_audition/data/splits.hpp"
#include "touch_audition/dsp/wav.hpp"

namespace touch_audition::data {

// Synthetic touch sounds, separable by construction.
//
// Gestures:
//   tap     periodic resonant clicks, ~4 per second
//   pat     low-passed noise bursts, ~1.7 per second
//   poke    a handful of isolated low-pitched impulses
//   tickle  irregular clusters of tiny high-frequency clicks
//   hold    sustained quiet low-passed noise
//   rub     band-limited noise under a slow amplitude envelope
// Emotions: arousal sets event rate and level; valence sets the event
// timbre (harmonic tones, plain resonances, or rough noisy bursts).
dsp::Waveform synth_clip(RecordingKind kind, std::string_view label, std::uint64_t seed,
                         double duration_s = 10.0, int sample_rate = 16000);

struct SynthOptions {
  RecordingKind kind = RecordingKind::gesture;
  int per_class = 20;
  std::uint64_t seed = 0;
  double duration_s = 10.0;
  int sample_rate = 16000;
  // Defaults to a 60/20/20 stratified split of every class.
  std::optional<SplitCounts> counts;
};

// Writes wav/<label>_<index>.wav and manifest.csv under `out_dir` and returns
// the manifest. Output is a pure function of the options.
Manifest synth_corpus(const SynthOptions& options, const std::filesystem::path& out_dir);

}  // namespace touch_audition::data

#endif  // TOUCH_AUDITION_DATA_SYNTH_HPP_
