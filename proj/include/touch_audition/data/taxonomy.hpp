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

#ifndef TOUCH_AUDITION_DATA_TAXONOMY_HPP_
#define TOUCH_AUDITION_DATA_TAXONOMY_HPP_

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace touch_audition::data {

// Classification targets. Arousal, valence and aro_val are all derived from
// the emotion label of an emotion recording.
enum class Task { gesture, arousal, valence, aro_val };

// What a recording was made for; emotion recordings serve three tasks.
enum class RecordingKind { gesture, emotion };

enum class Arousal { low, neutral, high };
enum class Valence { negative, neutral, positive };
enum class Quadrant { q0, q1, q2, q3, q4 };

struct AffectCoordinates {
  Arousal arousal;
  Valence valence;
  Quadrant quadrant;

  bool operator==(const AffectCoordinates&) const = default;
};

inline constexpr std::array<std::string_view, 6> kGestures{"hold", "pat",  "poke",
                                                           "tickle", "tap", "rub"};
inline constexpr std::array<std::string_view, 10> kEmotions{
    "happiness", "surprise", "anger",   "fear",    "disgust",
    "sadness",   "confusion", "comfort", "calming", "attention"};

Task parse_task(std::string_view name);
std::string_view task_name(Task task);
RecordingKind recording_kind(Task task);
RecordingKind parse_recording_kind(std::string_view name);
std::string_view recording_kind_name(RecordingKind kind);

int num_classes(Task task);
std::vector<std::string> class_names(Task task);

// Quadrant as a pure function of the two affect axes. Combinations outside
// the circumplex placement used here (e.g. high arousal, neutral valence)
// raise LabelError.
Quadrant quadrant_of(Arousal arousal, Valence valence);

// Throws LabelError for names outside the taxonomy.
AffectCoordinates map_emotion(std::string_view emotion);

bool is_gesture(std::string_view label);
bool is_emotion(std::string_view label);

// Class index of `label` for `task`. Gesture labels index kGestures; emotion
// labels go through map_emotion. Throws LabelError on a mismatch.
int class_index(Task task, std::string_view label);

std::string_view to_string(Arousal a);
std::string_view to_string(Valence v);
std::string_view to_string(Quadrant q);

}  // namespace touch_audition::data

#endif  // TOUCH_AUDITION_DATA_TAXONOMY_HPP_
