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

#include "touch_audition/data/taxonomy.hpp"

#include <algorithm>

#include "touch_audition/error.hpp"

namespace touch_audition::data {

Task parse_task(std::string_view name) {
  if (name == "gesture") return Task::gesture;
  if (name == "arousal") return Task::arousal;
  if (name == "valence") return Task::valence;
  if (name == "aro_val") return Task::aro_val;
  throw ConfigError("unknown task '" + std::string(name) + "'");
}

std::string_view task_name(Task task) {
  switch (task) {
    case Task::gesture: return "gesture";
    case Task::arousal: return "arousal";
    case Task::valence: return "valence";
    case Task::aro_val: return "aro_val";
  }
  return "?";
}

RecordingKind recording_kind(Task task) {
  return task == Task::gesture ? RecordingKind::gesture : RecordingKind::emotion;
}

RecordingKind parse_recording_kind(std::string_view name) {
  if (name == "gesture") return RecordingKind::gesture;
  if (name == "emotion") return RecordingKind::emotion;
  throw ConfigError("unknown recording task '" + std::string(name) + "'");
}

std::string_view recording_kind_name(RecordingKind kind) {
  return kind == RecordingKind::gesture ? "gesture" : "emotion";
}

int num_classes(Task task) {
  switch (task) {
    case Task::gesture: return static_cast<int>(kGestures.size());
    case Task::arousal: return 3;
    case Task::valence: return 3;
    case Task::aro_val: return 5;
  }
  return 0;
}

std::vector<std::string> class_names(Task task) {
  switch (task) {
    case Task::gesture: return {kGestures.begin(), kGestures.end()};
    case Task::arousal: return {"low", "neutral", "high"};
    case Task::valence: return {"negative", "neutral", "positive"};
    case Task::aro_val: return {"Q0", "Q1", "Q2", "Q3", "Q4"};
  }
  return {};
}

Quadrant quadrant_of(Arousal arousal, Valence valence) {
  if (arousal == Arousal::neutral && valence == Valence::neutral) return Quadrant::q0;
  if (arousal == Arousal::high && valence == Valence::positive) return Quadrant::q1;
  if (arousal == Arousal::high && valence == Valence::negative) return Quadrant::q2;
  if (arousal == Arousal::low && valence == Valence::negative) return Quadrant::q3;
  if (arousal == Arousal::low && valence == Valence::positive) return Quadrant::q4;
  throw LabelError("arousal/valence pair '" + std::string(to_string(arousal)) + "/" +
                   std::string(to_string(valence)) + "' has no quadrant");
}

AffectCoordinates map_emotion(std::string_view emotion) {
  Arousal a;
  Valence v;
  if (emotion == "happiness" || emotion == "surprise") {
    a = Arousal::high, v = Valence::positive;
  } else if (emotion == "anger" || emotion == "fear" || emotion == "disgust") {
    a = Arousal::high, v = Valence::negative;
  } else if (emotion == "sadness" || emotion == "confusion") {
    a = Arousal::low, v = Valence::negative;
  } else if (emotion == "comfort" || emotion == "calming") {
    a = Arousal::low, v = Valence::positive;
  } else if (emotion == "attention") {
    a = Arousal::neutral, v = Valence::neutral;
  } else {
    throw LabelError("unknown emotion '" + std::string(emotion) + "'");
  }
  return {a, v, quadrant_of(a, v)};
}

bool is_gesture(std::string_view label) {
  return std::find(kGestures.begin(), kGestures.end(), label) != kGestures.end();
}

bool is_emotion(std::string_view label) {
  return std::find(kEmotions.begin(), kEmotions.end(), label) != kEmotions.end();
}

int class_index(Task task, std::string_view label) {
  if (task == Task::gesture) {
    const auto it = std::find(kGestures.begin(), kGestures.end(), label);
    if (it == kGestures.end()) throw LabelError("'" + std::string(label) + "' is not a gesture");
    return static_cast<int>(it - kGestures.begin());
  }
  const AffectCoordinates c = map_emotion(label);
  switch (task) {
    case Task::arousal: return static_cast<int>(c.arousal);
    case Task::valence: return static_cast<int>(c.valence);
    case Task::aro_val: return static_cast<int>(c.quadrant);
    case Task::gesture: break;
  }
  return -1;
}

std::string_view to_string(Arousal a) {
  switch (a) {
    case Arousal::low: return "low";
    case Arousal::neutral: return "neutral";
    case Arousal::high: return "high";
  }
  return "?";
}

std::string_view to_string(Valence v) {
  switch (v) {
    case Valence::negative: return "negative";
    case Valence::neutral: return "neutral";
    case Valence::positive: return "positive";
  }
  return "?";
}

std::string_view to_string(Quadrant q) {
  static constexpr std::array<std::string_view, 5> names{"Q0", "Q1", "Q2", "Q3", "Q4"};
  return names[static_cast<std::size_t>(q)];
}

}  // namespace touch_audition::data
