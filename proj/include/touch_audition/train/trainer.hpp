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

#ifndef TOUCH_AUDITION_TRAIN_TRAINER_HPP_
#define TOUCH_AUDITION_TRAIN_TRAINER_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "touch_audition/data/crop.hpp"
#include "touch_audition/data/manifest.hpp"
#include "touch_audition/dsp/mel.hpp"
#include "touch_audition/dsp/standardize.hpp"
#include "touch_audition/model/mtrcnn.hpp"
#include "touch_audition/train/metrics.hpp"

namespace touch_audition::train {

struct TrainConfig {
  data::Task task = data::Task::gesture;
  int epochs = 100;
  int batch_size = 32;
  double lr = 1e-3;
  double crop_s = 6.0;
  // Test-time crop length; nullopt evaluates full clips.
  std::optional<double> test_crop_s;
  std::uint64_t seed = 0;

  // 6 s for gestures, 7 s for the emotion tasks.
  static double default_crop_seconds(data::Task task);
  static TrainConfig defaults(data::Task task);
  // Throws ConfigError.
  void validate() const;
};

struct Sample {
  dsp::MelFeature feature;
  int target = 0;
  std::string path;
};
using Dataset = std::vector<Sample>;

// Standardized splits of one task plus the training-split statistics.
struct TaskData {
  data::Task task = data::Task::gesture;
  Dataset train, val, test;
  dsp::FeatureStats stats;
};

// Fits statistics on `train` and standardizes all three splits with them.
TaskData prepare_task_data(data::Task task, Dataset train, Dataset val, Dataset test);

// Featurizes every split record of the task's recording kind.
TaskData load_task_data(const data::Manifest& manifest, data::Task task,
                        const dsp::FrontEndConfig& front_end = {});

struct EvalResult {
  double accuracy = 0.0;
  double loss = 0.0;
  ConfusionMatrix confusion{1};
  std::vector<int> predictions;
};

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
};

struct RunResult {
  // Mean training-mode loss of the untrained model over one pass of the
  // training split.
  double initial_loss = 0.0;
  std::vector<EpochLog> epochs;
  int best_epoch = 0;
  double best_val_accuracy = -1.0;
  EvalResult test;
};

// Forward passes in eval mode, batching only crops of equal length. `random`
// crops draw from a generator seeded with 0. Throws DataError on an empty
// split.
EvalResult evaluate(model::Mtrcnn& model, const Dataset& split, data::CropMode mode,
                    double length_s, int batch_size = 32);

// Adam on mean cross-entropy over random crops. The checkpoint with the best
// validation accuracy (center crops) is restored before the test pass, so
// `model` ends holding it. Deterministic for a fixed config.seed.
RunResult train(const TrainConfig& config, model::Mtrcnn& model, const TaskData& data,
                const std::function<void(const EpochLog&)>& on_epoch = {});

// epoch,train_loss,train_acc,val_loss,val_acc; epoch 0 carries initial_loss.
std::string loss_log_csv(const RunResult& result);

}  // namespace touch_audition::train

#endif  // TOUCH_AUDITION_TRAIN_TRAINER_HPP_
