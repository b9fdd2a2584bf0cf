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

#include "touch_audition/train/trainer.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>

#include "touch_audition/data/batch.hpp"
#include "touch_audition/dsp/wav.hpp"
#include "touch_audition/error.hpp"
#include "touch_audition/nn/adam.hpp"

namespace touch_audition::train {
namespace {

using Var = nn::Variable<float>;

struct BatchStats {
  double loss_sum = 0.0;
  long correct = 0;
  long count = 0;
};

std::vector<int> argmax_rows(const nn::Tensor<float>& logits) {
  const nn::Index n = logits.dim(0), k = logits.dim(1);
  const auto z = logits.matrix(n, k);
  std::vector<int> out(static_cast<std::size_t>(n));
  for (nn::Index i = 0; i < n; ++i) {
    nn::Index best = 0;
    z.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

// Splits `indices` by crop length so no batch mixes lengths.
std::vector<std::vector<std::size_t>> group_by_frames(const std::vector<std::size_t>& indices,
                                                      const std::vector<dsp::FeatureMatrix>& crops) {
  std::map<nn::Index, std::vector<std::size_t>> groups;
  for (std::size_t i : indices) groups[crops[i].rows()].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [frames, g] : groups) out.push_back(std::move(g));
  return out;
}

data::Batch gather(const std::vector<std::size_t>& idx, const std::vector<dsp::FeatureMatrix>& crops,
                   const Dataset& split) {
  std::vector<dsp::FeatureMatrix> parts;
  std::vector<int> targets;
  for (std::size_t i : idx) {
    parts.push_back(crops[i]);
    targets.push_back(split[i].target);
  }
  return data::assemble_batch(parts, targets);
}

// One pass over the training split in training mode. With `optimizer` null
// no update is made.
BatchStats training_pass(model::Mtrcnn& model, const Dataset& split, double crop_s, int batch_size,
                         std::mt19937_64& rng, nn::Adam<float>* optimizer) {
  BatchStats stats;
  const auto plan = data::plan_batches(split.size(), static_cast<std::size_t>(batch_size), &rng);
  for (const auto& chunk : plan) {
    std::vector<dsp::FeatureMatrix> crops(split.size());
    for (std::size_t i : chunk) crops[i] = data::crop(split[i].feature, crop_s, data::CropMode::random, rng).frames;
    for (const auto& group : group_by_frames(chunk, crops)) {
      data::Batch batch = gather(group, crops, split);
      std::optional<nn::NoGradGuard> no_grad;
      if (!optimizer) no_grad.emplace();
      Var logits = model.forward(Var(std::move(batch.features)), true);
      Var loss = nn::softmax_cross_entropy(logits, std::span<const int>(batch.targets));
      if (optimizer) {
        optimizer->zero_grad();
        loss.backward();
        optimizer->step();
      }
      const auto preds = argmax_rows(logits.value());
      for (std::size_t i = 0; i < preds.size(); ++i) stats.correct += preds[i] == batch.targets[i];
      stats.loss_sum += static_cast<double>(loss.value()[0]) * static_cast<double>(batch.size());
      stats.count += batch.size();
    }
  }
  return stats;
}

}  // namespace

double TrainConfig::default_crop_seconds(data::Task task) {
  return task == data::Task::gesture ? 6.0 : 7.0;
}

TrainConfig TrainConfig::defaults(data::Task task) {
  TrainConfig c;
  c.task = task;
  c.crop_s = default_crop_seconds(task);
  return c;
}

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (batch_size < 1) throw ConfigError("batch size must be at least 1");
  if (!(lr >= 0.0)) throw ConfigError("learning rate must be non-negative");
  if (crop_s < data::kMinCropSeconds - 1e-9) {
    throw ConfigError("crop length must be at least 1.10 s");
  }
  if (test_crop_s && *test_crop_s < data::kMinCropSeconds - 1e-9) {
    throw ConfigError("test crop length must be at least 1.10 s");
  }
}

TaskData prepare_task_data(data::Task task, Dataset train, Dataset val, Dataset test) {
  if (train.empty()) throw DataError("training split is empty");
  std::vector<dsp::FeatureMatrix> frames;
  for (const Sample& s : train) frames.push_back(s.feature.frames);
  TaskData d;
  d.task = task;
  d.stats = dsp::compute_stats(frames);
  for (Dataset* split : {&train, &val, &test}) {
    for (Sample& s : *split) s.feature = dsp::standardize(s.feature, d.stats);
  }
  d.train = std::move(train);
  d.val = std::move(val);
  d.test = std::move(test);
  return d;
}

TaskData load_task_data(const data::Manifest& manifest, data::Task task,
                        const dsp::FrontEndConfig& front_end) {
  Dataset train, val, test;
  const data::RecordingKind kind = data::recording_kind(task);
  for (const data::ManifestRecord& r : manifest.records) {
    if (r.task != kind || r.split == data::Split::none) continue;
    Sample s;
    s.feature = dsp::mel_spectrogram(dsp::load_wav(manifest.resolve(r)), front_end);
    s.target = data::class_index(task, r.label);
    s.path = r.path;
    (r.split == data::Split::train ? train : r.split == data::Split::val ? val : test)
        .push_back(std::move(s));
  }
  return prepare_task_data(task, std::move(train), std::move(val), std::move(test));
}

EvalResult evaluate(model::Mtrcnn& model, const Dataset& split, data::CropMode mode,
                    double length_s, int batch_size) {
  if (split.empty()) throw DataError("cannot evaluate an empty split");
  if (batch_size < 1) throw ConfigError("batch size must be at least 1");
  nn::NoGradGuard no_grad;
  std::mt19937_64 rng(0);
  std::vector<dsp::FeatureMatrix> crops(split.size());
  for (std::size_t i = 0; i < split.size(); ++i) crops[i] = data::crop(split[i].feature, length_s, mode, rng).frames;

  std::vector<std::size_t> all(split.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  EvalResult out;
  out.confusion = ConfusionMatrix(model.config().num_classes);
  out.predictions.assign(split.size(), 0);
  double loss_sum = 0.0;
  for (const auto& group : group_by_frames(all, crops)) {
    for (std::size_t b = 0; b < group.size(); b += static_cast<std::size_t>(batch_size)) {
      const std::vector<std::size_t> idx(group.begin() + static_cast<std::ptrdiff_t>(b),
                                         group.begin() + static_cast<std::ptrdiff_t>(
                                             std::min(group.size(), b + static_cast<std::size_t>(batch_size))));
      data::Batch batch = gather(idx, crops, split);
      Var logits = model.forward(Var(std::move(batch.features)), false);
      Var loss = nn::softmax_cross_entropy(logits, std::span<const int>(batch.targets));
      loss_sum += static_cast<double>(loss.value()[0]) * static_cast<double>(batch.size());
      const auto preds = argmax_rows(logits.value());
      for (std::size_t i = 0; i < idx.size(); ++i) out.predictions[idx[i]] = preds[i];
    }
  }
  std::vector<int> targets;
  for (const Sample& s : split) targets.push_back(s.target);
  for (std::size_t i = 0; i < split.size(); ++i) out.confusion.add(targets[i], out.predictions[i]);
  out.accuracy = accuracy(targets, out.predictions);
  out.loss = loss_sum / static_cast<double>(split.size());
  return out;
}

RunResult train(const TrainConfig& config, model::Mtrcnn& model, const TaskData& data,
                const std::function<void(const EpochLog&)>& on_epoch) {
  config.validate();
  if (data.task != config.task) throw ConfigError("data and training config are for different tasks");
  if (model.config().num_classes != data::num_classes(config.task)) {
    throw ConfigError("model head has " + std::to_string(model.config().num_classes) +
                      " classes but task '" + std::string(data::task_name(config.task)) + "' has " +
                      std::to_string(data::num_classes(config.task)));
  }
  if (data.train.empty()) throw DataError("training split is empty");
  if (data.val.empty()) throw DataError("validation split is empty");

  model.set_input_standardization(nn::Tensor<float>({data.stats.bins()}, data.stats.mean),
                                  nn::Tensor<float>({data.stats.bins()}, data.stats.std));

  RunResult result;
  {
    const auto snapshot = model.state_dict();
    std::mt19937_64 probe_rng(config.seed ^ 0x5DEECE66Dull);
    const BatchStats s = training_pass(model, data.train, config.crop_s, config.batch_size, probe_rng, nullptr);
    result.initial_loss = s.loss_sum / static_cast<double>(s.count);
    model.load_state_dict(snapshot);
  }

  std::mt19937_64 rng(config.seed);
  nn::Adam<float> optimizer(model.parameters(), nn::AdamOptions{.lr = config.lr});
  model::StateDict<float> best;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const BatchStats s = training_pass(model, data.train, config.crop_s, config.batch_size, rng, &optimizer);
    const EvalResult val = evaluate(model, data.val, data::CropMode::center, config.crop_s, config.batch_size);
    EpochLog log{epoch, s.loss_sum / static_cast<double>(s.count),
                 100.0 * static_cast<double>(s.correct) / static_cast<double>(s.count), val.loss,
                 val.accuracy};
    result.epochs.push_back(log);
    if (val.accuracy > result.best_val_accuracy) {
      result.best_val_accuracy = val.accuracy;
      result.best_epoch = epoch;
      best = model.state_dict();
    }
    if (on_epoch) on_epoch(log);
  }
  model.load_state_dict(best);
  if (!data.test.empty()) {
    result.test = config.test_crop_s
                      ? evaluate(model, data.test, data::CropMode::center, *config.test_crop_s, config.batch_size)
                      : evaluate(model, data.test, data::CropMode::full, 0.0, config.batch_size);
  }
  return result;
}

std::string loss_log_csv(const RunResult& result) {
  std::string s = "epoch,train_loss,train_acc,val_loss,val_acc\n";
  char buf[160];
  std::snprintf(buf, sizeof(buf), "0,%.9g,,,\n", result.initial_loss);
  s += buf;
  for (const EpochLog& e : result.epochs) {
    std::snprintf(buf, sizeof(buf), "%d,%.9g,%.6f,%.9g,%.6f\n", e.epoch, e.train_loss, e.train_accuracy,
                  e.val_loss, e.val_accuracy);
    s += buf;
  }
  return s;
}

}  // namespace touch_audition::train
