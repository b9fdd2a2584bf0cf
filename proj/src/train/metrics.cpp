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

#include "touch_audition/train/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "touch_audition/error.hpp"

namespace touch_audition::train {

double accuracy(std::span<const int> targets, std::span<const int> predictions) {
  if (targets.size() != predictions.size()) throw ShapeError("targets and predictions differ in length");
  if (targets.empty()) throw DataError("cannot score an empty split");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) correct += targets[i] == predictions[i];
  return 100.0 * static_cast<double>(correct) / static_cast<double>(targets.size());
}

ConfusionMatrix::ConfusionMatrix(int classes) {
  if (classes < 1) throw ConfigError("confusion matrix needs at least one class");
  counts_ = Eigen::MatrixX<long>::Zero(classes, classes);
}

ConfusionMatrix::ConfusionMatrix(int classes, std::span<const int> targets,
                                 std::span<const int> predictions)
    : ConfusionMatrix(classes) {
  if (targets.size() != predictions.size()) throw ShapeError("targets and predictions differ in length");
  for (std::size_t i = 0; i < targets.size(); ++i) add(targets[i], predictions[i]);
}

void ConfusionMatrix::add(int target, int prediction) {
  if (target < 0 || target >= classes() || prediction < 0 || prediction >= classes()) {
    throw LabelError("class index out of range for a " + std::to_string(classes()) +
                     "-class confusion matrix");
  }
  ++counts_(target, prediction);
}

Eigen::MatrixXd ConfusionMatrix::normalized() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(classes(), classes());
  for (int r = 0; r < classes(); ++r) {
    const long support = counts_.row(r).sum();
    if (support > 0) out.row(r) = counts_.row(r).cast<double>() / static_cast<double>(support);
  }
  return out;
}

double ConfusionMatrix::accuracy() const {
  if (total() == 0) throw DataError("cannot score an empty split");
  const Eigen::MatrixXd n = normalized();
  double weighted = 0.0;
  for (int r = 0; r < classes(); ++r) weighted += n(r, r) * static_cast<double>(counts_.row(r).sum());
  return 100.0 * weighted / static_cast<double>(total());
}

std::string ConfusionMatrix::to_csv(const std::vector<std::string>& class_names) const {
  if (static_cast<int>(class_names.size()) != classes()) {
    throw ShapeError("need one class name per confusion row");
  }
  const Eigen::MatrixXd n = normalized();
  std::string s = "true\\pred";
  for (const auto& name : class_names) s += "," + name;
  s += "\n";
  char buf[32];
  for (int r = 0; r < classes(); ++r) {
    s += class_names[static_cast<std::size_t>(r)];
    for (int c = 0; c < classes(); ++c) {
      std::snprintf(buf, sizeof(buf), ",%.6f", n(r, c));
      s += buf;
    }
    s += "\n";
  }
  return s;
}

std::string ConfusionMatrix::to_pgm(int cell) const {
  if (cell < 1) throw ConfigError("heatmap cell size must be positive");
  const Eigen::MatrixXd n = normalized();
  const int side = classes() * cell;
  std::string s = "P5\n" + std::to_string(side) + " " + std::to_string(side) + "\n255\n";
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const double v = n(y / cell, x / cell);
      s.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * (1.0 - v)))));
    }
  }
  return s;
}

}  // namespace touch_audition::train
