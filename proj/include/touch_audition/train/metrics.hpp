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

#ifndef TOUCH_AUDITION_TRAIN_METRICS_HPP_
#define TOUCH_AUDITION_TRAIN_METRICS_HPP_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace touch_audition::train {

// Percentage of matching entries. Throws DataError on empty input and
// ShapeError on a length mismatch.
double accuracy(std::span<const int> targets, std::span<const int> predictions);

class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int classes);
  ConfusionMatrix(int classes, std::span<const int> targets, std::span<const int> predictions);

  void add(int target, int prediction);

  int classes() const { return static_cast<int>(counts_.rows()); }
  long total() const { return counts_.sum(); }
  const Eigen::MatrixX<long>& counts() const { return counts_; }

  // Rows are true classes. Each row with support sums to 1; rows without
  // support stay zero.
  Eigen::MatrixXd normalized() const;

  // Support-weighted trace of normalized(), in percent.
  double accuracy() const;

  std::string to_csv(const std::vector<std::string>& class_names) const;
  // Binary PGM heatmap of normalized(), `cell` pixels per entry, dark = high.
  std::string to_pgm(int cell = 32) const;

 private:
  Eigen::MatrixX<long> counts_;
};

}  // namespace touch_audition::train

#endif  // TOUCH_AUDITION_TRAIN_METRICS_HPP_
