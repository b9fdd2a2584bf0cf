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

#include "touch_audition/dsp/standardize.hpp"

#include <string>

#include "touch_audition/error.hpp"

namespace touch_audition::dsp {

FeatureStats FeatureStats::identity(Eigen::Index bins) {
  return {Eigen::VectorXf::Zero(bins), Eigen::VectorXf::Ones(bins)};
}

FeatureStats compute_stats(std::span<const FeatureMatrix> features) {
  if (features.empty()) throw DataError("cannot compute statistics of an empty feature set");
  const Eigen::Index bins = features.front().cols();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(bins);
  Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(bins);
  double count = 0.0;
  for (const FeatureMatrix& f : features) {
    if (f.cols() != bins) throw ShapeError("feature set mixes bin counts");
    const Eigen::MatrixXd d = f.cast<double>();
    sum += d.colwise().sum().transpose();
    count += static_cast<double>(f.rows());
  }
  const Eigen::VectorXd mean = sum / count;
  for (const FeatureMatrix& f : features) {
    const Eigen::MatrixXd centered = f.cast<double>().rowwise() - mean.transpose();
    sum_sq += centered.array().square().colwise().sum().matrix().transpose();
  }
  FeatureStats stats;
  stats.mean = mean.cast<float>();
  stats.std = (sum_sq / count).cwiseSqrt().cast<float>().cwiseMax(kStdFloor);
  return stats;
}

FeatureMatrix standardize(const FeatureMatrix& frames, const FeatureStats& stats) {
  if (stats.mean.size() != frames.cols() || stats.std.size() != frames.cols()) {
    throw ShapeError("standardization stats have " + std::to_string(stats.mean.size()) +
                     " bins, feature has " + std::to_string(frames.cols()));
  }
  FeatureMatrix out = frames;
  out.rowwise() -= stats.mean.transpose();
  out.array().rowwise() /= stats.std.transpose().array();
  return out;
}

MelFeature standardize(const MelFeature& feature, const FeatureStats& stats) {
  MelFeature out = feature;
  out.frames = standardize(feature.frames, stats);
  return out;
}

}  // namespace touch_audition::dsp
