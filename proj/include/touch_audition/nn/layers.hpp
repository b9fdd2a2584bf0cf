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

#ifndef TOUCH_AUDITION_NN_LAYERS_HPP_
#define TOUCH_AUDITION_NN_LAYERS_HPP_

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "touch_audition/nn/ops.hpp"

namespace touch_audition::nn {

template <typename Scalar>
struct NamedVariable {
  std::string name;
  Variable<Scalar> variable;
};

template <typename Scalar>
struct NamedBuffer {
  std::string name;
  Tensor<Scalar>* tensor;
};

// Uniform(-sqrt(6 / fan_in), +sqrt(6 / fan_in)). Draws in double so float and
// double models built from the same seed start from the same point.
template <typename Scalar, typename Rng>
Tensor<Scalar> kaiming_uniform(Shape shape, Index fan_in, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  Tensor<Scalar> t(std::move(shape));
  for (Index i = 0; i < t.size(); ++i) t[i] = static_cast<Scalar>(dist(rng));
  return t;
}

template <typename Scalar>
class Conv2d {
 public:
  Conv2d() = default;
  template <typename Rng>
  Conv2d(Index in_channels, Index out_channels, Index kernel_time, Index kernel_freq,
         Dilation dilation, Rng& rng)
      : dilation_(dilation),
        weight_(Variable<Scalar>::parameter(kaiming_uniform<Scalar>(
            {out_channels, in_channels, kernel_time, kernel_freq},
            in_channels * kernel_time * kernel_freq, rng))),
        bias_(Variable<Scalar>::parameter(Tensor<Scalar>::zeros({out_channels}))) {}

  Variable<Scalar> operator()(const Variable<Scalar>& x) const {
    return conv2d(x, weight_, bias_, dilation_);
  }

  Dilation dilation() const { return dilation_; }
  const Variable<Scalar>& weight() const { return weight_; }
  const Variable<Scalar>& bias() const { return bias_; }

 private:
  Dilation dilation_;
  Variable<Scalar> weight_;
  Variable<Scalar> bias_;
};

template <typename Scalar>
class BatchNorm2d {
 public:
  BatchNorm2d() = default;
  explicit BatchNorm2d(Index channels)
      : gamma_(Variable<Scalar>::parameter(Tensor<Scalar>::constant({channels}, Scalar(1)))),
        beta_(Variable<Scalar>::parameter(Tensor<Scalar>::zeros({channels}))),
        state_(channels) {}

  Variable<Scalar> operator()(const Variable<Scalar>& x, bool training) {
    return batch_norm(x, gamma_, beta_, state_, training);
  }

  const Variable<Scalar>& gamma() const { return gamma_; }
  const Variable<Scalar>& beta() const { return beta_; }
  BatchNormState<Scalar>& state() { return state_; }
  const BatchNormState<Scalar>& state() const { return state_; }

 private:
  Variable<Scalar> gamma_;
  Variable<Scalar> beta_;
  BatchNormState<Scalar> state_;
};

template <typename Scalar>
class Dense {
 public:
  Dense() = default;
  template <typename Rng>
  Dense(Index in_features, Index out_features, Rng& rng)
      : weight_(Variable<Scalar>::parameter(
            kaiming_uniform<Scalar>({in_features, out_features}, in_features, rng))),
        bias_(Variable<Scalar>::parameter(Tensor<Scalar>::zeros({out_features}))) {}

  Variable<Scalar> operator()(const Variable<Scalar>& x) const { return dense(x, weight_, bias_); }

  const Variable<Scalar>& weight() const { return weight_; }
  const Variable<Scalar>& bias() const { return bias_; }

 private:
  Variable<Scalar> weight_;
  Variable<Scalar> bias_;
};

}  // namespace touch_audition::nn

#endif  // TOUCH_AUDITION_NN_LAYERS_HPP_
