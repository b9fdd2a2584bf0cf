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

#ifndef TOUCH_AUDITION_NN_ADAM_HPP_
#define TOUCH_AUDITION_NN_ADAM_HPP_

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "touch_audition/nn/tensor.hpp"
#include "touch_audition/nn/variable.hpp"

namespace touch_audition::nn {

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

template <typename Scalar>
struct AdamState {
  AdamOptions options;
  std::vector<Tensor<Scalar>> first_moment;
  std::vector<Tensor<Scalar>> second_moment;
  long step = 0;

  AdamState() = default;
  explicit AdamState(AdamOptions opts) : options(opts) {}
};

// One bias-corrected Adam update in place. Moment buffers are created on the
// first call and must keep matching the parameter shapes afterwards.
template <typename Scalar>
void adam_step(std::span<Tensor<Scalar>* const> params, std::span<const Tensor<Scalar>* const> grads,
               AdamState<Scalar>& state) {
  if (params.size() != grads.size()) {
    throw ShapeError("adam_step: " + std::to_string(params.size()) + " parameters but " +
                     std::to_string(grads.size()) + " gradients");
  }
  if (state.first_moment.empty()) {
    for (const Tensor<Scalar>* p : params) {
      state.first_moment.push_back(Tensor<Scalar>::zeros(p->shape()));
      state.second_moment.push_back(Tensor<Scalar>::zeros(p->shape()));
    }
  }
  if (state.first_moment.size() != params.size()) {
    throw ShapeError("adam_step: optimizer state tracks a different parameter list");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i]->same_shape(*grads[i]) || !params[i]->same_shape(state.first_moment[i])) {
      throw ShapeError("adam_step: shape mismatch for parameter " + std::to_string(i) + " " +
                       shape_string(params[i]->shape()));
    }
  }
  ++state.step;
  const AdamOptions& o = state.options;
  const double t = static_cast<double>(state.step);
  const Scalar b1 = static_cast<Scalar>(o.beta1);
  const Scalar b2 = static_cast<Scalar>(o.beta2);
  const Scalar correction1 = static_cast<Scalar>(1.0 - std::pow(o.beta1, t));
  const Scalar correction2 = static_cast<Scalar>(1.0 - std::pow(o.beta2, t));
  const Scalar lr = static_cast<Scalar>(o.lr);
  const Scalar eps = static_cast<Scalar>(o.eps);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto g = grads[i]->vec().array();
    auto m = state.first_moment[i].vec().array();
    auto v = state.second_moment[i].vec().array();
    m = b1 * m + (Scalar(1) - b1) * g;
    v = b2 * v + (Scalar(1) - b2) * g.square();
    params[i]->vec().array() -= lr * (m / correction1) / ((v / correction2).sqrt() + eps);
  }
}

// Adam over a fixed list of parameter variables. Parameters without a
// gradient this step are treated as having a zero gradient.
template <typename Scalar>
class Adam {
 public:
  Adam(std::vector<Variable<Scalar>> params, AdamOptions options = {})
      : params_(std::move(params)), state_(options) {}

  void zero_grad() {
    for (auto& p : params_) p.zero_grad();
  }

  void step() {
    std::vector<Tensor<Scalar>*> values;
    std::vector<const Tensor<Scalar>*> grads;
    std::vector<Tensor<Scalar>> zeros;
    zeros.reserve(params_.size());
    for (auto& p : params_) {
      values.push_back(&p.mutable_value());
      if (p.has_grad()) {
        grads.push_back(&p.grad());
      } else {
        zeros.push_back(Tensor<Scalar>::zeros(p.shape()));
        grads.push_back(&zeros.back());
      }
    }
    adam_step<Scalar>(values, grads, state_);
  }

  const AdamState<Scalar>& state() const { return state_; }
  const std::vector<Variable<Scalar>>& parameters() const { return params_; }

 private:
  std::vector<Variable<Scalar>> params_;
  AdamState<Scalar> state_;
};

}  // namespace touch_audition::nn

#endif  // TOUCH_AUDITION_NN_ADAM_HPP_
