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

#ifndef TOUCH_AUDITION_NN_VARIABLE_HPP_
#define TOUCH_AUDITION_NN_VARIABLE_HPP_

#include <functional>
#include <initializer_list>
#include <memory>
#include <unordered_set>
#include <utility>
#include <vector>

#include "touch_audition/nn/tensor.hpp"

namespace touch_audition::nn {

namespace detail {
inline bool& grad_mode() {
  thread_local bool enabled = true;
  return enabled;
}
}  // namespace detail

inline bool grad_enabled() { return detail::grad_mode(); }

// Disables graph recording on this thread for the guard's lifetime.
class NoGradGuard {
 public:
  NoGradGuard() : previous_(detail::grad_mode()) { detail::grad_mode() = false; }
  ~NoGradGuard() { detail::grad_mode() = previous_; }
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

template <typename Scalar>
struct Node {
  Tensor<Scalar> value;
  Tensor<Scalar> grad;
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  // Reads this node's grad and accumulates into the parents' grads.
  std::function<void(Node&)> backward;

  Tensor<Scalar>& grad_buffer() {
    if (grad.empty()) grad = Tensor<Scalar>::zeros(value.shape());
    return grad;
  }
};

// Handle to a node of the reverse-mode graph. Copies share the node.
template <typename Scalar>
class Variable {
 public:
  using NodeType = Node<Scalar>;

  Variable() = default;
  explicit Variable(Tensor<Scalar> value, bool requires_grad = false)
      : node_(std::make_shared<NodeType>()) {
    node_->value = std::move(value);
    node_->requires_grad = requires_grad;
  }

  static Variable parameter(Tensor<Scalar> value) { return Variable(std::move(value), true); }

  bool defined() const { return node_ != nullptr; }
  const Tensor<Scalar>& value() const { return node_->value; }
  // Leaf mutation for optimizers and checkpoint loading.
  Tensor<Scalar>& mutable_value() const { return node_->value; }
  const Shape& shape() const { return node_->value.shape(); }
  bool requires_grad() const { return node_->requires_grad; }
  bool has_grad() const { return !node_->grad.empty(); }
  const Tensor<Scalar>& grad() const { return node_->grad; }
  void zero_grad() const { node_->grad = Tensor<Scalar>(); }

  const std::shared_ptr<NodeType>& node() const { return node_; }

  // Seeds d(self)/d(self) = 1 and propagates through the recorded graph.
  // Only valid on a single-element tensor.
  void backward() const {
    if (node_->value.size() != 1) {
      throw ShapeError("backward() requires a scalar, got " + shape_string(shape()));
    }
    std::vector<NodeType*> order;
    std::unordered_set<NodeType*> visited;
    std::vector<std::pair<NodeType*, std::size_t>> stack{{node_.get(), 0}};
    visited.insert(node_.get());
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < node->parents.size()) {
        NodeType* parent = node->parents[next++].get();
        if (parent->requires_grad && visited.insert(parent).second) {
          stack.emplace_back(parent, 0);
        }
      } else {
        order.push_back(node);
        stack.pop_back();
      }
    }
    node_->grad_buffer().vec().setOnes();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeType* node = *it;
      if (node->backward && !node->grad.empty()) node->backward(*node);
    }
  }

 private:
  std::shared_ptr<NodeType> node_;
};

// Wraps an op's output. The backward closure is recorded only when grad mode
// is on and some input requires a gradient; otherwise inputs are released.
template <typename Scalar, typename Backward>
Variable<Scalar> make_result(Tensor<Scalar> value,
                             std::initializer_list<Variable<Scalar>> inputs,
                             Backward&& backward) {
  Variable<Scalar> out(std::move(value));
  if (!grad_enabled()) return out;
  bool any = false;
  for (const auto& in : inputs) any = any || in.requires_grad();
  if (!any) return out;
  auto& node = *out.node();
  node.requires_grad = true;
  for (const auto& in : inputs) node.parents.push_back(in.node());
  node.backward = std::forward<Backward>(backward);
  return out;
}

template <typename Scalar>
Variable<Scalar> make_result_n(Tensor<Scalar> value, const std::vector<Variable<Scalar>>& inputs,
                               std::function<void(Node<Scalar>&)> backward) {
  Variable<Scalar> out(std::move(value));
  if (!grad_enabled()) return out;
  bool any = false;
  for (const auto& in : inputs) any = any || in.requires_grad();
  if (!any) return out;
  auto& node = *out.node();
  node.requires_grad = true;
  for (const auto& in : inputs) node.parents.push_back(in.node());
  node.backward = std::move(backward);
  return out;
}

}  // namespace touch_audition::nn

#endif  // TOUCH_AUDITION_NN_VARIABLE_HPP_
