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

#ifndef TOUCH_AUDITION_NN_TENSOR_HPP_
#define TOUCH_AUDITION_NN_TENSOR_HPP_

#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "touch_audition/error.hpp"

namespace touch_audition::nn {

using Index = Eigen::Index;
using Shape = std::vector<Index>;

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline Index shape_size(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), Index{1}, std::multiplies<>());
}

inline std::string shape_string(const Shape& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

// Dense row-major n-d array. Value semantics; the storage is an Eigen vector
// so whole-tensor arithmetic goes through Eigen expressions.
template <typename Scalar>
class Tensor {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Tensor() = default;

  explicit Tensor(Shape shape)
      : shape_(std::move(shape)), data_(Vector::Zero(checked_size(shape_))) {}

  Tensor(Shape shape, Vector data) : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != checked_size(shape_)) {
      throw ShapeError("tensor data size " + std::to_string(data_.size()) +
                       " does not match shape " + shape_string(shape_));
    }
  }

  static Tensor zeros(Shape shape) { return Tensor(std::move(shape)); }
  // Contents are unspecified; for outputs that are fully overwritten.
  static Tensor uninitialized(Shape shape) {
    const Index size = checked_size(shape);
    return Tensor(std::move(shape), Vector(size));
  }
  static Tensor constant(Shape shape, Scalar value) {
    Tensor t(std::move(shape));
    t.data_.setConstant(value);
    return t;
  }

  const Shape& shape() const { return shape_; }
  std::size_t ndim() const { return shape_.size(); }
  Index dim(std::size_t axis) const { return shape_.at(axis); }
  Index size() const { return data_.size(); }
  bool empty() const { return shape_.empty(); }

  Vector& vec() { return data_; }
  const Vector& vec() const { return data_; }
  Scalar* data() { return data_.data(); }
  const Scalar* data() const { return data_.data(); }
  Scalar& operator[](Index i) { return data_[i]; }
  Scalar operator[](Index i) const { return data_[i]; }

  // Element of a 4-d N x C x T x F tensor.
  Scalar& at(Index n, Index c, Index t, Index f) {
    return data_[((n * shape_[1] + c) * shape_[2] + t) * shape_[3] + f];
  }
  Scalar at(Index n, Index c, Index t, Index f) const {
    return data_[((n * shape_[1] + c) * shape_[2] + t) * shape_[3] + f];
  }

  // Row-major matrix view over `rows * cols` consecutive elements at `offset`.
  Eigen::Map<RowMatrix<Scalar>> matrix(Index rows, Index cols, Index offset = 0) {
    return {data_.data() + offset, rows, cols};
  }
  Eigen::Map<const RowMatrix<Scalar>> matrix(Index rows, Index cols, Index offset = 0) const {
    return {data_.data() + offset, rows, cols};
  }

  Tensor reshaped(Shape shape) const { return Tensor(std::move(shape), data_); }

  template <typename Other>
  Tensor<Other> cast() const {
    return Tensor<Other>(shape_, data_.template cast<Other>());
  }

  bool all_finite() const { return data_.allFinite(); }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

 private:
  static Index checked_size(const Shape& shape) {
    for (Index d : shape) {
      if (d < 0) throw ShapeError("negative dimension in shape " + shape_string(shape));
    }
    return shape_size(shape);
  }

  Shape shape_;
  Vector data_;
};

}  // namespace touch_audition::nn

#endif  // TOUCH_AUDITION_NN_TENSOR_HPP_
