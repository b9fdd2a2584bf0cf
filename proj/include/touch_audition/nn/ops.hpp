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

#ifndef TOUCH_AUDITION_NN_OPS_HPP_
#define TOUCH_AUDITION_NN_OPS_HPP_

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "touch_audition/error.hpp"
#include "touch_audition/nn/tensor.hpp"
#include "touch_audition/nn/variable.hpp"

namespace touch_audition::nn {

struct Dilation {
  Index time = 1;
  Index freq = 1;
};

struct PoolWindow {
  Index kernel_time = 2;
  Index kernel_freq = 2;
  Index stride_time = 2;
  Index stride_freq = 2;
};

// Running statistics owned by a batch-norm layer.
template <typename Scalar>
struct BatchNormState {
  Tensor<Scalar> running_mean;
  Tensor<Scalar> running_var;
  double momentum = 0.1;
  double eps = 1e-5;

  explicit BatchNormState(Index channels = 0)
      : running_mean(Tensor<Scalar>::zeros({channels})),
        running_var(Tensor<Scalar>::constant({channels}, Scalar(1))) {}
};

namespace detail {

inline void require_rank(const Shape& shape, std::size_t rank, const char* op) {
  if (shape.size() != rank) {
    throw ShapeError(std::string(op) + ": expected rank " + std::to_string(rank) +
                     " input, got " + shape_string(shape));
  }
}

// Unfolds one N-slice of a C x T x F input over the frequency taps only:
// row (c * kf + j), column (t * f_out + f) holds x[c, t, f + j * d.freq] for
// every input row t. Time tap i of the convolution then reads the contiguous
// column block starting at i * d.time * f_out.
template <typename Scalar>
void unfold_freq(const Scalar* x, Index channels, Index t_in, Index f_in, Index kf, Index d_freq,
                 Index f_out, RowMatrix<Scalar>& col) {
  col.resize(channels * kf, t_in * f_out);
  for (Index c = 0; c < channels; ++c) {
    const Scalar* plane = x + c * t_in * f_in;
    for (Index j = 0; j < kf; ++j) {
      Scalar* row = col.data() + (c * kf + j) * t_in * f_out;
      for (Index t = 0; t < t_in; ++t) {
        const Scalar* src = plane + t * f_in + j * d_freq;
        std::copy(src, src + f_out, row + t * f_out);
      }
    }
  }
}

template <typename Scalar>
void fold_freq_add(const RowMatrix<Scalar>& col, Index channels, Index t_in, Index f_in, Index kf,
                   Index d_freq, Index f_out, Scalar* x) {
  for (Index c = 0; c < channels; ++c) {
    Scalar* plane = x + c * t_in * f_in;
    for (Index j = 0; j < kf; ++j) {
      const Scalar* row = col.data() + (c * kf + j) * t_in * f_out;
      for (Index t = 0; t < t_in; ++t) {
        Scalar* dst = plane + t * f_in + j * d_freq;
        const Scalar* src = row + t * f_out;
        for (Index f = 0; f < f_out; ++f) dst[f] += src[f];
      }
    }
  }
}

// Cout x (Cin * kf) slice of a Cout x Cin x kt x kf weight at time tap i.
template <typename Scalar>
RowMatrix<Scalar> time_tap(const Tensor<Scalar>& w, Index i) {
  const Index cout = w.dim(0), cin = w.dim(1), kt = w.dim(2), kf = w.dim(3);
  RowMatrix<Scalar> out(cout, cin * kf);
  for (Index o = 0; o < cout; ++o) {
    for (Index c = 0; c < cin; ++c) {
      for (Index j = 0; j < kf; ++j) out(o, c * kf + j) = w.data()[((o * cin + c) * kt + i) * kf + j];
    }
  }
  return out;
}

}  // namespace detail

// Valid-padding dilated 2-D convolution. x: N x Cin x T x F,
// weight: Cout x Cin x kt x kf, bias: Cout.
template <typename Scalar>
Variable<Scalar> conv2d(const Variable<Scalar>& x, const Variable<Scalar>& weight,
                        const Variable<Scalar>& bias, Dilation dilation = {}) {
  detail::require_rank(x.shape(), 4, "conv2d");
  detail::require_rank(weight.shape(), 4, "conv2d weight");
  const Index n = x.shape()[0], cin = x.shape()[1], t_in = x.shape()[2], f_in = x.shape()[3];
  const Index cout = weight.shape()[0], kt = weight.shape()[2], kf = weight.shape()[3];
  if (weight.shape()[1] != cin) {
    throw ShapeError("conv2d: input has " + std::to_string(cin) + " channels, weight expects " +
                     std::to_string(weight.shape()[1]));
  }
  if (bias.shape() != Shape{cout}) throw ShapeError("conv2d: bias shape mismatch");
  if (dilation.time < 1 || dilation.freq < 1) throw ConfigError("conv2d: dilation must be >= 1");
  const Index span_t = 1 + (kt - 1) * dilation.time;
  const Index span_f = 1 + (kf - 1) * dilation.freq;
  if (t_in < span_t) {
    throw MinSizeError("conv2d: time axis has " + std::to_string(t_in) +
                       " positions but the dilated kernel spans " + std::to_string(span_t));
  }
  if (f_in < span_f) {
    throw MinSizeError("conv2d: frequency axis has " + std::to_string(f_in) +
                       " positions but the dilated kernel spans " + std::to_string(span_f));
  }
  const Index t_out = t_in - span_t + 1;
  const Index f_out = f_in - span_f + 1;
  const Index positions = t_out * f_out;

  Tensor<Scalar> out = Tensor<Scalar>::uninitialized({n, cout, t_out, f_out});
  std::vector<RowMatrix<Scalar>> taps_w;
  for (Index i = 0; i < kt; ++i) taps_w.push_back(detail::time_tap(weight.value(), i));
  const auto& b = bias.value().vec();
  RowMatrix<Scalar> col;
  for (Index s = 0; s < n; ++s) {
    detail::unfold_freq(x.value().data() + s * cin * t_in * f_in, cin, t_in, f_in, kf,
                        dilation.freq, f_out, col);
    auto y = out.matrix(cout, positions, s * cout * positions);
    y.noalias() = taps_w[0] * col.middleCols(0, positions);
    for (Index i = 1; i < kt; ++i) {
      y.noalias() += taps_w[static_cast<std::size_t>(i)] *
                     col.middleCols(i * dilation.time * f_out, positions);
    }
    y.colwise() += b;
  }

  return make_result(std::move(out), {x, weight, bias},
                     [=, taps_w = std::move(taps_w)](Node<Scalar>& self) {
    auto& xin = *self.parents[0];
    auto& wn = *self.parents[1];
    auto& bn = *self.parents[2];
    RowMatrix<Scalar> col_buf, dcol;
    std::vector<RowMatrix<Scalar>> dw;
    if (wn.requires_grad) dw.assign(static_cast<std::size_t>(kt), RowMatrix<Scalar>::Zero(cout, cin * kf));
    for (Index s = 0; s < n; ++s) {
      const auto gy = self.grad.matrix(cout, positions, s * cout * positions);
      if (wn.requires_grad) {
        detail::unfold_freq(xin.value.data() + s * cin * t_in * f_in, cin, t_in, f_in, kf,
                            dilation.freq, f_out, col_buf);
        for (Index i = 0; i < kt; ++i) {
          dw[static_cast<std::size_t>(i)].noalias() +=
              gy * col_buf.middleCols(i * dilation.time * f_out, positions).transpose();
        }
      }
      if (bn.requires_grad) bn.grad_buffer().vec() += gy.rowwise().sum();
      if (xin.requires_grad) {
        dcol.setZero(cin * kf, t_in * f_out);
        for (Index i = 0; i < kt; ++i) {
          dcol.middleCols(i * dilation.time * f_out, positions).noalias() +=
              taps_w[static_cast<std::size_t>(i)].transpose() * gy;
        }
        detail::fold_freq_add(dcol, cin, t_in, f_in, kf, dilation.freq, f_out,
                              xin.grad_buffer().data() + s * cin * t_in * f_in);
      }
    }
    if (wn.requires_grad) {
      Scalar* g = wn.grad_buffer().data();
      for (Index o = 0; o < cout; ++o) {
        for (Index c = 0; c < cin; ++c) {
          for (Index i = 0; i < kt; ++i) {
            for (Index j = 0; j < kf; ++j) {
              g[((o * cin + c) * kt + i) * kf + j] += dw[static_cast<std::size_t>(i)](o, c * kf + j);
            }
          }
        }
      }
    }
  });
}

// Per-channel normalization over N x T x F. Training mode uses batch
// statistics and updates the running estimates (unbiased variance);
// eval mode uses the running estimates.
template <typename Scalar>
Variable<Scalar> batch_norm(const Variable<Scalar>& x, const Variable<Scalar>& gamma,
                            const Variable<Scalar>& beta, BatchNormState<Scalar>& state,
                            bool training) {
  detail::require_rank(x.shape(), 4, "batch_norm");
  const Index n = x.shape()[0], channels = x.shape()[1];
  const Index plane = x.shape()[2] * x.shape()[3];
  if (gamma.shape() != Shape{channels} || beta.shape() != Shape{channels} ||
      state.running_mean.shape() != Shape{channels}) {
    throw ShapeError("batch_norm: expected " + std::to_string(channels) +
                     " channels of scale/shift");
  }
  const Index count = n * plane;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> mean(channels), inv_std(channels);
  const auto& xv = x.value();
  if (training) {
    if (count < 2) throw ShapeError("batch_norm: training needs at least two values per channel");
    for (Index c = 0; c < channels; ++c) {
      double sum = 0.0;
      for (Index s = 0; s < n; ++s) {
        sum += xv.vec().segment((s * channels + c) * plane, plane).template cast<double>().sum();
      }
      const double mu = sum / static_cast<double>(count);
      double sq = 0.0;
      for (Index s = 0; s < n; ++s) {
        sq += (xv.vec().segment((s * channels + c) * plane, plane).template cast<double>().array() -
               mu).square().sum();
      }
      const double var = sq / static_cast<double>(count);
      mean[c] = static_cast<Scalar>(mu);
      inv_std[c] = static_cast<Scalar>(1.0 / std::sqrt(var + state.eps));
      const double m = state.momentum;
      state.running_mean[c] = static_cast<Scalar>((1.0 - m) * state.running_mean[c] + m * mu);
      state.running_var[c] = static_cast<Scalar>(
          (1.0 - m) * state.running_var[c] + m * var * count / static_cast<double>(count - 1));
    }
  } else {
    for (Index c = 0; c < channels; ++c) {
      mean[c] = state.running_mean[c];
      inv_std[c] = static_cast<Scalar>(1.0 / std::sqrt(double(state.running_var[c]) + state.eps));
    }
  }

  // xhat is only kept when a backward pass can need it.
  const bool record =
      grad_enabled() && (x.requires_grad() || gamma.requires_grad() || beta.requires_grad());
  Tensor<Scalar> xhat = record ? Tensor<Scalar>::uninitialized(x.shape()) : Tensor<Scalar>();
  Tensor<Scalar> out = Tensor<Scalar>::uninitialized(x.shape());
  for (Index s = 0; s < n; ++s) {
    for (Index c = 0; c < channels; ++c) {
      const Index off = (s * channels + c) * plane;
      const Scalar scale = gamma.value()[c] * inv_std[c];
      const Scalar shift = beta.value()[c] - mean[c] * scale;
      out.vec().segment(off, plane) = xv.vec().segment(off, plane).array() * scale + shift;
      if (record) {
        xhat.vec().segment(off, plane) =
            (xv.vec().segment(off, plane).array() - mean[c]) * inv_std[c];
      }
    }
  }

  return make_result(std::move(out), {x, gamma, beta},
                     [=, xhat = std::move(xhat)](Node<Scalar>& self) {
    auto& xin = *self.parents[0];
    auto& g = *self.parents[1];
    auto& bt = *self.parents[2];
    for (Index c = 0; c < channels; ++c) {
      double sum_gy = 0.0, sum_gy_xhat = 0.0;
      for (Index s = 0; s < n; ++s) {
        const Index off = (s * channels + c) * plane;
        const auto gy = self.grad.vec().segment(off, plane).template cast<double>();
        sum_gy += gy.sum();
        sum_gy_xhat += gy.dot(xhat.vec().segment(off, plane).template cast<double>());
      }
      if (g.requires_grad) g.grad_buffer()[c] += static_cast<Scalar>(sum_gy_xhat);
      if (bt.requires_grad) bt.grad_buffer()[c] += static_cast<Scalar>(sum_gy);
      if (!xin.requires_grad) continue;
      const Scalar scale = g.value[c] * inv_std[c];
      auto& gx = xin.grad_buffer();
      for (Index s = 0; s < n; ++s) {
        const Index off = (s * channels + c) * plane;
        if (training) {
          const Scalar mean_gy = static_cast<Scalar>(sum_gy / count);
          const Scalar mean_gy_xhat = static_cast<Scalar>(sum_gy_xhat / count);
          gx.vec().segment(off, plane).array() +=
              scale * (self.grad.vec().segment(off, plane).array() - mean_gy -
                       xhat.vec().segment(off, plane).array() * mean_gy_xhat);
        } else {
          gx.vec().segment(off, plane).array() += scale * self.grad.vec().segment(off, plane).array();
        }
      }
    }
  });
}

template <typename Scalar>
Variable<Scalar> relu(const Variable<Scalar>& x) {
  Tensor<Scalar> out(x.shape(), x.value().vec().cwiseMax(Scalar(0)));
  return make_result(std::move(out), {x}, [](Node<Scalar>& self) {
    auto& in = *self.parents[0];
    in.grad_buffer().vec().array() +=
        (in.value.vec().array() > Scalar(0)).select(self.grad.vec().array(), Scalar(0));
  });
}

// Average pooling over (time, freq) with valid windows; trailing rows or
// columns that do not fill a window are dropped.
template <typename Scalar>
Variable<Scalar> avg_pool2d(const Variable<Scalar>& x, PoolWindow window = {}) {
  detail::require_rank(x.shape(), 4, "avg_pool2d");
  const Index n = x.shape()[0], channels = x.shape()[1], t_in = x.shape()[2], f_in = x.shape()[3];
  if (t_in < window.kernel_time) {
    throw MinSizeError("avg_pool2d: time axis has " + std::to_string(t_in) +
                       " positions, pooling window needs " + std::to_string(window.kernel_time));
  }
  if (f_in < window.kernel_freq) {
    throw MinSizeError("avg_pool2d: frequency axis has " + std::to_string(f_in) +
                       " positions, pooling window needs " + std::to_string(window.kernel_freq));
  }
  const Index t_out = (t_in - window.kernel_time) / window.stride_time + 1;
  const Index f_out = (f_in - window.kernel_freq) / window.stride_freq + 1;
  const Scalar inv_area = Scalar(1) / static_cast<Scalar>(window.kernel_time * window.kernel_freq);
  Tensor<Scalar> out({n, channels, t_out, f_out});
  const Scalar* src = x.value().data();
  Scalar* dst = out.data();
  for (Index p = 0; p < n * channels; ++p) {
    const Scalar* plane = src + p * t_in * f_in;
    for (Index t = 0; t < t_out; ++t) {
      for (Index f = 0; f < f_out; ++f) {
        Scalar acc = 0;
        for (Index i = 0; i < window.kernel_time; ++i) {
          const Scalar* row = plane + (t * window.stride_time + i) * f_in + f * window.stride_freq;
          for (Index j = 0; j < window.kernel_freq; ++j) acc += row[j];
        }
        *dst++ = acc * inv_area;
      }
    }
  }
  return make_result(std::move(out), {x}, [=](Node<Scalar>& self) {
    auto& in = *self.parents[0];
    Scalar* gx = in.grad_buffer().data();
    const Scalar* gy = self.grad.data();
    for (Index p = 0; p < n * channels; ++p) {
      Scalar* plane = gx + p * t_in * f_in;
      for (Index t = 0; t < t_out; ++t) {
        for (Index f = 0; f < f_out; ++f) {
          const Scalar g = *gy++ * inv_area;
          for (Index i = 0; i < window.kernel_time; ++i) {
            Scalar* row = plane + (t * window.stride_time + i) * f_in + f * window.stride_freq;
            for (Index j = 0; j < window.kernel_freq; ++j) row[j] += g;
          }
        }
      }
    }
  });
}

// N x C x T x F -> N x C, mean over every (t, f) position.
template <typename Scalar>
Variable<Scalar> global_avg_pool(const Variable<Scalar>& x) {
  detail::require_rank(x.shape(), 4, "global_avg_pool");
  const Index n = x.shape()[0], channels = x.shape()[1];
  const Index plane = x.shape()[2] * x.shape()[3];
  if (plane < 1) throw MinSizeError("global_avg_pool: empty spatial extent");
  Tensor<Scalar> out({n, channels});
  out.vec() = x.value().matrix(n * channels, plane).rowwise().mean();
  return make_result(std::move(out), {x}, [=](Node<Scalar>& self) {
    auto& in = *self.parents[0];
    in.grad_buffer().matrix(n * channels, plane).colwise() +=
        self.grad.vec() / static_cast<Scalar>(plane);
  });
}

// x: N x D, weight: D x D', bias: D'.
template <typename Scalar>
Variable<Scalar> dense(const Variable<Scalar>& x, const Variable<Scalar>& weight,
                       const Variable<Scalar>& bias) {
  detail::require_rank(x.shape(), 2, "dense");
  detail::require_rank(weight.shape(), 2, "dense weight");
  const Index n = x.shape()[0], d_in = x.shape()[1], d_out = weight.shape()[1];
  if (weight.shape()[0] != d_in) {
    throw ShapeError("dense: input width " + std::to_string(d_in) + " does not match weight " +
                     shape_string(weight.shape()));
  }
  if (bias.shape() != Shape{d_out}) throw ShapeError("dense: bias shape mismatch");
  Tensor<Scalar> out({n, d_out});
  out.matrix(n, d_out).noalias() = x.value().matrix(n, d_in) * weight.value().matrix(d_in, d_out);
  out.matrix(n, d_out).rowwise() += bias.value().vec().transpose();
  return make_result(std::move(out), {x, weight, bias}, [=](Node<Scalar>& self) {
    auto& in = *self.parents[0];
    auto& w = *self.parents[1];
    auto& b = *self.parents[2];
    const auto gy = self.grad.matrix(n, d_out);
    if (in.requires_grad) {
      in.grad_buffer().matrix(n, d_in).noalias() += gy * w.value.matrix(d_in, d_out).transpose();
    }
    if (w.requires_grad) {
      w.grad_buffer().matrix(d_in, d_out).noalias() += in.value.matrix(n, d_in).transpose() * gy;
    }
    if (b.requires_grad) b.grad_buffer().vec() += gy.colwise().sum().transpose();
  });
}

// Concatenates N x D_i inputs along the feature axis.
template <typename Scalar>
Variable<Scalar> concat_features(const std::vector<Variable<Scalar>>& parts) {
  if (parts.empty()) throw ShapeError("concat_features: no inputs");
  const Index n = parts.front().shape().at(0);
  std::vector<Index> widths;
  Index total = 0;
  for (const auto& p : parts) {
    detail::require_rank(p.shape(), 2, "concat_features");
    if (p.shape()[0] != n) throw ShapeError("concat_features: batch sizes differ");
    widths.push_back(p.shape()[1]);
    total += p.shape()[1];
  }
  Tensor<Scalar> out({n, total});
  auto om = out.matrix(n, total);
  Index col = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    om.middleCols(col, widths[i]) = parts[i].value().matrix(n, widths[i]);
    col += widths[i];
  }
  return make_result_n<Scalar>(std::move(out), parts, [=](Node<Scalar>& self) {
    const auto g = self.grad.matrix(n, total);
    Index offset = 0;
    for (std::size_t i = 0; i < widths.size(); ++i) {
      auto& in = *self.parents[i];
      if (in.requires_grad) in.grad_buffer().matrix(n, widths[i]) += g.middleCols(offset, widths[i]);
      offset += widths[i];
    }
  });
}

// Inverted dropout: survivors are scaled by 1/(1-p). Identity when p == 0 or
// outside training.
template <typename Scalar, typename Rng>
Variable<Scalar> dropout(const Variable<Scalar>& x, double p, bool training, Rng& rng) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw ConfigError("dropout probability must lie in [0, 1), got " + std::to_string(p));
  }
  if (!training || p == 0.0) return x;
  std::bernoulli_distribution keep(1.0 - p);
  const Scalar scale = static_cast<Scalar>(1.0 / (1.0 - p));
  Tensor<Scalar> mask(x.shape());
  for (Index i = 0; i < mask.size(); ++i) mask[i] = keep(rng) ? scale : Scalar(0);
  Tensor<Scalar> out(x.shape(), x.value().vec().cwiseProduct(mask.vec()));
  return make_result(std::move(out), {x}, [mask = std::move(mask)](Node<Scalar>& self) {
    self.parents[0]->grad_buffer().vec() += self.grad.vec().cwiseProduct(mask.vec());
  });
}

// Row-wise softmax with max subtraction.
template <typename Scalar>
RowMatrix<Scalar> softmax(const Tensor<Scalar>& logits) {
  detail::require_rank(logits.shape(), 2, "softmax");
  RowMatrix<Scalar> p = logits.matrix(logits.dim(0), logits.dim(1));
  p.colwise() -= p.rowwise().maxCoeff();
  p = p.array().exp().matrix();
  p.array().colwise() /= p.rowwise().sum().array();
  return p;
}

// Mean over the batch of -log softmax(logits)[target]. Returns a 1-element
// tensor; the gradient w.r.t. logits is (softmax - onehot) / N.
template <typename Scalar>
Variable<Scalar> softmax_cross_entropy(const Variable<Scalar>& logits, std::span<const int> targets) {
  detail::require_rank(logits.shape(), 2, "softmax_cross_entropy");
  const Index n = logits.shape()[0], k = logits.shape()[1];
  if (k < 2) throw ShapeError("softmax_cross_entropy: need at least two classes");
  if (static_cast<Index>(targets.size()) != n) {
    throw ShapeError("softmax_cross_entropy: " + std::to_string(targets.size()) +
                     " targets for a batch of " + std::to_string(n));
  }
  for (int t : targets) {
    if (t < 0 || t >= k) {
      throw LabelError("target class " + std::to_string(t) + " outside [0, " + std::to_string(k) + ")");
    }
  }
  const auto z = logits.value().matrix(n, k);
  RowMatrix<Scalar> probs = softmax(logits.value());
  double loss = 0.0;
  for (Index i = 0; i < n; ++i) {
    const Scalar max = z.row(i).maxCoeff();
    const double lse = double(max) + std::log((z.row(i).array() - max).exp().template cast<double>().sum());
    loss += lse - double(z(i, targets[i]));
  }
  loss /= static_cast<double>(n);
  std::vector<int> labels(targets.begin(), targets.end());
  return make_result(Tensor<Scalar>::constant({1}, static_cast<Scalar>(loss)), {logits},
                     [=, probs = std::move(probs)](Node<Scalar>& self) {
    RowMatrix<Scalar> g = probs;
    for (Index i = 0; i < n; ++i) g(i, labels[static_cast<std::size_t>(i)]) -= Scalar(1);
    self.parents[0]->grad_buffer().matrix(n, k) += g * (self.grad[0] / static_cast<Scalar>(n));
  });
}

// sum(x * weights) as a 1-element tensor; used to probe gradients with a
// fixed random projection.
template <typename Scalar>
Variable<Scalar> sum_product(const Variable<Scalar>& x, const Tensor<Scalar>& weights) {
  if (!x.value().same_shape(weights)) throw ShapeError("sum_product: shape mismatch");
  const Scalar s = x.value().vec().dot(weights.vec());
  return make_result(Tensor<Scalar>::constant({1}, s), {x}, [weights](Node<Scalar>& self) {
    self.parents[0]->grad_buffer().vec() += weights.vec() * self.grad[0];
  });
}

}  // namespace touch_audition::nn

#endif  // TOUCH_AUDITION_NN_OPS_HPP_
