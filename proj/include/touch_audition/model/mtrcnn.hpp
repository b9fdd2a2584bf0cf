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

#ifndef TOUCH_AUDITION_MODEL_MTRCNN_HPP_
#define TOUCH_AUDITION_MODEL_MTRCNN_HPP_

#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "touch_audition/analysis/receptive_field.hpp"
#include "touch_audition/error.hpp"
#include "touch_audition/model/config.hpp"
#include "touch_audition/nn/layers.hpp"
#include "touch_audition/nn/ops.hpp"

namespace touch_audition::model {

template <typename Scalar>
using StateDict = std::vector<std::pair<std::string, nn::Tensor<Scalar>>>;

// Three-branch multi-temporal-resolution CNN.
//
// Each branch runs `filters.size()` blocks of
//   dilated conv -> batch norm -> ReLU -> average pool
// followed by global average pooling over (time, freq) and a ReLU embedding
// layer. The branch embeddings are concatenated, fused by a ReLU dense layer,
// passed through dropout and projected to class logits.
//
// Input: N x 1 x T x n_mels standardized log-mel features, any T at or above
// min_input_frames().
template <typename Scalar>
class MtrcnnModel {
 public:
  using Var = nn::Variable<Scalar>;

  MtrcnnModel(ModelConfig config, std::uint64_t seed)
      : config_(std::move(config)), dropout_rng_(seed ^ 0x9E3779B97F4A7C15ull) {
    config_.validate();
    std::mt19937_64 rng(seed);
    for (int kernel : config_.kernels) {
      Branch branch;
      nn::Index in_channels = 1;
      for (std::size_t l = 0; l < config_.filters.size(); ++l) {
        branch.convs.emplace_back(in_channels, config_.filters[l], kernel, kernel,
                                  nn::Dilation{config_.time_dilations[l], config_.freq_dilations[l]},
                                  rng);
        branch.norms.emplace_back(config_.filters[l]);
        in_channels = config_.filters[l];
      }
      branch.embed = nn::Dense<Scalar>(in_channels, config_.embedding_dim, rng);
      branches_.push_back(std::move(branch));
    }
    fusion_ = nn::Dense<Scalar>(config_.concat_dim(), config_.fusion_dim, rng);
    head_ = nn::Dense<Scalar>(config_.fusion_dim, config_.num_classes, rng);
    input_mean_ = nn::Tensor<Scalar>::zeros({config_.n_mels});
    input_std_ = nn::Tensor<Scalar>::constant({config_.n_mels}, Scalar(1));
    min_frames_ = analysis::min_input_frames(config_);
  }

  MtrcnnModel(const MtrcnnModel&) = delete;
  MtrcnnModel& operator=(const MtrcnnModel&) = delete;
  MtrcnnModel(MtrcnnModel&&) noexcept = default;
  MtrcnnModel& operator=(MtrcnnModel&&) noexcept = default;

  const ModelConfig& config() const { return config_; }
  long min_input_frames() const { return min_frames_; }

  // Throws MinLengthError when T < min_input_frames().
  void check_input(const nn::Shape& shape) const {
    if (shape.size() != 4 || shape[1] != 1 || shape[3] != config_.n_mels) {
      throw ShapeError("model input must be N x 1 x T x " + std::to_string(config_.n_mels) +
                       ", got " + nn::shape_string(shape));
    }
    if (shape[0] < 1) throw ShapeError("model input batch is empty");
    if (shape[2] < min_frames_) {
      const double seconds = analysis::frames_to_seconds(min_frames_, config_.hop_s);
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "input has %ld frames; the model needs at least %ld frames (%.2f s)",
                    static_cast<long>(shape[2]), min_frames_, seconds);
      throw MinLengthError(buf, min_frames_, seconds);
    }
  }

  // Output of the first `blocks` conv blocks of one branch; with
  // `pool == false` the pooling step is skipped. No length check is done, so
  // this also serves dependency-cone probes on short inputs.
  Var branch_feature_map(const Var& x, std::size_t branch, bool training, std::size_t blocks,
                         bool pool = true) {
    Branch& b = branches_.at(branch);
    Var h = x;
    for (std::size_t l = 0; l < blocks && l < b.convs.size(); ++l) {
      h = b.convs[l](h);
      h = b.norms[l](h, training);
      h = nn::relu(h);
      if (pool && config_.pooling) h = nn::avg_pool2d(h, pool_window());
    }
    return h;
  }

  // N x C_last pooled branch representation before the embedding layer.
  Var branch_pooled(const Var& x, std::size_t branch, bool training) {
    return nn::global_avg_pool(branch_feature_map(x, branch, training, config_.filters.size()));
  }

  Var forward(const Var& x, bool training) {
    check_input(x.shape());
    std::vector<Var> embeddings;
    for (std::size_t b = 0; b < branches_.size(); ++b) {
      embeddings.push_back(nn::relu(branches_[b].embed(branch_pooled(x, b, training))));
    }
    Var fused = nn::relu(fusion_(nn::concat_features(embeddings)));
    fused = nn::dropout(fused, config_.dropout_p, training, dropout_rng_);
    return head_(fused);
  }

  std::vector<nn::NamedVariable<Scalar>> named_parameters() const {
    std::vector<nn::NamedVariable<Scalar>> out;
    for (std::size_t b = 0; b < branches_.size(); ++b) {
      const std::string p = "b" + std::to_string(b) + ".";
      const Branch& br = branches_[b];
      for (std::size_t l = 0; l < br.convs.size(); ++l) {
        const std::string c = p + "conv" + std::to_string(l) + ".";
        const std::string n = p + "bn" + std::to_string(l) + ".";
        out.push_back({c + "w", br.convs[l].weight()});
        out.push_back({c + "b", br.convs[l].bias()});
        out.push_back({n + "g", br.norms[l].gamma()});
        out.push_back({n + "b", br.norms[l].beta()});
      }
      out.push_back({p + "emb.w", br.embed.weight()});
      out.push_back({p + "emb.b", br.embed.bias()});
    }
    out.push_back({"fuse.w", fusion_.weight()});
    out.push_back({"fuse.b", fusion_.bias()});
    out.push_back({"head.w", head_.weight()});
    out.push_back({"head.b", head_.bias()});
    return out;
  }

  std::vector<Var> parameters() const {
    std::vector<Var> out;
    for (auto& nv : named_parameters()) out.push_back(nv.variable);
    return out;
  }

  // Non-trainable state: batch-norm running statistics and the per-bin input
  // standardization carried alongside the weights.
  std::vector<nn::NamedBuffer<Scalar>> named_buffers() {
    std::vector<nn::NamedBuffer<Scalar>> out;
    collect_buffers(*this, out);
    return out;
  }
  std::vector<std::pair<std::string, const nn::Tensor<Scalar>*>> named_buffers() const {
    std::vector<std::pair<std::string, const nn::Tensor<Scalar>*>> out;
    collect_buffers(*this, out);
    return out;
  }

  nn::Index parameter_count() const {
    nn::Index total = 0;
    for (const auto& nv : named_parameters()) total += nv.variable.value().size();
    return total;
  }

  StateDict<Scalar> state_dict() const {
    StateDict<Scalar> out;
    for (const auto& nv : named_parameters()) out.emplace_back(nv.name, nv.variable.value());
    for (const auto& [name, tensor] : named_buffers()) out.emplace_back(name, *tensor);
    return out;
  }

  // Every entry of state_dict() must be present with an identical shape.
  template <typename MissingError = ShapeError>
  void load_state_dict(const StateDict<Scalar>& state) {
    std::size_t used = 0;
    auto find = [&](const std::string& name) -> const nn::Tensor<Scalar>& {
      for (const auto& [n, t] : state) {
        if (n == name) {
          ++used;
          return t;
        }
      }
      throw MissingError("state is missing tensor '" + name + "'");
    };
    auto assign = [&](const std::string& name, nn::Tensor<Scalar>& dst) {
      const nn::Tensor<Scalar>& src = find(name);
      if (!src.same_shape(dst)) {
        throw MissingError("tensor '" + name + "' has shape " + nn::shape_string(src.shape()) +
                           ", expected " + nn::shape_string(dst.shape()));
      }
      dst = src;
    };
    for (auto& nv : named_parameters()) assign(nv.name, nv.variable.mutable_value());
    for (auto& nb : named_buffers()) assign(nb.name, *nb.tensor);
    if (used != state.size()) throw MissingError("state holds unexpected tensors");
  }

  const nn::Tensor<Scalar>& input_mean() const { return input_mean_; }
  const nn::Tensor<Scalar>& input_std() const { return input_std_; }
  void set_input_standardization(nn::Tensor<Scalar> mean, nn::Tensor<Scalar> std) {
    if (mean.shape() != nn::Shape{config_.n_mels} || std.shape() != nn::Shape{config_.n_mels}) {
      throw ShapeError("input standardization must have " + std::to_string(config_.n_mels) +
                       " bins");
    }
    input_mean_ = std::move(mean);
    input_std_ = std::move(std);
  }

 private:
  struct Branch {
    std::vector<nn::Conv2d<Scalar>> convs;
    std::vector<nn::BatchNorm2d<Scalar>> norms;
    nn::Dense<Scalar> embed;
  };

  template <typename Self, typename Out>
  static void collect_buffers(Self& self, Out& out) {
    for (std::size_t b = 0; b < self.branches_.size(); ++b) {
      for (std::size_t l = 0; l < self.branches_[b].norms.size(); ++l) {
        const std::string n = "b" + std::to_string(b) + ".bn" + std::to_string(l) + ".";
        auto& st = self.branches_[b].norms[l].state();
        out.push_back({n + "rm", &st.running_mean});
        out.push_back({n + "rv", &st.running_var});
      }
    }
    out.push_back({"input.mean", &self.input_mean_});
    out.push_back({"input.std", &self.input_std_});
  }

  nn::PoolWindow pool_window() const {
    return {config_.pooling->kernel_time, config_.pooling->kernel_freq,
            config_.pooling->stride_time, config_.pooling->stride_freq};
  }

  ModelConfig config_;
  std::vector<Branch> branches_;
  nn::Dense<Scalar> fusion_;
  nn::Dense<Scalar> head_;
  nn::Tensor<Scalar> input_mean_;
  nn::Tensor<Scalar> input_std_;
  std::mt19937_64 dropout_rng_;
  long min_frames_ = 0;
};

using Mtrcnn = MtrcnnModel<float>;

}  // namespace touch_audition::model

#endif  // TOUCH_AUDITION_MODEL_MTRCNN_HPP_
