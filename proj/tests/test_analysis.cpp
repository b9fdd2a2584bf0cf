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

#include <random>
#include <vector>

#include "catch_amalgamated.hpp"
#include "support/oracles.hpp"
#include "touch_audition/analysis/receptive_field.hpp"
#include "touch_audition/analysis/resources.hpp"
#include "touch_audition/model/mtrcnn.hpp"

using namespace touch_audition;
using analysis::ChainLayer;
using Catch::Approx;

namespace {

// Smallest T for which a branch still yields one output position, found by
// stepping T upward through the plain size recurrences.
long scan_min_frames(const model::ModelConfig& c, std::size_t b) {
  for (long frames = 1;; ++frames) {
    long t = frames;
    bool ok = true;
    for (std::size_t l = 0; l < c.filters.size() && ok; ++l) {
      t -= (c.kernels[b] - 1) * c.time_dilations[l];
      if (t < 1) ok = false;
      if (ok && c.pooling) {
        if (t < c.pooling->kernel_time) ok = false;
        else t = (t - c.pooling->kernel_time) / c.pooling->stride_time + 1;
      }
    }
    if (ok) return frames;
  }
}

model::ModelConfig single_branch(int kernel) {
  auto c = model::ModelConfig::defaults(data::Task::gesture);
  c.kernels = {kernel};
  return c;
}

}  // namespace

TEST_CASE("receptive field: chains") {
  CHECK(analysis::receptive_field({ChainLayer::conv(3)}) == std::vector<long>{3});
  const analysis::LayerChainSpec k7{ChainLayer::conv(7, 1), ChainLayer::conv(7, 2), ChainLayer::conv(7, 3)};
  CHECK(analysis::receptive_field(k7) == std::vector<long>{7, 19, 37});
  const analysis::LayerChainSpec pooled{ChainLayer::conv(7, 1), ChainLayer::pool(2, 2),
                                        ChainLayer::conv(7, 2), ChainLayer::pool(2, 2),
                                        ChainLayer::conv(7, 3), ChainLayer::pool(2, 2)};
  CHECK(analysis::receptive_field(pooled) == std::vector<long>{7, 8, 32, 34, 106, 110});
  CHECK(analysis::required_extent(pooled) == 110);
  CHECK(analysis::output_extent(pooled, 110) == 1);
  CHECK(analysis::output_extent(pooled, 109) == 0);
  CHECK_THROWS_AS(analysis::receptive_field({}), ConfigError);
  CHECK_THROWS_AS(analysis::receptive_field({ChainLayer::conv(0)}), ConfigError);
}

TEST_CASE("receptive field: time chain of the default k=7 branch") {
  const auto c = model::ModelConfig::defaults(data::Task::gesture);
  auto no_pool = c;
  no_pool.pooling.reset();
  CHECK(analysis::receptive_field(analysis::time_chain(no_pool, 2)) == std::vector<long>{7, 19, 37});
  CHECK(analysis::receptive_field(analysis::time_chain(no_pool, 0)) == std::vector<long>{3, 7, 13});
  CHECK(analysis::receptive_field(analysis::time_chain(no_pool, 1)) == std::vector<long>{5, 13, 25});
}

TEST_CASE("min input frames") {
  const auto c = model::ModelConfig::defaults(data::Task::gesture);
  CHECK(analysis::min_input_frames(c) == 110);
  CHECK(analysis::frames_to_seconds(110, 0.010) == Approx(1.10));
  CHECK(analysis::frames_to_clip_seconds(110, 0.010, 0.032) == Approx(1.122));
  for (int k : {3, 5, 7}) {
    const auto s = single_branch(k);
    CHECK(analysis::min_input_frames(s) == scan_min_frames(s, 0));
  }
  CHECK(analysis::min_input_frames(single_branch(3)) == 42);
  CHECK(analysis::min_input_frames(single_branch(5)) == 76);
  auto np = single_branch(7);
  np.pooling.reset();
  CHECK(analysis::min_input_frames(np) == 37);
  CHECK(analysis::min_input_frames(np) == scan_min_frames(np, 0));
}

TEST_CASE("params: closed form and live enumeration") {
  const auto c = model::ModelConfig::defaults(data::Task::gesture);
  CHECK(analysis::count_params(c) == 240038);
  const auto layers = analysis::layer_costs(c, 997);
  const auto first7 = std::find_if(layers.begin(), layers.end(), [](const auto& l) { return l.name == "b2.conv0"; });
  REQUIRE(first7 != layers.end());
  CHECK(first7->params == 800);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> small(1, 6), kern(1, 4), dil(1, 3), classes(2, 7), layers_n(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    model::ModelConfig r;
    r.n_mels = 48;
    r.kernels.clear();
    const int nb = small(rng) % 3 + 1;
    for (int b = 0; b < nb; ++b) r.kernels.push_back(kern(rng) * 2 - 1);
    const int nl = layers_n(rng);
    r.filters.clear();
    r.time_dilations.clear();
    r.freq_dilations.clear();
    for (int l = 0; l < nl; ++l) {
      r.filters.push_back(small(rng));
      r.time_dilations.push_back(dil(rng));
      r.freq_dilations.push_back(1);
    }
    if (trial % 2) r.pooling.reset();
    r.embedding_dim = small(rng);
    r.fusion_dim = small(rng);
    r.num_classes = classes(rng);
    try {
      r.validate();
    } catch (const ConfigError&) {
      continue;
    }
    const model::MtrcnnModel<double> m(r, 1);
    CHECK(analysis::count_params(r) == m.parameter_count());
  }
}

TEST_CASE("macs: identity 1x1 conv counts one MAC per output") {
  model::ModelConfig c;
  c.n_mels = 9;
  c.kernels = {1};
  c.filters = {1};
  c.time_dilations = {1};
  c.freq_dilations = {1};
  c.pooling.reset();
  c.embedding_dim = 1;
  c.fusion_dim = 1;
  c.num_classes = 2;
  const auto layers = analysis::layer_costs(c, 13);
  CHECK(layers.front().macs == 13 * 9);
}

TEST_CASE("macs: closed form equals the brute-force counter") {
  const auto c = model::ModelConfig::defaults(data::Task::gesture);
  for (long frames : {110L, 399L, 997L}) {
    CHECK(analysis::count_macs(c, frames) == testing::brute_force_macs(c, frames));
  }
  CHECK(analysis::count_flops(c, 997, analysis::FlopConvention::two_mac) ==
        2.0 * analysis::count_flops(c, 997, analysis::FlopConvention::mac));
  CHECK(analysis::count_flops(c, 997, analysis::FlopConvention::mac, true) >
        analysis::count_flops(c, 997, analysis::FlopConvention::mac));
  CHECK_THROWS_AS(analysis::count_macs(c, 109), MinLengthError);
}

TEST_CASE("macs: additive over layers and branches") {
  const auto c = model::ModelConfig::defaults(data::Task::gesture);
  long sum = 0;
  for (const auto& l : analysis::layer_costs(c, 598)) sum += l.macs;
  CHECK(sum == analysis::count_macs(c, 598));
  const auto b = analysis::branch_macs(c, 598);
  const long dense_tail = 192 * 64 + 64 * 6;
  CHECK(b[0] + b[1] + b[2] + dense_tail == sum);
  // Larger kernels cost more.
  CHECK(b[0] < b[1]);
  CHECK(b[1] < b[2]);
}

TEST_CASE("macs: affine in the input length") {
  // Without pooling every conv output grows one row per frame.
  auto np = model::ModelConfig::defaults(data::Task::gesture);
  np.pooling.reset();
  for (long t = 40; t < 60; ++t) {
    CHECK(analysis::count_macs(np, t + 2) - analysis::count_macs(np, t + 1) ==
          analysis::count_macs(np, t + 1) - analysis::count_macs(np, t));
  }
  // With three 2x pools the pattern repeats every 8 frames.
  const auto c = model::ModelConfig::defaults(data::Task::gesture);
  const long step = analysis::count_macs(c, 118) - analysis::count_macs(c, 110);
  for (long t = 110; t < 400; t += 8) {
    CHECK(analysis::count_macs(c, t + 8) - analysis::count_macs(c, t) == step);
  }
}

TEST_CASE("report: grid, budget and reconciliation flags") {
  const auto r = analysis::analyze(model::ModelConfig::defaults(data::Task::gesture));
  CHECK(r.min_input_frames == 110);
  CHECK(r.min_input_seconds_approx == Approx(1.10));
  CHECK(r.param_count == 240038);
  CHECK(r.model_size_bytes == 4 * 240038);
  CHECK(r.model_size_mb == Approx(0.960152));
  CHECK(r.grid.size() == 20);
  CHECK(r.grid.front().frames == 110);
  CHECK(r.grid.back().frames == 997);
  CHECK(r.budget_pass);
  int reconciled = 0;
  for (const auto& cell : r.grid) {
    CHECK(cell.within_budget == (cell.flops <= 11.46e9));
    CHECK(cell.reconciles == (std::abs(cell.flops - 0.708e9) <= 0.0708e9));
    reconciled += cell.reconciles;
  }
  CHECK(reconciled >= 1);
  CHECK_FALSE(analysis::layer_table_csv(r).empty());
  CHECK_FALSE(analysis::flops_grid_csv(r).empty());

  analysis::AnalyzeOptions tight;
  tight.device_flops = 1e8;
  CHECK_FALSE(analysis::analyze(model::ModelConfig::defaults(data::Task::gesture), tight).budget_pass);
  analysis::AnalyzeOptions shortlen;
  shortlen.lengths_s = {1.0};
  CHECK_THROWS_AS(analysis::analyze(model::ModelConfig::defaults(data::Task::gesture), shortlen), MinLengthError);
  CHECK(analysis::parse_convention("two_mac") == analysis::FlopConvention::two_mac);
  CHECK_THROWS_AS(analysis::parse_convention("flop"), ConfigError);
}
