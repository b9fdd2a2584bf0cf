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

#ifndef TOUCH_AUDITION_TRAIN_SWEEP_HPP_
#define TOUCH_AUDITION_TRAIN_SWEEP_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "touch_audition/model/config.hpp"
#include "touch_audition/train/stats.hpp"
#include "touch_audition/train/trainer.hpp"

namespace touch_audition::train {

// 1.10, 2, 3, ..., 10 seconds.
std::vector<double> default_sweep_lengths();

// SplitMix64 stream from `master`; run i of every length uses seed i.
std::vector<std::uint64_t> run_seeds(std::uint64_t master, int runs);

// TOUCH_AUDITION_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned sweep_threads();

struct SweepConfig {
  TrainConfig base;  // crop_s and seed are overridden per cell and run
  model::ModelConfig model;
  std::vector<double> lengths = default_sweep_lengths();
  int runs = 10;
  std::uint64_t master_seed = 0;
  unsigned threads = 0;  // 0 means sweep_threads()
};

struct SweepCell {
  double length_s = 0.0;
  std::vector<double> val_accuracy;   // best validation accuracy per run
  std::vector<double> test_accuracy;  // empty when there is no test split
  MeanStd val;
  std::optional<ShapiroWilkResult> normality;  // needs at least 3 runs
};

struct SweepComparison {
  double best_length_s = 0.0;
  double other_length_s = 0.0;
  // Run i at one length paired with run i at the other; empty when the
  // differences are constant and non-zero.
  std::optional<PairedTTestResult> test;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::size_t best = 0;  // cell with the highest mean validation accuracy
  std::vector<SweepComparison> comparisons;  // best vs its grid neighbours
};

// Trains `runs` models at every length and tabulates validation accuracy.
// Throws MinLengthError for lengths below 1.10 s before any training starts.
SweepResult length_sweep(const SweepConfig& config, const TaskData& data,
                         const std::function<void(double, int, const RunResult&)>& on_run = {});

// One row per length: length_s,mean,std,sw_w,sw_p.
std::string sweep_table_csv(const SweepResult& result);
// One row per (length, run): length_s,run,val_acc,test_acc.
std::string sweep_runs_csv(const SweepResult& result);
// Lengths as columns with "mean ± std" cells, then the statistical tests.
std::string format_sweep(const SweepResult& result);

}  // namespace touch_audition::train

#endif  // TOUCH_AUDITION_TRAIN_SWEEP_HPP_
