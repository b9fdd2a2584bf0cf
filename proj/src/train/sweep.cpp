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

#include "touch_audition/train/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "touch_audition/analysis/receptive_field.hpp"
#include "touch_audition/error.hpp"

namespace touch_audition::train {

std::vector<double> default_sweep_lengths() {
  std::vector<double> out{1.10};
  for (int s = 2; s <= 10; ++s) out.push_back(s);
  return out;
}

std::vector<std::uint64_t> run_seeds(std::uint64_t master, int runs) {
  std::vector<std::uint64_t> out;
  std::uint64_t state = master;
  for (int i = 0; i < runs; ++i) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    out.push_back(z ^ (z >> 31));
  }
  return out;
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("TOUCH_AUDITION_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult length_sweep(const SweepConfig& config, const TaskData& data,
                         const std::function<void(double, int, const RunResult&)>& on_run) {
  if (config.runs < 1) throw ConfigError("a sweep needs at least one run");
  if (config.lengths.empty()) throw ConfigError("a sweep needs at least one length");
  const long min_frames = analysis::min_input_frames(config.model);
  const double min_seconds = analysis::frames_to_seconds(min_frames, config.model.hop_s);
  for (double len : config.lengths) {
    if (len < data::kMinCropSeconds - 1e-9) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "sweep length %.2f s is below the %.2f s minimum", len, min_seconds);
      throw MinLengthError(buf, min_frames, min_seconds);
    }
  }
  TrainConfig probe = config.base;
  probe.crop_s = config.lengths.front();
  probe.validate();

  const auto seeds = run_seeds(config.master_seed, config.runs);
  const std::size_t jobs = config.lengths.size() * static_cast<std::size_t>(config.runs);
  std::vector<RunResult> results(jobs);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;

  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const std::size_t cell = j / static_cast<std::size_t>(config.runs);
      const int run = static_cast<int>(j % static_cast<std::size_t>(config.runs));
      try {
        TrainConfig tc = config.base;
        tc.crop_s = config.lengths[cell];
        tc.seed = seeds[static_cast<std::size_t>(run)];
        model::Mtrcnn model(config.model, tc.seed);
        results[j] = train(tc, model, data);
        std::lock_guard<std::mutex> lock(mu);
        if (on_run) on_run(tc.crop_s, run, results[j]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next = jobs;
      }
    }
  };
  const unsigned threads = std::min<std::size_t>(config.threads ? config.threads : sweep_threads(), jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  SweepResult out;
  for (std::size_t c = 0; c < config.lengths.size(); ++c) {
    SweepCell cell;
    cell.length_s = config.lengths[c];
    for (int r = 0; r < config.runs; ++r) {
      const RunResult& rr = results[c * static_cast<std::size_t>(config.runs) + static_cast<std::size_t>(r)];
      cell.val_accuracy.push_back(rr.best_val_accuracy);
      if (!data.test.empty()) cell.test_accuracy.push_back(rr.test.accuracy);
    }
    cell.val = mean_std(cell.val_accuracy);
    if (config.runs >= 3) {
      try {
        cell.normality = shapiro_wilk(cell.val_accuracy);
      } catch (const DegenerateSampleError&) {
      }
    }
    out.cells.push_back(std::move(cell));
  }
  for (std::size_t c = 1; c < out.cells.size(); ++c) {
    if (out.cells[c].val.mean > out.cells[out.best].val.mean) out.best = c;
  }
  if (config.runs >= 2) {
    for (std::size_t c : {out.best - 1, out.best + 1}) {
      if (c >= out.cells.size()) continue;  // wraps for best == 0
      SweepComparison cmp;
      cmp.best_length_s = out.cells[out.best].length_s;
      cmp.other_length_s = out.cells[c].length_s;
      try {
        cmp.test = paired_t_test(out.cells[out.best].val_accuracy, out.cells[c].val_accuracy);
      } catch (const DegenerateSampleError&) {
      }
      out.comparisons.push_back(cmp);
    }
  }
  return out;
}

std::string sweep_table_csv(const SweepResult& result) {
  std::string s = "length_s,mean,std,sw_w,sw_p\n";
  char buf[160];
  for (const SweepCell& c : result.cells) {
    if (c.normality) {
      std::snprintf(buf, sizeof(buf), "%.2f,%.4f,%.4f,%.6f,%.6g\n", c.length_s, c.val.mean, c.val.std,
                    c.normality->w, c.normality->p);
    } else {
      std::snprintf(buf, sizeof(buf), "%.2f,%.4f,%.4f,,\n", c.length_s, c.val.mean, c.val.std);
    }
    s += buf;
  }
  return s;
}

std::string sweep_runs_csv(const SweepResult& result) {
  std::string s = "length_s,run,val_acc,test_acc\n";
  char buf[160];
  for (const SweepCell& c : result.cells) {
    for (std::size_t r = 0; r < c.val_accuracy.size(); ++r) {
      if (r < c.test_accuracy.size()) {
        std::snprintf(buf, sizeof(buf), "%.2f,%zu,%.6f,%.6f\n", c.length_s, r, c.val_accuracy[r],
                      c.test_accuracy[r]);
      } else {
        std::snprintf(buf, sizeof(buf), "%.2f,%zu,%.6f,\n", c.length_s, r, c.val_accuracy[r]);
      }
      s += buf;
    }
  }
  return s;
}

std::string format_sweep(const SweepResult& result) {
  std::string header = "length  ";
  std::string row = "val acc ";
  char buf[64];
  for (const SweepCell& c : result.cells) {
    std::snprintf(buf, sizeof(buf), "%15.2fs", c.length_s);
    header += buf;
    std::snprintf(buf, sizeof(buf), "%9.2f ± %-5.2f", c.val.mean, c.val.std);
    row += std::string(" ") + buf;
  }
  std::string s = header + "\n" + row + "\n";
  for (const SweepCell& c : result.cells) {
    if (!c.normality) continue;
    std::snprintf(buf, sizeof(buf), "shapiro-wilk %.2fs: W=%.4f p=%.4g\n", c.length_s, c.normality->w,
                  c.normality->p);
    s += buf;
  }
  for (const SweepComparison& cmp : result.comparisons) {
    if (cmp.test) {
      std::snprintf(buf, sizeof(buf), "paired t %.2fs vs %.2fs: t=%.3f df=%d p=%.4g\n", cmp.best_length_s,
                    cmp.other_length_s, cmp.test->t, cmp.test->df, cmp.test->p);
    } else {
      std::snprintf(buf, sizeof(buf), "paired t %.2fs vs %.2fs: constant differences\n", cmp.best_length_s,
                    cmp.other_length_s);
    }
    s += buf;
  }
  return s;
}

}  // namespace touch_audition::train
