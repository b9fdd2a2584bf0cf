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

#ifndef TOUCH_AUDITION_TRAIN_STATS_HPP_
#define TOUCH_AUDITION_TRAIN_STATS_HPP_

#include <span>

namespace touch_audition::train {

double normal_cdf(double x);
// Wichura's AS 241 (PPND16), about 1e-16 relative accuracy.
double normal_quantile(double p);
// I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1) standard deviation; 0 for one value
};
MeanStd mean_std(std::span<const double> values);

struct ShapiroWilkResult {
  double w = 0.0;
  double p = 0.0;
};

// Royston's approximation (AS R94). Needs 3 <= n <= 50; throws DataError
// outside that range and DegenerateSampleError for a constant sample.
ShapiroWilkResult shapiro_wilk(std::span<const double> sample);

struct PairedTTestResult {
  double t = 0.0;
  double p = 1.0;  // two-sided
  int df = 0;
  double mean_difference = 0.0;
  double sd_difference = 0.0;
};

// Identical samples give t = 0, p = 1. Differences that are constant but not
// all zero throw DegenerateSampleError. Unequal lengths or n < 2 throw
// DataError.
PairedTTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace touch_audition::train

#endif  // TOUCH_AUDITION_TRAIN_STATS_HPP_
