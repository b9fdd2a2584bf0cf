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

#include <cmath>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"
#include "touch_audition/error.hpp"
#include "touch_audition/train/metrics.hpp"
#include "touch_audition/train/stats.hpp"

using namespace touch_audition;
using namespace touch_audition::train;
using Catch::Approx;

#include "fixtures/stats_reference.inc"

TEST_CASE("accuracy and confusion: perfect and constant predictors") {
  std::vector<int> y;
  for (int c = 0; c < 6; ++c)
    for (int i = 0; i < 7; ++i) y.push_back(c);
  CHECK(accuracy(y, y) == 100.0);
  const ConfusionMatrix perfect(6, y, y);
  CHECK(perfect.normalized().isApprox(Eigen::MatrixXd::Identity(6, 6)));

  const std::vector<int> constant(y.size(), 4);
  CHECK(accuracy(y, constant) == Approx(100.0 / 6.0));
  const ConfusionMatrix cm(6, y, constant);
  const Eigen::MatrixXd n = cm.normalized();
  CHECK(n.col(4).isApprox(Eigen::VectorXd::Ones(6)));
  CHECK(n.sum() == Approx(6.0));

  CHECK_THROWS_AS(accuracy({}, {}), DataError);
  CHECK_THROWS_AS(accuracy(y, std::vector<int>{1, 2}), ShapeError);
  ConfusionMatrix small(3);
  CHECK_THROWS_AS(small.add(3, 0), LabelError);
  CHECK_THROWS_AS(small.add(0, -1), LabelError);
}

TEST_CASE("confusion: rows sum to one and trace accuracy equals direct accuracy") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(0, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> t, p;
    for (int i = 0; i < 57; ++i) {
      t.push_back(d(rng));
      p.push_back(trial % 3 ? d(rng) : t.back());
    }
    const ConfusionMatrix cm(5, t, p);
    const Eigen::MatrixXd n = cm.normalized();
    for (int r = 0; r < 5; ++r) {
      if (cm.counts().row(r).sum() > 0) CHECK(std::abs(n.row(r).sum() - 1.0) < 1e-6);
      else CHECK(n.row(r).sum() == 0.0);
    }
    CHECK(std::abs(cm.accuracy() - accuracy(t, p)) < 1e-9);
    CHECK(cm.accuracy() >= 0.0);
    CHECK(cm.accuracy() <= 100.0);
  }
}

TEST_CASE("confusion: csv and pgm output") {
  const ConfusionMatrix cm(2, std::vector<int>{0, 0, 1, 1}, std::vector<int>{0, 1, 1, 1});
  const std::string csv = cm.to_csv({"a", "b"});
  CHECK(csv.find("a,0.500000,0.500000") != std::string::npos);
  CHECK(csv.find("b,0.000000,1.000000") != std::string::npos);
  const std::string pgm = cm.to_pgm(4);
  CHECK(pgm.rfind("P5\n8 8\n255\n", 0) == 0);
  CHECK(pgm.size() == std::string("P5\n8 8\n255\n").size() + 64);
}

TEST_CASE("distributions") {
  CHECK(normal_cdf(0.0) == Approx(0.5));
  CHECK(normal_cdf(1.959963984540054) == Approx(0.975).epsilon(1e-12));
  CHECK(normal_quantile(0.975) == Approx(1.959963984540054).epsilon(1e-12));
  CHECK(normal_quantile(1e-10) == Approx(-6.361340902404056).epsilon(1e-9));
  CHECK(regularized_incomplete_beta(2.0, 3.0, 0.4) == Approx(0.5248).epsilon(1e-10));
  CHECK(regularized_incomplete_beta(1.0, 1.0, 0.3) == Approx(0.3).epsilon(1e-12));
  CHECK(student_t_cdf(0.0, 5.0) == Approx(0.5));
  // t with one degree of freedom is Cauchy.
  CHECK(student_t_cdf(1.0, 1.0) == Approx(0.75).epsilon(1e-10));
  CHECK(student_t_cdf(-2.0, 1.0) == Approx(0.5 + std::atan(-2.0) / M_PI).epsilon(1e-10));
}

TEST_CASE("mean and std") {
  const std::vector<double> v{1, 2, 3, 4};
  const MeanStd m = mean_std(v);
  CHECK(m.mean == 2.5);
  CHECK(m.std == Approx(std::sqrt(5.0 / 3.0)));
  CHECK(mean_std(std::vector<double>{82.14}).std == 0.0);
  const MeanStd same = mean_std(std::vector<double>(10, 90.24));
  CHECK(same.mean == Approx(90.24));
  CHECK(same.std < 1e-12);
  CHECK_THROWS_AS(mean_std(std::vector<double>{}), DataError);
}

TEST_CASE("paired t-test: hand example and edge cases") {
  const std::vector<double> a{2, 0, 1, 3, -1, 1};
  const std::vector<double> b(6, 0.0);
  const PairedTTestResult r = paired_t_test(a, b);
  CHECK(r.t == Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(r.df == 5);
  CHECK(r.mean_difference == Approx(1.0));
  CHECK(r.sd_difference == Approx(std::sqrt(2.0)));
  CHECK(std::abs(r.p - 0.1438) < 1e-3);

  const PairedTTestResult same = paired_t_test(a, a);
  CHECK(same.t == 0.0);
  CHECK(same.p == 1.0);
  CHECK_THROWS_AS(paired_t_test(std::vector<double>{2, 3, 4, 5}, std::vector<double>{1, 2, 3, 4}),
                  DegenerateSampleError);
  CHECK_THROWS_AS(paired_t_test(a, std::vector<double>{1, 2}), DataError);
  CHECK_THROWS_AS(paired_t_test(std::vector<double>{1}, std::vector<double>{2}), DataError);
}

TEST_CASE("paired t-test: reference fixtures") {
  for (const auto& f : kPairedRandom) {
    const PairedTTestResult r = paired_t_test(f.a, f.b);
    CHECK(r.t == Approx(f.t).margin(1e-3));
    CHECK(r.p == Approx(f.p).margin(1e-3));
  }
}

TEST_CASE("shapiro-wilk: textbook, symmetric and bimodal samples") {
  const ShapiroWilkResult sym = shapiro_wilk(std::vector<double>{-1, 0, 1});
  CHECK(sym.w > 0.99);
  CHECK(sym.w <= 1.0);
  const ShapiroWilkResult tb = shapiro_wilk(kShapiroTextbook.x);
  CHECK(tb.w == Approx(kShapiroTextbook.w).margin(1e-2));
  CHECK(tb.p == Approx(kShapiroTextbook.p).margin(1e-3));
  const ShapiroWilkResult bi = shapiro_wilk(kShapiroBimodal.x);
  CHECK(bi.p < 0.05);
  CHECK(bi.w == Approx(kShapiroBimodal.w).margin(1e-2));

  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>(8, 3.0)), DegenerateSampleError);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{1, 2}), DataError);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>(51, 1.0)), DataError);
}

TEST_CASE("shapiro-wilk: reference fixtures") {
  REQUIRE(kShapiroRandom.size() >= 40);
  for (const auto& f : kShapiroRandom) {
    const ShapiroWilkResult r = shapiro_wilk(f.x);
    INFO("n = " << f.x.size());
    CHECK(r.w == Approx(f.w).margin(1e-3));
    CHECK(r.p == Approx(f.p).margin(1e-3));
    CHECK(r.w > 0.0);
    CHECK(r.w <= 1.0);
  }
}
