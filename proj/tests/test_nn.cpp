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
#include "support/oracles.hpp"
#include "touch_audition/nn/adam.hpp"
#include "touch_audition/nn/layers.hpp"
#include "touch_audition/nn/ops.hpp"

using namespace touch_audition;
using Catch::Approx;
using T = nn::Tensor<double>;
using V = nn::Variable<double>;

namespace {

T random_tensor(nn::Shape shape, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  T t(std::move(shape));
  for (nn::Index i = 0; i < t.size(); ++i) t[i] = u(rng);
  return t;
}

std::vector<double> to_vec(const T& t) { return {t.data(), t.data() + t.size()}; }

}  // namespace

TEST_CASE("conv2d: identity kernel") {
  std::mt19937_64 rng(1);
  const T x = random_tensor({2, 1, 6, 5}, rng);
  const V y = nn::conv2d(V(x), V(T::constant({1, 1, 1, 1}, 1.0)), V(T::zeros({1})), {});
  CHECK(y.shape() == x.shape());
  CHECK(y.value().vec() == x.vec());
}

TEST_CASE("conv2d: dilated k=7 stack consumes 38 frames") {
  std::mt19937_64 rng(2);
  V h(random_tensor({1, 1, 38, 7}, rng));
  std::vector<nn::Index> sizes;
  nn::Index cin = 1;
  for (nn::Index r : {1, 2, 3}) {
    h = nn::conv2d(h, V(random_tensor({2, cin, 7, 1}, rng)), V(T::zeros({2})), {r, 1});
    sizes.push_back(h.shape()[2]);
    cin = 2;
  }
  // 38 - 6 = 32, 32 - 12 = 20, 20 - 18 = 2: the last layer sees 20 >= 19 frames.
  CHECK(sizes == std::vector<nn::Index>{32, 20, 2});
  V tooshort(random_tensor({1, 1, 18, 1}, rng));
  CHECK_THROWS_AS(nn::conv2d(tooshort, V(T::zeros({1, 1, 7, 1})), V(T::zeros({1})), {3, 1}), MinSizeError);
}

TEST_CASE("conv2d: matches the naive oracle on the 1x2x9x9 example") {
  std::mt19937_64 rng(3);
  testing::ConvShape s{1, 2, 9, 9, 3, 3, 3, 2, 1};
  const T x = random_tensor({1, 2, 9, 9}, rng), w = random_tensor({3, 2, 3, 3}, rng), b = random_tensor({3}, rng);
  const V y = nn::conv2d(V(x), V(w), V(b), {2, 1});
  const auto ref = testing::naive_conv2d(to_vec(x), to_vec(w), to_vec(b), s);
  REQUIRE(y.value().size() == static_cast<nn::Index>(ref.size()));
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(y.value()[static_cast<nn::Index>(i)] == Approx(ref[i]).margin(1e-6));
}

TEST_CASE("conv2d: exhaustive small-shape sweep against the naive oracle") {
  std::mt19937_64 rng(4);
  long cases = 0;
  double worst = 0.0;
  for (long n : {1, 2})
    for (long cin : {1, 2, 3})
      for (long cout : {1, 2})
        for (long kt = 1; kt <= 3; ++kt)
          for (long kf = 1; kf <= 3; ++kf)
            for (long dt = 1; dt <= 3; ++dt)
              for (long df = 1; df <= 2; ++df)
                for (long t = 1 + (kt - 1) * dt; t <= 10; ++t)
                  for (long f = 1 + (kf - 1) * df; f <= 10; f += 3) {
                    testing::ConvShape s{n, cin, t, f, cout, kt, kf, dt, df};
                    const T x = random_tensor({n, cin, t, f}, rng);
                    const T w = random_tensor({cout, cin, kt, kf}, rng);
                    const T b = random_tensor({cout}, rng);
                    const T gy = random_tensor({n, cout, s.t_out(), s.f_out()}, rng);
                    V xv = V::parameter(x), wv = V::parameter(w), bv = V::parameter(b);
                    const V y = nn::conv2d(xv, wv, bv, {dt, df});
                    nn::sum_product(y, gy).backward();
                    const auto ref = testing::naive_conv2d(to_vec(x), to_vec(w), to_vec(b), s);
                    std::vector<double> gx, gw, gb;
                    testing::naive_conv2d_backward(to_vec(x), to_vec(w), to_vec(gy), s, gx, gw, gb);
                    REQUIRE(y.value().size() == static_cast<nn::Index>(ref.size()));
                    for (std::size_t i = 0; i < ref.size(); ++i)
                      worst = std::max(worst, std::abs(y.value()[static_cast<nn::Index>(i)] - ref[i]));
                    for (std::size_t i = 0; i < gx.size(); ++i)
                      worst = std::max(worst, std::abs(xv.grad()[static_cast<nn::Index>(i)] - gx[i]));
                    for (std::size_t i = 0; i < gw.size(); ++i)
                      worst = std::max(worst, std::abs(wv.grad()[static_cast<nn::Index>(i)] - gw[i]));
                    for (std::size_t i = 0; i < gb.size(); ++i)
                      worst = std::max(worst, std::abs(bv.grad()[static_cast<nn::Index>(i)] - gb[i]));
                    ++cases;
                  }
  INFO("cases " << cases);
  CHECK(cases > 5000);
  CHECK(worst < 1e-6);
}

TEST_CASE("conv2d: float matches double") {
  std::mt19937_64 rng(5);
  const T x = random_tensor({2, 3, 20, 16}, rng), w = random_tensor({4, 3, 3, 3}, rng), b = random_tensor({4}, rng);
  const V yd = nn::conv2d(V(x), V(w), V(b), {3, 1});
  using VF = nn::Variable<float>;
  const VF yf = nn::conv2d(VF(x.cast<float>()), VF(w.cast<float>()), VF(b.cast<float>()), {3, 1});
  CHECK((yf.value().vec().cast<double>() - yd.value().vec()).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("batch_norm: fixed point, batch statistics, eval defaults") {
  std::mt19937_64 rng(6);
  // Per channel exactly zero mean and unit (biased) variance.
  T x({2, 2, 2, 2});
  const double pattern[8] = {1, -1, 1, -1, -1, 1, -1, 1};
  for (nn::Index n = 0; n < 2; ++n)
    for (nn::Index c = 0; c < 2; ++c)
      for (nn::Index i = 0; i < 4; ++i) x.at(n, c, i / 2, i % 2) = pattern[n * 4 + i];
  nn::BatchNorm2d<double> bn(2);
  const V y = bn(V(x), true);
  CHECK((y.value().vec() - x.vec()).cwiseAbs().maxCoeff() < 1e-5);

  nn::BatchNorm2d<double> bn2(3);
  bn2.gamma().mutable_value().vec() << 2.0, 0.5, 1.5;
  bn2.beta().mutable_value().vec() << -1.0, 3.0, 0.25;
  const T z = random_tensor({4, 3, 5, 6}, rng, -3.0, 7.0);
  const V out = bn2(V(z), true);
  for (nn::Index c = 0; c < 3; ++c) {
    double s = 0, s2 = 0;
    const double count = 4 * 30;
    for (nn::Index n = 0; n < 4; ++n)
      for (nn::Index t = 0; t < 5; ++t)
        for (nn::Index f = 0; f < 6; ++f) s += out.value().at(n, c, t, f);
    const double mean = s / count;
    for (nn::Index n = 0; n < 4; ++n)
      for (nn::Index t = 0; t < 5; ++t)
        for (nn::Index f = 0; f < 6; ++f) s2 += std::pow(out.value().at(n, c, t, f) - mean, 2);
    CHECK(mean == Approx(bn2.beta().value()[c]).margin(1e-9));
    CHECK(std::sqrt(s2 / count) == Approx(bn2.gamma().value()[c]).epsilon(1e-4));
  }
  // Running statistics move toward the batch statistics.
  CHECK(bn2.state().running_mean.vec().cwiseAbs().maxCoeff() > 0.0);

  nn::BatchNorm2d<double> fresh(3);
  const V e = fresh(V(z), false);
  CHECK((e.value().vec() - z.vec() / std::sqrt(1.0 + 1e-5)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("avg_pool2d") {
  const V c = nn::avg_pool2d(V(T::constant({1, 2, 6, 4}, 3.25)));
  CHECK(c.shape() == nn::Shape{1, 2, 3, 2});
  CHECK((c.value().vec().array() == 3.25).all());

  T b({1, 1, 2, 2});
  b.vec() << 1, 2, 3, 4;
  CHECK(nn::avg_pool2d(V(b)).value()[0] == 2.5);

  CHECK(nn::avg_pool2d(V(T::zeros({1, 1, 5, 4}))).shape()[2] == 2);
  CHECK_THROWS_AS(nn::avg_pool2d(V(T::zeros({1, 1, 1, 4}))), MinSizeError);
  CHECK_THROWS_AS(nn::avg_pool2d(V(T::zeros({1, 1, 4, 1}))), MinSizeError);
}

TEST_CASE("global_avg_pool") {
  std::mt19937_64 rng(7);
  const T single = random_tensor({3, 4, 1, 1}, rng);
  CHECK(nn::global_avg_pool(V(single)).value().vec() == single.vec());

  const T x = random_tensor({2, 3, 7, 5}, rng);
  const V g = nn::global_avg_pool(V(x));
  REQUIRE(g.shape() == nn::Shape{2, 3});
  for (nn::Index n = 0; n < 2; ++n)
    for (nn::Index c = 0; c < 3; ++c) {
      double s = 0;
      for (nn::Index t = 0; t < 7; ++t)
        for (nn::Index f = 0; f < 5; ++f) s += x.at(n, c, t, f);
      CHECK(g.value()[n * 3 + c] == Approx(s / 35.0).margin(1e-12));
    }
}

TEST_CASE("dense") {
  std::mt19937_64 rng(8);
  const T x = random_tensor({3, 4}, rng);
  T eye({4, 4});
  eye.matrix(4, 4).setIdentity();
  CHECK(nn::dense(V(x), V(eye), V(T::zeros({4}))).value().vec() == x.vec());

  T a({1, 2});
  a.vec() << 1, 2;
  T w({2, 1});
  w.vec() << 3, 4;
  CHECK(nn::dense(V(a), V(w), V(T::constant({1}, 5.0))).value()[0] == 16.0);
  CHECK_THROWS_AS(nn::dense(V(a), V(T::zeros({3, 1})), V(T::zeros({1}))), ShapeError);
}

TEST_CASE("softmax cross entropy") {
  const std::vector<int> targets{0, 3, 4};
  const V uniform = nn::softmax_cross_entropy(V(T::constant({3, 5}, 0.7)), targets);
  CHECK(uniform.value()[0] == Approx(std::log(5.0)).margin(1e-12));

  T peaked = T::zeros({1, 4});
  peaked[2] = 60.0;
  CHECK(nn::softmax_cross_entropy(V(peaked), std::vector<int>{2}).value()[0] < 1e-20);

  std::mt19937_64 rng(9);
  const T logits = random_tensor({6, 5}, rng, -30.0, 30.0);
  const auto p = nn::softmax(logits);
  CHECK((p.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-6);
  CHECK(nn::softmax_cross_entropy(V(logits), std::vector<int>{0, 1, 2, 3, 4, 0}).value()[0] >= 0.0);
  CHECK_THROWS_AS(nn::softmax_cross_entropy(V(logits), std::vector<int>{0, 1, 2, 3, 5, 0}), LabelError);
  CHECK_THROWS_AS(nn::softmax_cross_entropy(V(logits), std::vector<int>{0, 1}), ShapeError);
}

TEST_CASE("dropout") {
  std::mt19937_64 rng(10);
  const T x = random_tensor({1000}, rng);
  CHECK(nn::dropout(V(x), 0.0, true, rng).value().vec() == x.vec());
  CHECK(nn::dropout(V(x), 0.5, false, rng).value().vec() == x.vec());
  CHECK_THROWS_AS(nn::dropout(V(x), 1.0, true, rng), ConfigError);
  CHECK_THROWS_AS(nn::dropout(V(x), -0.1, true, rng), ConfigError);

  const T ones = T::constant({200000}, 1.0);
  const V d = nn::dropout(V(ones), 0.3, true, rng);
  const double dropped = static_cast<double>((d.value().vec().array() == 0.0).count()) / 200000.0;
  CHECK(std::abs(dropped - 0.3) < 0.02);
  CHECK((d.value().vec().array() == 0.0 || (d.value().vec().array() - 1.0 / 0.7).abs() < 1e-12).all());
}

TEST_CASE("adam") {
  SECTION("zero gradient leaves parameters unchanged") {
    T p = T::constant({3}, 0.5);
    const T g = T::zeros({3});
    nn::AdamState<double> s;
    std::vector<T*> ps{&p};
    std::vector<const T*> gs{&g};
    nn::adam_step<double>(ps, gs, s);
    CHECK((p.vec().array() == 0.5).all());
    CHECK(s.step == 1);
  }
  SECTION("first step moves by lr") {
    T p = T::constant({1}, 1.0);
    const T g = T::constant({1}, 1.0);
    nn::AdamState<double> s;
    std::vector<T*> ps{&p};
    std::vector<const T*> gs{&g};
    nn::adam_step<double>(ps, gs, s);
    CHECK(p[0] == Approx(0.999).margin(1e-8));
  }
  SECTION("shape mismatch") {
    T p = T::constant({2}, 1.0);
    const T g = T::constant({3}, 1.0);
    nn::AdamState<double> s;
    std::vector<T*> ps{&p};
    std::vector<const T*> gs{&g};
    CHECK_THROWS_AS(nn::adam_step<double>(ps, gs, s), ShapeError);
  }
  SECTION("ten steps are reproducible") {
    auto run = [] {
      std::mt19937_64 rng(11);
      V w = V::parameter(random_tensor({4, 3}, rng));
      V b = V::parameter(T::zeros({3}));
      const T x = random_tensor({5, 4}, rng);
      nn::Adam<double> opt({w, b});
      for (int i = 0; i < 10; ++i) {
        opt.zero_grad();
        nn::softmax_cross_entropy(nn::dense(V(x), w, b), std::vector<int>{0, 1, 2, 0, 1}).backward();
        opt.step();
      }
      CHECK(opt.state().step == 10);
      return std::make_pair(w.value().vec(), b.value().vec());
    };
    CHECK(run() == run());
  }
}
