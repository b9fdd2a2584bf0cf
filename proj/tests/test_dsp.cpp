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
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "touch_audition/dsp/feature_io.hpp"
#include "touch_audition/dsp/framing.hpp"
#include "touch_audition/dsp/mel.hpp"
#include "touch_audition/dsp/standardize.hpp"
#include "touch_audition/dsp/wav.hpp"
#include "touch_audition/error.hpp"

using namespace touch_audition;
using Catch::Approx;

namespace {

void put_le(std::string& s, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

// Hand-assembled RIFF/WAVE container.
std::string make_wav(int format, int channels, int rate, int bits, const std::string& payload) {
  std::string fmt;
  put_le(fmt, static_cast<std::uint64_t>(format), 2);
  put_le(fmt, static_cast<std::uint64_t>(channels), 2);
  put_le(fmt, static_cast<std::uint64_t>(rate), 4);
  put_le(fmt, static_cast<std::uint64_t>(rate * channels * bits / 8), 4);
  put_le(fmt, static_cast<std::uint64_t>(channels * bits / 8), 2);
  put_le(fmt, static_cast<std::uint64_t>(bits), 2);
  std::string body = "WAVE";
  body += "fmt ";
  put_le(body, fmt.size(), 4);
  body += fmt;
  body += "data";
  put_le(body, payload.size(), 4);
  body += payload;
  std::string out = "RIFF";
  put_le(out, body.size(), 4);
  return out + body;
}

std::string pcm16(const std::vector<std::int16_t>& v) {
  std::string s;
  for (std::int16_t x : v) put_le(s, static_cast<std::uint16_t>(x), 2);
  return s;
}

dsp::Waveform wave_of(std::vector<float> v, int rate = 16000) {
  dsp::Waveform w;
  w.samples = Eigen::Map<Eigen::VectorXf>(v.data(), static_cast<Eigen::Index>(v.size()));
  w.sample_rate = rate;
  return w;
}

}  // namespace

TEST_CASE("wav: silence decodes to zeros") {
  const dsp::Waveform w = dsp::decode_wav(make_wav(1, 1, 16000, 16, pcm16(std::vector<std::int16_t>(16000, 0))));
  CHECK(w.size() == 16000);
  CHECK(w.sample_rate == 16000);
  CHECK(w.samples.cwiseAbs().maxCoeff() == 0.0f);
}

TEST_CASE("wav: full-scale sample scales by 1/32768") {
  const dsp::Waveform w = dsp::decode_wav(make_wav(1, 1, 16000, 16, pcm16({32767, -32768})));
  CHECK(w.samples[0] == Approx(32767.0 / 32768.0).epsilon(1e-7));
  CHECK(w.samples[1] == -1.0f);
}

TEST_CASE("wav: opposite stereo channels average to silence") {
  std::vector<std::int16_t> v;
  for (int i = 0; i < 1000; ++i) {
    v.push_back(16384);
    v.push_back(-16384);
  }
  const dsp::Waveform w = dsp::decode_wav(make_wav(1, 2, 16000, 16, pcm16(v)));
  CHECK(w.size() == 1000);
  CHECK(w.samples.cwiseAbs().maxCoeff() == 0.0f);
}

TEST_CASE("wav: float32 payload") {
  std::string payload;
  for (float f : {0.25f, -0.5f}) put_le(payload, std::bit_cast<std::uint32_t>(f), 4);
  const dsp::Waveform w = dsp::decode_wav(make_wav(3, 1, 16000, 32, payload));
  CHECK(w.samples[0] == 0.25f);
  CHECK(w.samples[1] == -0.5f);
}

TEST_CASE("wav: errors") {
  CHECK_THROWS_AS(dsp::decode_wav("not a wav file at all"), DecodeError);
  CHECK_THROWS_AS(dsp::decode_wav(make_wav(1, 1, 16000, 16, pcm16({1, 2})).substr(0, 30)), DecodeError);
  CHECK_THROWS_AS(dsp::decode_wav(make_wav(2, 1, 16000, 4, "\x01\x02")), UnsupportedFormatError);
}

TEST_CASE("wav: pcm16 encode/decode round trip") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-32768, 32767);
  std::vector<float> v;
  for (int i = 0; i < 500; ++i) v.push_back(static_cast<float>(d(rng)) / 32768.0f);
  const dsp::Waveform w = wave_of(v);
  const dsp::Waveform back = dsp::decode_wav(dsp::encode_wav_pcm16(w));
  CHECK(back.samples == w.samples);
}

TEST_CASE("framing: frame counts") {
  CHECK(dsp::frame_count(160000, 512, 160) == 997);
  CHECK(dsp::frame_count(512, 512, 160) == 1);
  CHECK_THROWS_AS(dsp::frame_count(511, 512, 160), TooShortError);
}

TEST_CASE("framing: count matches a sliding window for all small sizes") {
  for (Eigen::Index window = 1; window <= 20; ++window)
    for (Eigen::Index hop = 1; hop <= 20; ++hop)
      for (Eigen::Index len = window; len <= 80; ++len) {
        Eigen::Index slid = 0;
        for (Eigen::Index start = 0; start + window <= len; start += hop) ++slid;
        REQUIRE(dsp::frame_count(len, window, hop) == slid);
      }
}

TEST_CASE("framing: hamming endpoint and frame contents") {
  const Eigen::VectorXd w = dsp::hamming_window(512);
  CHECK(w[0] == Approx(0.08).margin(1e-15));
  std::vector<float> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<float>(i) / 1000.0f;
  const dsp::FrameMatrix f = dsp::frame_signal(wave_of(v), 0.032, 0.010);
  REQUIRE(f.rows() == dsp::frame_count(1000, 512, 160));
  REQUIRE(f.cols() == 512);
  for (Eigen::Index t = 0; t < f.rows(); ++t)
    for (Eigen::Index n = 0; n < 512; n += 37)
      CHECK(f(t, n) == Approx(v[static_cast<std::size_t>(t * 160 + n)] * w[n]).margin(1e-9));
  CHECK_THROWS_AS(dsp::frame_signal(wave_of(std::vector<float>(100)), 0.032, 0.010), TooShortError);
}

TEST_CASE("crop frame count is proportional to the clip") {
  CHECK(dsp::crop_frame_count(10.0, 997, 10.0) == 997);
  CHECK(dsp::crop_frame_count(6.0, 997, 10.0) == 598);
  CHECK(dsp::crop_frame_count(1.10, 997, 10.0) == 110);
}

TEST_CASE("mel: zero waveform gives log(floor) everywhere") {
  const dsp::MelFeature m = dsp::mel_spectrogram(wave_of(std::vector<float>(16000)));
  CHECK(m.num_bins() == 64);
  CHECK(m.num_frames() == dsp::frame_count(16000, 512, 160));
  const float expected = static_cast<float>(std::log(1e-10));
  CHECK((m.frames.array() == expected).all());
}

TEST_CASE("mel: 10 s clip shape") {
  std::mt19937 rng(1);
  std::normal_distribution<float> n(0.0f, 0.1f);
  std::vector<float> v(160000);
  for (float& x : v) x = n(rng);
  const dsp::MelFeature m = dsp::mel_spectrogram(wave_of(v));
  CHECK(m.num_frames() == 997);
  CHECK(m.num_bins() == 64);
  CHECK(m.frames.allFinite());
  CHECK(m.duration_s == Approx(10.0));
}

namespace {

// Triangular filters straight from the mel formula.
Eigen::MatrixXd oracle_filterbank() {
  auto mel = [](double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); };
  auto hz = [](double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); };
  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(64, 257);
  const double top = mel(8000.0);
  for (int m = 0; m < 64; ++m) {
    const double l = hz(top * m / 65.0), c = hz(top * (m + 1) / 65.0), r = hz(top * (m + 2) / 65.0);
    for (int k = 0; k < 257; ++k) {
      const double f = k * 16000.0 / 512.0;
      if (f > l && f <= c) fb(m, k) = (f - l) / (c - l);
      else if (f > c && f < r) fb(m, k) = (r - f) / (r - c);
    }
  }
  return fb;
}

}  // namespace

TEST_CASE("mel: filterbank matches the triangle oracle and covers the band") {
  const Eigen::MatrixXd fb = dsp::mel_filterbank({});
  REQUIRE(fb.rows() == 64);
  REQUIRE(fb.cols() == 257);
  CHECK((fb - oracle_filterbank()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(fb.minCoeff() >= 0.0);
  const double bin_hz = 16000.0 / 512.0;
  auto hz = [](double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); };
  const double top = 2595.0 * std::log10(1.0 + 8000.0 / 700.0);
  const double lo = hz(top / 65.0), hi = hz(top * 64.0 / 65.0);
  for (int k = 0; k < 257; ++k) {
    const double f = k * bin_hz;
    if (f >= lo && f <= hi) CHECK(fb.col(k).sum() > 0.0);
  }
}

TEST_CASE("mel: flat power spectrum gives log(row sum * power + floor)") {
  // A unit impulse at the window peak (periodic Hamming weight 1 at n = N/2)
  // has a flat power spectrum equal to its squared amplitude.
  std::vector<float> v(512, 0.0f);
  v[256] = 0.5f;
  const dsp::MelFeature m = dsp::mel_spectrogram(wave_of(v));
  REQUIRE(m.num_frames() == 1);
  const Eigen::MatrixXd fb = oracle_filterbank();
  const Eigen::VectorXd flat = Eigen::VectorXd::Constant(257, 0.25);
  const Eigen::VectorXd dense = fb * flat;
  for (int b = 0; b < 64; ++b) {
    CHECK(m.frames(0, b) == Approx(std::log(dense[b] + 1e-10)).epsilon(1e-5));
  }
}

TEST_CASE("mel: sine at a bin centre concentrates its energy") {
  for (int k : {10, 40, 100, 200}) {
    std::vector<float> v(512);
    for (int n = 0; n < 512; ++n) {
      v[static_cast<std::size_t>(n)] = static_cast<float>(0.7 * std::sin(2.0 * std::numbers::pi * k * n / 512.0));
    }
    const Eigen::MatrixXd p = dsp::power_spectrum(dsp::frame_signal(wave_of(v), Eigen::Index{512}, Eigen::Index{160}));
    const double near = p.row(0).segment(k - 1, 3).sum();
    CHECK(near / p.row(0).sum() >= 0.90);
  }
}

TEST_CASE("mel: deterministic and rate checked") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  std::vector<float> v(8000);
  for (float& x : v) x = u(rng);
  const dsp::MelFeature a = dsp::mel_spectrogram(wave_of(v));
  const dsp::MelFeature b = dsp::mel_spectrogram(wave_of(v));
  CHECK(a.frames == b.frames);
  CHECK_THROWS_AS(dsp::mel_spectrogram(wave_of(v, 44100)), UnsupportedFormatError);
  CHECK_THROWS_AS(dsp::mel_spectrogram(wave_of(std::vector<float>(300))), TooShortError);
}

TEST_CASE("melf: round trip and corruption") {
  dsp::FeatureMatrix f(5, 64);
  f.setRandom();
  const std::string bytes = dsp::encode_melf(f);
  CHECK(bytes.size() == 16 + 5 * 64 * 4);
  CHECK(bytes.substr(0, 4) == "MELF");
  CHECK(dsp::decode_melf(bytes) == f);
  CHECK_THROWS_AS(dsp::decode_melf("XELF" + bytes.substr(4)), DecodeError);
  CHECK_THROWS_AS(dsp::decode_melf(bytes.substr(0, bytes.size() - 1)), DecodeError);
}

TEST_CASE("standardize: identity, centering, self-consistency") {
  dsp::FeatureMatrix f(10, 64);
  f.setRandom();
  CHECK(dsp::standardize(f, dsp::FeatureStats::identity(64)) == f);

  dsp::FeatureMatrix c = dsp::FeatureMatrix::Constant(7, 64, 3.5f);
  dsp::FeatureStats s = dsp::FeatureStats::identity(64);
  s.mean.setConstant(3.5f);
  CHECK(dsp::standardize(c, s).cwiseAbs().maxCoeff() == 0.0f);

  std::mt19937 rng(9);
  std::normal_distribution<float> n(-20.0f, 4.0f);
  std::vector<dsp::FeatureMatrix> train;
  for (int i = 0; i < 6; ++i) {
    dsp::FeatureMatrix m(50 + i, 64);
    for (Eigen::Index j = 0; j < m.size(); ++j) m.data()[j] = n(rng);
    train.push_back(m);
  }
  const dsp::FeatureStats stats = dsp::compute_stats(train);
  std::vector<dsp::FeatureMatrix> z;
  for (const auto& m : train) z.push_back(dsp::standardize(m, stats));
  const dsp::FeatureStats again = dsp::compute_stats(z);
  CHECK(again.mean.cwiseAbs().maxCoeff() < 1e-6f);
  CHECK((again.std.array() - 1.0f).abs().maxCoeff() < 1e-3f);

  CHECK_THROWS_AS(dsp::standardize(f, dsp::FeatureStats::identity(32)), ShapeError);
  CHECK_THROWS_AS(dsp::compute_stats(std::vector<dsp::FeatureMatrix>{}), DataError);
}
