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

#include "touch_audition/dsp/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>

#include "touch_audition/binary_io.hpp"
#include "touch_audition/error.hpp"

namespace touch_audition::binary {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace touch_audition::binary

namespace touch_audition::dsp {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

struct FormatChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
  std::uint16_t block_align = 0;
};

FormatChunk parse_fmt(std::string_view body) {
  binary::Reader<DecodeError> r(body);
  FormatChunk fmt;
  fmt.format = r.uint<std::uint16_t>("fmt format tag");
  fmt.channels = r.uint<std::uint16_t>("fmt channels");
  fmt.sample_rate = r.uint<std::uint32_t>("fmt sample rate");
  r.uint<std::uint32_t>("fmt byte rate");
  fmt.block_align = r.uint<std::uint16_t>("fmt block align");
  fmt.bits_per_sample = r.uint<std::uint16_t>("fmt bits per sample");
  if (fmt.format == kFormatExtensible) {
    const auto extra = r.uint<std::uint16_t>("fmt extension size");
    if (extra < 22) throw DecodeError("WAVE_FORMAT_EXTENSIBLE extension too short");
    r.uint<std::uint16_t>("valid bits");
    r.uint<std::uint32_t>("channel mask");
    // The sub-format GUID starts with the plain format tag.
    fmt.format = r.uint<std::uint16_t>("sub-format");
  }
  return fmt;
}

}  // namespace

Waveform decode_wav(std::string_view bytes) {
  binary::Reader<DecodeError> r(bytes);
  if (r.take(4, "RIFF tag") != "RIFF") throw DecodeError("missing RIFF tag");
  r.uint<std::uint32_t>("RIFF size");
  if (r.take(4, "WAVE tag") != "WAVE") throw DecodeError("missing WAVE tag");

  std::optional<FormatChunk> fmt;
  std::optional<std::string_view> data;
  while (!r.at_end() && !(fmt && data)) {
    if (r.remaining() < 8) break;  // trailing padding
    std::string_view id = r.take(4, "chunk id");
    const auto size = r.uint<std::uint32_t>("chunk size");
    if (id == "data" && size > r.remaining()) {
      throw DecodeError("data chunk extends past end of file");
    }
    std::string_view body = r.take(size, "chunk body");
    if (size % 2 == 1 && !r.at_end()) r.take(1, "chunk pad");
    if (id == "fmt ") {
      fmt = parse_fmt(body);
    } else if (id == "data") {
      data = body;
    }
  }
  if (!fmt) throw DecodeError("missing fmt chunk");
  if (!data) throw DecodeError("missing data chunk");
  if (fmt->channels == 0) throw DecodeError("zero channels");
  if (fmt->sample_rate == 0) throw DecodeError("zero sample rate");

  int bytes_per_sample = 0;
  if (fmt->format == kFormatPcm && fmt->bits_per_sample == 16) {
    bytes_per_sample = 2;
  } else if (fmt->format == kFormatFloat && fmt->bits_per_sample == 32) {
    bytes_per_sample = 4;
  } else {
    throw UnsupportedFormatError(
        "unsupported WAV encoding: format tag " + std::to_string(fmt->format) +
        ", " + std::to_string(fmt->bits_per_sample) + " bits");
  }

  const std::size_t frame_bytes =
      static_cast<std::size_t>(bytes_per_sample) * fmt->channels;
  const std::size_t num_frames = data->size() / frame_bytes;
  Waveform wave;
  wave.sample_rate = static_cast<int>(fmt->sample_rate);
  wave.samples.resize(static_cast<Eigen::Index>(num_frames));

  binary::Reader<DecodeError> samples(*data);
  for (std::size_t i = 0; i < num_frames; ++i) {
    double acc = 0.0;
    for (int c = 0; c < fmt->channels; ++c) {
      if (bytes_per_sample == 2) {
        const auto code = static_cast<std::int16_t>(samples.uint<std::uint16_t>("pcm16"));
        acc += static_cast<double>(code) / 32768.0;
      } else {
        const float v = samples.f32("float32");
        if (!std::isfinite(v)) throw DecodeError("non-finite float sample");
        acc += std::clamp(static_cast<double>(v), -1.0, 1.0);
      }
    }
    wave.samples[static_cast<Eigen::Index>(i)] =
        static_cast<float>(acc / fmt->channels);
  }
  return wave;
}

Waveform load_wav(const std::filesystem::path& path) {
  return decode_wav(binary::read_file(path));
}

std::string encode_wav_pcm16(const Waveform& wave) {
  const auto n = static_cast<std::uint32_t>(wave.samples.size());
  const std::uint32_t data_bytes = n * 2;
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  binary::put_uint<std::uint32_t>(out, 36 + data_bytes);
  out += "WAVEfmt ";
  binary::put_uint<std::uint32_t>(out, 16);
  binary::put_uint<std::uint16_t>(out, kFormatPcm);
  binary::put_uint<std::uint16_t>(out, 1);
  binary::put_uint<std::uint32_t>(out, static_cast<std::uint32_t>(wave.sample_rate));
  binary::put_uint<std::uint32_t>(out, static_cast<std::uint32_t>(wave.sample_rate) * 2);
  binary::put_uint<std::uint16_t>(out, 2);
  binary::put_uint<std::uint16_t>(out, 16);
  out += "data";
  binary::put_uint<std::uint32_t>(out, data_bytes);
  for (Eigen::Index i = 0; i < wave.samples.size(); ++i) {
    const double v = std::round(static_cast<double>(wave.samples[i]) * 32768.0);
    const auto code = static_cast<std::int16_t>(std::clamp(v, -32768.0, 32767.0));
    binary::put_uint<std::uint16_t>(out, static_cast<std::uint16_t>(code));
  }
  return out;
}

void save_wav_pcm16(const std::filesystem::path& path, const Waveform& wave) {
  binary::write_file(path, encode_wav_pcm16(wave));
}

}  // namespace touch_audition::dsp
