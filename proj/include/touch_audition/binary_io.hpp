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

#ifndef TOUCH_AUDITION_BINARY_IO_HPP_
#define TOUCH_AUDITION_BINARY_IO_HPP_

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <string_view>

#include "touch_audition/error.hpp"

namespace touch_audition::binary {

// Little-endian append/consume helpers shared by the MELF and checkpoint
// formats. Both formats are defined as little-endian regardless of host.

template <typename UInt>
void put_uint(std::string& out, UInt value) {
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
}

inline void put_f32(std::string& out, float value) {
  put_uint(out, std::bit_cast<std::uint32_t>(value));
}

// Cursor over an immutable byte buffer. Reading past the end throws the
// error type chosen by the caller so each format reports its own failure.
template <typename TruncatedError>
class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  bool at_end() const { return pos_ == bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  std::string_view take(std::size_t n, const char* what) {
    if (remaining() < n) {
      throw TruncatedError(std::string("truncated while reading ") + what);
    }
    std::string_view view = bytes_.substr(pos_, n);
    pos_ += n;
    return view;
  }

  template <typename UInt>
  UInt uint(const char* what) {
    std::string_view raw = take(sizeof(UInt), what);
    UInt value = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i) {
      value |= static_cast<UInt>(static_cast<unsigned char>(raw[i])) << (8 * i);
    }
    return value;
  }

  float f32(const char* what) {
    return std::bit_cast<float>(uint<std::uint32_t>(what));
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace touch_audition::binary

#endif  // TOUCH_AUDITION_BINARY_IO_HPP_
