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

#include "touch_audition/model/checkpoint.hpp"

#include "touch_audition/binary_io.hpp"
#include "touch_audition/error.hpp"

namespace touch_audition::model {

std::string encode_checkpoint(const Mtrcnn& model) {
  std::string out = "MTRC";
  binary::put_uint<std::uint32_t>(out, kCheckpointVersion);
  const std::string config = model.config().to_text();
  binary::put_uint<std::uint32_t>(out, static_cast<std::uint32_t>(config.size()));
  out += config;
  for (const auto& [name, tensor] : model.state_dict()) {
    binary::put_uint<std::uint16_t>(out, static_cast<std::uint16_t>(name.size()));
    out += name;
    binary::put_uint<std::uint8_t>(out, static_cast<std::uint8_t>(tensor.ndim()));
    for (nn::Index d : tensor.shape()) {
      binary::put_uint<std::uint32_t>(out, static_cast<std::uint32_t>(d));
    }
    for (nn::Index i = 0; i < tensor.size(); ++i) binary::put_f32(out, tensor[i]);
  }
  return out;
}

Mtrcnn decode_checkpoint(std::string_view bytes) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != "MTRC") {
    throw IncompatibleCheckpointError("not an MTRC checkpoint (bad magic)");
  }
  binary::Reader<CorruptCheckpointError> r(bytes);
  r.take(4, "magic");
  const auto version = r.uint<std::uint32_t>("version");
  if (version != kCheckpointVersion) {
    throw IncompatibleCheckpointError("checkpoint version " + std::to_string(version) +
                                      " is not supported (expected " +
                                      std::to_string(kCheckpointVersion) + ")");
  }
  const auto config_len = r.uint<std::uint32_t>("config length");
  const std::string_view config_text = r.take(config_len, "config");
  ModelConfig config;
  try {
    config = ModelConfig::from_text(config_text);
  } catch (const ConfigError& e) {
    throw CorruptCheckpointError(std::string("embedded config is invalid: ") + e.what());
  }

  StateDict<float> state;
  while (!r.at_end()) {
    const auto name_len = r.uint<std::uint16_t>("tensor name length");
    std::string name(r.take(name_len, "tensor name"));
    const auto ndim = r.uint<std::uint8_t>("tensor rank");
    nn::Shape shape;
    for (unsigned i = 0; i < ndim; ++i) shape.push_back(r.uint<std::uint32_t>("tensor dims"));
    const nn::Index size = nn::shape_size(shape);
    if (static_cast<std::size_t>(size) * 4 > r.remaining()) {
      throw CorruptCheckpointError("truncated data for tensor '" + name + "'");
    }
    nn::Tensor<float> t(shape);
    for (nn::Index i = 0; i < size; ++i) t[i] = r.f32("tensor data");
    state.emplace_back(std::move(name), std::move(t));
  }

  Mtrcnn model(config, 0);
  model.load_state_dict<CorruptCheckpointError>(state);
  return model;
}

void save_checkpoint(const Mtrcnn& model, const std::filesystem::path& path) {
  binary::write_file(path, encode_checkpoint(model));
}

Mtrcnn load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(binary::read_file(path));
}

}  // namespace touch_audition::model
