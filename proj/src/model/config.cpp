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

#include "touch_audition/model/config.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "touch_audition/analysis/receptive_field.hpp"
#include "touch_audition/error.hpp"

namespace touch_audition::model {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int parse_int(const std::string& key, std::string_view s) {
  int v = 0;
  const std::string t = trim(s);
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ConfigError("config key '" + key + "': '" + t + "' is not an integer");
  }
  return v;
}

double parse_double(const std::string& key, std::string_view s) {
  double v = 0;
  const std::string t = trim(s);
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ConfigError("config key '" + key + "': '" + t + "' is not a number");
  }
  return v;
}

std::vector<int> parse_list(const std::string& key, std::string_view s) {
  std::vector<int> out;
  std::string item;
  std::istringstream in{std::string(s)};
  while (std::getline(in, item, ',')) out.push_back(parse_int(key, item));
  return out;
}

// "KTxKF/STxSF", e.g. 2x2/2x2.
std::optional<PoolingSpec> parse_pooling(const std::string& value) {
  if (value == "none") return std::nullopt;
  PoolingSpec p;
  const auto slash = value.find('/');
  const auto x1 = value.find('x');
  const auto x2 = value.find('x', slash == std::string::npos ? 0 : slash);
  if (slash == std::string::npos || x1 == std::string::npos || x1 > slash ||
      x2 == std::string::npos) {
    throw ConfigError("pooling must be 'none' or KTxKF/STxSF, got '" + value + "'");
  }
  p.kernel_time = parse_int("pooling", value.substr(0, x1));
  p.kernel_freq = parse_int("pooling", value.substr(x1 + 1, slash - x1 - 1));
  p.stride_time = parse_int("pooling", value.substr(slash + 1, x2 - slash - 1));
  p.stride_freq = parse_int("pooling", value.substr(x2 + 1));
  return p;
}

}  // namespace

ModelConfig ModelConfig::defaults(data::Task task) {
  ModelConfig c;
  c.task = task;
  c.num_classes = data::num_classes(task);
  return c;
}

void ModelConfig::validate() const {
  if (n_mels < 1) throw ConfigError("n_mels must be positive");
  if (kernels.empty()) throw ConfigError("at least one branch is required");
  for (int k : kernels) {
    if (k < 1) throw ConfigError("branch kernel sizes must be >= 1");
  }
  if (filters.empty()) throw ConfigError("each branch needs at least one conv layer");
  for (int f : filters) {
    if (f < 1) throw ConfigError("filter counts must be >= 1");
  }
  if (time_dilations.size() != filters.size() || freq_dilations.size() != filters.size()) {
    throw ConfigError("dilation lists must have one entry per conv layer");
  }
  for (int d : time_dilations) {
    if (d < 1) throw ConfigError("time dilations must be >= 1");
  }
  for (int d : freq_dilations) {
    if (d != 1) throw ConfigError("frequency dilation must be 1; dilation only varies in time");
  }
  if (pooling) {
    if (pooling->kernel_time < 1 || pooling->kernel_freq < 1 || pooling->stride_time < 1 ||
        pooling->stride_freq < 1) {
      throw ConfigError("pooling kernel and stride must be >= 1");
    }
  }
  if (embedding_dim < 1 || fusion_dim < 1) throw ConfigError("layer widths must be positive");
  if (num_classes < 2) throw ConfigError("at least two classes are required");
  if (!(dropout_p >= 0.0 && dropout_p < 1.0)) throw ConfigError("dropout must lie in [0, 1)");
  if (!(hop_s > 0.0) || !(window_s > 0.0)) throw ConfigError("hop and window must be positive");
  for (std::size_t b = 0; b < kernels.size(); ++b) {
    const long need = analysis::required_extent(analysis::freq_chain(*this, b));
    if (need > n_mels) {
      throw ConfigError("branch with kernel " + std::to_string(kernels[b]) + " needs " +
                        std::to_string(need) + " mel bins, config has " +
                        std::to_string(n_mels));
    }
  }
}

std::string ModelConfig::to_text() const {
  std::string s;
  s += "task = " + std::string(data::task_name(task)) + "\n";
  s += "n_mels = " + std::to_string(n_mels) + "\n";
  s += "kernels = " + join(kernels) + "\n";
  s += "filters = " + join(filters) + "\n";
  s += "time_dilations = " + join(time_dilations) + "\n";
  s += "freq_dilations = " + join(freq_dilations) + "\n";
  if (pooling) {
    s += "pooling = " + std::to_string(pooling->kernel_time) + "x" +
         std::to_string(pooling->kernel_freq) + "/" + std::to_string(pooling->stride_time) + "x" +
         std::to_string(pooling->stride_freq) + "\n";
  } else {
    s += "pooling = none\n";
  }
  s += "embedding_dim = " + std::to_string(embedding_dim) + "\n";
  s += "fusion_dim = " + std::to_string(fusion_dim) + "\n";
  s += "num_classes = " + std::to_string(num_classes) + "\n";
  s += "dropout = " + format_double(dropout_p) + "\n";
  s += "hop_s = " + format_double(hop_s) + "\n";
  s += "window_s = " + format_double(window_s) + "\n";
  return s;
}

ModelConfig ModelConfig::from_text(std::string_view text) {
  ModelConfig c;
  bool classes_given = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line without '=': " + trim(line));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "task") {
      c.task = data::parse_task(value);
    } else if (key == "n_mels") {
      c.n_mels = parse_int(key, value);
    } else if (key == "kernels") {
      c.kernels = parse_list(key, value);
    } else if (key == "filters") {
      c.filters = parse_list(key, value);
    } else if (key == "time_dilations") {
      c.time_dilations = parse_list(key, value);
    } else if (key == "freq_dilations") {
      c.freq_dilations = parse_list(key, value);
    } else if (key == "pooling") {
      c.pooling = parse_pooling(value);
    } else if (key == "embedding_dim") {
      c.embedding_dim = parse_int(key, value);
    } else if (key == "fusion_dim") {
      c.fusion_dim = parse_int(key, value);
    } else if (key == "num_classes") {
      c.num_classes = parse_int(key, value);
      classes_given = true;
    } else if (key == "dropout") {
      c.dropout_p = parse_double(key, value);
    } else if (key == "hop_s") {
      c.hop_s = parse_double(key, value);
    } else if (key == "window_s") {
      c.window_s = parse_double(key, value);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (!classes_given) c.num_classes = data::num_classes(c.task);
  c.validate();
  return c;
}

}  // namespace touch_audition::model
