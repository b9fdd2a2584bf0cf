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

#include "touch_audition/analysis/resources.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "touch_audition/analysis/receptive_field.hpp"
#include "touch_audition/dsp/framing.hpp"
#include "touch_audition/error.hpp"

namespace touch_audition::analysis {
namespace {

std::string shape_text(const std::vector<long>& shape) {
  std::string s;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// Appends the layers of branch `b` at `frames` input frames.
void branch_layers(const model::ModelConfig& config, std::size_t b, long frames,
                   std::vector<LayerCost>& out) {
  const long k = config.kernels[b];
  const std::string p = "b" + std::to_string(b) + ".";
  long channels = 1, t = frames, f = config.n_mels;
  for (std::size_t l = 0; l < config.filters.size(); ++l) {
    const long cout = config.filters[l];
    const long t_out = t - (k - 1) * config.time_dilations[l];
    const long f_out = f - (k - 1) * config.freq_dilations[l];
    if (t_out < 1 || f_out < 1) throw ConfigError("layer does not fit its input: " + p);
    const std::string idx = std::to_string(l);
    const long elems = cout * t_out * f_out;
    out.push_back({p + "conv" + idx, "conv", {cout, t_out, f_out}, k * k * channels * cout + cout,
                   elems * k * k * channels, 0});
    out.push_back({p + "bn" + idx, "bn", {cout, t_out, f_out}, 2 * cout, 0, elems});
    out.push_back({p + "relu" + idx, "relu", {cout, t_out, f_out}, 0, 0, elems});
    t = t_out;
    f = f_out;
    if (config.pooling) {
      const auto& pool = *config.pooling;
      if (t < pool.kernel_time || f < pool.kernel_freq) {
        throw ConfigError("pooling does not fit its input: " + p);
      }
      const long pt = (t - pool.kernel_time) / pool.stride_time + 1;
      const long pf = (f - pool.kernel_freq) / pool.stride_freq + 1;
      out.push_back({p + "pool" + idx, "pool", {cout, pt, pf}, 0, 0,
                     cout * pt * pf * pool.kernel_time * pool.kernel_freq});
      t = pt;
      f = pf;
    }
    channels = cout;
  }
  out.push_back({p + "gap", "gap", {channels}, 0, 0, channels * t * f});
  const long e = config.embedding_dim;
  out.push_back({p + "emb", "dense", {e}, channels * e + e, channels * e, 0});
  out.push_back({p + "emb.relu", "relu", {e}, 0, 0, e});
}

}  // namespace

FlopConvention parse_convention(std::string_view name) {
  if (name == "mac") return FlopConvention::mac;
  if (name == "two_mac") return FlopConvention::two_mac;
  throw ConfigError("unknown FLOP convention '" + std::string(name) + "'");
}

std::string_view convention_name(FlopConvention c) {
  return c == FlopConvention::mac ? "mac" : "two_mac";
}

std::vector<LayerCost> layer_costs(const model::ModelConfig& config, long input_frames) {
  config.validate();
  const long min_frames = min_input_frames(config);
  if (input_frames < min_frames) {
    const double seconds = frames_to_seconds(min_frames, config.hop_s);
    throw MinLengthError("input of " + std::to_string(input_frames) +
                             " frames is shorter than the minimum of " +
                             std::to_string(min_frames) + " frames (" + fixed(seconds, 2) + " s)",
                         min_frames, seconds);
  }
  std::vector<LayerCost> out;
  for (std::size_t b = 0; b < config.kernels.size(); ++b) branch_layers(config, b, input_frames, out);
  const long concat = config.concat_dim();
  const long fuse = config.fusion_dim;
  const long k = config.num_classes;
  out.push_back({"fuse", "dense", {fuse}, concat * fuse + fuse, concat * fuse, 0});
  out.push_back({"fuse.relu", "relu", {fuse}, 0, 0, fuse});
  out.push_back({"head", "dense", {k}, fuse * k + k, fuse * k, 0});
  return out;
}

long count_params(const model::ModelConfig& config) {
  long total = 0;
  for (const LayerCost& l : layer_costs(config, min_input_frames(config))) total += l.params;
  return total;
}

long count_macs(const model::ModelConfig& config, long input_frames) {
  long total = 0;
  for (const LayerCost& l : layer_costs(config, input_frames)) total += l.macs;
  return total;
}

std::vector<long> branch_macs(const model::ModelConfig& config, long input_frames) {
  std::vector<long> out(config.kernels.size(), 0);
  for (const LayerCost& l : layer_costs(config, input_frames)) {
    if (l.name.size() > 1 && l.name[0] == 'b' && l.name.find('.') != std::string::npos) {
      out[std::stoul(l.name.substr(1, l.name.find('.') - 1))] += l.macs;
    }
  }
  return out;
}

double count_flops(const model::ModelConfig& config, long input_frames, FlopConvention convention,
                   bool include_aux) {
  double macs = 0.0, aux = 0.0;
  for (const LayerCost& l : layer_costs(config, input_frames)) {
    macs += static_cast<double>(l.macs);
    aux += static_cast<double>(l.aux_ops);
  }
  const double factor = convention == FlopConvention::mac ? 1.0 : 2.0;
  return factor * macs + (include_aux ? aux : 0.0);
}

ResourceReport analyze(const model::ModelConfig& config, const AnalyzeOptions& options) {
  config.validate();
  ResourceReport r;
  r.config = config;
  model::ModelConfig no_pool = config;
  no_pool.pooling.reset();
  for (std::size_t b = 0; b < config.kernels.size(); ++b) {
    r.receptive_fields.push_back(receptive_field(time_chain(config, b)));
    r.conv_only_receptive_fields.push_back(receptive_field(time_chain(no_pool, b)));
    r.branch_min_frames.push_back(min_input_frames(config, b));
  }
  r.min_input_frames = min_input_frames(config);
  r.min_input_seconds = frames_to_clip_seconds(r.min_input_frames, config.hop_s, config.window_s);
  r.min_input_seconds_approx = frames_to_seconds(r.min_input_frames, config.hop_s);
  r.param_count = count_params(config);
  r.model_size_bytes = 4 * r.param_count;
  r.model_size_mb = static_cast<double>(r.model_size_bytes) / 1e6;
  r.model_size_mib = static_cast<double>(r.model_size_bytes) / (1024.0 * 1024.0);
  r.table_frames = options.table_frames > 0 ? options.table_frames : options.clip_frames;
  r.layers = layer_costs(config, r.table_frames);
  r.branch_macs = branch_macs(config, r.table_frames);
  r.device_flops = options.device_flops;
  r.reference_flops = options.reference_flops;
  r.reconcile_tolerance = options.reconcile_tolerance;
  for (double seconds : options.lengths_s) {
    const long frames = static_cast<long>(
        dsp::crop_frame_count(seconds, options.clip_frames, options.clip_seconds));
    if (frames < r.min_input_frames) {
      throw MinLengthError("analysis length " + fixed(seconds, 2) + " s is below the minimum input",
                           r.min_input_frames, r.min_input_seconds_approx);
    }
    for (FlopConvention c : {FlopConvention::mac, FlopConvention::two_mac}) {
      FlopCell cell;
      cell.seconds = seconds;
      cell.frames = frames;
      cell.convention = c;
      cell.flops = count_flops(config, frames, c, options.include_aux);
      cell.within_budget = cell.flops <= options.device_flops;
      cell.reconciles = std::abs(cell.flops - options.reference_flops) <=
                        options.reconcile_tolerance * options.reference_flops;
      r.budget_pass = r.budget_pass && cell.within_budget;
      r.grid.push_back(cell);
    }
  }
  return r;
}

std::string format_report(const ResourceReport& r) {
  std::ostringstream o;
  auto list = [](const std::vector<long>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
  };
  o << "task                 " << data::task_name(r.config.task) << " ("
    << r.config.num_classes << " classes)\n";
  o << "receptive field (time axis, frames)\n";
  for (std::size_t b = 0; b < r.receptive_fields.size(); ++b) {
    const int k = r.config.kernels[b];
    o << "  branch " << k << "x" << k << "  conv only " << list(r.conv_only_receptive_fields[b])
      << "  with pooling " << list(r.receptive_fields[b]) << "  min input "
      << r.branch_min_frames[b] << "\n";
  }
  o << "min input            " << r.min_input_frames << " frames = "
    << fixed(r.min_input_seconds_approx, 2) << " s (frames x hop), "
    << fixed(r.min_input_seconds, 3) << " s shortest clip\n";
  o << "parameters           " << r.param_count << " (" << fixed(r.param_count / 1e6, 2) << " M)\n";
  o << "model size           " << r.model_size_bytes << " bytes = " << fixed(r.model_size_mb, 2)
    << " MB = " << fixed(r.model_size_mib, 2) << " MiB (float32)\n";
  o << "layer table at       " << r.table_frames << " frames\n";
  char line[160];
  std::snprintf(line, sizeof(line), "  %-12s %-6s %-14s %10s %14s %12s\n", "layer", "kind",
                "out_shape", "params", "macs", "aux_ops");
  o << line;
  for (const LayerCost& l : r.layers) {
    std::snprintf(line, sizeof(line), "  %-12s %-6s %-14s %10ld %14ld %12ld\n", l.name.c_str(),
                  l.kind.c_str(), shape_text(l.out_shape).c_str(), l.params, l.macs, l.aux_ops);
    o << line;
  }
  o << "branch MACs          ";
  for (std::size_t b = 0; b < r.branch_macs.size(); ++b) {
    o << (b ? ", " : "") << r.config.kernels[b] << "x" << r.config.kernels[b] << ": "
      << fixed(r.branch_macs[b] / 1e6, 1) << " M";
  }
  o << "\n";
  o << "FLOPs grid (device budget " << fixed(r.device_flops / 1e9, 2) << " G, reference "
    << fixed(r.reference_flops / 1e9, 3) << " G +/- " << fixed(100 * r.reconcile_tolerance, 0)
    << "%)\n";
  std::snprintf(line, sizeof(line), "  %8s %7s %8s %10s %7s %s\n", "seconds", "frames", "conv.",
                "GFLOPs", "budget", "");
  o << line;
  for (const FlopCell& c : r.grid) {
    std::snprintf(line, sizeof(line), "  %8.2f %7ld %8s %10.4f %7s %s\n", c.seconds, c.frames,
                  std::string(convention_name(c.convention)).c_str(), c.flops / 1e9,
                  c.within_budget ? "pass" : "FAIL",
                  c.reconciles ? "<- reconciles with reference" : "");
    o << line;
  }
  o << "budget check         " << (r.budget_pass ? "pass" : "FAIL") << "\n";
  return o.str();
}

std::string layer_table_csv(const ResourceReport& r) {
  std::string s = "layer,out_shape,params,macs\n";
  for (const LayerCost& l : r.layers) {
    s += l.name + "," + shape_text(l.out_shape) + "," + std::to_string(l.params) + "," +
         std::to_string(l.macs) + "\n";
  }
  return s;
}

std::string flops_grid_csv(const ResourceReport& r) {
  std::string s = "seconds,frames,convention,flops,within_budget,reconciles\n";
  for (const FlopCell& c : r.grid) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.2f,%ld,%s,%.0f,%d,%d\n", c.seconds, c.frames,
                  std::string(convention_name(c.convention)).c_str(), c.flops,
                  c.within_budget ? 1 : 0, c.reconciles ? 1 : 0);
    s += buf;
  }
  return s;
}

}  // namespace touch_audition::analysis
