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

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "cli.hpp"
#include "touch_audition/binary_io.hpp"
#include "touch_audition/data/synth.hpp"
#include "touch_audition/dsp/wav.hpp"
#include "touch_audition/model/checkpoint.hpp"

using namespace touch_audition;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("touch_audition_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Every regular file under `root`, keyed by relative path.
std::vector<std::pair<std::string, std::string>> snapshot(const fs::path& root) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files.emplace_back(fs::relative(e.path(), root).string(), binary::read_file(e.path()));
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST_CASE("cli: analyze reports the minimum length and parameter total") {
  const Outcome o = run({"analyze", "--task", "gesture"});
  CHECK(o.code == 0);
  CHECK(o.out.find("110 frames = 1.10 s") != std::string::npos);
  CHECK(o.out.find("240038 (0.24 M)") != std::string::npos);
  CHECK(o.out.find("reconciles") != std::string::npos);

  const fs::path dir = scratch("analyze");
  const Outcome w = run({"analyze", "--task", "aro_val", "--convention", "mac", "--length", "6", "--out", dir.string()});
  CHECK(w.code == 0);
  CHECK(w.out.find("two_mac") == std::string::npos);
  CHECK(w.out.find("598 frames") != std::string::npos);
  const std::string layers = binary::read_file(dir / "layers.csv");
  CHECK(layers.rfind("layer,out_shape,params,macs\n", 0) == 0);
  CHECK(fs::exists(dir / "flops.csv"));
  fs::remove_all(dir);
}

TEST_CASE("cli: synth is byte-identical for a fixed seed") {
  const fs::path a = scratch("synth_a"), b = scratch("synth_b");
  CHECK(run({"synth", "--task", "gesture", "--per-class", "20", "--seed", "7", "--out", a.string()}).code == 0);
  CHECK(run({"synth", "--task", "gesture", "--per-class", "20", "--seed", "7", "--out", b.string()}).code == 0);
  const auto sa = snapshot(a);
  CHECK(sa.size() == 121);
  CHECK(sa == snapshot(b));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run({"analyze", "--task", "gesture", "--bogus"}).code == cli::kExitUsage);
  CHECK(run({"analyze", "--task", "speech"}).code == cli::kExitUsage);
  CHECK(run({"train", "--manifest", "/no/such/manifest.csv", "--out", "/tmp/x"}).code == cli::kExitUsage);
  CHECK(run({"infer", "--checkpoint", "/no/such.ckpt", "--wav", "/no/such.wav"}).code == cli::kExitUsage);
  CHECK(run({}).code == cli::kExitUsage);
  const Outcome missing = run({"synth", "--task", "gesture"});
  CHECK(missing.code == cli::kExitUsage);
  CHECK_FALSE(missing.err.empty());
}

TEST_CASE("cli: help documents the defaults") {
  const Outcome t = run({"train", "--help"});
  CHECK(t.code == 0);
  for (const char* needle : {"--epochs", "100", "--batch-size", "32", "--lr", "0.001", "6 for gesture, 7 otherwise", "--seed"}) {
    INFO(needle);
    CHECK(t.out.find(needle) != std::string::npos);
  }
  const Outcome s = run({"sweep", "--help"});
  CHECK(s.out.find("10") != std::string::npos);
  CHECK(s.out.find("1.1") != std::string::npos);
  for (const char* sub : {"synth", "featurize", "eval", "analyze", "infer"}) {
    INFO(sub);
    CHECK(run({sub, "--help"}).code == 0);
  }
}

TEST_CASE("cli: infer enforces the minimum length with exit 1") {
  const fs::path dir = scratch("infer");
  const model::Mtrcnn m(model::ModelConfig::defaults(data::Task::gesture), 1);
  model::save_checkpoint(m, dir / "m.ckpt");
  dsp::save_wav_pcm16(dir / "short.wav", data::synth_clip(data::RecordingKind::gesture, "tap", 1, 0.5));
  const Outcome o = run({"infer", "--checkpoint", (dir / "m.ckpt").string(), "--wav", (dir / "short.wav").string()});
  CHECK(o.code == cli::kExitDomain);
  CHECK(o.err.rfind("touch-audition: error: ", 0) == 0);
  CHECK(std::count(o.err.begin(), o.err.end(), '\n') == 1);
  CHECK(o.err.find("1.10 s") != std::string::npos);

  dsp::save_wav_pcm16(dir / "ok.wav", data::synth_clip(data::RecordingKind::gesture, "tap", 1, 3.0));
  const Outcome ok = run({"infer", "--checkpoint", (dir / "m.ckpt").string(), "--wav", (dir / "ok.wav").string()});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("prediction ") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: featurize, train, eval and sweep on a tiny corpus") {
  const fs::path dir = scratch("pipeline");
  const std::string corpus = (dir / "corpus").string();
  REQUIRE(run({"synth", "--task", "gesture", "--per-class", "5", "--duration", "2", "--seed", "3", "--out", corpus}).code == 0);
  const std::string manifest = corpus + "/manifest.csv";

  REQUIRE(run({"featurize", "--manifest", manifest, "--out", (dir / "feat").string()}).code == 0);
  CHECK(fs::exists(dir / "feat" / "wav" / "tap_000.melf"));

  const std::string out = (dir / "run").string();
  const Outcome t = run({"train", "--manifest", manifest, "--task", "gesture", "--epochs", "2", "--length", "1.5",
                         "--batch-size", "8", "--seed", "5", "--quiet", "--out", out});
  REQUIRE(t.code == 0);
  for (const char* f : {"model.ckpt", "loss_log.csv", "train_log.txt", "confusion.csv", "confusion.pgm"}) {
    INFO(f);
    CHECK(fs::exists(fs::path(out) / f));
  }

  const Outcome e = run({"eval", "--checkpoint", out + "/model.ckpt", "--manifest", manifest, "--split", "test"});
  CHECK(e.code == 0);
  CHECK(e.out.find("accuracy") != std::string::npos);

  const Outcome wrong = run({"eval", "--checkpoint", out + "/model.ckpt", "--manifest", manifest, "--length", "0.5"});
  CHECK(wrong.code == cli::kExitDomain);

  const Outcome s = run({"sweep", "--manifest", manifest, "--task", "gesture", "--epochs", "1", "--lengths", "1.2,2",
                         "--runs", "1", "--threads", "1", "--quiet", "--out", (dir / "sweep").string()});
  CHECK(s.code == 0);
  CHECK(fs::exists(dir / "sweep" / "sweep.csv"));
  CHECK(fs::exists(dir / "sweep" / "runs.csv"));

  const Outcome tooshort = run({"sweep", "--manifest", manifest, "--task", "gesture", "--epochs", "1", "--lengths", "0.5",
                                "--runs", "1", "--quiet"});
  CHECK(tooshort.code == cli::kExitDomain);
  fs::remove_all(dir);
}
