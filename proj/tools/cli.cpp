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

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "touch_audition/analysis/resources.hpp"
#include "touch_audition/binary_io.hpp"
#include "touch_audition/data/splits.hpp"
#include "touch_audition/data/synth.hpp"
#include "touch_audition/dsp/feature_io.hpp"
#include "touch_audition/dsp/framing.hpp"
#include "touch_audition/model/checkpoint.hpp"
#include "touch_audition/train/sweep.hpp"
#include "touch_audition/train/trainer.hpp"

namespace touch_audition::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string task = "gesture";
  std::string manifest;
  std::string out;
  std::string checkpoint;
  std::string wav;
  std::string split = "test";
  std::string convention;
  std::optional<double> length;
  std::optional<double> test_length;
  std::vector<double> lengths = train::default_sweep_lengths();
  std::uint64_t seed = 0;
  int per_class = 20;
  int runs = 1;
  int sweep_runs = 10;
  int epochs = 100;
  int batch_size = 32;
  double lr = 1e-3;
  double duration = 10.0;
  unsigned threads = 0;
  bool include_aux = false;
  bool quiet = false;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

double crop_length(const Options& o, data::Task task) {
  return o.length.value_or(train::TrainConfig::default_crop_seconds(task));
}

train::TrainConfig train_config(const Options& o, data::Task task) {
  train::TrainConfig c = train::TrainConfig::defaults(task);
  c.epochs = o.epochs;
  c.batch_size = o.batch_size;
  c.lr = o.lr;
  c.crop_s = crop_length(o, task);
  c.test_crop_s = o.test_length;
  c.seed = o.seed;
  return c;
}

// Standardized features of one split, using the statistics stored in a model.
train::Dataset checkpoint_dataset(const data::Manifest& manifest, data::Split split,
                                  const model::Mtrcnn& model) {
  const model::ModelConfig& mc = model.config();
  dsp::FeatureStats stats{model.input_mean().vec(), model.input_std().vec()};
  dsp::FrontEndConfig fe;
  fe.n_mels = mc.n_mels;
  fe.hop_s = mc.hop_s;
  fe.window_s = mc.window_s;
  train::Dataset out;
  for (const data::ManifestRecord& r : manifest.records) {
    if (r.task != data::recording_kind(mc.task) || r.split != split) continue;
    train::Sample s;
    s.feature = dsp::standardize(dsp::mel_spectrogram(dsp::load_wav(manifest.resolve(r)), fe), stats);
    s.target = data::class_index(mc.task, r.label);
    s.path = r.path;
    out.push_back(std::move(s));
  }
  return out;
}

void write_confusion(const fs::path& dir, const train::EvalResult& eval, data::Task task) {
  binary::write_file(dir / "confusion.csv", eval.confusion.to_csv(data::class_names(task)));
  binary::write_file(dir / "confusion.pgm", eval.confusion.to_pgm());
}

int cmd_synth(const Options& o, std::ostream& out) {
  data::SynthOptions so;
  so.kind = o.task == "gesture" ? data::RecordingKind::gesture : data::RecordingKind::emotion;
  so.per_class = o.per_class;
  so.seed = o.seed;
  so.duration_s = o.duration;
  const data::Manifest m = data::synth_corpus(so, o.out);
  out << "wrote " << m.records.size() << " clips and " << (fs::path(o.out) / "manifest.csv").string() << "\n";
  return kExitOk;
}

int cmd_featurize(const Options& o, std::ostream& out) {
  const data::Manifest m = data::read_manifest(o.manifest);
  std::size_t n = 0;
  for (const data::ManifestRecord& r : m.records) {
    const dsp::MelFeature f = dsp::mel_spectrogram(dsp::load_wav(m.resolve(r)));
    fs::path dst = fs::path(o.out) / fs::path(r.path).replace_extension(".melf");
    fs::create_directories(dst.parent_path());
    dsp::write_melf(dst, f.frames);
    ++n;
  }
  out << "wrote " << n << " feature files under " << o.out << "\n";
  return kExitOk;
}

std::string run_log(const train::TrainConfig& c, const train::RunResult& r) {
  std::ostringstream s;
  s << "task " << data::task_name(c.task) << "\n"
    << "epochs " << c.epochs << "\nbatch_size " << c.batch_size << "\nlr " << c.lr << "\n"
    << "crop_s " << c.crop_s << "\ntest_crop "
    << (c.test_crop_s ? fmt("%.2f s", *c.test_crop_s) : std::string("full")) << "\nseed " << c.seed << "\n"
    << "initial_loss " << fmt("%.6f", r.initial_loss) << "\n"
    << "best_epoch " << r.best_epoch << "\nbest_val_acc " << fmt("%.2f", r.best_val_accuracy) << "\n"
    << "test_acc " << fmt("%.2f", r.test.accuracy) << "\n";
  return s.str();
}

int cmd_train(const Options& o, std::ostream& out) {
  const data::Task task = data::parse_task(o.task);
  const data::Manifest m = data::read_manifest(o.manifest);
  const train::TaskData td = train::load_task_data(m, task);
  const fs::path root(o.out);
  fs::create_directories(root);
  const auto seeds = o.runs == 1 ? std::vector<std::uint64_t>{o.seed} : train::run_seeds(o.seed, o.runs);

  std::vector<double> val_acc, test_acc;
  std::string summary = "run,seed,best_epoch,best_val_acc,test_acc\n";
  for (int run = 0; run < o.runs; ++run) {
    train::TrainConfig tc = train_config(o, task);
    tc.seed = seeds[static_cast<std::size_t>(run)];
    model::Mtrcnn model(model::ModelConfig::defaults(task), tc.seed);
    const train::RunResult r = train::train(tc, model, td, [&](const train::EpochLog& e) {
      if (o.quiet) return;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "epoch %3d/%d  train_loss %.4f  train_acc %6.2f  val_loss %.4f  val_acc %6.2f\n",
                    e.epoch, tc.epochs, e.train_loss, e.train_accuracy, e.val_loss, e.val_accuracy);
      out << buf << std::flush;
    });
    char name[32];
    std::snprintf(name, sizeof(name), "run_%02d", run);
    const fs::path dir = o.runs == 1 ? root : root / name;
    fs::create_directories(dir);
    model::save_checkpoint(model, dir / "model.ckpt");
    binary::write_file(dir / "loss_log.csv", train::loss_log_csv(r));
    binary::write_file(dir / "train_log.txt", run_log(tc, r));
    if (!td.test.empty()) write_confusion(dir, r.test, task);
    out << "run " << run << ": best epoch " << r.best_epoch << ", val acc " << fmt("%.2f", r.best_val_accuracy)
        << (td.test.empty() ? std::string() : ", test acc " + fmt("%.2f", r.test.accuracy)) << "\n";
    val_acc.push_back(r.best_val_accuracy);
    test_acc.push_back(r.test.accuracy);
    summary += std::to_string(run) + "," + std::to_string(tc.seed) + "," + std::to_string(r.best_epoch) + "," +
               fmt("%.6f", r.best_val_accuracy) + "," + fmt("%.6f", r.test.accuracy) + "\n";
  }
  if (o.runs > 1) {
    const train::MeanStd v = train::mean_std(val_acc), t = train::mean_std(test_acc);
    binary::write_file(root / "summary.csv", summary);
    out << "val acc " << fmt("%.2f", v.mean) << " ± " << fmt("%.2f", v.std) << "\n";
    if (!td.test.empty()) out << "test acc " << fmt("%.2f", t.mean) << " ± " << fmt("%.2f", t.std) << "\n";
  }
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  model::Mtrcnn model = model::load_checkpoint(o.checkpoint);
  const data::Manifest m = data::read_manifest(o.manifest);
  const train::Dataset split = checkpoint_dataset(m, data::parse_split(o.split), model);
  const train::EvalResult r =
      o.length ? train::evaluate(model, split, data::CropMode::center, *o.length)
               : train::evaluate(model, split, data::CropMode::full, 0.0);
  out << o.split << " accuracy " << fmt("%.2f", r.accuracy) << " over " << split.size() << " clips\n";
  const auto names = data::class_names(model.config().task);
  out << r.confusion.to_csv(names);
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    write_confusion(o.out, r, model.config().task);
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const data::Task task = data::parse_task(o.task);
  const data::Manifest m = data::read_manifest(o.manifest);
  const train::TaskData td = train::load_task_data(m, task);
  train::SweepConfig sc;
  sc.base = train_config(o, task);
  sc.model = model::ModelConfig::defaults(task);
  sc.lengths = o.lengths;
  sc.runs = o.sweep_runs;
  sc.master_seed = o.seed;
  sc.threads = o.threads;
  const train::SweepResult r = train::length_sweep(sc, td, [&](double len, int run, const train::RunResult& rr) {
    if (!o.quiet) out << fmt("%.2f s", len) << " run " << run << ": val acc " << fmt("%.2f", rr.best_val_accuracy) << "\n" << std::flush;
  });
  const std::string table = train::format_sweep(r);
  out << table;
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    binary::write_file(fs::path(o.out) / "sweep.csv", train::sweep_table_csv(r));
    binary::write_file(fs::path(o.out) / "runs.csv", train::sweep_runs_csv(r));
    binary::write_file(fs::path(o.out) / "sweep.txt", table);
  }
  return kExitOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const model::ModelConfig config = model::ModelConfig::defaults(data::parse_task(o.task));
  analysis::AnalyzeOptions ao;
  ao.include_aux = o.include_aux;
  if (o.length) ao.table_frames = dsp::crop_frame_count(*o.length, ao.clip_frames, ao.clip_seconds);
  analysis::ResourceReport report = analysis::analyze(config, ao);
  if (!o.convention.empty()) {
    const analysis::FlopConvention c = analysis::parse_convention(o.convention);
    std::erase_if(report.grid, [c](const analysis::FlopCell& cell) { return cell.convention != c; });
  }
  out << analysis::format_report(report);
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    binary::write_file(fs::path(o.out) / "layers.csv", analysis::layer_table_csv(report));
    binary::write_file(fs::path(o.out) / "flops.csv", analysis::flops_grid_csv(report));
  }
  return kExitOk;
}

int cmd_infer(const Options& o, std::ostream& out) {
  model::Mtrcnn model = model::load_checkpoint(o.checkpoint);
  const model::ModelConfig& mc = model.config();
  dsp::FrontEndConfig fe;
  fe.n_mels = mc.n_mels;
  fe.hop_s = mc.hop_s;
  fe.window_s = mc.window_s;
  dsp::MelFeature f = dsp::mel_spectrogram(dsp::load_wav(o.wav), fe);
  f = dsp::standardize(f, dsp::FeatureStats{model.input_mean().vec(), model.input_std().vec()});
  if (o.length) f = data::crop(f, *o.length, data::CropMode::center, std::uint64_t{0});

  nn::NoGradGuard no_grad;
  nn::Tensor<float> x({1, 1, f.num_frames(), f.num_bins()});
  x.matrix(f.num_frames(), f.num_bins()) = f.frames;
  const auto logits = model.forward(nn::Variable<float>(std::move(x)), false);
  const auto probs = nn::softmax(logits.value());
  const auto names = data::class_names(mc.task);
  Eigen::Index best = 0;
  probs.row(0).maxCoeff(&best);
  for (std::size_t k = 0; k < names.size(); ++k) {
    out << names[k] << " " << fmt("%.4f", probs(0, static_cast<Eigen::Index>(k))) << "\n";
  }
  out << "prediction " << names[static_cast<std::size_t>(best)] << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Touch gesture and emotion recognition from touch sounds", "touch-audition"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> tasks{"gesture", "arousal", "valence", "aro_val"};
  auto add_task = [&](CLI::App* sub) {
    sub->add_option("--task", o.task, "gesture, arousal, valence or aro_val")
        ->check(CLI::IsMember(tasks))
        ->capture_default_str();
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "Random seed")->capture_default_str(); };
  auto add_manifest = [&](CLI::App* sub) {
    sub->add_option("--manifest", o.manifest, "Manifest CSV")->required()->check(CLI::ExistingFile);
  };
  auto add_recipe = [&](CLI::App* sub) {
    sub->add_option("--length", o.length, "Training crop length in seconds (default 6 for gesture, 7 otherwise)");
    sub->add_option("--epochs", o.epochs, "Training epochs")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--batch-size", o.batch_size, "Batch size")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--lr", o.lr, "Adam learning rate")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--test-length", o.test_length, "Test crop length in seconds (default full clip)");
    sub->add_flag("--quiet", o.quiet, "Suppress progress lines");
  };

  auto* synth = app.add_subcommand("synth", "Generate a synthetic touch-sound corpus");
  synth->add_option("--task", o.task, "gesture or emotion (the emotion tasks also select emotion)")
      ->check(CLI::IsMember({"gesture", "emotion", "arousal", "valence", "aro_val"}))
      ->capture_default_str();
  synth->add_option("--per-class", o.per_class, "Clips per class")->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--duration", o.duration, "Clip duration in seconds")->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--out", o.out, "Output directory")->required();
  add_seed(synth);

  auto* featurize = app.add_subcommand("featurize", "Write log-mel features of every manifest clip");
  add_manifest(featurize);
  featurize->add_option("--out", o.out, "Output directory")->required();

  auto* trn = app.add_subcommand("train", "Train a model and write checkpoint, loss log and confusion matrix");
  add_manifest(trn);
  add_task(trn);
  add_recipe(trn);
  add_seed(trn);
  trn->add_option("--runs", o.runs, "Independent runs with per-run seeds drawn from --seed")
      ->capture_default_str()->check(CLI::PositiveNumber);
  trn->add_option("--out", o.out, "Output directory")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on a manifest split");
  eval->add_option("--checkpoint", o.checkpoint, "Model checkpoint")->required()->check(CLI::ExistingFile);
  add_manifest(eval);
  eval->add_option("--split", o.split, "train, val or test")
      ->check(CLI::IsMember({"train", "val", "test"}))->capture_default_str();
  eval->add_option("--length", o.length, "Center crop length in seconds (default full clip)");
  eval->add_option("--out", o.out, "Directory for confusion.csv and confusion.pgm");

  auto* sweep = app.add_subcommand("sweep", "Input-length sweep with repeated runs");
  add_manifest(sweep);
  add_task(sweep);
  add_recipe(sweep);
  add_seed(sweep);
  sweep->add_option("--lengths", o.lengths, "Crop lengths in seconds")->capture_default_str()->delimiter(',');
  sweep->add_option("--runs", o.sweep_runs, "Runs per length")->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--threads", o.threads, "Worker threads (default TOUCH_AUDITION_THREADS or all cores)");
  sweep->add_option("--out", o.out, "Directory for sweep.csv, runs.csv and sweep.txt");

  auto* analyze = app.add_subcommand("analyze", "Receptive field, parameter, FLOP and minimum-length report");
  add_task(analyze);
  analyze->add_option("--convention", o.convention, "Show only the mac or two_mac column (default both)")
      ->check(CLI::IsMember({"mac", "two_mac"}));
  analyze->add_option("--length", o.length, "Input length in seconds for the layer table (default 10)");
  analyze->add_flag("--include-aux", o.include_aux, "Add batch-norm, ReLU and pooling work to the FLOP grid");
  analyze->add_option("--out", o.out, "Directory for layers.csv and flops.csv");

  auto* infer = app.add_subcommand("infer", "Classify one WAV clip");
  infer->add_option("--checkpoint", o.checkpoint, "Model checkpoint")->required()->check(CLI::ExistingFile);
  infer->add_option("--wav", o.wav, "Input WAV file")->required()->check(CLI::ExistingFile);
  infer->add_option("--length", o.length, "Center crop length in seconds (default full clip)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "touch-audition: error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(o, out);
    if (*featurize) return cmd_featurize(o, out);
    if (*trn) return cmd_train(o, out);
    if (*eval) return cmd_eval(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*analyze) return cmd_analyze(o, out);
    if (*infer) return cmd_infer(o, out);
  } catch (const Error& e) {
    err << "touch-audition: error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "touch-audition: error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace touch_audition::cli
