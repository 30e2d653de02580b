// tools/mgf_main.cc

// Copyright 2026  The mgf authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Operator surface for the mask-enhancement workbench. One command = one
// process; every command is deterministic given (config, seed) and commits
// its output directory atomically (build under <out>.tmp, rename on
// success), so an interrupted run leaves nothing behind.
//
// Exit codes: 0 success, 2 configuration error, 3 data error, 4 numeric
// divergence.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mgf/checkpoint.h"
#include "mgf/config.h"
#include "mgf/corpus.h"
#include "mgf/dsp.h"
#include "mgf/errors.h"
#include "mgf/metrics.h"
#include "mgf/net.h"
#include "mgf/report.h"
#include "mgf/svg.h"
#include "mgf/trainer.h"
#include "mgf/wave.h"

namespace fs = std::filesystem;

namespace mgf {
namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open file: " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw DataError("cannot write file: " + path);
  os << content;
  if (!os) throw DataError("short write: " + path);
}

// Builds a run directory under <final>.tmp and renames it into place on
// commit(); the destructor removes an uncommitted staging directory, so a
// failed command leaves either the complete output or nothing.
class StageDir {
 public:
  explicit StageDir(const std::string& final_path)
      : final_(final_path), tmp_(final_path + ".tmp") {
    if (fs::exists(final_)) {
      throw DataError("output directory already exists: " + final_);
    }
    std::error_code ec;
    fs::remove_all(tmp_, ec);  // leftover of an interrupted run
    fs::create_directories(tmp_);
  }

  ~StageDir() {
    if (!committed_) {
      std::error_code ec;
      fs::remove_all(tmp_, ec);
    }
  }

  const std::string& path() const { return tmp_; }
  std::string file(const std::string& name) const {
    return (fs::path(tmp_) / name).string();
  }

  void commit() {
    fs::rename(tmp_, final_);
    committed_ = true;
  }

 private:
  std::string final_;
  std::string tmp_;
  bool committed_ = false;
};

// ---------------------------------------------------------------------------
// Checkpoint-backed enhancement
// ---------------------------------------------------------------------------

// A generator reconstructed from a checkpoint together with the
// normalization statistics it was trained with. A checkpoint whose meta
// says model = identity denotes the pass-through stub (mask of all ones)
// used to calibrate the evaluation plumbing.
class Enhancer {
 public:
  explicit Enhancer(const std::string& checkpoint_path) {
    const Checkpoint ck = load_checkpoint(checkpoint_path);
    cfg_ = parse_config(ck.meta_value("config"),
                        checkpoint_path + "#config");
    identity_ = ck.has_meta("model") && ck.meta_value("model") == "identity";
    if (identity_) return;
    GeneratorConfig gcfg;
    gcfg.num_bins = cfg_.num_bins();
    gcfg.context = cfg_.context;
    gcfg.hidden = cfg_.hidden;
    net_ = std::make_unique<GeneratorNet>(gcfg, &params_);
    params_from_checkpoint(ck, "g", &params_);
    stats_.mean = ck.tensor("stats.mean");
    stats_.stddev = ck.tensor("stats.std");
  }

  const RunConfig& config() const { return cfg_; }

  Waveform enhance(const Waveform& noisy) {
    if (noisy.sample_rate != cfg_.sample_rate) {
      throw DataError("input sample rate " +
                      std::to_string(noisy.sample_rate) +
                      " does not match the model's " +
                      std::to_string(cfg_.sample_rate));
    }
    Spectrogram spec = stft(noisy, cfg_.stft());
    MaskGrid mask;
    if (identity_) {
      mask.values = Tensor({spec.frames(), spec.bins()}, 1.0);
    } else {
      const Tensor feats = normalize_spectrogram(spec, stats_);
      mask.values = net_->forward(feats);
    }
    const Spectrogram enhanced = apply_mask(spec, mask, cfg_.mask_floor);
    return istft(enhanced);
  }

 private:
  RunConfig cfg_;
  bool identity_ = false;
  ParamSet params_;
  std::unique_ptr<GeneratorNet> net_;
  FreqStats stats_;
};

// ---------------------------------------------------------------------------
// Shared artifact writers
// ---------------------------------------------------------------------------

std::vector<double> curve_axis(const std::vector<CurvePoint>& curve,
                               const std::string& split,
                               const std::string& metric, bool want_score,
                               bool want_x) {
  std::vector<double> out;
  for (const CurvePoint& p : curve) {
    if (p.split != split || p.metric != metric) continue;
    if (want_x) out.push_back(static_cast<double>(p.iteration));
    else out.push_back(want_score ? p.mean_normalized_score : 0.0);
  }
  return out;
}

void plot_curves(const std::vector<CurvePoint>& curve,
                 const std::vector<std::string>& metrics,
                 const std::string& score_path,
                 const std::string& loss_path) {
  std::vector<SvgSeries> score_series;
  for (const std::string& m : metrics) {
    for (const char* split : {"train", "val"}) {
      SvgSeries s;
      s.label = std::string(split) + " " + m;
      s.x = curve_axis(curve, split, m, true, true);
      s.y = curve_axis(curve, split, m, true, false);
      if (!s.x.empty()) score_series.push_back(std::move(s));
    }
  }
  write_svg_plot(score_path, "mean normalized score over training",
                 "generator iterations", "mean normalized score",
                 score_series);

  SvgSeries lg, ld;
  lg.label = "generator loss";
  ld.label = "discriminator loss";
  for (const CurvePoint& p : curve) {
    if (p.split != "val" || p.metric != metrics[0]) continue;
    lg.x.push_back(static_cast<double>(p.iteration));
    lg.y.push_back(p.loss_g);
    ld.x.push_back(static_cast<double>(p.iteration));
    ld.y.push_back(p.loss_d);
  }
  write_svg_plot(loss_path, "validation losses over training",
                 "generator iterations", "loss", {lg, ld});
}

std::string train_summary(const RunConfig& cfg, const TrainResult& res) {
  std::string s;
  s += "mode = " + cfg.mode + "\n";
  s += "config_hash = " + config_hash(cfg) + "\n";
  s += "seed = " + std::to_string(cfg.seed) + "\n";
  s += "iterations = " + std::to_string(res.iterations) + "\n";
  s += "converged = " + std::string(res.converged ? "yes" : "no") + "\n";
  s += "best_iteration = " + std::to_string(res.best_iteration) + "\n";
  s += "best_val_distance = " + fmt17(res.best_val_distance) + "\n";
  for (size_t i = 0; i < cfg.metrics.size(); i++) {
    s += "target." + cfg.metrics[i] + " = " + fmt17(cfg.targets[i]) + "\n";
    s += "final_val." + cfg.metrics[i] + " = " +
         fmt17(res.final_val_scores[i]) + "\n";
  }
  return s;
}

// Trains on the given splits and writes the standard run artifacts
// (checkpoints, curve CSV, config echo, SVG plots) into `dir`.
TrainResult run_training(const RunConfig& cfg, std::vector<Utterance> train,
                         std::vector<Utterance> val, const std::string& dir) {
  Trainer trainer(cfg, std::move(train), std::move(val));
  const TrainResult res = trainer.run();
  save_checkpoint(trainer.make_checkpoint(),
                  (fs::path(dir) / "checkpoint.mgf").string());
  save_checkpoint(trainer.best_checkpoint(),
                  (fs::path(dir) / "checkpoint_best.mgf").string());
  save_curve(res.curve, (fs::path(dir) / "curve.csv").string());
  write_text_file((fs::path(dir) / "config.txt").string(), echo_config(cfg));
  write_text_file((fs::path(dir) / "summary.txt").string(),
                  train_summary(cfg, res));
  plot_curves(res.curve, cfg.metrics,
              (fs::path(dir) / "learning_curve.svg").string(),
              (fs::path(dir) / "loss_curve.svg").string());
  return res;
}

/// First validation iteration whose score is within `tol` of the target,
/// or -1 if the run never got there.
int64_t iterations_to_target(const std::vector<CurvePoint>& curve,
                             const std::string& metric, double target,
                             double tol) {
  for (const CurvePoint& p : curve) {
    if (p.split != "val" || p.metric != metric) continue;
    if (std::abs(p.mean_normalized_score - target) <= tol) return p.iteration;
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_mix(const RunConfig& cfg, const std::string& out) {
  const std::string echo = echo_config(cfg);
  if (fs::exists(out)) {
    // Idempotent rerun: a committed directory is complete by construction,
    // so matching the effective config is enough to skip the render.
    const std::string cfg_path = (fs::path(out) / "config.txt").string();
    if (fs::exists(cfg_path) && read_text_file(cfg_path) == echo) {
      std::cout << "mix: " << out << " already rendered for config "
                << config_hash(cfg) << ", nothing to do\n";
      return 0;
    }
    throw DataError("output directory exists with a different corpus: " +
                    out);
  }

  StageDir stage(out);
  Manifest manifest = build_manifest(cfg);
  fs::create_directories(fs::path(stage.path()) / "wav");
  for (CorpusRow& row : manifest.rows) {
    const RenderedUtterance r = render_utterance(manifest, row);
    row.clip_scale = r.clip_scale;
    const fs::path wav_dir = fs::path(stage.path()) / "wav";
    write_wav((wav_dir / (row.utterance_id + ".noisy.wav")).string(),
              r.noisy);
    write_wav((wav_dir / (row.utterance_id + ".clean.wav")).string(),
              r.clean);
  }
  save_manifest(manifest, stage.file("manifest.csv"));
  write_text_file(stage.file("config.txt"), echo);
  stage.commit();
  std::cout << "mix: rendered " << manifest.rows.size()
            << " utterances -> " << out << "\n";
  return 0;
}

int cmd_train(const RunConfig& cfg, const std::string& out) {
  std::vector<Utterance> train = load_split(cfg.data_dir, "train");
  std::vector<Utterance> val = load_split(cfg.data_dir, "val");
  StageDir stage(out);
  const TrainResult res =
      run_training(cfg, std::move(train), std::move(val), stage.path());
  stage.commit();
  std::cout << train_summary(cfg, res);
  std::cout << "train: run directory " << out << "\n";
  return 0;
}

int cmd_enhance(const std::string& checkpoint, const std::string& out,
                const std::vector<std::string>& inputs) {
  Enhancer enhancer(checkpoint);
  StageDir stage(out);
  std::vector<std::string> written;
  for (const std::string& in_path : inputs) {
    const std::string name =
        fs::path(in_path).stem().string() + ".enhanced.wav";
    for (const std::string& w : written) {
      if (w == name) {
        throw DataError("two inputs map to the same output name: " + name);
      }
    }
    const Waveform noisy = read_wav(in_path);
    const Waveform enhanced = enhancer.enhance(noisy);
    write_wav(stage.file(name), enhanced);
    written.push_back(name);
  }
  stage.commit();
  std::cout << "enhance: wrote " << written.size() << " files -> " << out
            << "\n";
  return 0;
}

int cmd_evaluate(const RunConfig& cfg, const std::string& checkpoint,
                 const std::string& split, const std::string& out) {
  const Manifest manifest =
      load_manifest((fs::path(cfg.data_dir) / "manifest.csv").string());
  const std::vector<Utterance> utts = load_split(cfg.data_dir, split);
  std::unique_ptr<Enhancer> enhancer;
  if (!checkpoint.empty()) enhancer = std::make_unique<Enhancer>(checkpoint);

  std::vector<ScoreRow> rows;
  for (const Utterance& u : utts) {
    const Waveform scored = enhancer ? enhancer->enhance(u.noisy) : u.noisy;
    for (const std::string& m : cfg.metrics) {
      const MetricScore sc = compute_metric(m, scored, u.clean);
      rows.push_back({u.id, m, sc.raw, sc.normalized});
    }
  }

  const EvalSummary summary = summarize_scores(rows, manifest);
  std::string head;
  head += "split = " + split + "\n";
  head += "seed = " + std::to_string(cfg.seed) + "\n";
  head += "config_hash = " + config_hash(cfg) + "\n";
  head += "checkpoint = " +
          (checkpoint.empty() ? std::string("(none: noisy mixtures)")
                              : checkpoint) +
          "\n";
  head += "deviations = none\n\n";
  const std::string table = format_summary(summary);

  StageDir stage(out);
  save_scores(rows, stage.file("scores.csv"));
  write_text_file(stage.file("report.txt"), head + table);
  std::string csv = "metric,snr_db,count,mean_raw,mean_normalized\n";
  for (const std::string& m : summary.metrics) {
    for (const EvalSummary::Group& g : summary.per_snr.at(m)) {
      csv += m + "," + fmt_short(g.snr_db) + "," + std::to_string(g.count) +
             "," + fmt17(g.mean_raw) + "," + fmt17(g.mean_normalized) + "\n";
    }
    const EvalSummary::Group& o = summary.overall.at(m);
    csv += m + ",all," + std::to_string(o.count) + "," + fmt17(o.mean_raw) +
           "," + fmt17(o.mean_normalized) + "\n";
  }
  write_text_file(stage.file("report.csv"), csv);
  write_text_file(stage.file("config.txt"), echo_config(cfg));
  stage.commit();
  std::cout << head << table;
  std::cout << "evaluate: report directory " << out << "\n";
  return 0;
}

int cmd_assign_score(const RunConfig& cfg, const std::string& out) {
  if (cfg.metrics.size() != 1) {
    throw ConfigError("assign-score trains against a single metric; got " +
                      std::to_string(cfg.metrics.size()));
  }
  if (cfg.mode != "metricgan") {
    throw ConfigError("assign-score requires mode = metricgan");
  }
  if (cfg.mu <= 0.0) {
    throw ConfigError(
        "assign-score requires mu > 0 (the mask-uniformity penalty is what "
        "makes intermediate targets attainable)");
  }

  const std::vector<Utterance> train = load_split(cfg.data_dir, "train");
  const std::vector<Utterance> val = load_split(cfg.data_dir, "val");

  StageDir stage(out);
  std::string csv = "assigned_s,achieved_q,iterations_to_target,converged\n";
  std::vector<double> xs, ys;
  for (double s : cfg.target_grid) {
    RunConfig sub = cfg;
    sub.targets = {s};
    const std::string sub_dir = stage.file("s_" + fmt_short(s));
    fs::create_directories(sub_dir);
    const TrainResult res = run_training(sub, train, val, sub_dir);
    const int64_t to_target =
        iterations_to_target(res.curve, cfg.metrics[0], s, 0.05);
    csv += fmt17(s) + "," + fmt17(res.final_val_scores[0]) + "," +
           std::to_string(to_target) + "," +
           (res.converged ? "yes" : "no") + "\n";
    xs.push_back(s);
    ys.push_back(res.final_val_scores[0]);
    std::cout << "assign-score: s = " << fmt_short(s) << " achieved "
              << fmt_short(res.final_val_scores[0]) << " after "
              << res.iterations << " iterations\n";
  }
  write_text_file(stage.file("assign_score.csv"), csv);
  write_svg_plot(stage.file("assign_score.svg"),
                 "achieved validation score vs assigned target",
                 "assigned target s", "achieved score",
                 {{"achieved", xs, ys}, {"assigned = achieved", xs, xs}});
  write_text_file(stage.file("config.txt"), echo_config(cfg));
  stage.commit();
  std::cout << "assign-score: run directory " << out << "\n";
  return 0;
}

int cmd_multimetric(const RunConfig& cfg, const std::string& out) {
  if (cfg.metrics.size() < 2) {
    throw ConfigError(
        "multimetric needs at least two metrics; use assign-score for a "
        "single metric");
  }
  if (cfg.mode != "metricgan") {
    throw ConfigError("multimetric requires mode = metricgan");
  }

  std::vector<Utterance> train = load_split(cfg.data_dir, "train");
  std::vector<Utterance> val = load_split(cfg.data_dir, "val");
  StageDir stage(out);
  const TrainResult res =
      run_training(cfg, std::move(train), std::move(val), stage.path());

  std::string csv = "metric,assigned_s,achieved_q,gap\n";
  for (size_t i = 0; i < cfg.metrics.size(); i++) {
    const double gap = std::abs(res.final_val_scores[i] - cfg.targets[i]);
    csv += cfg.metrics[i] + "," + fmt17(cfg.targets[i]) + "," +
           fmt17(res.final_val_scores[i]) + "," + fmt17(gap) + "\n";
  }
  write_text_file(stage.file("multimetric.csv"), csv);
  stage.commit();
  std::cout << train_summary(cfg, res);
  std::cout << "multimetric: "
            << (res.converged ? "converged" : "not converged") << " after "
            << res.iterations << " iterations -> " << out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// Argument plumbing
// ---------------------------------------------------------------------------

struct CommandArgs {
  std::string config_path;
  uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  std::string checkpoint;
  std::string split = "test";
  std::vector<std::string> inputs;
};

RunConfig effective_config(const CommandArgs& args) {
  RunConfig cfg;
  if (!args.config_path.empty()) {
    cfg = load_config(args.config_path);
  } else {
    validate_config(cfg);
  }
  if (args.seed_set) cfg.seed = args.seed;
  return cfg;
}

}  // namespace
}  // namespace mgf

int main(int argc, char** argv) {
  CLI::App app{
      "Speech enhancement workbench: a spectral mask generator trained "
      "against discriminators that regress black-box quality and "
      "intelligibility scores."};
  app.require_subcommand(1);

  mgf::CommandArgs args;

  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) {
      sub->add_option("--config", args.config_path,
                      "configuration file (defaults apply when omitted)");
      sub->add_option("--seed", args.seed, "override the config seed")
          ->each([&](const std::string&) { args.seed_set = true; });
    }
    sub->add_option("--out", args.out, "output directory")->required();
  };

  CLI::App* mix = app.add_subcommand(
      "mix", "render the synthetic corpus (manifest + noisy/clean WAVs)");
  add_common(mix, true);

  CLI::App* train = app.add_subcommand(
      "train", "train an enhancement model on a rendered corpus");
  add_common(train, true);

  CLI::App* enhance =
      app.add_subcommand("enhance", "run a trained model over WAV files");
  enhance->add_option("--checkpoint", args.checkpoint, "model checkpoint")
      ->required();
  add_common(enhance, false);
  enhance->add_option("inputs", args.inputs, "mono PCM16 input WAVs")
      ->required();

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "score a corpus split (noisy, or enhanced by a model)");
  add_common(evaluate, true);
  evaluate->add_option("--checkpoint", args.checkpoint,
                       "model checkpoint (omit to score noisy mixtures)");
  evaluate->add_option("--split", args.split,
                       "which split to score (default test)");

  CLI::App* assign = app.add_subcommand(
      "assign-score",
      "train one model per assigned target score and compare achieved "
      "scores");
  add_common(assign, true);

  CLI::App* multi = app.add_subcommand(
      "multimetric",
      "train one generator against several metric discriminators at once");
  add_common(multi, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;  // bad usage is a configuration error
  }

  try {
    if (mix->parsed()) return mgf::cmd_mix(mgf::effective_config(args), args.out);
    if (train->parsed()) {
      return mgf::cmd_train(mgf::effective_config(args), args.out);
    }
    if (enhance->parsed()) {
      return mgf::cmd_enhance(args.checkpoint, args.out, args.inputs);
    }
    if (evaluate->parsed()) {
      return mgf::cmd_evaluate(mgf::effective_config(args), args.checkpoint,
                               args.split, args.out);
    }
    if (assign->parsed()) {
      return mgf::cmd_assign_score(mgf::effective_config(args), args.out);
    }
    if (multi->parsed()) {
      return mgf::cmd_multimetric(mgf::effective_config(args), args.out);
    }
  } catch (const mgf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mgf::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const mgf::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
