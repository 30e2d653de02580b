// core/include/mgf/trainer.h

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

#ifndef MGF_TRAINER_H_
#define MGF_TRAINER_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mgf/checkpoint.h"
#include "mgf/config.h"
#include "mgf/corpus.h"
#include "mgf/dsp.h"
#include "mgf/net.h"

namespace mgf {

// Adversarial training of the mask generator against score-regressing
// discriminators. Three modes:
//
//   metricgan  D regresses the normalized black-box score of the signal it
//              is shown, conditioned on the clean reference; G drives D's
//              estimate of the enhanced signal to the assigned target
//              score(s). With several metrics, each batch trains G through
//              the discriminator whose metric currently misses its target
//              the most, then refreshes every discriminator.
//   cgan       classic least-squares real/fake objective conditioned on the
//              noisy input, plus an L1 term pulling the enhanced magnitude
//              toward the clean magnitude.
//   irm        no discriminator; G regresses the ideal ratio mask in L1.
//
// All loops are serial and seeded: two runs from the same config and data
// produce bit-identical parameters, curves, and checkpoints.

struct CurvePoint {
  int64_t iteration = 0;  // generator updates completed
  std::string split;      // train | val
  std::string metric;
  double mean_normalized_score = 0.0;
  double loss_g = 0.0;
  double loss_d = 0.0;
};

/// What a scoring hook sees for one utterance. Default hooks compute the
/// configured metric on the resynthesized waveform; tests can score the
/// mask or spectrogram directly.
struct ScoringView {
  const Tensor& mask;
  const Spectrogram& enhanced_spec;
  const Waveform& enhanced;
  const Waveform& clean;
  const Waveform& noisy;
};

/// Returns the normalized score in [0, 1].
using ScoringHook = std::function<double(const ScoringView&)>;

struct TrainResult {
  std::vector<CurvePoint> curve;
  int64_t iterations = 0;
  // Validation state at the end of training:
  std::vector<double> final_val_scores;  // mean normalized, per metric
  bool converged = false;  // every metric within 0.1 of its target
  // Best validation point seen (smallest total distance to targets):
  int64_t best_iteration = -1;
  double best_val_distance = 0.0;
};

/// Writes curve rows as CSV with header
/// iteration,split,metric,mean_normalized_score,loss_g,loss_d.
void save_curve(const std::vector<CurvePoint>& curve,
                const std::string& path);
std::vector<CurvePoint> load_curve(const std::string& path);

class Trainer {
 public:
  /// Prepares spectrogram caches and normalization statistics (from the
  /// training split). Networks start from seeded initialization.
  Trainer(const RunConfig& cfg, std::vector<Utterance> train_data,
          std::vector<Utterance> val_data);

  /// Replaces the default metric hook for metric index `i`.
  void set_scoring_hook(size_t i, ScoringHook hook);

  /// Runs cfg.epochs epochs, capped at cfg.max_iters generator updates if
  /// nonzero. Can be called once per Trainer.
  TrainResult run();

  /// Serializes current networks, optimizer state, normalization
  /// statistics, RNG state, and the config echo.
  Checkpoint make_checkpoint() const;

  /// The retained best-validation checkpoint (valid after run(); falls back
  /// to the current state if validation never ran).
  const Checkpoint& best_checkpoint() const;

  /// Restores from make_checkpoint() output; config echo must match.
  void restore(const Checkpoint& ck);

  GeneratorNet& generator() { return *gen_; }
  const FreqStats& stats() const { return stats_; }
  size_t num_discriminators() const { return discs_.size(); }
  DiscriminatorNet& discriminator(size_t i) { return *discs_[i]; }
  ParamSet& g_params() { return g_params_; }
  ParamSet& d_params(size_t i) { return *d_params_[i]; }
  int64_t iteration() const { return iteration_; }

  /// Picks the metric whose mean score is farthest from its target (lowest
  /// index on ties). Exposed for direct testing.
  static size_t pick_metric(const std::vector<double>& mean_scores,
                            const std::vector<double>& targets);

 private:
  // Only waveforms are held; spectral features are recomputed on use (they
  // are cheap next to the network passes, and caching them for a full-size
  // corpus would cost gigabytes).
  struct CachedUtt {
    std::string id;
    Waveform noisy;
    Waveform clean;
  };

  struct Scored {
    Tensor mask;
    Spectrogram enhanced_spec;
    Waveform enhanced;
    std::vector<double> q;  // per metric
  };

  double checked_score(size_t metric_index, const ScoringView& view);
  Scored enhance_and_score(const CachedUtt& u, bool want_scores);

  // One batch phase each; `batch` holds indices into train_. Returns the
  // mean loss for the curve.
  double d_phase(const std::vector<size_t>& batch, size_t disc_index,
                 std::vector<double>* batch_scores);
  double g_phase(const std::vector<size_t>& batch, size_t disc_index,
                 double* out_score);

  // Full validation pass; appends curve rows at the current iteration and
  // maintains the best checkpoint.
  void validate();

  RunConfig cfg_;
  Rng rng_;
  FreqStats stats_;
  std::vector<CachedUtt> train_;
  std::vector<CachedUtt> val_;

  ParamSet g_params_;
  std::unique_ptr<GeneratorNet> gen_;
  std::vector<std::unique_ptr<ParamSet>> d_params_;
  std::vector<std::unique_ptr<DiscriminatorNet>> discs_;
  std::vector<ScoringHook> hooks_;

  int64_t iteration_ = 0;
  std::vector<CurvePoint> curve_;
  // Epoch-running train statistics for curve rows.
  std::vector<double> epoch_score_sum_;
  double epoch_loss_g_sum_ = 0.0;
  double epoch_loss_d_sum_ = 0.0;
  int64_t epoch_batches_ = 0;

  Checkpoint best_;
  bool have_best_ = false;
  double best_distance_ = 0.0;
  int64_t best_iteration_ = -1;
  std::vector<double> last_val_scores_;
  bool ran_ = false;
};

}  // namespace mgf

#endif  // MGF_TRAINER_H_
