// core/src/trainer.cc

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

#include "mgf/trainer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mgf/errors.h"
#include "mgf/losses.h"
#include "mgf/metrics.h"
#include "mgf/optim.h"

namespace mgf {

namespace {

// Spectral views of one utterance, recomputed on use: caching them for a
// full-size corpus would cost gigabytes, and they are cheap next to the
// network passes.
struct Features {
  Spectrogram noisy_spec;
  Tensor norm_noisy;
  Tensor norm_clean;
  Tensor clean_mag;
  Tensor irm;
};

}  // namespace

void save_curve(const std::vector<CurvePoint>& curve,
                const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw DataError("cannot write curve file: " + path);
  os << "iteration,split,metric,mean_normalized_score,loss_g,loss_d\n";
  char buf[64];
  for (const CurvePoint& p : curve) {
    os << p.iteration << "," << p.split << "," << p.metric << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", p.mean_normalized_score);
    os << buf << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", p.loss_g);
    os << buf << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", p.loss_d);
    os << buf << "\n";
  }
  if (!os) throw DataError("short write on curve file: " + path);
}

std::vector<CurvePoint> load_curve(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open curve file: " + path);
  std::string line;
  if (!std::getline(is, line) ||
      line != "iteration,split,metric,mean_normalized_score,loss_g,loss_d") {
    throw DataError("unexpected curve header in " + path);
  }
  std::vector<CurvePoint> out;
  int lineno = 1;
  while (std::getline(is, line)) {
    lineno++;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": expected 6 fields");
    }
    CurvePoint p;
    try {
      p.iteration = std::stoll(fields[0]);
      p.mean_normalized_score = std::stod(fields[3]);
      p.loss_g = std::stod(fields[4]);
      p.loss_d = std::stod(fields[5]);
    } catch (const std::exception&) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": malformed numeric field");
    }
    p.split = fields[1];
    p.metric = fields[2];
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

Trainer::Trainer(const RunConfig& cfg, std::vector<Utterance> train_data,
                 std::vector<Utterance> val_data)
    : cfg_(cfg), rng_(cfg.seed) {
  if (train_data.empty()) throw DataError("training split is empty");
  if (val_data.empty()) throw DataError("validation split is empty");

  // Normalization statistics come from the training split only: both the
  // noisy and the clean sides, since the discriminator sees both.
  FreqStatsAccumulator acc;
  for (const Utterance& u : train_data) {
    acc.add(stft(u.noisy, cfg_.stft()));
    acc.add(stft(u.clean, cfg_.stft()));
  }
  stats_ = acc.finalize();

  for (Utterance& u : train_data) {
    train_.push_back({std::move(u.id), std::move(u.noisy),
                      std::move(u.clean)});
  }
  for (Utterance& u : val_data) {
    val_.push_back({std::move(u.id), std::move(u.noisy), std::move(u.clean)});
  }

  GeneratorConfig gcfg;
  gcfg.num_bins = cfg_.num_bins();
  gcfg.context = cfg_.context;
  gcfg.hidden = cfg_.hidden;
  gen_ = std::make_unique<GeneratorNet>(gcfg, &g_params_);

  const size_t n_disc = cfg_.mode == "irm" ? 0 : cfg_.metrics.size();
  const size_t n_make = cfg_.mode == "cgan" ? 1 : n_disc;
  for (size_t i = 0; i < n_make; i++) {
    DiscriminatorConfig dcfg;
    dcfg.num_bins = cfg_.num_bins();
    dcfg.channels = cfg_.channels;
    dcfg.kernels = cfg_.kernels;
    dcfg.dense = cfg_.dense;
    auto ps = std::make_unique<ParamSet>();
    discs_.push_back(std::make_unique<DiscriminatorNet>(
        dcfg, ps.get(), "d" + std::to_string(i) + "."));
    d_params_.push_back(std::move(ps));
  }

  // Seeded initialization, one derived stream per network so architecture
  // tweaks to one net do not shift the other's draws.
  Rng ginit = rng_.derive("init/g");
  g_params_.init(&ginit);
  for (size_t i = 0; i < d_params_.size(); i++) {
    Rng dinit = rng_.derive("init/d" + std::to_string(i));
    d_params_[i]->init(&dinit);
  }
  for (auto& d : discs_) d->refresh_sigma();

  // Default scoring: the configured metric on the resynthesized waveform.
  for (const std::string& name : cfg_.metrics) {
    hooks_.push_back([name](const ScoringView& v) {
      return compute_metric(name, v.enhanced, v.clean).normalized;
    });
  }
  epoch_score_sum_.assign(cfg_.metrics.size(), 0.0);
}

void Trainer::set_scoring_hook(size_t i, ScoringHook hook) {
  hooks_.at(i) = std::move(hook);
}

size_t Trainer::pick_metric(const std::vector<double>& mean_scores,
                            const std::vector<double>& targets) {
  if (mean_scores.empty() || mean_scores.size() != targets.size()) {
    throw std::logic_error("pick_metric: size mismatch");
  }
  size_t best = 0;
  double best_gap = std::abs(mean_scores[0] - targets[0]);
  for (size_t n = 1; n < mean_scores.size(); n++) {
    const double gap = std::abs(mean_scores[n] - targets[n]);
    if (gap > best_gap) {
      best = n;
      best_gap = gap;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Per-utterance plumbing
// ---------------------------------------------------------------------------

namespace {

Features make_features_impl(const Waveform& noisy, const Waveform& clean,
                            const RunConfig& cfg, const FreqStats& stats) {
  Features f;
  f.noisy_spec = stft(noisy, cfg.stft());
  Spectrogram clean_spec = stft(clean, cfg.stft());
  f.norm_noisy = normalize_spectrogram(f.noisy_spec, stats);
  f.norm_clean = normalize_spectrogram(clean_spec, stats);
  f.clean_mag = clean_spec.mag;
  f.irm = Tensor(f.clean_mag.shape());
  for (size_t i = 0; i < f.irm.size(); i++) {
    const double den = f.noisy_spec.mag[i];
    const double ratio = den > 1e-12 ? f.clean_mag[i] / den : 1.0;
    f.irm[i] = std::clamp(ratio, 0.0, 1.0);
  }
  return f;
}

}  // namespace

double Trainer::checked_score(size_t metric_index, const ScoringView& view) {
  const double q = hooks_.at(metric_index)(view);
  if (!(q >= 0.0 && q <= 1.0)) {
    throw NumericError("scoring hook for metric '" +
                       cfg_.metrics[metric_index] +
                       "' returned a value outside [0, 1]");
  }
  return q;
}

Trainer::Scored Trainer::enhance_and_score(const CachedUtt& u,
                                           bool want_scores) {
  const Features f =
      make_features_impl(u.noisy, u.clean, cfg_, stats_);
  Scored s;
  s.mask = gen_->forward(f.norm_noisy);
  s.enhanced_spec = apply_mask(f.noisy_spec, {s.mask}, cfg_.mask_floor);
  s.enhanced = istft(s.enhanced_spec);
  if (want_scores) {
    const ScoringView view{s.mask, s.enhanced_spec, s.enhanced, u.clean,
                           u.noisy};
    for (size_t n = 0; n < hooks_.size(); n++) {
      s.q.push_back(checked_score(n, view));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Discriminator phase
// ---------------------------------------------------------------------------

double Trainer::d_phase(const std::vector<size_t>& batch, size_t disc_index,
                        std::vector<double>* batch_scores) {
  DiscriminatorNet& disc = *discs_[disc_index];
  ParamSet& dps = *d_params_[disc_index];
  dps.zero_grads();
  disc.power_iterate();
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  double loss_sum = 0.0;
  if (batch_scores) batch_scores->assign(hooks_.size(), 0.0);

  for (size_t idx : batch) {
    const CachedUtt& u = train_[idx];
    const Features f = make_features_impl(u.noisy, u.clean, cfg_, stats_);
    Tensor mask = gen_->forward(f.norm_noisy);
    Spectrogram enh_spec = apply_mask(f.noisy_spec, {mask}, cfg_.mask_floor);
    Waveform enh = istft(enh_spec);
    const ScoringView view{mask, enh_spec, enh, u.clean, u.noisy};
    std::vector<double> q(hooks_.size());
    for (size_t n = 0; n < hooks_.size(); n++) {
      q[n] = checked_score(n, view);
      if (batch_scores) (*batch_scores)[n] += q[n] * inv_b;
    }
    const Tensor norm_enh = normalize_spectrogram(enh_spec, stats_);

    if (cfg_.mode == "cgan") {
      const double d_fake = disc.forward(norm_enh, f.norm_noisy);
      disc.backward(2.0 * d_fake * inv_b);
      const double d_real = disc.forward(f.norm_clean, f.norm_noisy);
      disc.backward(2.0 * (d_real - 1.0) * inv_b);
      loss_sum += cgan_d_loss(d_real, d_fake).value * inv_b;
    } else {
      // Score regression: the surrogate learns the metric's judgment of
      // both the enhanced signal and the clean signal itself (whose
      // normalized score is 1 by definition).
      const double qn = q[disc_index];
      const double d_fake = disc.forward(norm_enh, f.norm_clean);
      disc.backward(2.0 * (d_fake - qn) * inv_b);
      const double d_clean = disc.forward(f.norm_clean, f.norm_clean);
      disc.backward(2.0 * (d_clean - 1.0) * inv_b);
      loss_sum += metric_d_loss(d_clean, d_fake, qn).value * inv_b;
    }
  }
  if (!std::isfinite(loss_sum)) {
    throw NumericError("discriminator loss diverged at iteration " +
                       std::to_string(iteration_));
  }
  adam_step(&dps, {cfg_.lr_d});
  return loss_sum;
}

// ---------------------------------------------------------------------------
// Generator phase
// ---------------------------------------------------------------------------

double Trainer::g_phase(const std::vector<size_t>& batch, size_t disc_index,
                        double* out_score) {
  g_params_.zero_grads();
  for (auto& d : discs_) d->refresh_sigma();
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  double loss_sum = 0.0;
  double score_sum = 0.0;

  for (size_t idx : batch) {
    const CachedUtt& u = train_[idx];
    const Features f = make_features_impl(u.noisy, u.clean, cfg_, stats_);
    Tensor mask = gen_->forward(f.norm_noisy);
    const int frames = mask.dim(0);
    const int bins = mask.dim(1);

    if (cfg_.mode == "irm") {
      TensorLoss l1 = l1_loss(mask, f.irm);
      l1.grad *= inv_b;
      gen_->backward(l1.grad);
      loss_sum += l1.value * inv_b;
      if (out_score) {
        Spectrogram enh_spec =
            apply_mask(f.noisy_spec, {mask}, cfg_.mask_floor);
        Waveform enh = istft(enh_spec);
        const ScoringView view{mask, enh_spec, enh, u.clean, u.noisy};
        score_sum += checked_score(0, view) * inv_b;
      }
      continue;
    }

    Spectrogram enh_spec = apply_mask(f.noisy_spec, {mask}, cfg_.mask_floor);
    const Tensor norm_enh = normalize_spectrogram(enh_spec, stats_);
    DiscriminatorNet& disc = *discs_[disc_index];

    double utt_loss = 0.0;
    double d_grad = 0.0;
    const Tensor* l1_grad = nullptr;
    TensorLoss l1;
    if (cfg_.mode == "cgan") {
      const double d_fake = disc.forward(norm_enh, f.norm_noisy);
      const ScalarLoss adv = cgan_g_adv_loss(d_fake, cfg_.lambda);
      l1 = l1_loss(enh_spec.mag, f.clean_mag);
      utt_loss = adv.value + l1.value;
      d_grad = adv.grad;
      l1_grad = &l1.grad;
    } else {
      const double d_fake = disc.forward(norm_enh, f.norm_clean);
      const ScalarLoss sl =
          metric_g_score_loss(d_fake, cfg_.targets[disc_index]);
      utt_loss = sl.value;
      d_grad = sl.grad;
    }

    // Backprop through the discriminator to its evaluated channel, then
    // through the feature normalization and the mask application.
    const Tensor in_grad = disc.backward(d_grad * inv_b);
    Tensor grad_mask({frames, bins});
    for (int t = 0; t < frames; t++) {
      for (int j = 0; j < bins; j++) {
        const double mag = enh_spec.mag.at(t, j);
        double g_mag =
            in_grad.at(0, t, j) / ((1.0 + mag) * stats_.stddev[j]);
        if (l1_grad) g_mag += l1_grad->at(t, j) * inv_b;
        // enh_mag = max(mask, floor) * noisy_mag: no gradient below floor.
        if (mask.at(t, j) > cfg_.mask_floor) {
          grad_mask.at(t, j) = g_mag * f.noisy_spec.mag.at(t, j);
        }
      }
    }
    if (cfg_.mu > 0.0) {
      TensorLoss up = mask_uniform_penalty(mask, cfg_.mu);
      up.grad *= inv_b;
      grad_mask += up.grad;
      utt_loss += up.value;
    }
    gen_->backward(grad_mask);
    loss_sum += utt_loss * inv_b;

    if (out_score) {
      Waveform enh = istft(enh_spec);
      const ScoringView view{mask, enh_spec, enh, u.clean, u.noisy};
      score_sum += checked_score(0, view) * inv_b;
    }
  }
  if (!std::isfinite(loss_sum)) {
    throw NumericError("generator loss diverged at iteration " +
                       std::to_string(iteration_));
  }
  adam_step(&g_params_, {cfg_.lr_g});
  if (out_score) *out_score = score_sum;
  return loss_sum;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

void Trainer::validate() {
  for (auto& d : discs_) d->refresh_sigma();
  const size_t n_metrics = cfg_.metrics.size();
  std::vector<double> score_sum(n_metrics, 0.0);
  std::vector<double> loss_g_sum(n_metrics, 0.0);
  std::vector<double> loss_d_sum(n_metrics, 0.0);
  const double inv_n = 1.0 / static_cast<double>(val_.size());

  for (const CachedUtt& u : val_) {
    const Features f = make_features_impl(u.noisy, u.clean, cfg_, stats_);
    Tensor mask = gen_->forward(f.norm_noisy);
    Spectrogram enh_spec = apply_mask(f.noisy_spec, {mask}, cfg_.mask_floor);
    Waveform enh = istft(enh_spec);
    const ScoringView view{mask, enh_spec, enh, u.clean, u.noisy};
    const Tensor norm_enh = normalize_spectrogram(enh_spec, stats_);
    for (size_t n = 0; n < n_metrics; n++) {
      const double q = checked_score(n, view);
      score_sum[n] += q * inv_n;
      if (cfg_.mode == "metricgan") {
        DiscriminatorNet& disc = *discs_[n];
        const double d_fake = disc.forward(norm_enh, f.norm_clean);
        loss_g_sum[n] +=
            metric_g_score_loss(d_fake, cfg_.targets[n]).value * inv_n;
        const double d_clean = disc.forward(f.norm_clean, f.norm_clean);
        loss_d_sum[n] += metric_d_loss(d_clean, d_fake, q).value * inv_n;
      } else if (cfg_.mode == "cgan") {
        DiscriminatorNet& disc = *discs_[0];
        const double d_fake = disc.forward(norm_enh, f.norm_noisy);
        loss_g_sum[n] += (cgan_g_adv_loss(d_fake, cfg_.lambda).value +
                          l1_loss(enh_spec.mag, f.clean_mag).value) *
                         inv_n;
        const double d_real = disc.forward(f.norm_clean, f.norm_noisy);
        loss_d_sum[n] += cgan_d_loss(d_real, d_fake).value * inv_n;
      } else {
        loss_g_sum[n] += l1_loss(mask, f.irm).value * inv_n;
      }
    }
  }

  // Curve rows: running train means for this epoch (when any batch ran),
  // then the fresh validation means.
  for (size_t n = 0; n < n_metrics; n++) {
    if (epoch_batches_ > 0) {
      CurvePoint p;
      p.iteration = iteration_;
      p.split = "train";
      p.metric = cfg_.metrics[n];
      p.mean_normalized_score =
          epoch_score_sum_[n] / static_cast<double>(epoch_batches_);
      p.loss_g = epoch_loss_g_sum_ / static_cast<double>(epoch_batches_);
      p.loss_d = epoch_loss_d_sum_ / static_cast<double>(epoch_batches_);
      curve_.push_back(p);
    }
    CurvePoint p;
    p.iteration = iteration_;
    p.split = "val";
    p.metric = cfg_.metrics[n];
    p.mean_normalized_score = score_sum[n];
    p.loss_g = loss_g_sum[n];
    p.loss_d = loss_d_sum[n];
    curve_.push_back(p);
  }

  last_val_scores_ = score_sum;
  double distance = 0.0;
  for (size_t n = 0; n < n_metrics; n++) {
    distance += std::abs(score_sum[n] - cfg_.targets[n]);
  }
  if (!have_best_ || distance < best_distance_) {
    have_best_ = true;
    best_distance_ = distance;
    best_iteration_ = iteration_;
    best_ = make_checkpoint();
  }
}

// ---------------------------------------------------------------------------
// Main loop
// ---------------------------------------------------------------------------

TrainResult Trainer::run() {
  if (ran_) throw std::logic_error("Trainer::run called twice");
  ran_ = true;

  const size_t n_metrics = cfg_.metrics.size();
  validate();  // iteration 0 baseline

  bool stop = false;
  for (int epoch = 0; epoch < cfg_.epochs && !stop; epoch++) {
    std::vector<size_t> order(train_.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = i;
    for (size_t i = order.size(); i > 1; i--) {
      std::swap(order[i - 1], order[rng_.uniform_int(i)]);
    }
    epoch_score_sum_.assign(n_metrics, 0.0);
    epoch_loss_g_sum_ = 0.0;
    epoch_loss_d_sum_ = 0.0;
    epoch_batches_ = 0;

    const size_t bs =
        std::min<size_t>(static_cast<size_t>(cfg_.batch), train_.size());
    for (size_t begin = 0; begin < order.size() && !stop; begin += bs) {
      const size_t end = std::min(begin + bs, order.size());
      const std::vector<size_t> batch(order.begin() + begin,
                                      order.begin() + end);

      double loss_d = 0.0;
      double loss_g = 0.0;
      std::vector<double> batch_scores(n_metrics, 0.0);

      if (cfg_.mode == "metricgan" && n_metrics > 1) {
        // Multi-metric schedule: measure all metrics, train the generator
        // through the farthest-from-target discriminator, then refresh
        // every discriminator on the updated generator.
        const double inv_b = 1.0 / static_cast<double>(batch.size());
        for (size_t idx : batch) {
          Scored s = enhance_and_score(train_[idx], true);
          for (size_t n = 0; n < n_metrics; n++) {
            batch_scores[n] += s.q[n] * inv_b;
          }
        }
        const size_t pick = pick_metric(batch_scores, cfg_.targets);
        for (int k = 0; k < cfg_.g_steps; k++) {
          loss_g = g_phase(batch, pick, nullptr);
        }
        for (size_t n = 0; n < n_metrics; n++) {
          double d = 0.0;
          for (int k = 0; k < cfg_.d_steps; k++) {
            d = d_phase(batch, n, nullptr);
          }
          loss_d += d / static_cast<double>(n_metrics);
        }
      } else if (cfg_.mode == "irm") {
        double score = 0.0;
        loss_g = g_phase(batch, 0, &score);
        batch_scores[0] = score;
      } else {
        // Single-metric adversarial training: discriminator first, then
        // generator. Scores reported from the discriminator pass (the
        // generator as the discriminator saw it).
        for (int k = 0; k < cfg_.d_steps; k++) {
          loss_d = d_phase(batch, 0, k == 0 ? &batch_scores : nullptr);
        }
        for (int k = 0; k < cfg_.g_steps; k++) {
          loss_g = g_phase(batch, 0, nullptr);
        }
      }

      iteration_++;
      epoch_batches_++;
      for (size_t n = 0; n < n_metrics; n++) {
        epoch_score_sum_[n] += batch_scores[n];
      }
      epoch_loss_g_sum_ += loss_g;
      epoch_loss_d_sum_ += loss_d;

      if (cfg_.eval_every > 0 && iteration_ % cfg_.eval_every == 0) {
        validate();
      }
      if (cfg_.max_iters > 0 && iteration_ >= cfg_.max_iters) {
        stop = true;
      }
    }
    validate();  // epoch boundary
  }
  if (cfg_.epochs == 0) {
    // Nothing trained; the iteration-0 validation above already recorded
    // the baseline and retained the initial state as "best".
  }

  TrainResult res;
  res.curve = curve_;
  res.iterations = iteration_;
  res.final_val_scores = last_val_scores_;
  res.best_iteration = best_iteration_;
  res.best_val_distance = best_distance_;
  res.converged = true;
  for (size_t n = 0; n < n_metrics; n++) {
    if (std::abs(last_val_scores_[n] - cfg_.targets[n]) > 0.1) {
      res.converged = false;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

Checkpoint Trainer::make_checkpoint() const {
  Checkpoint ck;
  ck.set_meta("config", echo_config(cfg_));
  ck.set_counter("iteration", static_cast<uint64_t>(iteration_));
  const auto state = rng_.state();
  for (int i = 0; i < 4; i++) {
    ck.set_counter("rng.s" + std::to_string(i), state[i]);
  }
  ck.add_tensor("stats.mean", stats_.mean);
  ck.add_tensor("stats.std", stats_.stddev);
  checkpoint_from_params(g_params_, "g", &ck);
  for (size_t i = 0; i < d_params_.size(); i++) {
    checkpoint_from_params(*d_params_[i], "d" + std::to_string(i), &ck);
  }
  return ck;
}

const Checkpoint& Trainer::best_checkpoint() const {
  if (!have_best_) {
    throw std::logic_error("no best checkpoint retained yet");
  }
  return best_;
}

void Trainer::restore(const Checkpoint& ck) {
  if (ck.meta_value("config") != echo_config(cfg_)) {
    throw DataError(
        "checkpoint was written under a different configuration; restore "
        "requires an identical training plan");
  }
  params_from_checkpoint(ck, "g", &g_params_);
  for (size_t i = 0; i < d_params_.size(); i++) {
    params_from_checkpoint(ck, "d" + std::to_string(i), d_params_[i].get());
  }
  stats_.mean = ck.tensor("stats.mean");
  stats_.stddev = ck.tensor("stats.std");
  iteration_ = static_cast<int64_t>(ck.counter_value("iteration"));
  std::array<uint64_t, 4> state;
  for (int i = 0; i < 4; i++) {
    state[i] = ck.counter_value("rng.s" + std::to_string(i));
  }
  rng_.set_state(state);
  for (auto& d : discs_) d->refresh_sigma();
}

}  // namespace mgf
