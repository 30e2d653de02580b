// core/include/mgf/corpus.h

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

#ifndef MGF_CORPUS_H_
#define MGF_CORPUS_H_

#include <string>
#include <vector>

#include "mgf/config.h"
#include "mgf/rng.h"
#include "mgf/wave.h"

namespace mgf {

// Fully synthetic corpus: speech-like clean utterances mixed with noise from
// a catalog of parametric families at prescribed SNRs. Everything is
// reproducible from (seed, utterance_id) alone, so a manifest row can be
// re-rendered at any time without the WAV files.

// ---------------------------------------------------------------------------
// Clean speech
// ---------------------------------------------------------------------------

/// Speech-like signal: a sequence of voiced segments (pitched harmonic
/// stacks with formant-shaped spectra and glides), unvoiced fricative-like
/// bursts, and short silences (roughly 10-20% of the duration). Starts
/// voiced, total RMS normalized to 0.1.
Waveform synth_clean(double duration_s, int sample_rate, Rng* rng);

// ---------------------------------------------------------------------------
// Noise catalog
// ---------------------------------------------------------------------------

/// Parametric variants per family; "white.v0" ... "white.v3" etc. count as
/// distinct noise types for split-disjointness purposes.
constexpr int kNoiseVariants = 4;

/// All known family names (10 of them).
std::vector<std::string> noise_families();

/// All known type names: every family crossed with every variant.
std::vector<std::string> noise_catalog();

bool noise_type_known(const std::string& type);

/// Renders `length` samples of the named type, RMS-normalized to 1.
/// Throws DataError on an unknown type.
Waveform render_noise(const std::string& type, int length, int sample_rate,
                      Rng* rng);

// ---------------------------------------------------------------------------
// Mixing
// ---------------------------------------------------------------------------

struct MixResult {
  Waveform noisy;
  double clip_scale = 1.0;  // < 1 when the mixture had to be scaled to fit
};

/// noisy = clean + alpha * noise with alpha chosen so the clean-to-noise
/// power ratio equals snr_db exactly. If the mixture peak exceeds the PCM16
/// range the whole mixture is scaled down and the factor reported; callers
/// must apply the same factor to the clean reference.
MixResult mix_at_snr(const Waveform& clean, const Waveform& noise,
                     double snr_db);

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

struct CorpusRow {
  std::string utterance_id;
  std::string split;  // train | val | test
  int clean_index = 0;
  std::string noise_type;
  double snr_db = 0.0;
  double clip_scale = 1.0;  // filled in when the row is rendered
};

struct Manifest {
  uint64_t seed = 0;
  int sample_rate = 16000;
  double duration_s = 1.0;
  std::vector<CorpusRow> rows;

  std::vector<const CorpusRow*> split_rows(const std::string& split) const;
};

/// Expands the corpus plan into rows (split x clean index x noise type x
/// SNR, in that order). Validates that all noise types exist and that no
/// type appears in more than one split; throws DataError otherwise.
Manifest build_manifest(const RunConfig& cfg);

struct RenderedUtterance {
  Waveform clean;  // PCM16-grid speech, clip scale already applied
  Waveform noisy;
  double clip_scale = 1.0;
};

/// Deterministic re-render of one row. The clean stream depends only on
/// (seed, split, clean_index) so rows sharing a clean index share the
/// speech; the noise stream is per-row.
RenderedUtterance render_utterance(const Manifest& m, const CorpusRow& row);

/// CSV with header utterance_id,split,clean_index,noise_type,snr_db,
/// clip_scale plus leading comment lines carrying seed/sample_rate/duration.
void save_manifest(const Manifest& m, const std::string& path);
Manifest load_manifest(const std::string& path);

// ---------------------------------------------------------------------------
// Materialized data for training / evaluation
// ---------------------------------------------------------------------------

struct Utterance {
  std::string id;
  Waveform noisy;
  Waveform clean;
};

/// Renders every row of one split in memory, in manifest order.
std::vector<Utterance> render_split(const Manifest& m,
                                    const std::string& split);

/// Reads a split back from a directory produced by the mix command
/// (expects <dir>/manifest.csv and <dir>/wav/<id>.{noisy,clean}.wav).
std::vector<Utterance> load_split(const std::string& dir,
                                  const std::string& split);

}  // namespace mgf

#endif  // MGF_CORPUS_H_
