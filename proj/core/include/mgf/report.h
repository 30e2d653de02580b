// core/include/mgf/report.h

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

#ifndef MGF_REPORT_H_
#define MGF_REPORT_H_

#include <map>
#include <string>
#include <vector>

#include "mgf/corpus.h"

namespace mgf {

/// One metric evaluation of one utterance.
struct ScoreRow {
  std::string utterance_id;
  std::string metric;
  double raw = 0.0;
  double normalized = 0.0;
};

/// CSV with header utterance_id,metric,raw,normalized (%.17g values, so a
/// round trip is exact).
void save_scores(const std::vector<ScoreRow>& rows, const std::string& path);
std::vector<ScoreRow> load_scores(const std::string& path);

/// Per-metric, per-SNR means plus the overall average.
struct EvalSummary {
  struct Group {
    double snr_db = 0.0;
    int count = 0;
    double mean_raw = 0.0;
    double mean_normalized = 0.0;
  };
  std::vector<std::string> metrics;                 // in first-seen order
  std::map<std::string, std::vector<Group>> per_snr;  // ascending SNR
  std::map<std::string, Group> overall;
};

/// Groups rows by their manifest SNR. Every utterance_id must resolve to a
/// manifest row; throws DataError otherwise.
EvalSummary summarize_scores(const std::vector<ScoreRow>& rows,
                             const Manifest& manifest);

/// Fixed-width text table, one block per metric, "Avg" row last.
std::string format_summary(const EvalSummary& summary);

}  // namespace mgf

#endif  // MGF_REPORT_H_
