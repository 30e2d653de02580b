// core/src/report.cc

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

#include "mgf/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mgf/errors.h"

namespace mgf {

void save_scores(const std::vector<ScoreRow>& rows, const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw DataError("cannot write score file: " + path);
  os << "utterance_id,metric,raw,normalized\n";
  char buf[64];
  for (const ScoreRow& r : rows) {
    os << r.utterance_id << "," << r.metric << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", r.raw);
    os << buf << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", r.normalized);
    os << buf << "\n";
  }
  if (!os) throw DataError("short write on score file: " + path);
}

std::vector<ScoreRow> load_scores(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open score file: " + path);
  std::string line;
  if (!std::getline(is, line) ||
      line != "utterance_id,metric,raw,normalized") {
    throw DataError("unexpected score file header in " + path);
  }
  std::vector<ScoreRow> out;
  int lineno = 1;
  while (std::getline(is, line)) {
    lineno++;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 4) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": expected 4 fields");
    }
    ScoreRow r;
    r.utterance_id = fields[0];
    r.metric = fields[1];
    try {
      r.raw = std::stod(fields[2]);
      r.normalized = std::stod(fields[3]);
    } catch (const std::exception&) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": malformed numeric field");
    }
    out.push_back(std::move(r));
  }
  return out;
}

EvalSummary summarize_scores(const std::vector<ScoreRow>& rows,
                             const Manifest& manifest) {
  std::map<std::string, double> snr_of;
  for (const CorpusRow& r : manifest.rows) {
    snr_of[r.utterance_id] = r.snr_db;
  }
  // metric -> snr -> (count, raw sum, normalized sum)
  struct Acc {
    int count = 0;
    double raw = 0.0;
    double norm = 0.0;
  };
  EvalSummary s;
  std::map<std::string, std::map<double, Acc>> acc;
  std::map<std::string, Acc> total;
  for (const ScoreRow& r : rows) {
    const auto it = snr_of.find(r.utterance_id);
    if (it == snr_of.end()) {
      throw DataError("score row for unknown utterance: " + r.utterance_id);
    }
    if (std::find(s.metrics.begin(), s.metrics.end(), r.metric) ==
        s.metrics.end()) {
      s.metrics.push_back(r.metric);
    }
    Acc& a = acc[r.metric][it->second];
    a.count++;
    a.raw += r.raw;
    a.norm += r.normalized;
    Acc& t = total[r.metric];
    t.count++;
    t.raw += r.raw;
    t.norm += r.normalized;
  }
  for (const std::string& m : s.metrics) {
    for (const auto& [snr, a] : acc[m]) {  // std::map: ascending SNR
      EvalSummary::Group g;
      g.snr_db = snr;
      g.count = a.count;
      g.mean_raw = a.raw / a.count;
      g.mean_normalized = a.norm / a.count;
      s.per_snr[m].push_back(g);
    }
    const Acc& t = total[m];
    EvalSummary::Group g;
    g.snr_db = 0.0;
    g.count = t.count;
    g.mean_raw = t.raw / t.count;
    g.mean_normalized = t.norm / t.count;
    s.overall[m] = g;
  }
  return s;
}

std::string format_summary(const EvalSummary& summary) {
  std::string out;
  char buf[128];
  for (const std::string& m : summary.metrics) {
    out += "metric: " + m + "\n";
    out += "     SNR_dB  count        raw  normalized\n";
    for (const EvalSummary::Group& g : summary.per_snr.at(m)) {
      std::snprintf(buf, sizeof(buf), "  %9.1f  %5d  %9.4f  %10.4f\n",
                    g.snr_db, g.count, g.mean_raw, g.mean_normalized);
      out += buf;
    }
    const EvalSummary::Group& t = summary.overall.at(m);
    std::snprintf(buf, sizeof(buf), "  %9s  %5d  %9.4f  %10.4f\n", "Avg",
                  t.count, t.mean_raw, t.mean_normalized);
    out += buf;
    out += "\n";
  }
  return out;
}

}  // namespace mgf
