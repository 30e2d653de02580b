// core/src/config.cc

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

#include "mgf/config.h"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mgf/errors.h"
#include "mgf/metrics.h"
#include "mgf/rng.h"

namespace mgf {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) b++;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) e--;
  return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

uint64_t parse_u64(const std::string& s, const std::string& where) {
  try {
    size_t pos = 0;
    const uint64_t v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected unsigned integer, got '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& where) {
  try {
    size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected integer, got '" + s + "'");
  }
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected number, got '" + s + "'");
  }
}

std::vector<int> parse_int_list(const std::string& s,
                                const std::string& where) {
  std::vector<int> out;
  for (const std::string& item : split_csv(s)) {
    out.push_back(parse_int(item, where));
  }
  if (out.empty()) throw ConfigError(where + ": expected at least one value");
  return out;
}

std::vector<double> parse_double_list(const std::string& s,
                                      const std::string& where) {
  std::vector<double> out;
  for (const std::string& item : split_csv(s)) {
    out.push_back(parse_double(item, where));
  }
  if (out.empty()) throw ConfigError(where + ": expected at least one value");
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); i++) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); i++) {
    if (i) out += ",";
    out += fmt_double(v[i]);
  }
  return out;
}

std::string join_strings(const std::vector<std::string>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); i++) {
    if (i) out += ",";
    out += v[i];
  }
  return out;
}

void apply_key(RunConfig* cfg, const std::string& section,
               const std::string& key, const std::string& value,
               const std::string& where) {
  const std::string sk = section + "." + key;
  if (sk == "run.seed") cfg->seed = parse_u64(value, where);
  else if (sk == "run.data_dir") cfg->data_dir = value;
  else if (sk == "signal.sample_rate") cfg->sample_rate = parse_int(value, where);
  else if (sk == "signal.n_fft") cfg->n_fft = parse_int(value, where);
  else if (sk == "signal.hop") cfg->hop = parse_int(value, where);
  else if (sk == "signal.window") cfg->window = window_from_string(value);
  else if (sk == "signal.mask_floor") cfg->mask_floor = parse_double(value, where);
  else if (sk == "generator.context") cfg->context = parse_int(value, where);
  else if (sk == "generator.hidden") cfg->hidden = parse_int_list(value, where);
  else if (sk == "discriminator.channels") cfg->channels = parse_int_list(value, where);
  else if (sk == "discriminator.kernels") cfg->kernels = parse_int_list(value, where);
  else if (sk == "discriminator.dense") cfg->dense = parse_int_list(value, where);
  else if (sk == "train.mode") cfg->mode = value;
  else if (sk == "train.epochs") cfg->epochs = parse_int(value, where);
  else if (sk == "train.batch") cfg->batch = parse_int(value, where);
  else if (sk == "train.lr_g") cfg->lr_g = parse_double(value, where);
  else if (sk == "train.lr_d") cfg->lr_d = parse_double(value, where);
  else if (sk == "train.d_steps") cfg->d_steps = parse_int(value, where);
  else if (sk == "train.g_steps") cfg->g_steps = parse_int(value, where);
  else if (sk == "train.lambda") cfg->lambda = parse_double(value, where);
  else if (sk == "train.mu") cfg->mu = parse_double(value, where);
  else if (sk == "train.metrics") cfg->metrics = split_csv(value);
  else if (sk == "train.targets") cfg->targets = parse_double_list(value, where);
  else if (sk == "train.target_grid") cfg->target_grid = parse_double_list(value, where);
  else if (sk == "train.eval_every") cfg->eval_every = parse_int(value, where);
  else if (sk == "train.max_iters") cfg->max_iters = parse_int(value, where);
  else if (sk == "corpus.train_utts") cfg->train_utts = parse_int(value, where);
  else if (sk == "corpus.val_utts") cfg->val_utts = parse_int(value, where);
  else if (sk == "corpus.test_utts") cfg->test_utts = parse_int(value, where);
  else if (sk == "corpus.duration_s") cfg->duration_s = parse_double(value, where);
  else if (sk == "corpus.train_noises") cfg->train_noises = split_csv(value);
  else if (sk == "corpus.val_noises") cfg->val_noises = split_csv(value);
  else if (sk == "corpus.test_noises") cfg->test_noises = split_csv(value);
  else if (sk == "corpus.train_snrs") cfg->train_snrs = parse_double_list(value, where);
  else if (sk == "corpus.val_snrs") cfg->val_snrs = parse_double_list(value, where);
  else if (sk == "corpus.test_snrs") cfg->test_snrs = parse_double_list(value, where);
  else throw ConfigError(where + ": unknown config key '" + key +
                         "' in section [" + section + "]");
}

const char* const kKnownSections[] = {"run",           "signal",
                                      "generator",     "discriminator",
                                      "train",         "corpus"};

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    lineno++;
    const std::string where = origin + ":" + std::to_string(lineno);
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(where + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      bool known = false;
      for (const char* s : kKnownSections) {
        if (section == s) known = true;
      }
      if (!known) {
        throw ConfigError(where + ": unknown config section [" + section +
                          "]");
      }
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected key = value");
    }
    if (section.empty()) {
      throw ConfigError(where + ": key outside of any section");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    apply_key(&cfg, section, key, value, where);
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str(), path);
}

void validate_config(const RunConfig& cfg) {
  if (cfg.sample_rate < 8000) {
    throw ConfigError("sample_rate must be at least 8000");
  }
  check_cola(cfg.window, cfg.n_fft, cfg.hop);
  if (!(cfg.mask_floor >= 0.0 && cfg.mask_floor < 1.0)) {
    throw ConfigError("mask_floor must lie in [0, 1)");
  }
  if (cfg.context < 0 || cfg.context > 16) {
    throw ConfigError("generator context must lie in [0, 16]");
  }
  for (int h : cfg.hidden) {
    if (h < 1) throw ConfigError("generator hidden widths must be positive");
  }
  if (cfg.channels.size() != cfg.kernels.size() || cfg.channels.empty()) {
    throw ConfigError(
        "discriminator channels and kernels must be non-empty, equal-length "
        "lists");
  }
  if (cfg.mode != "metricgan" && cfg.mode != "cgan" && cfg.mode != "irm") {
    throw ConfigError("train mode must be metricgan, cgan, or irm");
  }
  if (cfg.epochs < 0 || cfg.batch < 1 || cfg.d_steps < 1 || cfg.g_steps < 1) {
    throw ConfigError("bad train loop sizes");
  }
  if (cfg.lr_g <= 0.0 || cfg.lr_d <= 0.0) {
    throw ConfigError("learning rates must be positive");
  }
  if (cfg.lambda < 0.0 || cfg.mu < 0.0) {
    throw ConfigError("loss weights must be non-negative");
  }
  if (cfg.eval_every < 0 || cfg.max_iters < 0) {
    throw ConfigError("eval_every and max_iters must be non-negative");
  }
  if (cfg.metrics.empty() || cfg.metrics.size() != cfg.targets.size()) {
    throw ConfigError("metrics and targets must be non-empty, equal-length "
                      "lists");
  }
  for (const std::string& m : cfg.metrics) {
    metric_spec_by_name(m);  // throws on unknown names
  }
  for (double t : cfg.targets) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw ConfigError("assigned target scores must lie in [0, 1]");
    }
  }
  if (cfg.target_grid.empty()) {
    throw ConfigError("target_grid must be non-empty");
  }
  for (double t : cfg.target_grid) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw ConfigError("target_grid scores must lie in [0, 1]");
    }
  }
  if (cfg.data_dir.empty()) {
    throw ConfigError("data_dir must be non-empty");
  }
  if (cfg.train_utts < 1 || cfg.val_utts < 1 || cfg.test_utts < 1) {
    throw ConfigError("corpus sizes must be positive");
  }
  if (cfg.duration_s < 0.5) {
    throw ConfigError("duration_s must be at least 0.5");
  }
  if (cfg.train_noises.empty() || cfg.val_noises.empty() ||
      cfg.test_noises.empty()) {
    throw ConfigError("each split needs at least one noise type");
  }
  if (cfg.train_snrs.empty() || cfg.val_snrs.empty() ||
      cfg.test_snrs.empty()) {
    throw ConfigError("each split needs at least one SNR");
  }
}

std::string echo_config(const RunConfig& cfg) {
  std::string out;
  out += "[run]\n";
  out += "seed = " + std::to_string(cfg.seed) + "\n";
  out += "data_dir = " + cfg.data_dir + "\n";
  out += "\n[signal]\n";
  out += "sample_rate = " + std::to_string(cfg.sample_rate) + "\n";
  out += "n_fft = " + std::to_string(cfg.n_fft) + "\n";
  out += "hop = " + std::to_string(cfg.hop) + "\n";
  out += "window = " + window_to_string(cfg.window) + "\n";
  out += "mask_floor = " + fmt_double(cfg.mask_floor) + "\n";
  out += "\n[generator]\n";
  out += "context = " + std::to_string(cfg.context) + "\n";
  out += "hidden = " + join_ints(cfg.hidden) + "\n";
  out += "\n[discriminator]\n";
  out += "channels = " + join_ints(cfg.channels) + "\n";
  out += "kernels = " + join_ints(cfg.kernels) + "\n";
  out += "dense = " + join_ints(cfg.dense) + "\n";
  out += "\n[train]\n";
  out += "mode = " + cfg.mode + "\n";
  out += "epochs = " + std::to_string(cfg.epochs) + "\n";
  out += "batch = " + std::to_string(cfg.batch) + "\n";
  out += "lr_g = " + fmt_double(cfg.lr_g) + "\n";
  out += "lr_d = " + fmt_double(cfg.lr_d) + "\n";
  out += "d_steps = " + std::to_string(cfg.d_steps) + "\n";
  out += "g_steps = " + std::to_string(cfg.g_steps) + "\n";
  out += "lambda = " + fmt_double(cfg.lambda) + "\n";
  out += "mu = " + fmt_double(cfg.mu) + "\n";
  out += "metrics = " + join_strings(cfg.metrics) + "\n";
  out += "targets = " + join_doubles(cfg.targets) + "\n";
  out += "target_grid = " + join_doubles(cfg.target_grid) + "\n";
  out += "eval_every = " + std::to_string(cfg.eval_every) + "\n";
  out += "max_iters = " + std::to_string(cfg.max_iters) + "\n";
  out += "\n[corpus]\n";
  out += "train_utts = " + std::to_string(cfg.train_utts) + "\n";
  out += "val_utts = " + std::to_string(cfg.val_utts) + "\n";
  out += "test_utts = " + std::to_string(cfg.test_utts) + "\n";
  out += "duration_s = " + fmt_double(cfg.duration_s) + "\n";
  out += "train_noises = " + join_strings(cfg.train_noises) + "\n";
  out += "val_noises = " + join_strings(cfg.val_noises) + "\n";
  out += "test_noises = " + join_strings(cfg.test_noises) + "\n";
  out += "train_snrs = " + join_doubles(cfg.train_snrs) + "\n";
  out += "val_snrs = " + join_doubles(cfg.val_snrs) + "\n";
  out += "test_snrs = " + join_doubles(cfg.test_snrs) + "\n";
  return out;
}

std::string config_hash(const RunConfig& cfg) {
  const uint64_t h = hash64(echo_config(cfg));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mgf
