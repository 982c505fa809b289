// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/io/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <vector>

#include "rica/errors.hpp"

namespace rica {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  if (v.empty() || v[0] == '-' || v[0] == '+') {
    throw Error(ErrorCode::TypeError,
                "key '" + key + "' needs a nonnegative integer, got '" + v + "'");
  }
  char* end = nullptr;
  errno = 0;
  const unsigned long long out = std::strtoull(v.c_str(), &end, 10);
  if (errno != 0 || end != v.c_str() + v.size()) {
    throw Error(ErrorCode::TypeError,
                "key '" + key + "' needs a nonnegative integer, got '" + v + "'");
  }
  return out;
}

double parse_f64(const std::string& v, const std::string& key) {
  char* end = nullptr;
  errno = 0;
  const double out = std::strtod(v.c_str(), &end);
  if (v.empty() || errno != 0 || end != v.c_str() + v.size()) {
    throw Error(ErrorCode::TypeError,
                "key '" + key + "' needs a number, got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw Error(ErrorCode::TypeError,
              "key '" + key + "' needs true or false, got '" + v + "'");
}

std::vector<double> parse_number_list(const std::string& body,
                                      const std::string& key) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    const std::string cell = trim(body.substr(pos, comma - pos));
    if (!cell.empty()) out.push_back(parse_f64(cell, key));
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_vector(const std::string& v, const std::string& key) {
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    throw Error(ErrorCode::TypeError,
                "key '" + key + "' needs a bracketed list");
  }
  return parse_number_list(v.substr(1, v.size() - 2), key);
}

DenseMatrix parse_matrix(const std::string& v, const std::string& key) {
  if (v.size() < 4 || v.front() != '[' || v.back() != ']') {
    throw Error(ErrorCode::TypeError,
                "key '" + key + "' needs a bracketed row list");
  }
  std::vector<std::vector<double>> rows;
  std::size_t pos = 1;
  const std::size_t end = v.size() - 1;
  while (pos < end) {
    while (pos < end &&
           (std::isspace(static_cast<unsigned char>(v[pos])) || v[pos] == ',')) {
      ++pos;
    }
    if (pos >= end) break;
    if (v[pos] != '[') {
      throw Error(ErrorCode::TypeError,
                  "key '" + key + "' has a malformed row");
    }
    const std::size_t close = v.find(']', pos);
    if (close == std::string::npos || close > end) {
      throw Error(ErrorCode::TypeError,
                  "key '" + key + "' has an unterminated row");
    }
    rows.push_back(parse_number_list(v.substr(pos + 1, close - pos - 1), key));
    pos = close + 1;
  }
  if (rows.empty()) {
    throw Error(ErrorCode::TypeError, "key '" + key + "' has no rows");
  }
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      throw Error(ErrorCode::TypeError,
                  "key '" + key + "' has ragged rows");
    }
  }
  DenseMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

// Split into key/value lines, rejecting repeats; '#' comments anywhere.
std::vector<std::pair<std::string, std::string>> key_value_lines(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;

    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::TypeError,
                  "expected 'key = value', got '" + line + "'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw Error(ErrorCode::TypeError, "line with an empty key");
    }
    for (const auto& kv : out) {
      if (kv.first == key) {
        throw Error(ErrorCode::DuplicateName, "key '" + key + "' repeats");
      }
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::string fmt_f64(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_vector(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt_f64(v[i]);
  }
  return out + "]";
}

std::string fmt_matrix(const DenseMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += fmt_f64(m(i, j));
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace

TrainConfig parse_train_config(const std::string& text) {
  TrainConfig cfg;
  bool have_components = false;
  for (const auto& [key, value] : key_value_lines(text)) {
    if (key == "n_components") {
      cfg.n_components = parse_u64(value, key);
      have_components = true;
    } else if (key == "hidden_units") {
      cfg.hidden_units = parse_u64(value, key);
    } else if (key == "mlp_hidden") {
      cfg.mlp_hidden = parse_u64(value, key);
    } else if (key == "window") {
      cfg.window = parse_u64(value, key);
    } else if (key == "stride") {
      cfg.stride = parse_u64(value, key);
    } else if (key == "batch_size") {
      cfg.batch_size = parse_u64(value, key);
    } else if (key == "epochs") {
      cfg.epochs = parse_u64(value, key);
    } else if (key == "learning_rate") {
      cfg.learning_rate = parse_f64(value, key);
    } else if (key == "l2_w") {
      cfg.l2_w = parse_f64(value, key);
    } else if (key == "rmsprop_decay") {
      cfg.rmsprop_decay = parse_f64(value, key);
    } else if (key == "rmsprop_eps") {
      cfg.rmsprop_eps = parse_f64(value, key);
    } else if (key == "sigma_floor") {
      cfg.sigma_floor = parse_f64(value, key);
    } else if (key == "dropout_keep") {
      cfg.dropout_keep = parse_f64(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, key);
    } else if (key == "leaky_first_step") {
      cfg.leaky_first_step = parse_bool(value, key);
    } else if (key == "early_stop") {
      cfg.early_stop = parse_bool(value, key);
    } else {
      throw Error(ErrorCode::UnknownKey, "unknown key '" + key + "'");
    }
  }
  if (!have_components) {
    throw Error(ErrorCode::MissingRequired, "n_components is required");
  }
  return cfg;
}

SimConfig parse_sim_config(const std::string& text) {
  SimConfig cfg;
  bool have_sources = false;
  std::map<std::uint64_t, DenseMatrix> covs;
  for (const auto& [key, value] : key_value_lines(text)) {
    if (key == "n_sources") {
      cfg.n_sources = parse_u64(value, key);
      have_sources = true;
    } else if (key == "n_states") {
      cfg.n_states = parse_u64(value, key);
    } else if (key == "timepoints") {
      cfg.timepoints = parse_u64(value, key);
    } else if (key == "tr") {
      cfg.tr = parse_f64(value, key);
    } else if (key == "subjects_per_group") {
      cfg.subjects_per_group = parse_u64(value, key);
    } else if (key == "p_a") {
      cfg.p_a = parse_matrix(value, key);
    } else if (key == "p_b") {
      cfg.p_b = parse_matrix(value, key);
    } else if (key == "pi0") {
      cfg.pi0 = parse_vector(value, key);
    } else if (key == "mixing") {
      cfg.mixing = parse_matrix(value, key);
    } else if (key.rfind("cov_", 0) == 0) {
      covs[parse_u64(key.substr(4), key)] = parse_matrix(value, key);
    } else if (key == "hrf_peak_delay") {
      cfg.hrf_peak_delay = parse_f64(value, key);
    } else if (key == "hrf_undershoot_delay") {
      cfg.hrf_undershoot_delay = parse_f64(value, key);
    } else if (key == "hrf_peak_disp") {
      cfg.hrf_peak_disp = parse_f64(value, key);
    } else if (key == "hrf_undershoot_disp") {
      cfg.hrf_undershoot_disp = parse_f64(value, key);
    } else if (key == "hrf_ratio") {
      cfg.hrf_ratio = parse_f64(value, key);
    } else if (key == "hrf_length") {
      cfg.hrf_length = parse_u64(value, key);
    } else if (key == "peak_delay_lo") {
      cfg.peak_delay_lo = parse_f64(value, key);
    } else if (key == "peak_delay_hi") {
      cfg.peak_delay_hi = parse_f64(value, key);
    } else if (key == "undershoot_delay_lo") {
      cfg.undershoot_delay_lo = parse_f64(value, key);
    } else if (key == "undershoot_delay_hi") {
      cfg.undershoot_delay_hi = parse_f64(value, key);
    } else if (key == "noise_std") {
      cfg.noise_std = parse_f64(value, key);
    } else if (key == "condition_bound") {
      cfg.condition_bound = parse_f64(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, key);
    } else {
      throw Error(ErrorCode::UnknownKey, "unknown key '" + key + "'");
    }
  }
  if (!have_sources) {
    throw Error(ErrorCode::MissingRequired, "n_sources is required");
  }
  if (!covs.empty()) {
    const std::uint64_t top = covs.rbegin()->first;
    for (std::uint64_t k = 0; k <= top; ++k) {
      auto it = covs.find(k);
      if (it == covs.end()) {
        throw Error(ErrorCode::MissingRequired,
                    "cov_" + std::to_string(k) + " is missing");
      }
      cfg.covariances.push_back(it->second);
    }
  }
  return cfg;
}

std::string render_train_config(const TrainConfig& cfg) {
  std::string out;
  out += "n_components = " + std::to_string(cfg.n_components) + "\n";
  out += "hidden_units = " + std::to_string(cfg.hidden_units) + "\n";
  out += "mlp_hidden = " + std::to_string(cfg.mlp_hidden) + "\n";
  out += "window = " + std::to_string(cfg.window) + "\n";
  out += "stride = " + std::to_string(cfg.stride) + "\n";
  out += "batch_size = " + std::to_string(cfg.batch_size) + "\n";
  out += "epochs = " + std::to_string(cfg.epochs) + "\n";
  out += "learning_rate = " + fmt_f64(cfg.learning_rate) + "\n";
  out += "l2_w = " + fmt_f64(cfg.l2_w) + "\n";
  out += "rmsprop_decay = " + fmt_f64(cfg.rmsprop_decay) + "\n";
  out += "rmsprop_eps = " + fmt_f64(cfg.rmsprop_eps) + "\n";
  out += "sigma_floor = " + fmt_f64(cfg.sigma_floor) + "\n";
  out += "dropout_keep = " + fmt_f64(cfg.dropout_keep) + "\n";
  out += "seed = " + std::to_string(cfg.seed) + "\n";
  out += std::string("leaky_first_step = ") +
         (cfg.leaky_first_step ? "true" : "false") + "\n";
  out += std::string("early_stop = ") + (cfg.early_stop ? "true" : "false") +
         "\n";
  return out;
}

std::string render_sim_config(const SimConfig& cfg) {
  std::string out;
  out += "n_sources = " + std::to_string(cfg.n_sources) + "\n";
  out += "n_states = " + std::to_string(cfg.n_states) + "\n";
  out += "timepoints = " + std::to_string(cfg.timepoints) + "\n";
  out += "tr = " + fmt_f64(cfg.tr) + "\n";
  out += "subjects_per_group = " + std::to_string(cfg.subjects_per_group) + "\n";
  if (cfg.p_a.rows() != 0) out += "p_a = " + fmt_matrix(cfg.p_a) + "\n";
  if (cfg.p_b.rows() != 0) out += "p_b = " + fmt_matrix(cfg.p_b) + "\n";
  if (!cfg.pi0.empty()) out += "pi0 = " + fmt_vector(cfg.pi0) + "\n";
  for (std::size_t k = 0; k < cfg.covariances.size(); ++k) {
    out += "cov_" + std::to_string(k) + " = " + fmt_matrix(cfg.covariances[k]) +
           "\n";
  }
  if (cfg.mixing.rows() != 0) out += "mixing = " + fmt_matrix(cfg.mixing) + "\n";
  out += "hrf_peak_delay = " + fmt_f64(cfg.hrf_peak_delay) + "\n";
  out += "hrf_undershoot_delay = " + fmt_f64(cfg.hrf_undershoot_delay) + "\n";
  out += "hrf_peak_disp = " + fmt_f64(cfg.hrf_peak_disp) + "\n";
  out += "hrf_undershoot_disp = " + fmt_f64(cfg.hrf_undershoot_disp) + "\n";
  out += "hrf_ratio = " + fmt_f64(cfg.hrf_ratio) + "\n";
  out += "hrf_length = " + std::to_string(cfg.hrf_length) + "\n";
  out += "peak_delay_lo = " + fmt_f64(cfg.peak_delay_lo) + "\n";
  out += "peak_delay_hi = " + fmt_f64(cfg.peak_delay_hi) + "\n";
  out += "undershoot_delay_lo = " + fmt_f64(cfg.undershoot_delay_lo) + "\n";
  out += "undershoot_delay_hi = " + fmt_f64(cfg.undershoot_delay_hi) + "\n";
  out += "noise_std = " + fmt_f64(cfg.noise_std) + "\n";
  out += "condition_bound = " + fmt_f64(cfg.condition_bound) + "\n";
  out += "seed = " + std::to_string(cfg.seed) + "\n";
  return out;
}

}  // namespace rica
