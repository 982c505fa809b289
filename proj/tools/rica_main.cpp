// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0
//
// Command line front end. Every subcommand reads and writes the bundle or
// csv formats from rica/io; diagnostics and progress go to standard error,
// data only to the declared output paths.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rica/analysis/jacobian.hpp"
#include "rica/analysis/louvain.hpp"
#include "rica/analysis/sources.hpp"
#include "rica/analysis/stats.hpp"
#include "rica/errors.hpp"
#include "rica/io/bundle.hpp"
#include "rica/io/checkpoint.hpp"
#include "rica/io/config.hpp"
#include "rica/io/exporters.hpp"
#include "rica/matcore/parallel.hpp"
#include "rica/matcore/pca.hpp"
#include "rica/model/forward.hpp"
#include "rica/synth/simulate.hpp"
#include "rica/train/fit.hpp"
#include "rica/train/preprocess.hpp"

namespace {

using namespace rica;

// exit codes: 0 ok, 2 config or usage, 3 data format, 4 numerical failure
struct CliError {
  int code;
  std::string message;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::BadMagic:
    case ErrorCode::TruncatedFile:
    case ErrorCode::DimOverflow:
    case ErrorCode::DuplicateName:
    case ErrorCode::FileError:
    case ErrorCode::TypeError:
      return 3;
    case ErrorCode::SingularMatrix:
    case ErrorCode::NotSymmetric:
    case ErrorCode::NoConvergence:
    case ErrorCode::NonPositiveScale:
    case ErrorCode::SingularUnmixing:
    case ErrorCode::NonFiniteGradient:
    case ErrorCode::ZeroVariance:
    case ErrorCode::NonFiniteUpdate:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::RankDeficient:
      return 4;
    default:
      return 2;
  }
}

bool is_numerical(ErrorCode c) { return exit_code_for(c) == 4; }

// config files get exit code 2 whatever went wrong inside the parser
template <typename Fn>
auto config_context(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw CliError{2, path + ": " + e.what()};
  }
}

std::string indexed(const char* prefix, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%04zu", prefix, i);
  return buf;
}

std::vector<DenseMatrix> collect(const MatrixBundle& b, const char* prefix) {
  std::vector<DenseMatrix> out;
  while (b.has(indexed(prefix, out.size()))) {
    out.push_back(b.matrix(indexed(prefix, out.size())));
  }
  if (out.empty()) {
    throw Error(ErrorCode::MissingRequired,
                std::string("bundle holds no '") + prefix + "_0000' arrays");
  }
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

DenseMatrix one_row(const std::vector<double>& v) {
  DenseMatrix m(1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) m(0, j) = v[j];
  return m;
}

std::vector<double> single_column(const DenseMatrix& m, const char* what) {
  if (m.cols() == 1) {
    std::vector<double> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, 0);
    return v;
  }
  if (m.rows() == 1) {
    std::vector<double> v(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m(0, j);
    return v;
  }
  throw Error(ErrorCode::InvalidArgument,
              std::string(what) + " must be a single row or column");
}

std::vector<double> column_of(const DenseMatrix& m, std::size_t j) {
  std::vector<double> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

ModelOptions eval_options(const TrainConfig& cfg) {
  ModelOptions opts;
  opts.sigma_floor = cfg.sigma_floor;
  opts.dropout_keep = 1.0;
  opts.leaky_first_step = cfg.leaky_first_step;
  return opts;
}

// ---------------------------------------------------------------- simulate

void cmd_simulate(const std::string& config_path, const std::string& out) {
  const SimConfig cfg = config_context(
      config_path, [&] { return parse_sim_config(read_text(config_path)); });
  const Cohort cohort = simulate_cohort(cfg);

  MatrixBundle b;
  for (std::size_t i = 0; i < cohort.observations.size(); ++i) {
    b.add(indexed("obs", i), cohort.observations[i]);
  }
  for (std::size_t i = 0; i < cohort.truth.states.size(); ++i) {
    std::vector<double> s(cohort.truth.states[i].begin(),
                          cohort.truth.states[i].end());
    b.add(indexed("states", i), s);
  }
  for (std::size_t i = 0; i < cohort.truth.sources.size(); ++i) {
    b.add(indexed("sources", i), cohort.truth.sources[i]);
  }
  b.add("mixing", cohort.truth.mixing);
  b.add("group_labels",
        std::vector<double>(cohort.truth.group_labels.begin(),
                            cohort.truth.group_labels.end()));
  b.set_meta("config", render_sim_config(cohort.truth.config));
  write_bundle(out, b);
  std::fprintf(stderr, "simulate: %zu subjects, %zu x %zu each -> %s\n",
               cohort.observations.size(), cohort.observations[0].rows(),
               cohort.observations[0].cols(), out.c_str());
}

// -------------------------------------------------------------- preprocess

void cmd_preprocess(const std::string& in, const std::string& out,
                    int detrend_degree, bool normalize, int pca_k) {
  MatrixBundle b = read_bundle(in);
  std::vector<DenseMatrix> obs = collect(b, "obs");
  for (auto& x : obs) {
    if (detrend_degree >= 0) {
      detrend_columns(x, static_cast<std::size_t>(detrend_degree));
    }
    if (normalize) variance_normalize_columns(x);
  }
  std::string desc;
  if (detrend_degree >= 0) desc += "detrend=" + std::to_string(detrend_degree) + " ";
  if (normalize) desc += "normalize ";
  if (pca_k > 0) {
    // one shared basis: stack every subject, fit once, project all
    std::size_t total = 0;
    for (const auto& x : obs) total += x.rows();
    DenseMatrix stacked(total, obs[0].cols());
    std::size_t at = 0;
    for (const auto& x : obs) {
      for (std::size_t t = 0; t < x.rows(); ++t, ++at) {
        for (std::size_t j = 0; j < x.cols(); ++j) stacked(at, j) = x(t, j);
      }
    }
    const PcaResult pca = pca_fit(stacked, static_cast<std::size_t>(pca_k));
    std::vector<double> mean(stacked.cols(), 0.0);
    for (std::size_t t = 0; t < stacked.rows(); ++t) {
      for (std::size_t j = 0; j < stacked.cols(); ++j) mean[j] += stacked(t, j);
    }
    for (double& v : mean) v /= static_cast<double>(stacked.rows());
    for (auto& x : obs) {
      DenseMatrix centered = x;
      for (std::size_t t = 0; t < x.rows(); ++t) {
        for (std::size_t j = 0; j < x.cols(); ++j) centered(t, j) -= mean[j];
      }
      x = matmul_nt(centered, pca.components);
    }
    desc += "pca=" + std::to_string(pca_k) + " ";
  }
  for (std::size_t i = 0; i < obs.size(); ++i) {
    for (auto& [name, arr] : b.arrays) {
      if (name == indexed("obs", i)) {
        BundleArray replacement;
        replacement.dims = {obs[i].rows(), obs[i].cols()};
        replacement.values.assign(obs[i].row(0),
                                  obs[i].row(0) + obs[i].rows() * obs[i].cols());
        arr = replacement;
      }
    }
  }
  if (!desc.empty()) desc.pop_back();
  b.set_meta("preprocess", desc);
  write_bundle(out, b);
  std::fprintf(stderr, "preprocess: %zu subjects [%s] -> %s\n", obs.size(),
               desc.c_str(), out.c_str());
}

// ------------------------------------------------------------------- train

void cmd_train(const std::string& data_path, const std::string& config_path,
               const std::string& out, bool resume,
               std::size_t checkpoint_every) {
  const TrainConfig cfg = config_context(
      config_path, [&] { return parse_train_config(read_text(config_path)); });
  const MatrixBundle b = read_bundle(data_path);
  const std::vector<DenseMatrix> subjects = collect(b, "obs");
  for (const auto& x : subjects) {
    if (x.cols() != cfg.n_components) {
      throw Error(ErrorCode::ConfigMismatch,
                  "data width " + std::to_string(x.cols()) +
                      " does not match n_components " +
                      std::to_string(cfg.n_components));
    }
  }

  const CheckpointSink sink = [&](const TrainSnapshot& snap) {
    if (!snap.final_snapshot && !snap.loss_history.empty()) {
      std::fprintf(stderr, "epoch %zu nll %.17g\n", snap.opt.epoch,
                   snap.loss_history.back());
    }
    const bool due = snap.final_snapshot ||
                     (checkpoint_every > 0 && snap.opt.epoch % checkpoint_every == 0);
    if (due) {
      write_checkpoint(out,
                       Checkpoint{snap.params, snap.opt, snap.loss_history, cfg});
    }
  };

  try {
    FitResult result;
    if (resume) {
      const Checkpoint loaded = read_checkpoint(out);
      check_resume_compatible(loaded.config, cfg);
      result = fit_from(cfg, subjects, loaded.params, loaded.opt,
                        loaded.loss_history, sink);
    } else {
      result = fit(cfg, subjects, sink);
    }
    std::fprintf(stderr, "train: %zu epochs done -> %s\n", result.opt.epoch,
                 out.c_str());
  } catch (const Error& e) {
    if (is_numerical(e.code())) {
      throw CliError{4, std::string(e.what()) + "; last checkpoint: " + out};
    }
    throw;
  }
}

// ----------------------------------------------------------------- extract

void cmd_extract(const std::string& model_path, const std::string& data_path,
                 const std::string& out) {
  const Checkpoint cp = read_checkpoint(model_path);
  const MatrixBundle in = read_bundle(data_path);
  const std::vector<DenseMatrix> subjects = collect(in, "obs");
  const ModelOptions opts = eval_options(cp.config);

  MatrixBundle b;
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    const DenseMatrix src = extract_sources(cp.params, subjects[i]);
    const ForwardTrace trace = forward(cp.params, opts, subjects[i],
                                       DropoutMask::ones(cp.params.mlp_hidden));
    b.add(indexed("src", i), src);
    b.add(indexed("h", i), trace.h);
    b.add(indexed("mu", i), trace.mu);
    b.add(indexed("sigma", i), trace.sigma);
  }
  if (in.has("group_labels")) b.add("group_labels", in.vec("group_labels"));
  b.set_meta("config", render_train_config(cp.config));
  write_bundle(out, b);
  std::fprintf(stderr, "extract: %zu subjects -> %s\n", subjects.size(),
               out.c_str());
}

// --------------------------------------------------------------------- fnc

void cmd_fnc(const std::string& extracted, const std::string& out,
             const std::string& svg) {
  const MatrixBundle in = read_bundle(extracted);
  const FncResult result = fnc(collect(in, "src"));
  MatrixBundle b;
  b.add("fnc", result.values);
  b.add("flagged",
        std::vector<double>(result.flagged.begin(), result.flagged.end()));
  if (in.has("group_labels")) b.add("group_labels", in.vec("group_labels"));
  write_bundle(out, b);
  if (!svg.empty()) write_text(svg, svg_heatmap(result.values));
  std::fprintf(stderr, "fnc: %zu x %zu, %zu flagged -> %s\n",
               result.values.rows(), result.values.cols(),
               result.flagged.size(), out.c_str());
}

// ---------------------------------------------------------------- jacobian

void cmd_jacobian(const std::string& model_path, const std::string& data_path,
                  const std::string& out) {
  const Checkpoint cp = read_checkpoint(model_path);
  const MatrixBundle in = read_bundle(data_path);
  const std::vector<DenseMatrix> subjects = collect(in, "obs");
  const ModelOptions opts = eval_options(cp.config);

  std::vector<DenseMatrix> per_subject(subjects.size());
  parallel_for(subjects.size(), [&](std::size_t i) {
    per_subject[i] = next_step_jacobian(cp.params, opts, subjects[i]).mean_abs;
  });
  const std::size_t d = cp.params.dim;
  DenseMatrix mean(d, d);
  for (const auto& j : per_subject) {
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        mean(r, c) += j(r, c) / static_cast<double>(per_subject.size());
      }
    }
  }
  MatrixBundle b;
  b.add("jacobian", mean);
  for (std::size_t i = 0; i < per_subject.size(); ++i) {
    b.add(indexed("jac", i), per_subject[i]);
  }
  if (in.has("group_labels")) b.add("group_labels", in.vec("group_labels"));
  write_bundle(out, b);
  std::fprintf(stderr, "jacobian: %zu subjects, %zu x %zu -> %s\n",
               subjects.size(), d, d, out.c_str());
}

// ------------------------------------------------------------- communities

void cmd_communities(const std::string& jac_path, const std::string& out,
                     std::uint64_t seed, const std::string& dot,
                     double dot_threshold) {
  const MatrixBundle in = read_bundle(jac_path);
  const DenseMatrix jbar = in.matrix("jacobian");
  const DenseMatrix similarity = connectivity_similarity(jbar);
  const DenseMatrix graph = similarity_graph(similarity);
  const LouvainResult lv = louvain(graph, seed);

  MatrixBundle b;
  b.add("similarity", similarity);
  b.add("graph_weights", graph);
  b.add("communities",
        std::vector<double>(lv.labels.begin(), lv.labels.end()));
  b.set_meta("modularity", fmt17(lv.modularity));
  b.set_meta("seed", std::to_string(seed));
  write_bundle(out, b);

  if (!dot.empty()) {
    ConnectivityGraph g;
    g.weights = graph;
    g.communities = lv.labels;
    write_text(dot, export_dot(g, dot_threshold));
  }
  std::size_t n_communities = 0;
  for (const std::uint32_t c : lv.labels) {
    if (c + 1 > n_communities) n_communities = c + 1;
  }
  std::fprintf(stderr, "communities: %zu nodes, %zu communities, Q=%.6f -> %s\n",
               lv.labels.size(), n_communities, lv.modularity, out.c_str());
}

// ------------------------------------------------------------------- stats

void write_stat_rows(const std::string& out,
                     const std::vector<StatResult>& results, bool f_shaped) {
  DenseMatrix m(results.size(), f_shaped ? 4 : 3);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const StatResult& r = results[i];
    if (f_shaped) {
      m(i, 0) = r.statistic;
      m(i, 1) = r.df1;
      m(i, 2) = r.df2;
      m(i, 3) = r.p_value;
    } else {
      m(i, 0) = r.statistic;
      m(i, 1) = r.df1;
      m(i, 2) = r.p_value;
    }
  }
  write_csv(out, m);
}

void cmd_ttest1(const std::string& data, double mu, const std::string& out) {
  const DenseMatrix x = read_csv(data);
  std::vector<StatResult> results;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    results.push_back(ttest_1samp(column_of(x, j), mu));
  }
  write_stat_rows(out, results, false);
  std::fprintf(stderr, "ttest1: %zu variables -> %s\n", x.cols(), out.c_str());
}

void cmd_ttest2(const std::string& a_path, const std::string& b_path,
                const std::string& out) {
  const DenseMatrix a = read_csv(a_path);
  const DenseMatrix b = read_csv(b_path);
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::LengthMismatch,
                "the two groups disagree on variable count");
  }
  std::vector<StatResult> results;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    results.push_back(ttest_2samp(column_of(a, j), column_of(b, j)));
  }
  write_stat_rows(out, results, false);
  std::fprintf(stderr, "ttest2: %zu variables -> %s\n", a.cols(), out.c_str());
}

void cmd_anova(const std::string& data, const std::string& groups_path,
               const std::string& out) {
  const DenseMatrix x = read_csv(data);
  const std::vector<double> raw = single_column(read_csv(groups_path), "groups");
  if (raw.size() != x.rows()) {
    throw Error(ErrorCode::LengthMismatch,
                "group labels do not cover every data row");
  }
  std::size_t k = 0;
  std::vector<std::size_t> ids(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < 0 || raw[i] != std::floor(raw[i])) {
      throw Error(ErrorCode::TypeError, "group labels must be integers >= 0");
    }
    ids[i] = static_cast<std::size_t>(raw[i]);
    if (ids[i] + 1 > k) k = ids[i] + 1;
  }
  std::vector<StatResult> results;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    std::vector<std::vector<double>> groups(k);
    for (std::size_t i = 0; i < x.rows(); ++i) groups[ids[i]].push_back(x(i, j));
    results.push_back(anova_1way(groups));
  }
  write_stat_rows(out, results, true);
  std::fprintf(stderr, "anova: %zu variables, %zu groups -> %s\n", x.cols(), k,
               out.c_str());
}

void cmd_regress(const std::string& y_path, const std::string& x_path,
                 const std::string& out) {
  const std::vector<double> y = single_column(read_csv(y_path), "response");
  const DenseMatrix x = read_csv(x_path);
  const RegressResult r = regress(y, x);
  std::vector<double> column = r.betas;
  column.push_back(r.residual_variance);
  DenseMatrix m(column.size(), 1);
  for (std::size_t i = 0; i < column.size(); ++i) m(i, 0) = column[i];
  write_csv(out, m);
  std::fprintf(stderr, "regress: %zu betas, residual variance %.17g -> %s\n",
               r.betas.size(), r.residual_variance, out.c_str());
}

void cmd_fdr(const std::string& p_path, double q, const std::string& out) {
  const std::vector<double> p = single_column(read_csv(p_path), "p-values");
  const FdrResult r = fdr_bh(p, q);
  DenseMatrix m(p.size(), 2);
  for (std::size_t i = 0; i < p.size(); ++i) {
    m(i, 0) = p[i];
    m(i, 1) = r.reject[i] ? 1.0 : 0.0;
  }
  write_csv(out, m);
  std::fprintf(stderr, "fdr: rejected %zu of %zu at q=%.17g, threshold %.17g\n",
               r.n_rejected, p.size(), q, r.threshold);
}

void cmd_statecorr(const std::string& extracted, const std::string& truth,
                   const std::string& what, const std::string& out) {
  const MatrixBundle ex = read_bundle(extracted);
  const MatrixBundle tr = read_bundle(truth);
  const std::vector<DenseMatrix> traces = collect(ex, what.c_str());
  std::vector<std::vector<std::uint32_t>> states;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const std::vector<double> raw = tr.vec(indexed("states", i));
    states.emplace_back(raw.begin(), raw.end());
  }
  write_csv(out, state_correlation(traces, states));
  std::fprintf(stderr, "statecorr: %zu subjects x %zu units -> %s\n",
               traces.size(), traces[0].cols(), out.c_str());
}

// ------------------------------------------------------------------ report

void cmd_report(const std::string& in_path, const std::string& out_dir,
                double dot_threshold) {
  const MatrixBundle b = read_bundle(in_path);
  std::error_code fs_err;
  std::filesystem::create_directories(out_dir, fs_err);
  if (fs_err) {
    throw Error(ErrorCode::FileError,
                "cannot create '" + out_dir + "': " + fs_err.message());
  }
  std::size_t written = 0;
  for (const auto& [name, arr] : b.arrays) {
    const std::string base = out_dir + "/" + name;
    if (arr.dims.size() == 2) {
      const DenseMatrix m = b.matrix(name);
      write_csv(base + ".csv", m);
      write_text(base + ".svg", svg_heatmap(m));
      written += 2;
    } else if (arr.dims.size() == 1) {
      write_csv(base + ".csv", one_row(arr.values));
      written += 1;
    }
  }
  if (b.has("graph_weights") && b.has("communities")) {
    ConnectivityGraph g;
    g.weights = b.matrix("graph_weights");
    const std::vector<double> raw = b.vec("communities");
    g.communities.assign(raw.begin(), raw.end());
    write_text(out_dir + "/graph.dot", export_dot(g, dot_threshold));
    written += 1;
  }
  std::fprintf(stderr, "report: %zu files -> %s\n", written, out_dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rica: source separation with per-step densities from a recurrent net"};
  app.require_subcommand(1);

  std::string config_path, data_path, model_path, in_path, out_path;
  std::string svg_path, dot_path, a_path, b_path, groups_path, what = "h";
  bool resume = false, normalize = false;
  int detrend_degree = -1, pca_k = 0;
  std::size_t checkpoint_every = 0;
  std::uint64_t seed = 0;
  double mu = 0.0, q = 0.05, dot_threshold = 0.0;

  CLI::App* simulate = app.add_subcommand("simulate", "generate a synthetic cohort");
  simulate->add_option("--config", config_path, "simulation config file")->required();
  simulate->add_option("--out", out_path, "output bundle")->required();

  CLI::App* preprocess =
      app.add_subcommand("preprocess", "detrend / normalize / pca the cohort");
  preprocess->add_option("--in", in_path, "input bundle")->required();
  preprocess->add_option("--out", out_path, "output bundle")->required();
  preprocess->add_option("--detrend", detrend_degree, "polynomial degree");
  preprocess->add_flag("--normalize", normalize, "unit variance per channel");
  preprocess->add_option("--pca", pca_k, "project onto top components");

  CLI::App* train = app.add_subcommand("train", "fit the model");
  train->add_option("--data", data_path, "bundle with obs_* arrays")->required();
  train->add_option("--config", config_path, "training config file")->required();
  train->add_option("--out", out_path, "checkpoint path")->required();
  train->add_flag("--resume", resume, "continue from the checkpoint at --out");
  train->add_option("--checkpoint-every", checkpoint_every,
                    "also write every N epochs");

  CLI::App* extract = app.add_subcommand("extract", "sources and unit traces");
  extract->add_option("--model", model_path, "checkpoint")->required();
  extract->add_option("--data", data_path, "bundle with obs_* arrays")->required();
  extract->add_option("--out", out_path, "output bundle")->required();

  CLI::App* fnc_cmd = app.add_subcommand("fnc", "cross-correlation matrix");
  fnc_cmd->add_option("--extracted", in_path, "bundle from extract")->required();
  fnc_cmd->add_option("--out", out_path, "output bundle")->required();
  fnc_cmd->add_option("--svg", svg_path, "also render a heatmap");

  CLI::App* jacobian = app.add_subcommand("jacobian", "directed connectivity");
  jacobian->add_option("--model", model_path, "checkpoint")->required();
  jacobian->add_option("--data", data_path, "bundle with obs_* arrays")->required();
  jacobian->add_option("--out", out_path, "output bundle")->required();

  CLI::App* communities =
      app.add_subcommand("communities", "modularity partition of the graph");
  communities->add_option("--jacobian", in_path, "bundle from jacobian")->required();
  communities->add_option("--out", out_path, "output bundle")->required();
  communities->add_option("--seed", seed, "visit-order seed");
  communities->add_option("--dot", dot_path, "also write a graphviz file");
  communities->add_option("--threshold", dot_threshold, "|weight| cutoff for dot");

  CLI::App* stats = app.add_subcommand("stats", "hypothesis tests on csv tables");
  stats->require_subcommand(1);
  CLI::App* ttest1 = stats->add_subcommand("ttest1", "one-sample t per column");
  ttest1->add_option("--data", data_path, "samples x variables csv")->required();
  ttest1->add_option("--mu", mu, "null mean");
  ttest1->add_option("--out", out_path, "csv: statistic, df, p")->required();
  CLI::App* ttest2 = stats->add_subcommand("ttest2", "Welch two-sample t per column");
  ttest2->add_option("--a", a_path, "group A csv")->required();
  ttest2->add_option("--b", b_path, "group B csv")->required();
  ttest2->add_option("--out", out_path, "csv: statistic, df, p")->required();
  CLI::App* anova = stats->add_subcommand("anova", "one-way F per column");
  anova->add_option("--data", data_path, "samples x variables csv")->required();
  anova->add_option("--groups", groups_path, "group id per row")->required();
  anova->add_option("--out", out_path, "csv: F, df1, df2, p")->required();
  CLI::App* regress_cmd = stats->add_subcommand("regress", "least squares fit");
  regress_cmd->add_option("--y", a_path, "response csv")->required();
  regress_cmd->add_option("--x", data_path, "design matrix csv")->required();
  regress_cmd->add_option("--out", out_path, "csv: betas then residual variance")
      ->required();
  CLI::App* fdr = stats->add_subcommand("fdr", "Benjamini-Hochberg step-up");
  fdr->add_option("--p", data_path, "p-value csv")->required();
  fdr->add_option("--q", q, "target false discovery rate");
  fdr->add_option("--out", out_path, "csv: p, reject")->required();
  CLI::App* statecorr =
      stats->add_subcommand("statecorr", "unit-to-state correlations");
  statecorr->add_option("--extracted", in_path, "bundle from extract")->required();
  statecorr->add_option("--truth", data_path, "bundle with states_* arrays")
      ->required();
  statecorr->add_option("--what", what, "trace kind: h, sigma, mu, src")
      ->check(CLI::IsMember({"h", "sigma", "mu", "src"}));
  statecorr->add_option("--out", out_path, "csv of correlations")->required();

  CLI::App* report = app.add_subcommand("report", "render a bundle to files");
  report->add_option("--in", in_path, "any bundle")->required();
  report->add_option("--out", out_path, "output directory")->required();
  report->add_option("--threshold", dot_threshold, "|weight| cutoff for dot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(simulate)) {
      cmd_simulate(config_path, out_path);
    } else if (app.got_subcommand(preprocess)) {
      cmd_preprocess(in_path, out_path, detrend_degree, normalize, pca_k);
    } else if (app.got_subcommand(train)) {
      cmd_train(data_path, config_path, out_path, resume, checkpoint_every);
    } else if (app.got_subcommand(extract)) {
      cmd_extract(model_path, data_path, out_path);
    } else if (app.got_subcommand(fnc_cmd)) {
      cmd_fnc(in_path, out_path, svg_path);
    } else if (app.got_subcommand(jacobian)) {
      cmd_jacobian(model_path, data_path, out_path);
    } else if (app.got_subcommand(communities)) {
      cmd_communities(in_path, out_path, seed, dot_path, dot_threshold);
    } else if (app.got_subcommand(stats)) {
      if (stats->got_subcommand(ttest1)) {
        cmd_ttest1(data_path, mu, out_path);
      } else if (stats->got_subcommand(ttest2)) {
        cmd_ttest2(a_path, b_path, out_path);
      } else if (stats->got_subcommand(anova)) {
        cmd_anova(data_path, groups_path, out_path);
      } else if (stats->got_subcommand(regress_cmd)) {
        cmd_regress(a_path, data_path, out_path);
      } else if (stats->got_subcommand(fdr)) {
        cmd_fdr(data_path, q, out_path);
      } else if (stats->got_subcommand(statecorr)) {
        cmd_statecorr(in_path, data_path, what, out_path);
      }
    } else if (app.got_subcommand(report)) {
      cmd_report(in_path, out_path, dot_threshold);
    }
  } catch (const CliError& e) {
    std::fprintf(stderr, "rica: %s\n", e.message.c_str());
    return e.code;
  } catch (const Error& e) {
    std::fprintf(stderr, "rica: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rica: internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
