// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/analysis/louvain.hpp"

#include <cmath>
#include <numeric>
#include <unordered_map>

#include "rica/errors.hpp"
#include "rica/matcore/rng.hpp"

namespace rica {

namespace {

void check_graph(const DenseMatrix& w) {
  if (w.rows() == 0) throw Error(ErrorCode::EmptyGraph, "graph has no nodes");
  if (w.rows() != w.cols()) {
    throw Error(ErrorCode::InvalidArgument, "adjacency must be square");
  }
  const double tol = 1e-12 * std::max(1.0, max_abs(w));
  for (std::size_t i = 0; i < w.rows(); ++i) {
    if (w(i, i) != 0.0) {
      throw Error(ErrorCode::InvalidArgument, "self-loops are not allowed");
    }
    for (std::size_t j = 0; j < w.cols(); ++j) {
      if (!(w(i, j) >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "weights must be nonnegative and finite");
      }
      if (std::fabs(w(i, j) - w(j, i)) > tol) {
        throw Error(ErrorCode::InvalidArgument, "adjacency must be symmetric");
      }
    }
  }
}

std::vector<std::uint32_t> relabel_first_seen(
    const std::vector<std::uint32_t>& raw) {
  std::unordered_map<std::uint32_t, std::uint32_t> map;
  std::vector<std::uint32_t> out(raw.size());
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto it = map.find(raw[i]);
    if (it == map.end()) it = map.emplace(raw[i], next++).first;
    out[i] = it->second;
  }
  return out;
}

// One local-moving phase over the (possibly aggregated) graph a, whose
// diagonal carries doubled intra-community weight. Starts from the given
// partition, or from singletons when init is null. Returns compacted
// community labels, or an empty vector if nothing moved.
std::vector<std::uint32_t> local_moving(const DenseMatrix& a, double two_m,
                                        RngStream& rng,
                                        const std::vector<std::uint32_t>* init) {
  const std::size_t n = a.rows();
  std::vector<std::uint32_t> comm(n);
  if (init) {
    comm = *init;
  } else {
    std::iota(comm.begin(), comm.end(), 0u);
  }
  std::vector<double> degree(n, 0.0), comm_total(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) degree[i] += a(i, j);
    comm_total[comm[i]] += degree[i];
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);

  const double m = 0.5 * two_m;
  std::vector<double> link(n, 0.0);
  bool any_move = false;
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t v : order) {
      const std::uint32_t home = comm[v];
      // weight from v to each community
      std::fill(link.begin(), link.end(), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != v) link[comm[j]] += a(v, j);
      }
      comm_total[home] -= degree[v];

      std::uint32_t best = home;
      double best_gain = link[home] / m - comm_total[home] * degree[v] / (2.0 * m * m);
      // every community is a candidate, including empty ones: moving to an
      // empty slot is how a node leaves a bad home to stand alone
      for (std::size_t c = 0; c < n; ++c) {
        if (c == home) continue;
        const double gain =
            link[c] / m - comm_total[c] * degree[v] / (2.0 * m * m);
        if (gain > best_gain + 1e-15 ||
            (gain > best_gain - 1e-15 && c < best)) {
          best_gain = gain;
          best = static_cast<std::uint32_t>(c);
        }
      }
      comm_total[best] += degree[v];
      if (best != home) {
        comm[v] = best;
        moved = true;
        any_move = true;
      }
    }
  }
  if (!any_move) return {};
  return relabel_first_seen(comm);
}

DenseMatrix aggregate(const DenseMatrix& a,
                      const std::vector<std::uint32_t>& comm,
                      std::size_t n_comm) {
  DenseMatrix next(n_comm, n_comm, 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      next(comm[i], comm[j]) += a(i, j);
    }
  }
  return next;
}

// One full multi-level pass seeded by an existing partition of w: local
// moving on the original graph first (so single nodes can leave blocks a
// previous pass froze together), then aggregate and repeat.
std::vector<std::uint32_t> multilevel_pass(const DenseMatrix& w, double two_m,
                                           std::vector<std::uint32_t> node_comm,
                                           RngStream& rng) {
  node_comm = relabel_first_seen(node_comm);
  DenseMatrix level_graph = w;
  bool first_level = true;
  for (;;) {
    std::vector<std::uint32_t> comm =
        local_moving(level_graph, two_m, rng, first_level ? &node_comm : nullptr);
    if (comm.empty()) {
      if (!first_level) break;
      // seed partition is already single-node stable; aggregate it anyway
      // so its blocks get a chance to move as units
      comm = node_comm;
    }
    std::size_t n_comm = 0;
    for (std::uint32_t c : comm) n_comm = std::max<std::size_t>(n_comm, c + 1);
    if (first_level) {
      // level-graph nodes are the original nodes here
      node_comm = comm;
      first_level = false;
    } else {
      for (std::uint32_t& c : node_comm) c = comm[c];
    }
    if (n_comm == level_graph.rows()) break;  // relabeled but not coarser
    level_graph = aggregate(level_graph, comm, n_comm);
  }
  return relabel_first_seen(node_comm);
}

}  // namespace

double modularity(const DenseMatrix& w,
                  const std::vector<std::uint32_t>& labels) {
  check_graph(w);
  if (labels.size() != w.rows()) {
    throw Error(ErrorCode::LengthMismatch, "one label per node required");
  }
  double two_m = 0.0;
  for (const double v : w.data()) two_m += v;
  if (two_m == 0.0) return 0.0;

  std::size_t n_comm = 0;
  for (std::uint32_t c : labels) n_comm = std::max<std::size_t>(n_comm, c + 1);
  std::vector<double> internal(n_comm, 0.0), total(n_comm, 0.0);
  for (std::size_t i = 0; i < w.rows(); ++i) {
    double k = 0.0;
    for (std::size_t j = 0; j < w.cols(); ++j) {
      k += w(i, j);
      if (labels[i] == labels[j]) internal[labels[i]] += w(i, j);
    }
    total[labels[i]] += k;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < n_comm; ++c) {
    q += internal[c] / two_m - (total[c] / two_m) * (total[c] / two_m);
  }
  return q;
}

LouvainResult louvain(const DenseMatrix& w, std::uint64_t seed) {
  check_graph(w);
  const std::size_t n = w.rows();

  LouvainResult out;
  out.labels.resize(n);
  std::iota(out.labels.begin(), out.labels.end(), 0u);

  double two_m = 0.0;
  for (const double v : w.data()) two_m += v;
  if (two_m == 0.0) return out;  // edgeless: singletons, Q = 0

  RngStream rng(seed, stream_id::generic(50));
  const std::vector<std::uint32_t> singletons = out.labels;
  out.modularity = modularity(w, out.labels);

  // two guards against greedy traps, both deterministic for a fixed seed:
  // passes are iterated from the previous partition until Q stops improving
  // (a node frozen into a block by aggregation can escape on the next pass),
  // and the whole climb restarts a few times with fresh visit orders
  const double singleton_q = out.modularity;
  for (int restart = 0; restart < 10; ++restart) {
    std::vector<std::uint32_t> cur = singletons;
    double cur_q = singleton_q;
    for (;;) {
      std::vector<std::uint32_t> next = multilevel_pass(w, two_m, cur, rng);
      const double q = modularity(w, next);
      if (q <= cur_q + 1e-13) break;
      cur = std::move(next);
      cur_q = q;
    }
    if (cur_q > out.modularity + 1e-15) {
      out.labels = std::move(cur);
      out.modularity = cur_q;
    }
  }
  return out;
}

}  // namespace rica
