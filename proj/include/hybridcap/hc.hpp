#pragma once

// Single-level hierarchical cooperation estimate. The network is cut into
// square clusters of about M nodes. Each flow moves one bit:
//   1. the source splits its bit over the members of its cluster by direct
//      transmissions (clusters work in parallel under k-reuse);
//   2. the source cluster sends to the destination cluster as one M x M MIMO
//      link, log2 det(I + (P/M) H H^H) bits per slot, one session at a time;
//   3. every destination-cluster member quantizes each of its observations
//      with Q bits and sends them to the destination directly.
// The three phases are time-shared, so the aggregate is flows / total time.
// Flows whose endpoints share a cluster send their bit directly in phase 1.
// This is a lower-fidelity stand-in for the recursive scheme and is flagged
// as an estimate in the result.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "hybridcap/channel.hpp"
#include "hybridcap/linalg.hpp"
#include "hybridcap/mh.hpp"
#include "hybridcap/sim_types.hpp"

namespace hybridcap {

struct HcClusters {
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::size_t> cluster_of;
};

// Geometric clusters on a g x g grid with g = round(sqrt(n/M)); M = 1 gives
// singleton clusters.
inline HcClusters hc_clusters(const Topology& t, std::size_t cluster_size) {
  const std::size_t n = t.n();
  if (cluster_size < 1 || cluster_size > n) throw std::invalid_argument("HC cluster size must lie in [1, n]");
  HcClusters c;
  c.cluster_of.resize(n);
  if (cluster_size == 1) {
    c.members.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      c.members[i] = {i};
      c.cluster_of[i] = i;
    }
    return c;
  }
  const auto g = std::max<std::int64_t>(
      1, std::llround(std::sqrt(static_cast<double>(n) / static_cast<double>(cluster_size))));
  const double side = t.side / static_cast<double>(g);
  std::vector<std::vector<std::size_t>> grid(static_cast<std::size_t>(g * g));
  for (std::size_t i = 0; i < n; ++i) {
    auto idx = [&](double v) {
      return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(v / side)), 0, g - 1);
    };
    grid[static_cast<std::size_t>(idx(t.nodes[i].y) * g + idx(t.nodes[i].x))].push_back(i);
  }
  for (auto& m : grid)
    if (!m.empty()) {
      for (std::size_t i : m) c.cluster_of[i] = c.members.size();
      c.members.push_back(std::move(m));
    }
  return c;
}

// Phase-2 MIMO rate from cluster `from` to cluster `to`.
inline double hc_phase2_rate(const ChannelRealization& ch, const std::vector<std::size_t>& from,
                             const std::vector<std::size_t>& to, double P) {
  std::vector<Terminal> tx, rx;
  for (std::size_t i : from) tx.push_back(Terminal::node(i));
  for (std::size_t i : to) rx.push_back(Terminal::node(i));
  return log2_det_identity_plus(ch.dense(rx, tx), P / static_cast<double>(from.size()));
}

inline SimResult estimate_hc_single_level(const Topology& t, const ChannelRealization& ch,
                                          const SimConfig& cfg, const std::vector<Flow>& flows,
                                          std::size_t cluster_size) {
  validate(cfg);
  const HcClusters cl = hc_clusters(t, cluster_size);
  const std::size_t nc = cl.members.size();
  auto direct = [&](std::size_t u, std::size_t v) {
    return std::log2(1 + cfg.P * ch.path_gain(distance(t.nodes[u], t.nodes[v])));
  };

  std::vector<double> busy1(nc, 0.0), busy3(nc, 0.0);
  std::map<std::pair<std::size_t, std::size_t>, double> mimo;
  double t2 = 0;
  for (const Flow& f : flows) {
    const std::size_t cs = cl.cluster_of[f.src], cd = cl.cluster_of[f.dst];
    if (cs == cd) {
      busy1[cs] += 1 / direct(f.src, f.dst);
      continue;
    }
    const auto& src_members = cl.members[cs];
    const double piece = 1 / static_cast<double>(src_members.size());
    for (std::size_t u : src_members)
      if (u != f.src) busy1[cs] += piece / direct(f.src, u);

    auto it = mimo.find({cs, cd});
    if (it == mimo.end()) it = mimo.emplace(std::pair{cs, cd}, hc_phase2_rate(ch, src_members, cl.members[cd], cfg.P)).first;
    const double slots = 1 / it->second;
    t2 += slots;
    for (std::size_t u : cl.members[cd])
      if (u != f.dst) busy3[cd] += cfg.hc_quant_bits * slots / direct(u, f.dst);
  }
  const double k = cfg.tdma_k;
  const double t1 = k * *std::max_element(busy1.begin(), busy1.end());
  const double t3 = k * *std::max_element(busy3.begin(), busy3.end());
  const double total = t1 + t2 + t3;

  SimResult r;
  r.scheme = Scheme::hc;
  r.estimate = true;
  r.max_node_power = cfg.P;
  const double per = flows.empty() || !(total > 0) ? 0.0 : 1 / total;
  r.per_pair.assign(flows.size(), per);
  r.aggregate = sum(r.per_pair);
  return r;
}

inline std::size_t hc_cluster_size(std::size_t n, double exponent) {
  return static_cast<std::size_t>(std::max<long long>(1, std::llround(std::pow(static_cast<double>(n), exponent))));
}

inline SimResult estimate_hc_single_level(const Topology& t, const ChannelRealization& ch, const SimConfig& cfg) {
  return estimate_hc_single_level(t, ch, cfg, flows_of(t), hc_cluster_size(t.n(), cfg.hc_cluster_exponent));
}

}  // namespace hybridcap
