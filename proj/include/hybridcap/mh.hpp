#pragma once

// Multihop: every flow is relayed cell by cell along a horizontal-then-
// vertical path. A routing cell carrying L flows gives each of them 1/L of
// its share, and each cell transmits in one of k reuse slots.

#include <algorithm>
#include <limits>
#include <vector>

#include "hybridcap/channel.hpp"
#include "hybridcap/routing.hpp"
#include "hybridcap/sim_types.hpp"

namespace hybridcap {

// Seeds the relay and interferer draws of the hop-rate model.
inline std::uint64_t routing_key(const ChannelRealization& ch) { return hash_key(ch.phase_seed(), 0x7e1a7); }

inline std::vector<Flow> flows_of(const Topology& t) {
  std::vector<Flow> flows;
  flows.reserve(t.n());
  for (std::size_t i = 0; i < t.n(); ++i) flows.push_back({i, t.pairing[i]});
  return flows;
}

inline SimResult simulate_mh(const Topology& t, const ChannelRealization& ch, const SimConfig& cfg,
                             const std::vector<Flow>& flows) {
  validate(cfg);
  const RoutingGrid grid(t);

  std::vector<std::vector<Hop>> routes;
  routes.reserve(flows.size());
  std::vector<double> load(grid.size(), 0.0);
  for (const Flow& f : flows) {
    routes.push_back(route(grid, ch, Terminal::node(f.src), cfg.P, Terminal::node(f.dst), cfg.P));
    for (const Hop& h : routes.back()) load[h.tx_cell] += 1;
  }
  std::vector<bool> active(grid.size());
  for (std::size_t c = 0; c < grid.size(); ++c) active[c] = load[c] > 0;

  const HopRateModel model(grid, ch, cfg.P, cfg.reuse_side(), active, routing_key(ch));
  HopRateCache rates(model);

  SimResult r;
  r.scheme = Scheme::mh;
  r.max_node_power = cfg.P;
  r.per_pair.reserve(flows.size());
  const double k = cfg.tdma_k;
  for (const auto& hops : routes) {
    double share = std::numeric_limits<double>::infinity();
    for (const Hop& h : hops) share = std::min(share, rates.rate(h) / (k * load[h.tx_cell]));
    r.per_pair.push_back(share);
  }
  r.aggregate = sum(r.per_pair);
  return r;
}

inline SimResult simulate_mh(const Topology& t, const ChannelRealization& ch, const SimConfig& cfg) {
  return simulate_mh(t, ch, cfg, flows_of(t));
}

}  // namespace hybridcap
