#pragma once

// Infrastructure-supported multihop. Access: each source relays to the
// nearest boundary antenna of the BS of its own cell. Backhaul: BS -> central
// processor -> BS of the destination's cell, R_BS per link and direction.
// Exit: the target BS relays from its boundary antenna nearest the
// destination.
//
// Routing-cell loads are counted per boundary antenna ("lane"), so a BS with
// b boundary antennas drains b multihop paths at once; this is the
// min{l, sqrt(n/m)} parallelism of the scheme.

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "hybridcap/channel.hpp"
#include "hybridcap/mh.hpp"
#include "hybridcap/routing.hpp"
#include "hybridcap/sim_types.hpp"

namespace hybridcap {

inline std::size_t nearest_boundary_antenna(const BaseStation& bs, const Point& p) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < bs.boundary_count; ++k) {
    const double d = distance(bs.antennas[k], p);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

// Fraction of demand a link of rate r can carry.
inline double link_scale(double demand, double r) {
  if (!(demand > r)) return 1.0;
  return r / demand;
}

namespace detail {

// Applies the per-link backhaul limit in both directions. Each flow asks for
// min(access, exit); the uplink of its home BS scales its BS's requests down
// to R_BS, then the downlink of the target BS does the same. Every flow of an
// overloaded link loses the same fraction, so the aggregate is
// sum over target BSs of min(delivered uplink, R_BS) and grows with R_BS.
// The reported backhaul stage is what the access stage offers each BS,
// capped at R_BS.
inline void apply_backhaul(const std::vector<double>& access, const std::vector<double>& exit,
                           const std::vector<std::size_t>& home, const std::vector<std::size_t>& target,
                           std::size_t m, double r_bs, SimResult& r) {
  const std::size_t f = access.size();
  std::vector<double> offered(m, 0.0), request(m, 0.0), downlink(m, 0.0);
  for (std::size_t i = 0; i < f; ++i) {
    offered[home[i]] += access[i];
    request[home[i]] += std::min(access[i], exit[i]);
  }
  std::vector<double> up(f);
  for (std::size_t i = 0; i < f; ++i) {
    up[i] = std::min(access[i], exit[i]) * link_scale(request[home[i]], r_bs);
    downlink[target[i]] += up[i];
  }
  r.per_pair.resize(f);
  for (std::size_t i = 0; i < f; ++i) r.per_pair[i] = up[i] * link_scale(downlink[target[i]], r_bs);

  r.has_stages = true;
  r.stages.access = sum(access);
  r.stages.exit = sum(exit);
  r.per_bs_access_demand = offered;
  r.per_bs_backhaul.resize(m);
  for (std::size_t b = 0; b < m; ++b) r.per_bs_backhaul[b] = std::min(offered[b], r_bs);
  r.stages.backhaul = sum(r.per_bs_backhaul);
  r.aggregate = sum(r.per_pair);
}

}  // namespace detail

inline SimResult simulate_imh(const Topology& t, const ChannelRealization& ch, const SimConfig& cfg,
                              const std::vector<Flow>& flows) {
  validate(cfg);
  if (t.stations.empty()) throw std::invalid_argument("IMH needs base stations");
  const RoutingGrid grid(t);
  const std::size_t m = t.m();
  const std::size_t cells = grid.size();
  const double n = static_cast<double>(t.n());

  std::vector<double> antenna_power(m);
  double max_bs_power = 0;
  for (std::size_t b = 0; b < m; ++b) {
    const double count = static_cast<double>(t.stations[b].boundary_count);
    antenna_power[b] = std::min(cfg.P, n * cfg.P / (static_cast<double>(m) * count));
    max_bs_power = std::max(max_bs_power, antenna_power[b] * count);
  }

  auto lane_key = [cells](std::size_t b, std::size_t a, std::size_t cell) {
    return (static_cast<std::uint64_t>(b) << 40) ^ (static_cast<std::uint64_t>(a) << 24) ^ cell;
  };
  // lane = (BS, antenna); cell index fits in 24 bits at any size we simulate
  if (cells >= (std::size_t{1} << 24)) throw std::invalid_argument("routing grid too large");

  std::vector<std::vector<Hop>> up_routes, down_routes;
  std::vector<std::size_t> home(flows.size()), target(flows.size());
  std::unordered_map<std::uint64_t, double> up_load, down_load;
  std::vector<bool> up_active(cells, false), down_active(cells, false);
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const Point s = t.nodes[flows[i].src], d = t.nodes[flows[i].dst];
    home[i] = t.cell_of(s);
    target[i] = t.cell_of(d);
    const std::size_t a_up = nearest_boundary_antenna(t.stations[home[i]], s);
    const std::size_t a_down = nearest_boundary_antenna(t.stations[target[i]], d);
    up_routes.push_back(route(grid, ch, Terminal::node(flows[i].src), cfg.P,
                              Terminal::bs_antenna(home[i], a_up), cfg.P));
    down_routes.push_back(route(grid, ch, Terminal::bs_antenna(target[i], a_down),
                                antenna_power[target[i]], Terminal::node(flows[i].dst), cfg.P));
    for (const Hop& h : up_routes.back()) {
      up_load[lane_key(home[i], a_up, h.tx_cell)] += 1;
      up_active[h.tx_cell] = true;
    }
    for (const Hop& h : down_routes.back()) {
      down_load[lane_key(target[i], a_down, h.tx_cell)] += 1;
      down_active[h.tx_cell] = true;
    }
  }

  const HopRateModel up_model(grid, ch, cfg.P, cfg.reuse_side(), up_active, hash_key(routing_key(ch), 1));
  const HopRateModel down_model(grid, ch, cfg.P, cfg.reuse_side(), down_active, hash_key(routing_key(ch), 2));
  HopRateCache up_rates(up_model), down_rates(down_model);
  const double k = cfg.tdma_k;

  std::vector<double> access(flows.size()), exit(flows.size());
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const std::size_t a_up = up_routes[i].back().rx->antenna;
    double share = std::numeric_limits<double>::infinity();
    for (const Hop& h : up_routes[i])
      share = std::min(share, up_rates.rate(h) / (k * up_load[lane_key(home[i], a_up, h.tx_cell)]));
    access[i] = share;

    const std::size_t a_down = down_routes[i].front().tx->antenna;
    share = std::numeric_limits<double>::infinity();
    for (const Hop& h : down_routes[i])
      share = std::min(share, down_rates.rate(h) / (k * down_load[lane_key(target[i], a_down, h.tx_cell)]));
    exit[i] = share;
  }

  SimResult r;
  r.scheme = Scheme::imh;
  r.max_node_power = cfg.P;
  r.max_bs_power = max_bs_power;
  detail::apply_backhaul(access, exit, home, target, m, cfg.r_bs, r);
  return r;
}

inline SimResult simulate_imh(const Topology& t, const ChannelRealization& ch, const SimConfig& cfg) {
  return simulate_imh(t, ch, cfg, flows_of(t));
}

}  // namespace hybridcap
