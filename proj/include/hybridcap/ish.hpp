#pragma once

// Infrastructure-supported single-hop. Every node of a BS cell talks to its
// BS directly. Uplink: MMSE-SIC at each BS, signals from other cells treated
// as noise. Downlink: each BS serves the destinations in its cell with total
// power nP/m; rates come from the dual multiple-access channel with equal
// power per user, other BSs' signals treated as noise.

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "hybridcap/channel.hpp"
#include "hybridcap/imh.hpp"
#include "hybridcap/linalg.hpp"
#include "hybridcap/sim_types.hpp"

namespace hybridcap {

inline std::vector<std::vector<std::size_t>> nodes_per_bs(const Topology& t) {
  std::vector<std::vector<std::size_t>> members(t.m());
  for (std::size_t i = 0; i < t.n(); ++i) members[t.cell_of(t.nodes[i])].push_back(i);
  return members;
}

// Uplink SIC rate of every node at the BS of its cell, decoding in node
// index order.
inline std::vector<double> ish_uplink_rates(const Topology& t, const ChannelRealization& ch, double P) {
  if (t.stations.empty()) throw std::invalid_argument("ISH needs base stations");
  const auto members = nodes_per_bs(t);
  std::vector<double> rates(t.n(), 0.0);
  for (std::size_t b = 0; b < t.m(); ++b) {
    const auto l = static_cast<Eigen::Index>(t.stations[b].antennas.size());
    const auto& in = members[b];
    Eigen::MatrixXcd h(l, static_cast<Eigen::Index>(in.size()));
    for (std::size_t c = 0; c < in.size(); ++c) h.col(static_cast<Eigen::Index>(c)) = ch.uplink_vector(in[c], b);

    Eigen::MatrixXcd out(l, static_cast<Eigen::Index>(t.n() - in.size()));
    Eigen::Index col = 0;
    for (std::size_t i = 0; i < t.n(); ++i)
      if (t.cell_of(t.nodes[i]) != b) out.col(col++) = ch.uplink_vector(i, b);
    Eigen::MatrixXcd noise = Eigen::MatrixXcd::Identity(l, l);
    noise.noalias() += P * out * out.adjoint();

    const auto r = sic_rates(h, P, noise);
    for (std::size_t c = 0; c < in.size(); ++c) rates[in[c]] = r[c];
  }
  return rates;
}

// Downlink rate of each listed destination from the BS of its cell.
inline std::vector<double> ish_downlink_rates(const Topology& t, const ChannelRealization& ch, double P,
                                              const std::vector<std::size_t>& destinations) {
  if (t.stations.empty()) throw std::invalid_argument("ISH needs base stations");
  const double bs_power = static_cast<double>(t.n()) * P / static_cast<double>(t.m());
  std::vector<std::vector<std::size_t>> users(t.m());
  for (std::size_t j : destinations) users[t.cell_of(t.nodes[j])].push_back(j);

  std::vector<double> rates(t.n(), 0.0);
  for (std::size_t b = 0; b < t.m(); ++b) {
    if (users[b].empty()) continue;
    const auto l = static_cast<Eigen::Index>(t.stations[b].antennas.size());
    Eigen::MatrixXcd h(l, static_cast<Eigen::Index>(users[b].size()));
    for (std::size_t c = 0; c < users[b].size(); ++c) {
      const std::size_t j = users[b][c];
      // Other BSs spread nP/m evenly over their antennas.
      double interference = 0;
      for (std::size_t o = 0; o < t.m(); ++o) {
        if (o == b) continue;
        const auto& ants = t.stations[o].antennas;
        double g = 0;
        for (const Point& a : ants) g += ch.path_gain(distance(a, t.nodes[j]));
        interference += bs_power / static_cast<double>(ants.size()) * g;
      }
      h.col(static_cast<Eigen::Index>(c)) = ch.downlink_vector(b, j).adjoint() / std::sqrt(1 + interference);
    }
    const double per_user = bs_power / static_cast<double>(users[b].size());
    const auto r = sic_rates(h, per_user, Eigen::MatrixXcd::Identity(l, l));
    for (std::size_t c = 0; c < users[b].size(); ++c) rates[users[b][c]] = r[c];
  }
  return rates;
}

inline SimResult simulate_ish(const Topology& t, const ChannelRealization& ch, const SimConfig& cfg,
                              const std::vector<Flow>& flows) {
  validate(cfg);
  if (t.stations.empty()) throw std::invalid_argument("ISH needs base stations");
  std::vector<std::size_t> as_src(t.n(), 0), as_dst(t.n(), 0), dsts;
  for (const Flow& f : flows) {
    if (as_dst[f.dst]++ == 0) dsts.push_back(f.dst);
    ++as_src[f.src];
  }
  const auto up = ish_uplink_rates(t, ch, cfg.P);
  const auto down = ish_downlink_rates(t, ch, cfg.P, dsts);

  std::vector<double> access(flows.size()), exit(flows.size());
  std::vector<std::size_t> home(flows.size()), target(flows.size());
  for (std::size_t i = 0; i < flows.size(); ++i) {
    // a node that sources or sinks several flows splits its rate evenly
    access[i] = up[flows[i].src] / static_cast<double>(as_src[flows[i].src]);
    exit[i] = down[flows[i].dst] / static_cast<double>(as_dst[flows[i].dst]);
    home[i] = t.cell_of(t.nodes[flows[i].src]);
    target[i] = t.cell_of(t.nodes[flows[i].dst]);
  }

  SimResult r;
  r.scheme = Scheme::ish;
  r.max_node_power = cfg.P;
  r.max_bs_power = static_cast<double>(t.n()) * cfg.P / static_cast<double>(t.m());
  detail::apply_backhaul(access, exit, home, target, t.m(), cfg.r_bs, r);
  return r;
}

inline SimResult simulate_ish(const Topology& t, const ChannelRealization& ch, const SimConfig& cfg) {
  return simulate_ish(t, ch, cfg, flows_of(t));
}

}  // namespace hybridcap
