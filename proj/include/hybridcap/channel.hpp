#pragma once

// Line-of-sight channel with random phases: h = exp(j theta) / r^(alpha/2).
// Phases are not stored; each one is a hash of the realization seed, the
// kind of link and its endpoints, so any gain can be recomputed on demand.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hybridcap/rng.hpp"
#include "hybridcap/topology.hpp"

namespace hybridcap {

class ZeroDistanceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A node, or antenna `antenna` of base station `bs`.
struct Terminal {
  enum class Kind : std::uint8_t { node, antenna };
  Kind kind = Kind::node;
  std::size_t index = 0;  // node index or BS index
  std::size_t antenna = 0;

  static Terminal node(std::size_t i) { return {Kind::node, i, 0}; }
  static Terminal bs_antenna(std::size_t b, std::size_t t) { return {Kind::antenna, b, t}; }
  bool is_node() const { return kind == Kind::node; }
  friend bool operator==(const Terminal&, const Terminal&) = default;
};

class ChannelRealization {
 public:
  ChannelRealization(const Topology& topology, double alpha, std::uint64_t phase_seed)
      : topo_(&topology), alpha_(alpha), seed_(phase_seed) {
    if (!(alpha > 2)) throw std::invalid_argument("alpha must exceed 2");
  }

  double alpha() const { return alpha_; }
  std::uint64_t phase_seed() const { return seed_; }
  const Topology& topology() const { return *topo_; }

  Point position(const Terminal& t) const {
    return t.is_node() ? topo_->nodes.at(t.index) : topo_->stations.at(t.index).antennas.at(t.antenna);
  }

  // Received power per unit transmit power at distance r: r^-alpha.
  double path_gain(double r) const {
    if (!(r > 0)) throw ZeroDistanceError("zero distance between distinct terminals");
    return std::pow(r, -alpha_);
  }

  double magnitude(double r) const {
    if (!(r > 0)) throw ZeroDistanceError("zero distance between distinct terminals");
    return std::pow(r, -alpha_ / 2);
  }

  // Phase in [0, 2 pi) of the link tx -> rx.
  double phase(const Terminal& tx, const Terminal& rx) const {
    const std::uint64_t kind = (tx.is_node() ? 0u : 2u) + (rx.is_node() ? 0u : 1u);
    const std::uint64_t key =
        hash_key(seed_, kind, tx.index, tx.antenna, rx.index, rx.antenna);
    return 2 * std::numbers::pi * to_unit(key);
  }

  std::complex<double> gain(const Terminal& tx, const Terminal& rx) const {
    if (tx == rx) throw ZeroDistanceError("gain from a terminal to itself");
    return std::polar(magnitude(distance(position(tx), position(rx))), phase(tx, rx));
  }

  // h_ki: node i transmitting, node k receiving.
  std::complex<double> node_gain(std::size_t i, std::size_t k) const {
    return gain(Terminal::node(i), Terminal::node(k));
  }

  // Column of gains from node i to the l antennas of BS b.
  Eigen::VectorXcd uplink_vector(std::size_t i, std::size_t b) const {
    const auto& ants = topo_->stations.at(b).antennas;
    Eigen::VectorXcd h(static_cast<Eigen::Index>(ants.size()));
    for (std::size_t t = 0; t < ants.size(); ++t)
      h[static_cast<Eigen::Index>(t)] = gain(Terminal::node(i), Terminal::bs_antenna(b, t));
    return h;
  }

  // Row of gains from the l antennas of BS b to node i.
  Eigen::RowVectorXcd downlink_vector(std::size_t b, std::size_t i) const {
    const auto& ants = topo_->stations.at(b).antennas;
    Eigen::RowVectorXcd h(static_cast<Eigen::Index>(ants.size()));
    for (std::size_t t = 0; t < ants.size(); ++t)
      h[static_cast<Eigen::Index>(t)] = gain(Terminal::bs_antenna(b, t), Terminal::node(i));
    return h;
  }

  // Dense matrix with entry (r, c) the gain from tx[c] to rx[r].
  Eigen::MatrixXcd dense(const std::vector<Terminal>& rx, const std::vector<Terminal>& tx) const {
    Eigen::MatrixXcd h(static_cast<Eigen::Index>(rx.size()), static_cast<Eigen::Index>(tx.size()));
    for (std::size_t r = 0; r < rx.size(); ++r)
      for (std::size_t c = 0; c < tx.size(); ++c)
        h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = gain(tx[c], rx[r]);
    return h;
  }

 private:
  const Topology* topo_;
  double alpha_;
  std::uint64_t seed_;
};

}  // namespace hybridcap
