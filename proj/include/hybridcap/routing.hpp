#pragma once

// Routing cells of area about 2 ln n tiling the network and SINR-based hop
// rates under a sqrt(k) x sqrt(k) reuse pattern. Shared by the multihop and
// infrastructure-multihop schemes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hybridcap/channel.hpp"
#include "hybridcap/rng.hpp"
#include "hybridcap/sim_types.hpp"
#include "hybridcap/topology.hpp"

namespace hybridcap {

class RoutingGrid {
 public:
  // A cell without nodes is an error.
  explicit RoutingGrid(const Topology& t) : side_(t.side) {
    const double n = static_cast<double>(t.n());
    const double target = std::sqrt(2 * std::log(n));
    g_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(side_ / target)));
    cell_ = side_ / static_cast<double>(g_);

    members_.resize(g_ * g_);
    for (std::size_t i = 0; i < t.n(); ++i) members_[cell_of(t.nodes[i])].push_back(i);
    for (std::size_t c = 0; c < members_.size(); ++c)
      if (members_[c].empty())
        throw EmptyRoutingCellError("routing cell " + std::to_string(c) + " (" +
                                    std::to_string(c % g_) + ", " + std::to_string(c / g_) +
                                    ") contains no node");
  }

  std::size_t per_side() const { return g_; }
  std::size_t size() const { return g_ * g_; }
  double cell_side() const { return cell_; }
  const std::vector<std::size_t>& members(std::size_t c) const { return members_[c]; }

  std::size_t cell_of(const Point& p) const {
    auto idx = [this](double v) {
      const auto i = static_cast<std::int64_t>(std::floor(v / cell_));
      return static_cast<std::size_t>(std::clamp<std::int64_t>(i, 0, static_cast<std::int64_t>(g_) - 1));
    };
    return idx(p.y) * g_ + idx(p.x);
  }

  // Cells from `from` to `to`, horizontal leg first, both ends included.
  std::vector<std::size_t> path(std::size_t from, std::size_t to) const {
    std::vector<std::size_t> cells;
    auto x = static_cast<std::int64_t>(from % g_), y = static_cast<std::int64_t>(from / g_);
    const auto tx = static_cast<std::int64_t>(to % g_), ty = static_cast<std::int64_t>(to / g_);
    cells.push_back(from);
    while (x != tx) {
      x += x < tx ? 1 : -1;
      cells.push_back(static_cast<std::size_t>(y) * g_ + static_cast<std::size_t>(x));
    }
    while (y != ty) {
      y += y < ty ? 1 : -1;
      cells.push_back(static_cast<std::size_t>(y) * g_ + static_cast<std::size_t>(x));
    }
    return cells;
  }

  // Reuse group of a cell under a s x s pattern.
  std::size_t phase(std::size_t c, int s) const {
    const auto su = static_cast<std::size_t>(s);
    return ((c / g_) % su) * su + (c % g_) % su;
  }

 private:
  double side_;
  std::size_t g_ = 1;
  double cell_ = 0;
  std::vector<std::vector<std::size_t>> members_;
};

// One transmission from routing cell tx_cell to rx_cell. An empty endpoint
// is a relay drawn uniformly from the nodes of its cell.
struct Hop {
  std::optional<Terminal> tx;
  std::size_t tx_cell;
  std::optional<Terminal> rx;
  std::size_t rx_cell;
  double tx_power;
};

// Hops of a multihop route. The first transmitter is `start` (a node or an
// antenna), intermediate receivers are relays of the cells on the path, and
// the final hop goes to `end`.
inline std::vector<Hop> route(const RoutingGrid& grid, const ChannelRealization& ch,
                              Terminal start, double start_power, Terminal end, double node_power) {
  const auto cells = grid.path(grid.cell_of(ch.position(start)), grid.cell_of(ch.position(end)));
  std::vector<Hop> hops;
  std::optional<Terminal> tx = start;
  double power = start_power;
  for (std::size_t i = 0; i + 2 < cells.size(); ++i) {
    hops.push_back({tx, cells[i], std::nullopt, cells[i + 1], power});
    tx.reset();
    power = node_power;
  }
  hops.push_back({tx, cells[cells.size() - (cells.size() > 1 ? 2 : 1)], end, cells.back(), power});
  return hops;
}

// Hop rate: the mean of log2(1 + SINR) over the random choices of the hop,
// namely relay endpoints and one transmitter in every other active cell of
// the hop's reuse group (each at power P). The receiver's own cell is
// excluded (half duplex). A hop with fixed endpoints and no interferers is
// evaluated exactly.
class HopRateModel {
 public:
  static constexpr int kDefaultSamples = 32;

  HopRateModel(const RoutingGrid& grid, const ChannelRealization& ch, double node_power, int reuse_side,
               const std::vector<bool>& active, std::uint64_t sample_key, int samples = kDefaultSamples)
      : grid_(&grid), ch_(&ch), power_(node_power), reuse_(reuse_side), key_(sample_key), samples_(samples) {
    if (samples < 1) throw std::invalid_argument("hop rate needs at least one sample");
    groups_.resize(static_cast<std::size_t>(reuse_side * reuse_side));
    for (std::size_t c = 0; c < grid.size(); ++c)
      if (active[c]) groups_[grid.phase(c, reuse_side)].push_back(c);
  }

  double rate(const Hop& h) const {
    std::vector<std::size_t> interferers;
    for (std::size_t c : groups_[grid_->phase(h.tx_cell, reuse_)])
      if (c != h.tx_cell && c != h.rx_cell) interferers.push_back(c);
    const bool fixed = h.tx && h.rx && interferers.empty();
    const int samples = fixed ? 1 : samples_;

    Rng rng(hash_key(key_, end_key(h.tx, h.tx_cell), end_key(h.rx, h.rx_cell)));
    const auto& nodes = ch_->topology().nodes;
    auto draw = [&](std::size_t cell) {
      const auto& m = grid_->members(cell);
      return nodes[m[rng.below(m.size())]];
    };
    double total = 0;
    for (int s = 0; s < samples; ++s) {
      const Point tx = h.tx ? ch_->position(*h.tx) : draw(h.tx_cell);
      const Point rx = h.rx ? ch_->position(*h.rx) : draw(h.rx_cell);
      double interference = 0;
      for (std::size_t c : interferers) interference += power_ * ch_->path_gain(distance(draw(c), rx));
      total += std::log2(1 + h.tx_power * ch_->path_gain(distance(tx, rx)) / (1 + interference));
    }
    return total / samples;
  }

  // Dense id of a hop endpoint, also used as a cache key.
  static std::uint64_t end_key(const std::optional<Terminal>& t, std::size_t cell) {
    if (!t) return (std::uint64_t{1} << 62) | cell;
    return t->is_node() ? t->index : (std::uint64_t{1} << 63) | (t->index << 20) | t->antenna;
  }

 private:
  const RoutingGrid* grid_;
  const ChannelRealization* ch_;
  double power_;
  int reuse_;
  std::uint64_t key_;
  int samples_;
  std::vector<std::vector<std::size_t>> groups_;
};

// Memoised hop rates; routes of different flows share most hops.
class HopRateCache {
 public:
  explicit HopRateCache(const HopRateModel& model) : model_(&model) {}

  double rate(const Hop& h) {
    const Key key{HopRateModel::end_key(h.tx, h.tx_cell), HopRateModel::end_key(h.rx, h.rx_cell), h.tx_cell};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double r = model_->rate(h);
    cache_.emplace(key, r);
    return r;
  }

 private:
  struct Key {
    std::uint64_t tx, rx, cell;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return hash_key(0, k.tx, k.rx, k.cell); }
  };

  const HopRateModel* model_;
  std::unordered_map<Key, double, KeyHash> cache_;
};

}  // namespace hybridcap
