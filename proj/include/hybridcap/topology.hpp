#pragma once

// Finite network instances: n nodes uniform on a sqrt(n) x sqrt(n) square,
// m base stations at the centres of a sqrt(m) x sqrt(m) grid of cells, each
// with l antennas, a random source-destination derangement, and the central
// processor at the middle of the square.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hybridcap/finite_n.hpp"
#include "hybridcap/rng.hpp"

namespace hybridcap {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

class InfeasibleGeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TopologyConfig {
  std::int64_t n = 0;
  std::int64_t m = 1;
  std::int64_t l = 1;
  std::uint64_t seed = 0;
  double delta0 = 0.5;
};

struct BaseStation {
  Point center;
  double half_side = 0.0;       // footprint is the closed square center +- half_side
  std::vector<Point> antennas;  // boundary antennas first, then interior ones
  std::size_t boundary_count = 0;

  bool covers(const Point& p) const {
    return std::abs(p.x - center.x) <= half_side && std::abs(p.y - center.y) <= half_side;
  }
};

struct Topology {
  double side = 0.0;
  std::vector<Point> nodes;
  std::vector<BaseStation> stations;  // row-major over the cell grid, may be empty
  std::vector<std::size_t> pairing;   // destination of node i
  Point rcp;

  std::size_t n() const { return nodes.size(); }
  std::size_t m() const { return stations.size(); }
  std::size_t cells_per_side() const {
    return stations.empty() ? 1 : static_cast<std::size_t>(isqrt(static_cast<std::int64_t>(m())));
  }
  double cell_side() const { return side / static_cast<double>(cells_per_side()); }

  // Cell of the BS grid containing p, row-major with row = floor(y / cell).
  std::size_t cell_of(const Point& p) const {
    const std::size_t q = cells_per_side();
    const double c = cell_side();
    auto clamp = [q](double v) {
      const auto i = static_cast<std::int64_t>(std::floor(v));
      return static_cast<std::size_t>(std::clamp<std::int64_t>(i, 0, static_cast<std::int64_t>(q) - 1));
    };
    return clamp(p.y / c) * q + clamp(p.x / c);
  }
};

inline double delta_exponent(double delta0) {
  return (1 + delta0) * std::log(1 + delta0) - delta0;
}

// Number of boundary antennas per BS: min{l, ceil(sqrt(n/m))}.
inline std::int64_t boundary_antenna_count(std::int64_t n, std::int64_t m, std::int64_t l) {
  const std::int64_t ratio = n / m + (n % m != 0 ? 1 : 0);  // ceil(n/m)
  std::int64_t r = isqrt(ratio);
  // ceil(sqrt(n/m)) is the least r with r^2 m >= n.
  while (r * r * m < n) ++r;
  while (r > 1 && (r - 1) * (r - 1) * m >= n) --r;
  return std::min(l, r);
}

inline void validate(const TopologyConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("topology needs at least two nodes");
  if (cfg.m < 1 || cfg.l < 1) throw std::invalid_argument("m and l must be positive");
  const std::int64_t q = isqrt(cfg.m);
  if (q * q != cfg.m) throw std::invalid_argument("m must be a perfect square");
  if (cfg.m >= cfg.n) throw std::invalid_argument("m must be smaller than n");
  if (cfg.m * cfg.l > cfg.n) throw std::invalid_argument("m*l must not exceed n");
  if (!(cfg.delta0 > 0 && cfg.delta0 < 1)) throw std::invalid_argument("delta0 must lie in (0,1)");
}

namespace detail {

// Point at arc length s along the boundary of a square, counter-clockwise
// from its bottom-left corner.
inline Point perimeter_point(const Point& c, double h, double s) {
  const double side = 2 * h;
  const double x0 = c.x - h, y0 = c.y - h;
  if (s < side) return {x0 + s, y0};
  s -= side;
  if (s < side) return {x0 + side, y0 + s};
  s -= side;
  if (s < side) return {x0 + side - s, y0 + side};
  s -= side;
  return {x0, y0 + side - s};
}

}  // namespace detail

// Random draws happen in a fixed order (interior antennas, nodes, pairing)
// from one stream, so a seed fixes the whole instance.
inline Topology generate_topology(const TopologyConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  Topology t;
  t.side = std::sqrt(static_cast<double>(cfg.n));
  t.rcp = {t.side / 2, t.side / 2};

  const std::int64_t q = isqrt(cfg.m);
  const double cell = t.side / static_cast<double>(q);
  const std::int64_t boundary = boundary_antenna_count(cfg.n, cfg.m, cfg.l);

  // Unit antenna spacing: perimeter equals the number of boundary antennas,
  // unless that would make the footprint wider than half the cell.
  double footprint = static_cast<double>(boundary) / 4.0;
  if (footprint > cell / 2) footprint = cell / 2;
  if (!(footprint < cell)) throw InfeasibleGeometryError("BS footprint does not fit its cell");
  const double half = footprint / 2;
  const double spacing = 4 * footprint / static_cast<double>(boundary);

  t.stations.resize(static_cast<std::size_t>(cfg.m));
  for (std::int64_t r = 0; r < q; ++r)
    for (std::int64_t c = 0; c < q; ++c) {
      BaseStation& bs = t.stations[static_cast<std::size_t>(r * q + c)];
      bs.center = {(static_cast<double>(c) + 0.5) * cell, (static_cast<double>(r) + 0.5) * cell};
      bs.half_side = half;
      bs.boundary_count = static_cast<std::size_t>(boundary);
      bs.antennas.reserve(static_cast<std::size_t>(cfg.l));
      for (std::int64_t k = 0; k < boundary; ++k)
        bs.antennas.push_back(
            detail::perimeter_point(bs.center, half, spacing * (static_cast<double>(k) + 0.5)));
    }
  for (BaseStation& bs : t.stations)
    for (std::int64_t k = boundary; k < cfg.l; ++k) {
      // strictly inside the footprint
      Point p;
      do {
        p = {rng.uniform(bs.center.x - half, bs.center.x + half),
             rng.uniform(bs.center.y - half, bs.center.y + half)};
      } while (!(std::abs(p.x - bs.center.x) < half && std::abs(p.y - bs.center.y) < half));
      bs.antennas.push_back(p);
    }

  t.nodes.reserve(static_cast<std::size_t>(cfg.n));
  while (t.nodes.size() < static_cast<std::size_t>(cfg.n)) {
    const Point p{rng.uniform(0, t.side), rng.uniform(0, t.side)};
    if (!t.stations[t.cell_of(p)].covers(p)) t.nodes.push_back(p);
  }

  // Uniform derangement: shuffle until no fixed point (about e tries).
  t.pairing.resize(t.nodes.size());
  for (;;) {
    std::iota(t.pairing.begin(), t.pairing.end(), std::size_t{0});
    for (std::size_t i = t.pairing.size() - 1; i > 0; --i)
      std::swap(t.pairing[i], t.pairing[rng.below(i + 1)]);
    bool fixed = false;
    for (std::size_t i = 0; i < t.pairing.size() && !fixed; ++i) fixed = t.pairing[i] == i;
    if (!fixed) break;
  }
  return t;
}

// Nodes per BS cell, row-major. With no stations the whole square is one cell.
inline std::vector<std::size_t> cell_counts(const Topology& t) {
  std::vector<std::size_t> counts(std::max<std::size_t>(1, t.m()), 0);
  for (const Point& p : t.nodes) ++counts[t.cell_of(p)];
  return counts;
}

// Every cell holds between (1-delta0) n/m and (1+delta0) n/m nodes.
inline bool cell_counts_concentrated(const Topology& t, double delta0) {
  const double mean = static_cast<double>(t.n()) / static_cast<double>(std::max<std::size_t>(1, t.m()));
  for (std::size_t c : cell_counts(t)) {
    const auto v = static_cast<double>(c);
    if (v < (1 - delta0) * mean || v > (1 + delta0) * mean) return false;
  }
  return true;
}

// Smallest distance over node-node and node-boundary-antenna pairs, +inf if
// there is no pair. Unit-square buckets keep this near linear.
inline double min_pairwise_distance(const Topology& t) {
  struct Item {
    Point p;
    bool node;
  };
  std::vector<Item> items;
  for (const Point& p : t.nodes) items.push_back({p, true});
  for (const BaseStation& bs : t.stations)
    for (std::size_t k = 0; k < bs.boundary_count; ++k) items.push_back({bs.antennas[k], false});

  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](const Item& a, const Item& b) {
    if (a.node || b.node) best = std::min(best, distance(a.p, b.p));
  };

  const auto g = static_cast<std::int64_t>(std::ceil(t.side));
  if (g <= 0 || items.size() < 64) {
    for (std::size_t i = 0; i < items.size(); ++i)
      for (std::size_t j = i + 1; j < items.size(); ++j) consider(items[i], items[j]);
    return best;
  }
  auto bucket = [g](double v) {
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(v)), 0, g - 1);
  };
  std::vector<std::vector<std::size_t>> grid(static_cast<std::size_t>(g * g));
  for (std::size_t i = 0; i < items.size(); ++i)
    grid[static_cast<std::size_t>(bucket(items[i].p.y) * g + bucket(items[i].p.x))].push_back(i);

  for (std::int64_t by = 0; by < g; ++by)
    for (std::int64_t bx = 0; bx < g; ++bx) {
      const auto& here = grid[static_cast<std::size_t>(by * g + bx)];
      for (std::size_t a = 0; a < here.size(); ++a)
        for (std::size_t b = a + 1; b < here.size(); ++b) consider(items[here[a]], items[here[b]]);
      // forward neighbours so every adjacent pair of buckets is visited once
      const std::int64_t nbr[4][2] = {{1, 0}, {-1, 1}, {0, 1}, {1, 1}};
      for (const auto& d : nbr) {
        const std::int64_t nx = bx + d[0], ny = by + d[1];
        if (nx < 0 || nx >= g || ny >= g) continue;
        for (std::size_t i : here)
          for (std::size_t j : grid[static_cast<std::size_t>(ny * g + nx)]) consider(items[i], items[j]);
      }
    }
  // Bucket search only sees pairs closer than one unit; fall back otherwise.
  if (best >= 1.0) {
    for (std::size_t i = 0; i < items.size(); ++i)
      for (std::size_t j = i + 1; j < items.size(); ++j) consider(items[i], items[j]);
  }
  return best;
}

// Largest number of nodes in one of the unit squares [i, i+1) x [j, j+1)
// tiling the network.
inline std::size_t max_nodes_unit_square(const Topology& t) {
  const auto g = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t.side)));
  std::vector<std::size_t> counts(static_cast<std::size_t>(g * g), 0);
  std::size_t best = 0;
  for (const Point& p : t.nodes) {
    const auto ix = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(p.x)), 0, g - 1);
    const auto iy = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(p.y)), 0, g - 1);
    best = std::max(best, ++counts[static_cast<std::size_t>(iy * g + ix)]);
  }
  return best;
}

}  // namespace hybridcap
