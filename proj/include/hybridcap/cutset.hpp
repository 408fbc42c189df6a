#pragma once

// Numeric cut-set upper bounds for one instance. Both cuts split the network
// at the vertical midline x = side/2.
//
// L1: sources are the nodes strictly left of the midline; the destination
// side holds the remaining nodes, every BS antenna and the central processor.
// L2: the antennas of the BSs centred left of the midline join the sources,
// so their wired links to the central processor cross the cut.
//
// Each wireless term bounds the mutual information into one destination by
// Hadamard's inequality and Cauchy-Schwarz: log2(1 + (sum_i sqrt(P_i)|h_ki|)^2),
// where a BS acting as source contributes sqrt(nP/m) * ||h_kb|| under its
// total power constraint. The bound covers the flows that cross the cut.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hybridcap/channel.hpp"
#include "hybridcap/topology.hpp"

namespace hybridcap {

enum class Cut { l1, l2 };

inline std::string to_string(Cut c) { return c == Cut::l1 ? "L1" : "L2"; }

// Destination groups: D1 is the width-1 slab right of the midline (and the
// central processor), D2 the antennas within distance 1 of the footprint
// boundary of a BS centred left of the midline, D3 everything else.
enum class DestinationGroup { d1, d2, d3 };

struct GroupTerms {
  double d1 = 0;
  double d2 = 0;
  double d3 = 0;
  double sum() const { return d1 + d2 + d3; }
  double& operator[](DestinationGroup g) { return g == DestinationGroup::d1 ? d1 : g == DestinationGroup::d2 ? d2 : d3; }
};

struct Destination {
  Point where;
  DestinationGroup group;
};

struct CutBound {
  Cut cut = Cut::l1;
  GroupTerms wireless;
  double wired = 0;  // L2 only
  double total = 0;
};

namespace detail {

inline bool left_of_midline(const Topology& t, const Point& p) { return p.x < t.side / 2; }

inline bool in_slab(const Topology& t, const Point& p) {
  const double mid = t.side / 2;
  return p.x >= mid && p.x < mid + 1;
}

// Distance from an antenna to the nearest edge of its footprint.
inline double to_footprint_edge(const BaseStation& bs, const Point& p) {
  return bs.half_side - std::max(std::abs(p.x - bs.center.x), std::abs(p.y - bs.center.y));
}

// Sources contributing to one destination's received amplitude bound.
struct SourceSet {
  std::vector<Point> nodes;
  std::vector<std::size_t> stations;
};

inline double wireless_term(const Topology& t, const ChannelRealization& ch, const SourceSet& s, double P,
                            const Point& rx) {
  double amp = 0;
  for (const Point& p : s.nodes) amp += std::sqrt(P) * ch.magnitude(distance(p, rx));
  if (!s.stations.empty()) {
    const double bs_power = static_cast<double>(t.n()) * P / static_cast<double>(t.m());
    for (std::size_t b : s.stations) {
      double norm2 = 0;
      for (const Point& a : t.stations[b].antennas) norm2 += ch.path_gain(distance(a, rx));
      amp += std::sqrt(bs_power * norm2);
    }
  }
  return std::log2(1 + amp * amp);
}

}  // namespace detail

// Wireless receivers on the destination side of a cut, each in one group.
// L1 receives at every antenna; L2 only at antennas of BSs not left of the
// midline.
inline std::vector<Destination> cut_destinations(const Topology& t, Cut cut) {
  auto group = [&](const Point& p, bool ring) {
    if (detail::in_slab(t, p)) return DestinationGroup::d1;
    return ring ? DestinationGroup::d2 : DestinationGroup::d3;
  };
  std::vector<Destination> d;
  for (const Point& p : t.nodes)
    if (!detail::left_of_midline(t, p)) d.push_back({p, group(p, false)});
  for (const BaseStation& bs : t.stations) {
    const bool left_bs = detail::left_of_midline(t, bs.center);
    if (left_bs && cut == Cut::l2) continue;
    for (const Point& a : bs.antennas) d.push_back({a, group(a, left_bs && detail::to_footprint_edge(bs, a) <= 1)});
  }
  return d;
}

inline CutBound bound_l1(const Topology& t, const ChannelRealization& ch, double P) {
  detail::SourceSet s;
  for (const Point& p : t.nodes)
    if (detail::left_of_midline(t, p)) s.nodes.push_back(p);

  CutBound b;
  b.cut = Cut::l1;
  for (const Destination& d : cut_destinations(t, Cut::l1)) b.wireless[d.group] += detail::wireless_term(t, ch, s, P, d.where);
  // the central processor has no wireless receiver, so its term is zero
  b.total = b.wireless.sum();
  return b;
}

inline CutBound bound_l2(const Topology& t, const ChannelRealization& ch, double P, double r_bs) {
  detail::SourceSet s;
  for (const Point& p : t.nodes)
    if (detail::left_of_midline(t, p)) s.nodes.push_back(p);
  for (std::size_t b = 0; b < t.m(); ++b)
    if (detail::left_of_midline(t, t.stations[b].center)) s.stations.push_back(b);

  CutBound b;
  b.cut = Cut::l2;
  for (const Destination& d : cut_destinations(t, Cut::l2)) b.wireless[d.group] += detail::wireless_term(t, ch, s, P, d.where);
  // 0 * inf is NaN, and no wired link crosses when no BS is on the left
  b.wired = s.stations.empty() ? 0.0 : static_cast<double>(s.stations.size()) * r_bs;
  b.total = b.wireless.sum() + b.wired;
  return b;
}

inline double min_cut(const Topology& t, const ChannelRealization& ch, double P, double r_bs) {
  return std::min(bound_l1(t, ch, P).total, bound_l2(t, ch, P, r_bs).total);
}

}  // namespace hybridcap
