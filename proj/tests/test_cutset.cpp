#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "hybridcap/cutset.hpp"
#include "hybridcap/schemes.hpp"

using namespace hybridcap;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Instance {
  Topology t;
  ChannelRealization ch;
  Instance(TopologyConfig c, double alpha, std::uint64_t phase_seed)
      : t(generate_topology(c)), ch(t, alpha, phase_seed) {}
  Instance(const Instance&) = delete;
};

// Sum of the rates of flows that start left of the midline and end right of it.
double crossing_rate(const Topology& t, const std::vector<Flow>& flows, const SimResult& r) {
  double s = 0;
  for (std::size_t i = 0; i < flows.size(); ++i)
    if (t.nodes[flows[i].src].x < t.side / 2 && t.nodes[flows[i].dst].x >= t.side / 2) s += r.per_pair[i];
  return s;
}

}  // namespace

TEST(CutSet, ZeroPowerGivesZeroWirelessBound) {
  const Instance in({256, 16, 4, 1}, 3.0, 1);
  const CutBound b = bound_l1(in.t, in.ch, 0.0);
  EXPECT_EQ(b.total, 0.0);
  EXPECT_EQ(min_cut(in.t, in.ch, 0.0, 1.0), 0.0);
}

TEST(CutSet, ZeroPowerLeavesWiredLinks) {
  const Instance in({256, 16, 4, 1}, 3.0, 1);
  const CutBound b = bound_l2(in.t, in.ch, 0.0, 1.0);
  EXPECT_EQ(b.wired, 8.0);
  EXPECT_EQ(b.total, 8.0);
}

TEST(CutSet, SingleLinkAcrossTheMidline) {
  Topology t;
  t.side = 4;
  t.nodes = {{1.5, 2}, {2.5, 2}};
  t.pairing = {1, 0};
  t.rcp = {2, 2};
  const ChannelRealization ch(t, 3.0, 1);
  const CutBound b = bound_l1(t, ch, 6.0);
  EXPECT_NEAR(b.total, std::log2(7.0), 1e-12);
  EXPECT_NEAR(b.wireless.d1, std::log2(7.0), 1e-12);
  EXPECT_EQ(b.wireless.d2, 0.0);
  EXPECT_EQ(b.wireless.d3, 0.0);
}

TEST(CutSet, ZeroBackhaulLeavesWirelessOnly) {
  const Instance in({256, 16, 4, 2}, 3.0, 2);
  const CutBound b = bound_l2(in.t, in.ch, 10.0, 0.0);
  EXPECT_EQ(b.wired, 0.0);
  EXPECT_EQ(b.total, b.wireless.sum());
}

TEST(CutSet, TermsAreNonNegativeAndAddUp) {
  const Instance in({512, 16, 5, 3}, 3.0, 3);
  for (const CutBound& b : {bound_l1(in.t, in.ch, 100.0), bound_l2(in.t, in.ch, 100.0, 2.0)}) {
    EXPECT_GE(b.wireless.d1, 0.0);
    EXPECT_GE(b.wireless.d2, 0.0);
    EXPECT_GE(b.wireless.d3, 0.0);
    EXPECT_GE(b.wired, 0.0);
    EXPECT_DOUBLE_EQ(b.total, b.wireless.sum() + b.wired);
  }
}

TEST(CutSet, GroupsPartitionTheDestinations) {
  const Instance in({1024, 16, 4, 4}, 3.0, 4);
  const auto& t = in.t;
  const auto dest = cut_destinations(t, Cut::l1);
  std::size_t right_nodes = 0;
  for (const Point& p : t.nodes) right_nodes += p.x >= t.side / 2;
  EXPECT_EQ(dest.size(), right_nodes + 16 * 4);

  std::size_t d1 = 0, d2 = 0, d3 = 0;
  for (const Destination& d : dest) {
    const bool slab = d.where.x >= t.side / 2 && d.where.x < t.side / 2 + 1;
    EXPECT_EQ(slab, d.group == DestinationGroup::d1);
    d1 += d.group == DestinationGroup::d1;
    d2 += d.group == DestinationGroup::d2;
    d3 += d.group == DestinationGroup::d3;
  }
  EXPECT_EQ(d1 + d2 + d3, dest.size());
  EXPECT_GT(d1, 0u);
  EXPECT_GT(d2, 0u);
  EXPECT_GT(d3, 0u);
  // every D2 member is an antenna of a BS left of the midline
  for (const Destination& d : dest) {
    if (d.group != DestinationGroup::d2) continue;
    bool found = false;
    for (const BaseStation& bs : t.stations)
      for (const Point& a : bs.antennas) found = found || (a == d.where && bs.center.x < t.side / 2);
    EXPECT_TRUE(found);
  }
}

TEST(CutSet, SecondCutGrowsWithBackhaulAtLeftStationRate) {
  const Instance in({256, 16, 4, 5}, 3.0, 5);
  const double base = bound_l2(in.t, in.ch, 10.0, 0.0).total;
  double last = base;
  for (double r : {0.5, 1.0, 3.0, 10.0}) {
    const CutBound b = bound_l2(in.t, in.ch, 10.0, r);
    EXPECT_GE(b.total, last);
    EXPECT_EQ(b.wired, 8 * r);
    EXPECT_LE(b.wired, 16.0 / 2 * r);
    EXPECT_DOUBLE_EQ(b.total - base, 8 * r);
    last = b.total;
  }
  EXPECT_EQ(bound_l2(in.t, in.ch, 10.0, kInf).total, kInf);
}

TEST(CutSet, MinIsBelowEachCut) {
  const Instance in({256, 16, 4, 6}, 3.0, 6);
  const double m = min_cut(in.t, in.ch, 10.0, 0.2);
  EXPECT_LE(m, bound_l1(in.t, in.ch, 10.0).total);
  EXPECT_LE(m, bound_l2(in.t, in.ch, 10.0, 0.2).total);
}

TEST(CutSet, BoundsDominateEverySchemeOnFiftySeeds) {
  int violations = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance in({1024, 16, 4, s}, 3.0, 500 + s);
    const SimConfig cfg;
    const double l1 = bound_l1(in.t, in.ch, cfg.P).total;
    const double cut = min_cut(in.t, in.ch, cfg.P, cfg.r_bs);
    const auto flows = flows_of(in.t);
    for (Scheme sc : kAllSchemes) {
      const SimResult r = simulate(sc, in.t, in.ch, cfg);
      if (r.aggregate > l1 || r.aggregate > cut) ++violations;
      // the flows that actually cross the cut
      if (crossing_rate(in.t, flows, r) > cut) ++violations;
    }
  }
  EXPECT_EQ(violations, 0);
}

TEST(CutSet, SecondCutBindsUnderWeakBackhaul) {
  int l2_smaller = 0;
  const double r_bs = std::pow(1024.0, -0.4);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance in({1024, 16, 4, s}, 3.0, 700 + s);
    if (bound_l2(in.t, in.ch, SimConfig{}.P, r_bs).total < bound_l1(in.t, in.ch, SimConfig{}.P).total) ++l2_smaller;
  }
  EXPECT_GT(l2_smaller, 25);
}
