#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hybridcap/channel.hpp"

using namespace hybridcap;

namespace {

Topology line_of_nodes(std::vector<Point> nodes) {
  Topology t;
  t.side = 20;
  t.nodes = std::move(nodes);
  t.rcp = {10, 10};
  return t;
}

BaseStation station(Point c, std::vector<Point> ants) {
  BaseStation bs;
  bs.center = c;
  bs.half_side = 0.5;
  bs.antennas = std::move(ants);
  bs.boundary_count = bs.antennas.size();
  return bs;
}

}  // namespace

TEST(Channel, UnitDistanceHasUnitMagnitude) {
  const Topology t = line_of_nodes({{1, 1}, {2, 1}});
  const ChannelRealization ch(t, 3.0, 5);
  EXPECT_NEAR(std::abs(ch.node_gain(0, 1)), 1.0, 1e-15);
}

TEST(Channel, InverseSquareMagnitude) {
  const Topology t = line_of_nodes({{1, 1}, {5, 1}});
  const ChannelRealization ch(t, 4.0, 5);
  EXPECT_NEAR(std::abs(ch.node_gain(0, 1)), 1.0 / 16, 1e-15);
}

TEST(Channel, PhaseIsReproducible) {
  const Topology t = line_of_nodes({{1, 1}, {5, 1}, {3, 7}});
  const ChannelRealization a(t, 3.0, 99), b(t, 3.0, 99), c(t, 3.0, 100);
  EXPECT_EQ(a.node_gain(0, 2), b.node_gain(0, 2));
  EXPECT_EQ(a.node_gain(0, 2), a.node_gain(0, 2));
  EXPECT_NE(a.node_gain(0, 2), c.node_gain(0, 2));
  EXPECT_NE(a.phase(Terminal::node(0), Terminal::node(2)), a.phase(Terminal::node(2), Terminal::node(0)));
}

TEST(Channel, ZeroDistanceIsAnError) {
  const Topology t = line_of_nodes({{1, 1}, {1, 1}});
  const ChannelRealization ch(t, 3.0, 1);
  EXPECT_THROW(ch.node_gain(0, 1), ZeroDistanceError);
  EXPECT_THROW(ch.node_gain(0, 0), ZeroDistanceError);
}

TEST(Channel, UplinkSingleAntennaIsNodeGainLike) {
  Topology t = line_of_nodes({{1, 1}});
  t.stations.push_back(station({3, 1}, {{3, 1}}));
  const ChannelRealization ch(t, 2.5, 3);
  const auto h = ch.uplink_vector(0, 0);
  ASSERT_EQ(h.size(), 1);
  EXPECT_EQ(h[0], ch.gain(Terminal::node(0), Terminal::bs_antenna(0, 0)));
  EXPECT_NEAR(std::abs(h[0]), std::pow(2.0, -1.25), 1e-15);
}

TEST(Channel, UplinkAndDownlinkMagnitudes) {
  Topology t = line_of_nodes({{1, 1}});
  t.stations.push_back(station({3, 1}, {{3, 1}, {1, 4}, {4, 5}}));
  const ChannelRealization ch(t, 2.2, 3);
  const auto up = ch.uplink_vector(0, 0);
  const auto down = ch.downlink_vector(0, 0);
  EXPECT_NEAR(std::abs(up[0]), std::pow(2.0, -1.1), 1e-15);
  double sum = 0;
  for (const Point& a : t.stations[0].antennas) sum += std::pow(distance(a, t.nodes[0]), -2.2);
  EXPECT_NEAR(up.squaredNorm(), sum, 1e-12);
  EXPECT_NEAR(down.squaredNorm(), sum, 1e-12);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(std::abs(up[k]), std::abs(down[k]), 1e-15);
  // independent phases in the two directions
  EXPECT_NE(std::arg(up[0]), std::arg(down[0]));
}

TEST(Channel, AlphaTwoAtDistanceTwo) {
  // alpha must exceed 2, so check the magnitude law at alpha slightly above.
  Topology t = line_of_nodes({{1, 1}});
  t.stations.push_back(station({3, 1}, {{3, 1}}));
  const ChannelRealization ch(t, 2.0 + 1e-12, 3);
  EXPECT_NEAR(std::abs(ch.uplink_vector(0, 0)[0]), 0.5, 1e-9);
  EXPECT_NEAR(std::abs(ch.downlink_vector(0, 0)[0]), 0.5, 1e-9);
}

TEST(Channel, MagnitudeLawOnRandomPairs) {
  const Topology t = generate_topology({1024, 16, 4, 2});
  const ChannelRealization ch(t, 3.7, 8);
  Rng rng(4);
  for (int k = 0; k < 10000; ++k) {
    const std::size_t i = rng.below(t.n());
    std::size_t j = rng.below(t.n());
    if (i == j) continue;
    const double r = distance(t.nodes[i], t.nodes[j]);
    EXPECT_NEAR(std::log(std::abs(ch.node_gain(i, j))), -(3.7 / 2) * std::log(r), 1e-12);
  }
}

TEST(Channel, PhasesAreUniform) {
  const Topology t = generate_topology({1024, 16, 4, 2});
  const ChannelRealization ch(t, 3.0, 11);
  std::vector<double> u;
  u.reserve(100000);
  for (std::size_t i = 0; u.size() < 100000; ++i)
    for (std::size_t k = 0; k < 100 && u.size() < 100000; ++k)
      u.push_back(ch.phase(Terminal::node(i), Terminal::node(k)) / (2 * std::numbers::pi));
  std::sort(u.begin(), u.end());
  double d = 0;
  const double n = static_cast<double>(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    d = std::max({d, (i + 1) / n - u[i], u[i] - i / n});
  // asymptotic Kolmogorov critical value at significance 0.01
  EXPECT_LT(d * std::sqrt(n), 1.6276);
  EXPECT_GE(u.front(), 0.0);
  EXPECT_LT(u.back(), 1.0);
}

TEST(Channel, DenseExport) {
  Topology t = line_of_nodes({{1, 1}, {4, 1}, {1, 6}});
  t.stations.push_back(station({8, 8}, {{8, 8}, {9, 8}}));
  const ChannelRealization ch(t, 3.0, 1);
  const std::vector<Terminal> rx = {Terminal::node(0), Terminal::bs_antenna(0, 1)};
  const std::vector<Terminal> tx = {Terminal::node(1), Terminal::node(2)};
  const auto h = ch.dense(rx, tx);
  ASSERT_EQ(h.rows(), 2);
  ASSERT_EQ(h.cols(), 2);
  EXPECT_EQ(h(0, 1), ch.node_gain(2, 0));
  EXPECT_EQ(h(1, 0), ch.uplink_vector(1, 0)[1]);
}
