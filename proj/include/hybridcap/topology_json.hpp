#pragma once

// JSON form of a topology: points are [x, y] arrays, the pairing is an index
// array. Doubles round-trip exactly through nlohmann::json.

#include <json.hpp>
#include <stdexcept>

#include "hybridcap/topology.hpp"

namespace hybridcap {

inline constexpr int kTopologySchemaVersion = 1;

inline nlohmann::json point_to_json(const Point& p) { return nlohmann::json::array({p.x, p.y}); }

inline Point point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("point must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline nlohmann::json to_json(const Topology& t) {
  nlohmann::json j;
  j["schema_version"] = kTopologySchemaVersion;
  j["side"] = t.side;
  j["nodes"] = nlohmann::json::array();
  for (const Point& p : t.nodes) j["nodes"].push_back(point_to_json(p));
  j["bs_centers"] = nlohmann::json::array();
  j["antenna_positions"] = nlohmann::json::array();
  j["boundary_antennas"] = nlohmann::json::array();
  j["footprint_half_sides"] = nlohmann::json::array();
  for (const BaseStation& bs : t.stations) {
    j["bs_centers"].push_back(point_to_json(bs.center));
    nlohmann::json ants = nlohmann::json::array();
    for (const Point& a : bs.antennas) ants.push_back(point_to_json(a));
    j["antenna_positions"].push_back(ants);
    j["boundary_antennas"].push_back(bs.boundary_count);
    j["footprint_half_sides"].push_back(bs.half_side);
  }
  j["sd_pairing"] = t.pairing;
  j["rcp_position"] = point_to_json(t.rcp);
  return j;
}

inline Topology topology_from_json(const nlohmann::json& j) {
  if (j.value("schema_version", 0) != kTopologySchemaVersion)
    throw std::invalid_argument("unsupported topology schema_version");
  Topology t;
  t.side = j.at("side").get<double>();
  for (const auto& p : j.at("nodes")) t.nodes.push_back(point_from_json(p));
  const auto& centers = j.at("bs_centers");
  const auto& ants = j.at("antenna_positions");
  const auto& bcount = j.at("boundary_antennas");
  const auto& halves = j.at("footprint_half_sides");
  if (ants.size() != centers.size() || bcount.size() != centers.size() ||
      halves.size() != centers.size())
    throw std::invalid_argument("base station arrays differ in length");
  for (std::size_t b = 0; b < centers.size(); ++b) {
    BaseStation bs;
    bs.center = point_from_json(centers[b]);
    bs.half_side = halves[b].get<double>();
    for (const auto& a : ants[b]) bs.antennas.push_back(point_from_json(a));
    bs.boundary_count = bcount[b].get<std::size_t>();
    if (bs.boundary_count > bs.antennas.size())
      throw std::invalid_argument("more boundary antennas than antennas");
    t.stations.push_back(std::move(bs));
  }
  t.pairing = j.at("sd_pairing").get<std::vector<std::size_t>>();
  if (t.pairing.size() != t.nodes.size()) throw std::invalid_argument("pairing length differs from node count");
  t.rcp = point_from_json(j.at("rcp_position"));
  return t;
}

}  // namespace hybridcap
