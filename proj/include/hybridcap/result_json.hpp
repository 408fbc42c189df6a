#pragma once

// JSON forms of simulation results and cut bounds, and the number format
// shared by every CSV and JSON writer: the shortest decimal that reads back
// to the same double, with "inf", "-inf" and "nan" spelled out.

#include <charconv>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <stdexcept>
#include <string>
#include <system_error>

#include "hybridcap/cutset.hpp"
#include "hybridcap/sim_types.hpp"

namespace hybridcap {

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

// Numbers go into JSON as numbers when finite and as strings otherwise;
// nlohmann::json would write null for an infinity.
inline nlohmann::json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

inline double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw std::invalid_argument("expected a number or \"inf\"/\"-inf\", got " + j.dump());
}

inline nlohmann::json to_json(const SimResult& r) {
  nlohmann::json j;
  j["scheme"] = to_string(r.scheme);
  j["aggregate"] = number_to_json(r.aggregate);
  j["estimate"] = r.estimate;
  if (r.has_stages)
    j["stages"] = {{"access", number_to_json(r.stages.access)},
                   {"backhaul", number_to_json(r.stages.backhaul)},
                   {"exit", number_to_json(r.stages.exit)}};
  j["per_pair"] = nlohmann::json::array();
  for (double x : r.per_pair) j["per_pair"].push_back(number_to_json(x));
  j["max_node_power"] = number_to_json(r.max_node_power);
  j["max_bs_power"] = number_to_json(r.max_bs_power);
  return j;
}

inline nlohmann::json to_json(const CutBound& b) {
  nlohmann::json j;
  j["cut"] = to_string(b.cut);
  j["wireless"] = {{"D1", number_to_json(b.wireless.d1)},
                   {"D2", number_to_json(b.wireless.d2)},
                   {"D3", number_to_json(b.wireless.d3)}};
  j["wired"] = number_to_json(b.wired);
  j["total"] = number_to_json(b.total);
  return j;
}

}  // namespace hybridcap
