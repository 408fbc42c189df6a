#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hybridcap/scaling.hpp"

namespace hybridcap {

struct SimConfig {
  double P = 1e4;  // per-node transmit power, unit noise power
  int tdma_k = 9;  // spatial reuse factor, a perfect square
  double r_bs = std::numeric_limits<double>::infinity();  // backhaul rate per link
  double hc_cluster_exponent = 0.5;  // cluster size M = n^x for the HC estimate
  double hc_quant_bits = 8;          // Q, bits per quantized observation

  int reuse_side() const {
    const auto s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(tdma_k))));
    return s;
  }
};

inline void validate(const SimConfig& c) {
  if (!(c.P > 0)) throw std::invalid_argument("P must be positive");
  if (c.tdma_k < 1) throw std::invalid_argument("tdma_k must be at least 1");
  if (c.reuse_side() * c.reuse_side() != c.tdma_k)
    throw std::invalid_argument("tdma_k must be a perfect square (sqrt(k) x sqrt(k) reuse pattern)");
  if (!(c.r_bs >= 0)) throw std::invalid_argument("R_BS must be non-negative");
  if (!(c.hc_cluster_exponent > 0 && c.hc_cluster_exponent < 1))
    throw std::invalid_argument("hc_cluster_exponent must lie in (0,1)");
  if (!(c.hc_quant_bits > 0)) throw std::invalid_argument("hc_quant_bits must be positive");
}

class EmptyRoutingCellError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StageRates {
  double access = 0;
  double backhaul = 0;
  double exit = 0;
};

struct SimResult {
  Scheme scheme = Scheme::mh;
  double aggregate = 0;  // bits per slot, sum of per_pair
  bool has_stages = false;  // access/backhaul/exit only for ISH and IMH
  StageRates stages;
  std::vector<double> per_pair;
  bool estimate = false;  // single-level HC stand-in, not the recursive scheme

  // Largest transmit power used by any node / any BS in one slot.
  double max_node_power = 0;
  double max_bs_power = 0;

  // Per-BS diagnostics for infrastructure schemes.
  std::vector<double> per_bs_access_demand;
  std::vector<double> per_bs_backhaul;
};

struct Flow {
  std::size_t src;
  std::size_t dst;
};

inline double sum(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s;
}

}  // namespace hybridcap
