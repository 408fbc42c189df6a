#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "hybridcap/hc.hpp"
#include "hybridcap/imh.hpp"
#include "hybridcap/ish.hpp"
#include "hybridcap/mh.hpp"
#include "hybridcap/scaling.hpp"

namespace hybridcap {

inline SimResult simulate(Scheme s, const Topology& t, const ChannelRealization& ch, const SimConfig& cfg) {
  switch (s) {
    case Scheme::mh: return simulate_mh(t, ch, cfg);
    case Scheme::hc: return estimate_hc_single_level(t, ch, cfg);
    case Scheme::ish: return simulate_ish(t, ch, cfg);
    case Scheme::imh: return simulate_imh(t, ch, cfg);
  }
  throw std::logic_error("bad Scheme");
}

// Runs all four schemes and returns the one with the largest aggregate;
// exact ties go to the higher tie_rank().
inline std::pair<Scheme, SimResult> best_of_schemes(const Topology& t, const ChannelRealization& ch,
                                                    const SimConfig& cfg) {
  std::pair<Scheme, SimResult> best{Scheme::mh, simulate(Scheme::mh, t, ch, cfg)};
  for (Scheme s : {Scheme::hc, Scheme::ish, Scheme::imh}) {
    SimResult r = simulate(s, t, ch, cfg);
    if (r.aggregate > best.second.aggregate ||
        (r.aggregate == best.second.aggregate && tie_rank(s) > tie_rank(best.first)))
      best = {s, std::move(r)};
  }
  return best;
}

}  // namespace hybridcap
