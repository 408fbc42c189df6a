#pragma once

#include <stdexcept>

#include "hybridcap/extended.hpp"
#include "hybridcap/regime.hpp"

namespace hybridcap {

// Exponent of the smallest per-link backhaul rate that leaves the exponent
// of the infinite-backhaul network unchanged for every alpha. -inf means no
// backhaul at all is needed.
template <typename T>
Extended<T> min_backhaul_exponent(const T& beta, const T& gamma) {
  const T one(1), two(2);
  switch (classify_regime_2d(beta, gamma)) {
    case Regime2d::a: return Extended<T>::neg_inf();
    // On the edges beta+gamma = 1/2 of B and beta = 0 of C the IMH exponent
    // only ties multihop's 1/2, so nothing is lost without backhaul.
    case Regime2d::b:
      if (beta + gamma == one / two) return Extended<T>::neg_inf();
      return gamma;
    case Regime2d::c:
      if (beta == T(0)) return Extended<T>::neg_inf();
      return (one - beta) / two;
    case Regime2d::d:
      // Per-link ISH rate l (m/n)^(alpha/2-1), largest at the left end of the
      // ISH window alpha = 2(1-gamma)/beta.
      if (beta == T(0)) throw std::logic_error("regime D with beta = 0");
      return gamma - (one - beta) * (one - beta - gamma) / beta;
  }
  throw std::logic_error("bad Regime2d");
}

}  // namespace hybridcap
