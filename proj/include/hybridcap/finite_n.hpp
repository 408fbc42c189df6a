#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "hybridcap/scaling.hpp"

namespace hybridcap {

struct FiniteInstance {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t l = 0;
  double r_bs = 0.0;  // +inf for unlimited backhaul
  std::string warning;  // non-empty when l had to be clipped
};

inline std::int64_t isqrt(std::int64_t v) {
  if (v < 0) throw std::invalid_argument("isqrt of a negative number");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// m = round(n^beta) rounded down to a perfect square (kept below n),
// l = max(1, round(n^gamma)) clipped so that m l <= n, R_BS = n^eta.
inline FiniteInstance map_finite_n(std::int64_t n, const ScalingPoint<double>& p) {
  if (n < 4) throw std::invalid_argument("n must be at least 4");
  validate_structure(p.beta, p.gamma);
  const double nd = static_cast<double>(n);

  FiniteInstance f;
  f.n = n;
  const auto m_raw = static_cast<std::int64_t>(std::llround(std::pow(nd, p.beta)));
  std::int64_t q = isqrt(std::max<std::int64_t>(1, m_raw));
  while (q > 1 && q * q >= n) --q;
  f.m = q * q;

  f.l = std::max<std::int64_t>(1, std::llround(std::pow(nd, p.gamma)));
  if (f.m * f.l > n) {
    const std::int64_t clipped = n / f.m;
    f.warning = "l clipped from " + std::to_string(f.l) + " to " + std::to_string(clipped) +
                " so that m*l <= n";
    f.l = clipped;
  }

  if (p.eta.is_pos_inf())
    f.r_bs = std::numeric_limits<double>::infinity();
  else if (p.eta.is_neg_inf())
    f.r_bs = 0.0;
  else
    f.r_bs = std::pow(nd, p.eta.value());
  return f;
}

}  // namespace hybridcap
