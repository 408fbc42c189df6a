#pragma once

// Closed-form throughput scaling exponents for a hybrid extended network
// with n nodes, m = n^beta base stations of l = n^gamma antennas each and
// backhaul links of rate R_BS = n^eta to a central processor.
//
// Every function here is templated on the number type. double is the
// production instantiation; the test suite also instantiates the same code
// with an exact rational type so regime boundaries can be checked without
// rounding noise. The arbitrarily small epsilon slack of the asymptotic
// statements is taken as zero throughout.

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hybridcap/extended.hpp"

namespace hybridcap {

enum class Scheme { mh, hc, ish, imh };

inline constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::mh, Scheme::hc, Scheme::ish,
                                                      Scheme::imh};

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::mh: return "MH";
    case Scheme::hc: return "HC";
    case Scheme::ish: return "ISH";
    case Scheme::imh: return "IMH";
  }
  return "?";
}

inline Scheme scheme_from_string(std::string_view s) {
  for (Scheme sc : kAllSchemes)
    if (to_string(sc) == s) return sc;
  throw std::invalid_argument("unknown scheme '" + std::string(s) + "'");
}

// Secondary tie-break among schemes whose exponents tie and whose exponents
// also have the same right-derivative in alpha. Higher rank wins.
inline constexpr int tie_rank(Scheme s) {
  switch (s) {
    case Scheme::mh: return 0;
    case Scheme::hc: return 1;
    case Scheme::ish: return 2;
    case Scheme::imh: return 3;
  }
  return -1;
}

// Identifies which closed-form expression produced an exponent.
enum class Formula {
  half,               // 1/2
  hc,                 // 2 - alpha/2
  ish,                // 1 + gamma - alpha(1-beta)/2
  imh_beta_gamma,     // beta + gamma
  imh_half_one_beta,  // (1+beta)/2
  backhaul,           // beta + eta
};

inline std::string_view to_string(Formula f) {
  switch (f) {
    case Formula::half: return "1/2";
    case Formula::hc: return "2-alpha/2";
    case Formula::ish: return "1+gamma-alpha(1-beta)/2";
    case Formula::imh_beta_gamma: return "beta+gamma";
    case Formula::imh_half_one_beta: return "(1+beta)/2";
    case Formula::backhaul: return "beta+eta";
  }
  return "?";
}

class InvalidPointError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename T>
struct ScalingPoint {
  T alpha;
  T beta;
  T gamma;
  Extended<T> eta;

  ScalingPoint with_eta(Extended<T> e) const { return {alpha, beta, gamma, e}; }
  ScalingPoint with_alpha(T a) const { return {a, beta, gamma, eta}; }
};

// beta, gamma in [0,1) with beta + gamma <= 1.
template <typename T>
void validate_structure(const T& beta, const T& gamma) {
  const T zero(0), one(1);
  if (!(beta >= zero && beta < one))
    throw InvalidPointError("beta must lie in [0, 1)");
  if (!(gamma >= zero && gamma < one))
    throw InvalidPointError("gamma must lie in [0, 1)");
  if (!(beta + gamma <= one))
    throw InvalidPointError("beta + gamma must not exceed 1");
}

template <typename T>
void validate(const ScalingPoint<T>& p) {
  if (!(p.alpha > T(2))) throw InvalidPointError("alpha must exceed 2");
  validate_structure(p.beta, p.gamma);
}

template <typename T>
struct SchemeExponents {
  T mh;
  T hc;
  T ish_raw;
  T imh_raw;
  Extended<T> backhaul_cap;
};

template <typename T>
SchemeExponents<T> scheme_exponents(const ScalingPoint<T>& p) {
  validate(p);
  const T one(1), two(2);
  const T half = one / two;
  SchemeExponents<T> e{
      half,
      two - p.alpha / two,
      one + p.gamma - p.alpha * (one - p.beta) / two,
      p.beta + p.gamma < (one + p.beta) / two ? p.beta + p.gamma : (one + p.beta) / two,
      p.beta + p.eta,
  };
  return e;
}

// One scheme's exponent once the backhaul cap is applied, with the data
// needed to break ties.
template <typename T>
struct Candidate {
  Scheme scheme;
  Extended<T> value;
  T right_slope;  // d(value)/d(alpha) just to the right of the query alpha
  Formula formula;
  bool clipped;   // the backhaul cap is strictly binding
};

template <typename T>
std::array<Candidate<T>, 4> candidates(const ScalingPoint<T>& p) {
  const SchemeExponents<T> e = scheme_exponents(p);
  const T zero(0), one(1), two(2);
  const Extended<T> ish_raw(e.ish_raw), imh_raw(e.imh_raw);

  const bool ish_clipped = e.backhaul_cap < ish_raw;
  const bool imh_clipped = e.backhaul_cap < imh_raw;
  const Formula imh_formula = p.beta + p.gamma < (one + p.beta) / two ? Formula::imh_beta_gamma
                                                                        : Formula::imh_half_one_beta;
  return {{
      {Scheme::mh, Extended<T>(e.mh), zero, Formula::half, false},
      {Scheme::hc, Extended<T>(e.hc), -(one / two), Formula::hc, false},
      {Scheme::ish, ish_clipped ? e.backhaul_cap : ish_raw,
       ish_clipped ? zero : -((one - p.beta) / two), ish_clipped ? Formula::backhaul : Formula::ish,
       ish_clipped},
      {Scheme::imh, imh_clipped ? e.backhaul_cap : imh_raw, zero,
       imh_clipped ? Formula::backhaul : imh_formula, imh_clipped},
  }};
}

template <typename T>
struct Achievable {
  T exponent;
  Scheme best;
  Formula formula;
  bool clipped;  // the winning scheme is held down by the backhaul cap
};

// max{ min{ max{ish, imh}, beta+eta }, 1/2, 2-alpha/2 } with the winning
// scheme. Exact ties go to the scheme whose exponent is larger immediately
// to the right in alpha (so every alpha interval is closed on the left, as
// in the regime tables), then to a scheme held at the backhaul cap, then by
// tie_rank().
template <typename T>
Achievable<T> achievable_exponent(const ScalingPoint<T>& p) {
  const auto cands = candidates(p);
  const Candidate<T>* best = &cands[0];
  for (const auto& c : cands) {
    if (c.value.is_neg_inf()) continue;
    if (best->value < c.value) {
      best = &c;
    } else if (c.value == best->value) {
      if (best->right_slope < c.right_slope) {
        best = &c;
      } else if (c.right_slope == best->right_slope) {
        if (c.clipped != best->clipped) {
          if (c.clipped) best = &c;
        } else if (tie_rank(best->scheme) < tie_rank(c.scheme)) {
          best = &c;
        }
      }
    }
  }
  return {best->value.value(), best->scheme, best->formula, best->clipped};
}

// The matching upper bound evaluated as the minimum of the two cut
// exponents: the wireless cut through all nodes and BS antennas, and the cut
// that also severs half of the backhaul links.
template <typename T>
T upper_bound_exponent(const ScalingPoint<T>& p) {
  validate(p);
  const T one(1), two(2);
  const T half = one / two;
  const T hc = two - p.alpha / two;
  const T ad_hoc = half < hc ? hc : half;

  // m l (m/n)^(alpha/2-1)
  const T ish_transfer = p.beta + p.gamma + (p.beta - one) * (p.alpha / two - one);
  // m min{l, sqrt(n/m)}
  const T ring = p.beta + (p.gamma < (one - p.beta) / two ? p.gamma : (one - p.beta) / two);
  T wireless_cut = ish_transfer < ring ? ring : ish_transfer;
  if (wireless_cut < ad_hoc) wireless_cut = ad_hoc;

  const Extended<T> wired = p.beta + p.eta;
  const Extended<T> wired_cut = max(wired, Extended<T>(ad_hoc));

  const Extended<T> bound = min(Extended<T>(wireless_cut), wired_cut);
  return bound.value();
}

inline constexpr double kDofProbeStep = 1e-6;

struct LimitationFlags {
  bool dof_limited = false;
  bool infra_limited = false;
};

// infra_limited: the finite backhaul strictly lowers the exponent.
// dof_limited: an infrastructure scheme wins and the exponent strictly grows
// when beta or gamma grows by probe_step. Probes leaving the valid region
// are replaced by the mirrored downward probe (exponent strictly shrinks).
template <typename T>
LimitationFlags limitation_flags(const ScalingPoint<T>& p, const T& probe_step = T(kDofProbeStep)) {
  const Achievable<T> here = achievable_exponent(p);
  const Achievable<T> unlimited = achievable_exponent(p.with_eta(Extended<T>::pos_inf()));

  LimitationFlags flags;
  flags.infra_limited = here.exponent < unlimited.exponent;

  if (here.best == Scheme::ish || here.best == Scheme::imh) {
    const T zero(0), one(1);
    auto sensitive = [&](T db, T dg) {
      ScalingPoint<T> up{p.alpha, p.beta + db, p.gamma + dg, p.eta};
      if (up.beta < one && up.gamma < one && up.beta + up.gamma <= one)
        return here.exponent < achievable_exponent(up).exponent;
      ScalingPoint<T> down{p.alpha, p.beta - db, p.gamma - dg, p.eta};
      if (down.beta >= zero && down.gamma >= zero)
        return achievable_exponent(down).exponent < here.exponent;
      return false;
    };
    flags.dof_limited = sensitive(probe_step, zero) || sensitive(zero, probe_step);
  }
  return flags;
}

}  // namespace hybridcap
