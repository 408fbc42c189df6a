#pragma once

// Operating-regime classification over (beta, gamma) and (beta, gamma, eta),
// and the per-regime table of best schemes as alpha grows.

#include <stdexcept>
#include <string_view>
#include <vector>

#include "hybridcap/extended.hpp"
#include "hybridcap/scaling.hpp"

namespace hybridcap {

enum class Regime2d { a, b, c, d };
enum class Regime3d { a, b, c, d, b_tilde, d_tilde };

inline std::string_view to_string(Regime2d r) {
  switch (r) {
    case Regime2d::a: return "A";
    case Regime2d::b: return "B";
    case Regime2d::c: return "C";
    case Regime2d::d: return "D";
  }
  return "?";
}

inline std::string_view to_string(Regime3d r) {
  switch (r) {
    case Regime3d::a: return "A";
    case Regime3d::b: return "B";
    case Regime3d::c: return "C";
    case Regime3d::d: return "D";
    case Regime3d::b_tilde: return "B-tilde";
    case Regime3d::d_tilde: return "D-tilde";
  }
  return "?";
}

inline Regime3d lift(Regime2d r) {
  switch (r) {
    case Regime2d::a: return Regime3d::a;
    case Regime2d::b: return Regime3d::b;
    case Regime2d::c: return Regime3d::c;
    case Regime2d::d: return Regime3d::d;
  }
  throw std::logic_error("bad Regime2d");
}

// Regime D needs gamma strictly above the curve: on the curve the alpha
// window in which single-hop wins is empty and the pattern is that of C.
template <typename T>
Regime2d classify_regime_2d(const T& beta, const T& gamma) {
  validate_structure(beta, gamma);
  const T one(1), two(2);
  if (beta + gamma < one / two) return Regime2d::a;
  if (beta + gamma < (one + beta) / two) return Regime2d::b;  // beta + 2 gamma < 1
  if (gamma > (beta * beta - T(3) * beta + two) / two) return Regime2d::d;
  return Regime2d::c;
}

// Case analysis over the five ranges of eta. Within one range the first
// matching condition wins. The D-tilde curve is strict for the same reason as
// the D curve above.
template <typename T>
Regime3d classify_regime_3d(const T& beta, const T& gamma, const Extended<T>& eta) {
  const Regime2d base = classify_regime_2d(beta, gamma);
  if (eta.is_neg_inf()) return Regime3d::a;
  if (eta.is_pos_inf()) return lift(base);

  const T zero(0), one(1), two(2);
  const T half = one / two;
  const T& e = eta.value();
  auto above_d_tilde_curve = [&] { return gamma > beta * beta + (e - two) * beta + one; };

  if (e < -half) return Regime3d::a;
  if (e < zero) return beta < half - e ? Regime3d::a : Regime3d::b_tilde;
  if (e < half) {
    if (beta + gamma < half) return Regime3d::a;
    if (gamma > e && beta < one - two * e)
      return beta < half - e ? Regime3d::a : Regime3d::b_tilde;
    if (gamma < e && beta + two * gamma < one) return Regime3d::b;
    if (beta + two * gamma >= one && beta >= one - two * e && above_d_tilde_curve())
      return Regime3d::d_tilde;
    return lift(base);
  }
  if (e < one) return above_d_tilde_curve() ? Regime3d::d_tilde : lift(base);
  return lift(base);
}

// One row of a regime table: on the alpha interval [lo, hi) (open at lo when
// lo == 2) the best scheme and its exponent expression.
template <typename T>
struct AlphaInterval {
  T lo;
  Extended<T> hi;
  bool lo_closed;
  Scheme scheme;
  Formula formula;

  bool contains(const T& alpha) const {
    const bool above = lo_closed ? !(alpha < lo) : lo < alpha;
    return above && Extended<T>(alpha) < hi;
  }
};

// Value of a formula at a point. Formula::backhaul needs a finite eta.
template <typename T>
T evaluate_formula(Formula f, const ScalingPoint<T>& p) {
  const T one(1), two(2);
  switch (f) {
    case Formula::half: return one / two;
    case Formula::hc: return two - p.alpha / two;
    case Formula::ish: return one + p.gamma - p.alpha * (one - p.beta) / two;
    case Formula::imh_beta_gamma: return p.beta + p.gamma;
    case Formula::imh_half_one_beta: return (one + p.beta) / two;
    case Formula::backhaul:
      if (!p.eta.is_finite()) throw std::logic_error("beta+eta needs a finite eta");
      return p.beta + p.eta.value();
  }
  throw std::logic_error("bad Formula");
}

namespace detail {

template <typename T>
struct TableRow {
  T start;  // alpha at which this row takes over
  Scheme scheme;
  Formula formula;
};

// Turns rows with increasing start values into a partition of (2, inf).
// Rows starting at or below 2 collapse onto the first interval; rows that
// are overtaken before they start are dropped.
template <typename T>
std::vector<AlphaInterval<T>> partition(const std::vector<TableRow<T>>& rows) {
  const T two(2);
  std::vector<AlphaInterval<T>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const T lo = rows[i].start < two ? two : rows[i].start;
    const Extended<T> hi =
        i + 1 < rows.size() ? Extended<T>(rows[i + 1].start) : Extended<T>::pos_inf();
    if (!(Extended<T>(lo) < hi)) continue;
    // An earlier row that would extend past this start is cut back.
    if (!out.empty() && Extended<T>(lo) < out.back().hi) out.back().hi = lo;
    const bool closed = !(lo == two);
    if (!out.empty() && !(out.back().hi == Extended<T>(lo)))
      throw std::logic_error("regime table rows leave a gap");
    out.push_back({lo, hi, closed, rows[i].scheme, rows[i].formula});
  }
  if (out.empty() || out.front().lo_closed || !out.back().hi.is_pos_inf())
    throw std::logic_error("regime table does not cover (2, inf)");
  return out;
}

}  // namespace detail

// Best scheme per alpha interval for the regime the point falls in.
template <typename T>
std::vector<AlphaInterval<T>> alpha_breakpoints(const T& beta, const T& gamma,
                                                const Extended<T>& eta) {
  using Row = detail::TableRow<T>;
  const Regime3d label = classify_regime_3d(beta, gamma, eta);
  const T one(1), two(2), three(3), four(4);
  std::vector<Row> rows;
  switch (label) {
    case Regime3d::a:
      rows = {{two, Scheme::hc, Formula::hc}, {three, Scheme::mh, Formula::half}};
      break;
    case Regime3d::b:
      rows = {{two, Scheme::hc, Formula::hc},
              {four - two * beta - two * gamma, Scheme::imh, Formula::imh_beta_gamma}};
      break;
    case Regime3d::c:
      rows = {{two, Scheme::hc, Formula::hc},
              {three - beta, Scheme::imh, Formula::imh_half_one_beta}};
      break;
    case Regime3d::d:
      rows = {{two, Scheme::hc, Formula::hc},
              {two * (one - gamma) / beta, Scheme::ish, Formula::ish},
              {one + two * gamma / (one - beta), Scheme::imh, Formula::imh_half_one_beta}};
      break;
    case Regime3d::b_tilde: {
      const T& e = eta.value();
      rows = {{two, Scheme::hc, Formula::hc},
              {four - two * beta - two * e, Scheme::imh, Formula::backhaul}};
      break;
    }
    case Regime3d::d_tilde: {
      const T& e = eta.value();
      rows = {{two, Scheme::hc, Formula::hc},
              {four - two * beta - two * e, Scheme::ish, Formula::backhaul},
              {two + two * (gamma - e) / (one - beta), Scheme::ish, Formula::ish},
              {one + two * gamma / (one - beta), Scheme::imh, Formula::imh_half_one_beta}};
      break;
    }
  }
  return detail::partition(rows);
}

template <typename T>
struct RegimeReport {
  Regime2d label2d;
  Regime3d label3d;
  Scheme best_scheme;
  T exponent;
  Formula formula;
  bool clipped;
  std::vector<AlphaInterval<T>> alpha_breakpoints;
  bool dof_limited;
  bool infra_limited;
};

template <typename T>
RegimeReport<T> regime_report(const ScalingPoint<T>& p) {
  const Achievable<T> a = achievable_exponent(p);
  const LimitationFlags flags = limitation_flags(p);
  return {classify_regime_2d(p.beta, p.gamma),
          classify_regime_3d(p.beta, p.gamma, p.eta),
          a.best,
          a.exponent,
          a.formula,
          a.clipped,
          alpha_breakpoints(p.beta, p.gamma, p.eta),
          flags.dof_limited,
          flags.infra_limited};
}

}  // namespace hybridcap
