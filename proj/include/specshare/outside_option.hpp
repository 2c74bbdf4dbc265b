#ifndef SPECSHARE_OUTSIDE_OPTION_HPP
#define SPECSHARE_OUTSIDE_OPTION_HPP

#include <utility>

#include "specshare/market.hpp"
#include "specshare/oracle.hpp"

namespace specshare::outside_option {

/// Stage-2 helper functions of the demand-extended market.
struct Aux {
  double f_val = 0.0;  ///< 1/(5 i_l) + b/5
  double g_val = 0.0;  ///< b i_l/15 + 1/15 - c/3 + k/3
  double if0 = 0.0;    ///< -2 alpha f g / (2 alpha f^2 - s), stage-2 stationary point
};

Aux aux(const MarketParams& params, double i_l);

/// Stage-1 value of playing lease y after investing i_l:
///   2 alpha (b i_l/5 + 1/5 + g - f y)^2 + s y^2 - gamma i_l^2.
double theta(const MarketParams& params, double i_l, double y);

/// Pointwise membership in the two stage-1 regions (intersected with
/// [delta_lb, m_ub] when the investment is bounded).
struct RegionMembership {
  bool in_l1 = false;  ///< stage-2 optimum interior (lease = if0)
  bool in_l2 = false;  ///< stage-2 optimum at the full lease
};

RegionMembership region(const MarketParams& params, double i_l);

/// Demand with the outside option:
///   (alpha (n_l + k - p_l + b (i_l - i_f)), alpha (n_f + k - p_f + b i_f)).
std::pair<double, double> tilde_demand(const MarketParams& params, const StrategyProfile& profile,
                                       double n_l, double n_f);

/// Closed-form stage-3 fees; domain error when b > 0 and i_l >= 4/b (the
/// range where the common-pool split would leave the unit interval).
std::pair<double, double> stage3_prices(const MarketParams& params, double i_l, double i_f);

enum class Stage2Branch {
  InteriorStationary,  ///< lease = if0
  FullLease,           ///< lease = i_l
  None,                ///< neither region condition holds (g < 0 territory)
};

struct Stage2Result {
  double i_f = 0.0;
  Stage2Branch branch = Stage2Branch::None;
};

/// Piecewise stage-2 lease; branch None reports "no interior i_f" with an
/// unset lease value.
Stage2Result stage2_if(const MarketParams& params, double i_l);

/// Stage-4 evaluation with tilde demand (requires v_l = v_f).  The reported
/// n_l, n_f are the tilde subscriptions and may leave [0, 1].
MarketOutcome evaluate(const MarketParams& params, const StrategyProfile& profile);

/// Interior SPNE of the outside-option market: constrained stage-1 grid
/// maximization of theta over the two regions, bounded variant included.
/// NoEquilibrium when both regions are empty on the feasible range.
EquilibriumResult solve(const MarketParams& params);

/// Oracle adapter (tilde payoffs, exact stage-2 quadratic continuation).
oracle::Game game(const MarketParams& params);

}  // namespace specshare::outside_option

#endif
