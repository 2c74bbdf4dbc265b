#ifndef SPECSHARE_BASE_CASE_HPP
#define SPECSHARE_BASE_CASE_HPP

#include <utility>

#include "specshare/market.hpp"
#include "specshare/numeric.hpp"
#include "specshare/oracle.hpp"

namespace specshare::base_case {

/// Stage-1 landmarks of the interior regime.
struct Branches {
  double lb = 0.0;           ///< sqrt((2 - delta) / (9 s)), stage-1 lower bound
  double singularity = 0.0;  ///< 1 / sqrt(9 s), below lb whenever |delta| < 1

  /// Stationary point (1 - delta) i_l / (9 s i_l^2 - 1) of the stage-2
  /// quadratic; only meaningful away from the singularity.
  double f1(double i_l) const noexcept { return f1_num * i_l / (9.0 * s * i_l * i_l - 1.0); }

  double s = 0.0;
  double f1_num = 0.0;  ///< 1 - delta
};

Branches branches(const MarketParams& params);

/// Interior stage-3 access fees
///   p_l = c + 2/3 - i_f/(3 i_l) + delta/3,  p_f = c + 1/3 + i_f/(3 i_l) - delta/3.
/// Domain error outside the interior regime |delta| < 1.
std::pair<double, double> stage3_prices(const MarketParams& params, double i_l, double i_f);

/// Interior stage-2 lease: i_l at the stage-1 lower bound (full cooperation),
/// the f1 branch above it.  Domain error when i_l < lb.
double stage2_if(const MarketParams& params, double i_l);

/// Stage-2 best response on the whole feasible range [delta_lb, inf):
/// i_l below lb keeps the full-lease branch.  Continuation used by the oracle.
double stage2_best_response(const MarketParams& params, double i_l);

/// Stage-1 payoff of the MNO under downstream best responses, valid on
/// [delta_lb, inf); piecewise across the lb boundary.
double stage1_objective(const MarketParams& params, double i_l);

/// Maximizes the stage-1 objective over [lb, m_ub] (adaptively truncated when
/// unbounded).  When m_ub <= lb the maximization is degenerate and the bound
/// itself is returned.  All tied maximizers are reported.
numeric::MaxResult stage1_il(const MarketParams& params);

struct SolveOptions {
  /// Where inside a corner-family price interval the representative profile
  /// is evaluated: 0 = lower end, 1 = upper end.
  double corner_price_fraction = 0.5;
};

/// Full SPNE of the two-provider market: unique interior point for
/// |delta| < 1 (bounded variant included), corner families for |delta| >= 1,
/// both corner family and interior point when delta = 1.
EquilibriumResult solve(const MarketParams& params, const SolveOptions& options = {});

/// Oracle adapter with the interior continuation (|delta| < 1, and the
/// delta = 1 interior point).
oracle::Game interior_game(const MarketParams& params);

/// Oracle adapter for a corner family member.  free_price is p_l when
/// delta >= 1 and p_f when delta <= -1; the paired price and the
/// lease continuation follow the family.
oracle::Game corner_game(const MarketParams& params, double free_price);

}  // namespace specshare::base_case

#endif
