#ifndef SPECSHARE_THREE_PLAYER_HPP
#define SPECSHARE_THREE_PLAYER_HPP

#include <utility>

#include "specshare/market.hpp"
#include "specshare/oracle.hpp"

namespace specshare::three_player {

/// Per-MNO profile of the symmetric circular market: both MNOs invest i_l
/// and charge p_l, the MVNO leases i_f from each of them and charges p_f.
using ThreePlayerProfile = StrategyProfile;

/// Arc lengths of the circle of radius 1 on which the three providers sit.
struct ArcLayout {
  double phi_01 = 0.0;  ///< MVNO to MNO1 arc, pi (i_f + i_l) / (2 i_l)
  double phi_02 = 0.0;  ///< MVNO to MNO2 arc, equal to phi_01 by symmetry
  double phi_12 = 0.0;  ///< MNO1 to MNO2 arc, pi (i_l - i_f) / i_l

  double total() const noexcept { return phi_01 + phi_02 + phi_12; }
};

/// Domain error when i_l = 0.
ArcLayout arcs(double i_l, double i_f);

struct Demand {
  double n_mvno = 0.0;
  double n_mno1 = 0.0;
  double n_mno2 = 0.0;  ///< equals n_mno1 by symmetry
};

/// Piecewise circular demand; throws std::domain_error in the regime
/// p_l - p_f >= t phi_01, where no SPNE exists.
Demand demand(const MarketParams& params, const ThreePlayerProfile& profile);

/// Stage-3 fees p_f = (t pi / 3)(i_f + 5 i_l)/(2 i_l) + c and
/// p_l = (t pi / 3)(7 i_l - i_f)/(2 i_l) + c.
std::pair<double, double> stage3_prices(const MarketParams& params, double i_l, double i_f);

/// Stage-2 lease: full lease below the threshold (pi/2) sqrt(t / (3 s)),
/// 5 t pi^2 i_l / (72 i_l^2 s - t pi^2) above it.
double stage2_if(const MarketParams& params, double i_l);

/// Stage-4 evaluation for arbitrary profiles.  A price gap at or beyond
/// t phi_01 sends every EU to the MVNO; the stored n_l is per MNO.
MarketOutcome evaluate(const MarketParams& params, const ThreePlayerProfile& profile);

/// Unique symmetric SPNE: i_l = i_f = (pi/2) sqrt(t/(3s)) (or m_ub when it
/// binds), both fees t pi + c, MVNO serves half the circle.
EquilibriumResult solve(const MarketParams& params);

/// Modified two-provider benchmark on the same circle (constant transport
/// cost t, EUs on [0, 2 pi], v_l = v_f): i_l = delta_lb, i_f = 0, both fees
/// 2 t pi + c, each provider serves half the circle.
EquilibriumResult solve_two_player_comparison(const MarketParams& params);

/// Stage-4 evaluation of the two-provider benchmark.
MarketOutcome evaluate_two_player(const MarketParams& params, const StrategyProfile& profile);

oracle::Game game(const MarketParams& params);
oracle::Game two_player_game(const MarketParams& params);

}  // namespace specshare::three_player

#endif
