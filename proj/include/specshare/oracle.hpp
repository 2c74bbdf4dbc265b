#ifndef SPECSHARE_ORACLE_HPP
#define SPECSHARE_ORACLE_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "specshare/market.hpp"
#include "specshare/numeric.hpp"

namespace specshare::oracle {

/// Everything the oracle needs to replay backward induction for one game
/// variant: the exact stage-4 demand/payoff map for arbitrary profiles and
/// the solver's closed-form continuation for stages 3 and 2.  Solver modules
/// provide ready-made adapters.
struct Game {
  std::function<MarketOutcome(const StrategyProfile&)> evaluate;
  /// Continuation prices (p_l, p_f) the solver would play after any (i_l, i_f).
  std::function<std::pair<double, double>(double i_l, double i_f)> stage3;
  /// Continuation lease i_f the solver would play after any i_l.
  std::function<double(double i_l)> stage2;
  double i_l_lo = 0.0;          ///< stage-1 deviation range
  double i_l_hi = 1.0;
  double price_half_width = 0.25;  ///< stage-3 deviation half-width per price
  std::string name;
};

/// Independent SPNE check (a Nash check of every stage, holding downstream
/// play at the solver's continuation).
struct OracleReport {
  StrategyProfile profile{};
  /// Largest unilateral payoff improvement found at each stage; index 0 is
  /// stage 1 (MNO investment), index 3 is stage 4 (EU choice, exact by
  /// construction, always 0).
  std::array<double, 4> stage_gain{};
  std::array<double, 4> grid_step{};
  double payoff_scale = 0.0;
  double epsilon = 0.0;
  bool pass = false;
  std::string notes;
};

struct VerifyOptions {
  int n_points = 2001;
  int refinement_rounds = 2;
  std::optional<double> epsilon{};         ///< default 5 * payoff_scale * price step
  std::optional<double> max_resolution{};  ///< error when any grid step exceeds this
};

/// Replays the four stages on discretized deviation spaces and reports the
/// best unilateral gain per stage.  Stage 3 checks each price against the
/// opponent's held price (a Nash check, not a joint deviation); stage 2 grids
/// i_f over [0, i_l]; stage 1 grids i_l over the game's range, both with
/// downstream play taken from the game's continuation closures.
OracleReport verify_spne(const Game& game, const StrategyProfile& profile,
                         const VerifyOptions& options = {});

}  // namespace specshare::oracle

#endif
