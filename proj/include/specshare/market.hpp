#ifndef SPECSHARE_MARKET_HPP
#define SPECSHARE_MARKET_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace specshare {

/// Exogenous constants of a spectrum-market scenario.
///
/// The same parameter block drives every game variant; alpha/k/b matter only
/// for the outside-option demand extension and t only for the circular
/// three-provider market.  All quantities are dimensionless reals.
struct MarketParams {
  double s = 1.0;        ///< per-unit^2 reservation fee the MVNO pays the MNO
  double gamma = 0.5;    ///< per-unit^2 fee the MNO pays the regulator
  double c = 1.0;        ///< per-subscriber transaction cost
  double v_l = 0.0;      ///< static preference factor of the MNO
  double v_f = 0.0;      ///< static preference factor of the MVNO
  double delta_lb = 0.01;         ///< lower bound on the MNO investment
  std::optional<double> m_ub{};   ///< optional upper bound on the MNO investment
  double alpha = 1.0;    ///< common-pool scale (outside-option variant)
  double k = 0.0;        ///< demand-function intercept (outside-option variant)
  double b = 0.0;        ///< demand-function spectrum sensitivity (outside-option variant)
  double t = 1.0;        ///< transport cost of the circular market

  /// Preference gap v_l - v_f; every solver depends on the statics only
  /// through this difference.
  double delta() const noexcept { return v_l - v_f; }

  /// Throws std::invalid_argument naming the violated invariant.
  /// Checks s > gamma > 0, delta_lb > 0 and m_ub >= delta_lb; variant
  /// specific smallness bounds on delta_lb are checked by each solver.
  void validate() const;
};

/// One joint choice of spectrum investments and access fees.
/// In the three-provider market i_l, i_f and p_l are per-MNO quantities.
struct StrategyProfile {
  double i_l = 0.0;
  double i_f = 0.0;
  double p_l = 0.0;
  double p_f = 0.0;

  /// Endogenous transport cost t_L = i_f / i_l.  Domain error when i_l = 0.
  double transport_l() const;
  /// t_F = 1 - t_L.
  double transport_f() const;

  /// Throws std::invalid_argument unless 0 <= i_f <= i_l, i_l >= delta_lb
  /// and, when bounded, i_l <= m_ub (all up to a 1e-12 slack).
  void validate(const MarketParams& params) const;
};

/// Demand split and payoffs induced by a profile.
struct MarketOutcome {
  double x0 = 0.0;   ///< indifference location before clamping
  double n_l = 0.0;
  double n_f = 0.0;
  double pi_l = 0.0;
  double pi_f = 0.0;
};

struct MetricsReport {
  double degree_of_cooperation = 0.0;  ///< i_f / i_l, in [0, 1]
  double eu_resource_cost = 0.0;       ///< spectrum per unit access fee
  double n_l = 0.0;
  double n_f = 0.0;
};

enum class EquilibriumTag {
  UniqueInterior,
  CornerFamily,
  MultipleCandidates,
  NoEquilibrium,
};

const char* to_string(EquilibriumTag tag) noexcept;

/// Which price coordinate is free inside a corner family.
enum class FreePrice { None, Pl, Pf };

struct PriceInterval {
  FreePrice coord = FreePrice::None;
  double lo = 0.0;
  double hi = 0.0;

  double midpoint() const noexcept { return 0.5 * (lo + hi); }
  bool contains(double p, double tol = 1e-12) const noexcept {
    return p >= lo - tol && p <= hi + tol;
  }
};

/// Tagged solver result.  For corner families exactly one price coordinate
/// carries an interval and the stored profile evaluates the family at a
/// representative price (the midpoint unless the caller selects otherwise).
struct EquilibriumResult {
  EquilibriumTag tag = EquilibriumTag::NoEquilibrium;
  std::vector<StrategyProfile> profiles;
  std::optional<PriceInterval> price_interval{};
  MarketOutcome outcome{};
  MetricsReport metrics{};
  std::string diagnostics{};

  /// First (representative) profile; throws std::logic_error when empty.
  const StrategyProfile& profile() const;
};

/// Unclamped indifference location delta + t_F + p_F - p_L.
/// Domain error when profile.i_l = 0.
double indifferent_location(const MarketParams& params, const StrategyProfile& profile);

/// Clamped demand split (n_l, n_f) with n_l = clamp(x0, 0, 1), n_f = 1 - n_l.
std::pair<double, double> subscriptions(double x0) noexcept;

/// Payoffs (pi_l, pi_f) for given subscriptions:
///   pi_f = n_f (p_f - c) - s i_f^2
///   pi_l = n_l (p_l - c) + s i_f^2 - gamma i_l^2
std::pair<double, double> payoffs(const MarketParams& params, const StrategyProfile& profile,
                                  double n_l, double n_f) noexcept;

/// Cooperation/value metrics.  mno_count = 2 selects the circular-market
/// resource-cost formula 2 i_f/p_f + 2 (i_l - i_f)/p_l; both providers must
/// charge positive prices and i_l must be positive (domain errors otherwise).
MetricsReport metrics(const MarketParams& params, const StrategyProfile& profile,
                      const MarketOutcome& outcome, int mno_count = 1);

/// Full stage-4 evaluation of the base two-provider market for an arbitrary
/// profile: indifference location, clamped subscriptions and payoffs.
MarketOutcome evaluate_base(const MarketParams& params, const StrategyProfile& profile);

}  // namespace specshare

#endif
