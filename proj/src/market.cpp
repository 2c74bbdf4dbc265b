#include "specshare/market.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specshare {

namespace {
constexpr double kSlack = 1e-12;
}

void MarketParams::validate() const {
  if (!(gamma > 0.0)) throw std::invalid_argument("MarketParams: gamma must be positive");
  if (!(s > gamma)) throw std::invalid_argument("MarketParams: s must exceed gamma");
  if (!(delta_lb > 0.0)) throw std::invalid_argument("MarketParams: delta_lb must be positive");
  if (m_ub && !(*m_ub >= delta_lb))
    throw std::invalid_argument("MarketParams: m_ub must be at least delta_lb");
  if (!(c >= 0.0)) throw std::invalid_argument("MarketParams: c must be nonnegative");
  if (!std::isfinite(s) || !std::isfinite(gamma) || !std::isfinite(c) || !std::isfinite(v_l) ||
      !std::isfinite(v_f))
    throw std::invalid_argument("MarketParams: parameters must be finite");
}

double StrategyProfile::transport_l() const {
  if (i_l <= 0.0) throw std::domain_error("StrategyProfile: transport cost needs i_l > 0");
  return i_f / i_l;
}

double StrategyProfile::transport_f() const { return 1.0 - transport_l(); }

void StrategyProfile::validate(const MarketParams& params) const {
  if (!(i_f >= -kSlack)) throw std::invalid_argument("StrategyProfile: i_f must be nonnegative");
  if (!(i_f <= i_l + kSlack))
    throw std::invalid_argument("StrategyProfile: i_f must not exceed i_l");
  if (!(i_l >= params.delta_lb - kSlack))
    throw std::invalid_argument("StrategyProfile: i_l below delta_lb");
  if (params.m_ub && !(i_l <= *params.m_ub + kSlack))
    throw std::invalid_argument("StrategyProfile: i_l above m_ub");
}

const char* to_string(EquilibriumTag tag) noexcept {
  switch (tag) {
    case EquilibriumTag::UniqueInterior: return "unique_interior";
    case EquilibriumTag::CornerFamily: return "corner_family";
    case EquilibriumTag::MultipleCandidates: return "multiple_candidates";
    case EquilibriumTag::NoEquilibrium: return "no_equilibrium";
  }
  return "unknown";
}

const StrategyProfile& EquilibriumResult::profile() const {
  if (profiles.empty()) throw std::logic_error("EquilibriumResult: no profile");
  return profiles.front();
}

double indifferent_location(const MarketParams& params, const StrategyProfile& profile) {
  return params.delta() + profile.transport_f() + profile.p_f - profile.p_l;
}

std::pair<double, double> subscriptions(double x0) noexcept {
  const double n_l = std::clamp(x0, 0.0, 1.0);
  return {n_l, 1.0 - n_l};
}

std::pair<double, double> payoffs(const MarketParams& params, const StrategyProfile& profile,
                                  double n_l, double n_f) noexcept {
  const double lease = params.s * profile.i_f * profile.i_f;
  const double pi_f = n_f * (profile.p_f - params.c) - lease;
  const double pi_l =
      n_l * (profile.p_l - params.c) + lease - params.gamma * profile.i_l * profile.i_l;
  return {pi_l, pi_f};
}

MetricsReport metrics(const MarketParams& params, const StrategyProfile& profile,
                      const MarketOutcome& outcome, int mno_count) {
  if (profile.i_l <= 0.0) throw std::domain_error("metrics: i_l must be positive");
  if (profile.p_l <= 0.0 || profile.p_f <= 0.0)
    throw std::domain_error("metrics: prices must be positive");
  (void)params;
  MetricsReport report;
  report.degree_of_cooperation = profile.i_f / profile.i_l;
  report.eu_resource_cost =
      mno_count * (profile.i_f / profile.p_f + (profile.i_l - profile.i_f) / profile.p_l);
  report.n_l = outcome.n_l;
  report.n_f = outcome.n_f;
  return report;
}

MarketOutcome evaluate_base(const MarketParams& params, const StrategyProfile& profile) {
  MarketOutcome out;
  out.x0 = indifferent_location(params, profile);
  std::tie(out.n_l, out.n_f) = subscriptions(out.x0);
  std::tie(out.pi_l, out.pi_f) = payoffs(params, profile, out.n_l, out.n_f);
  return out;
}

}  // namespace specshare
