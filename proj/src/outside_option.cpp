#include "specshare/outside_option.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "specshare/numeric.hpp"

namespace specshare::outside_option {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double demand_cap(const MarketParams& params) {
  return params.b > 0.0 ? 4.0 / params.b : kInf;
}

void require_variant(const MarketParams& params) {
  if (params.v_l != params.v_f)
    throw std::invalid_argument("outside_option: requires v_l = v_f");
  if (!(params.alpha > 0.0)) throw std::invalid_argument("outside_option: alpha must be positive");
  if (params.b < 0.0) throw std::invalid_argument("outside_option: b must be nonnegative");
  if (!(params.delta_lb < demand_cap(params)))
    throw std::invalid_argument("outside_option: requires delta_lb < 4/b");
}

// Stage-2 payoff of the MVNO after substituting the stage-3 fees:
// (2 alpha f^2 - s) i_f^2 + 4 alpha f g i_f + 2 alpha g^2.
numeric::Quadratic stage2_quadratic(const MarketParams& params, double i_l) {
  const Aux a = aux(params, i_l);
  const double al = params.alpha;
  return {2.0 * al * a.f_val * a.f_val - params.s, 4.0 * al * a.f_val * a.g_val,
          2.0 * al * a.g_val * a.g_val};
}

}  // namespace

Aux aux(const MarketParams& params, double i_l) {
  if (!(i_l > 0.0)) throw std::domain_error("outside_option::aux: i_l must be positive");
  Aux a;
  a.f_val = 1.0 / (5.0 * i_l) + params.b / 5.0;
  a.g_val = params.b * i_l / 15.0 + 1.0 / 15.0 - params.c / 3.0 + params.k / 3.0;
  const double denom = 2.0 * params.alpha * a.f_val * a.f_val - params.s;
  a.if0 = denom != 0.0 ? -2.0 * params.alpha * a.f_val * a.g_val / denom
                       : std::numeric_limits<double>::quiet_NaN();
  return a;
}

double theta(const MarketParams& params, double i_l, double y) {
  const Aux a = aux(params, i_l);
  const double share = params.b * i_l / 5.0 + 0.2 + a.g_val - a.f_val * y;
  return 2.0 * params.alpha * share * share + params.s * y * y - params.gamma * i_l * i_l;
}

RegionMembership region(const MarketParams& params, double i_l) {
  RegionMembership m;
  if (!(i_l > 0.0) || i_l >= demand_cap(params)) return m;
  if (params.m_ub && i_l > *params.m_ub) return m;
  const Aux a = aux(params, i_l);
  const double al = params.alpha;
  const double ff2 = 2.0 * al * a.f_val * a.f_val;
  const double fg_over = 2.0 * al * a.f_val * a.g_val / i_l;
  m.in_l1 = params.s > ff2 + fg_over && a.g_val >= 0.0 && i_l >= params.delta_lb;
  const bool l2_concave = a.g_val >= 0.0 && ff2 <= params.s && params.s <= ff2 + fg_over;
  const bool l2_convex = ff2 + 2.0 * fg_over >= params.s && ff2 > params.s;
  m.in_l2 = l2_concave || l2_convex;
  return m;
}

std::pair<double, double> tilde_demand(const MarketParams& params, const StrategyProfile& profile,
                                       double n_l, double n_f) {
  const double nt_l =
      params.alpha * (n_l + params.k - profile.p_l + params.b * (profile.i_l - profile.i_f));
  const double nt_f = params.alpha * (n_f + params.k - profile.p_f + params.b * profile.i_f);
  return {nt_l, nt_f};
}

std::pair<double, double> stage3_prices(const MarketParams& params, double i_l, double i_f) {
  if (!(i_l > 0.0) || i_f < 0.0 || i_f > i_l + 1e-12)
    throw std::domain_error("outside_option::stage3_prices: requires 0 <= i_f <= i_l, i_l > 0");
  if (i_l >= demand_cap(params))
    throw std::domain_error("outside_option::stage3_prices: requires i_l < 4/b");
  const double t_l = i_f / i_l;
  const double t_f = 1.0 - t_l;
  const double common = 1.0 / 15.0 + 2.0 * params.c / 3.0 + params.k / 3.0;
  const double p_l = common + t_f / 5.0 - params.b * i_f / 5.0 + 4.0 * params.b * i_l / 15.0;
  const double p_f = common + t_l / 5.0 + params.b * i_l / 15.0 + params.b * i_f / 5.0;
  return {p_l, p_f};
}

Stage2Result stage2_if(const MarketParams& params, double i_l) {
  if (!(i_l >= params.delta_lb) || i_l >= demand_cap(params))
    throw std::domain_error("outside_option::stage2_if: requires delta_lb <= i_l < 4/b");
  const RegionMembership m = region(params, i_l);
  if (m.in_l1) return {aux(params, i_l).if0, Stage2Branch::InteriorStationary};
  if (m.in_l2) return {i_l, Stage2Branch::FullLease};
  return {std::numeric_limits<double>::quiet_NaN(), Stage2Branch::None};
}

MarketOutcome evaluate(const MarketParams& params, const StrategyProfile& profile) {
  require_variant(params);
  MarketOutcome out;
  out.x0 = indifferent_location(params, profile);
  const auto [n_l, n_f] = subscriptions(out.x0);
  std::tie(out.n_l, out.n_f) = tilde_demand(params, profile, n_l, n_f);
  const double lease = params.s * profile.i_f * profile.i_f;
  out.pi_f = out.n_f * (profile.p_f - params.c) - lease;
  out.pi_l = out.n_l * (profile.p_l - params.c) + lease -
             params.gamma * profile.i_l * profile.i_l;
  return out;
}

namespace {

// Masked stage-1 value: theta at the regional stage-2 lease, -inf off-region.
double masked_objective(const MarketParams& params, double i_l) {
  const RegionMembership m = region(params, i_l);
  double v = -kInf;
  if (m.in_l1) v = std::max(v, theta(params, i_l, aux(params, i_l).if0));
  if (m.in_l2) v = std::max(v, theta(params, i_l, i_l));
  return v;
}

// For the unbounded b = 0 market the regions thin out: L2 membership needs
// s <= 2 alpha f^2 + 4 alpha f max(g,0)/x with f = 1/(5x), and the L1 value
// is capped by 2 alpha ((1/5+g)^2 + (f if0)^2) + s if0^2 - gamma x^2.
double search_upper_bound(const MarketParams& params) {
  const double cap = demand_cap(params);
  double hi = params.m_ub ? *params.m_ub : kInf;
  if (std::isfinite(cap)) hi = std::min(hi, cap * (1.0 - 1e-9));
  if (std::isfinite(hi)) return hi;

  const double al = params.alpha;
  double cur = std::max(4.0 * params.delta_lb, 1.0);
  for (int doubling = 0; doubling <= 60; ++doubling) {
    double best = -kInf;
    bool l2_in_top = false;
    constexpr int kScan = 2001;
    for (int i = 0; i < kScan; ++i) {
      const double x = params.delta_lb + (cur - params.delta_lb) * i / (kScan - 1);
      best = std::max(best, masked_objective(params, x));
      if (x > 0.5 * cur && region(params, x).in_l2) l2_in_top = true;
    }
    const Aux a = aux(params, cur);
    const bool monotone = params.s > 2.0 * al * a.f_val * a.f_val;
    double l1_env = kInf;
    if (monotone) {
      const double fi = a.f_val * std::fabs(a.if0);
      const double base = 0.2 + a.g_val;
      l1_env = 2.0 * al * (base * base + fi * fi) + params.s * a.if0 * a.if0 -
               params.gamma * cur * cur;
    }
    if (!l2_in_top && monotone && (best == -kInf || l1_env < best)) return cur;
    cur *= 2.0;
  }
  throw std::runtime_error("outside_option::solve: stage-1 domain expansion failed");
}

}  // namespace

EquilibriumResult solve(const MarketParams& params) {
  params.validate();
  require_variant(params);
  const double hi = search_upper_bound(params);
  EquilibriumResult res;
  if (!(hi > params.delta_lb)) {
    res.tag = EquilibriumTag::NoEquilibrium;
    res.diagnostics = "empty stage-1 range";
    return res;
  }

  numeric::MaximizeOptions opt;
  opt.n_points = 4001;
  const auto objective = [&](double i_l) { return masked_objective(params, i_l); };
  const numeric::MaxResult best = numeric::maximize_1d(objective, params.delta_lb, hi, opt);
  if (best.argmax.empty() || !std::isfinite(best.value)) {
    res.tag = EquilibriumTag::NoEquilibrium;
    res.diagnostics =
        "no stage-1 point satisfies either region condition (interior-only analysis)";
    return res;
  }

  std::string notes;
  for (double i_l : best.argmax) {
    const RegionMembership m = region(params, i_l);
    StrategyProfile prof;
    prof.i_l = i_l;
    if (m.in_l1 && m.in_l2) notes += "both region conditions hold at the optimum; ";
    prof.i_f = m.in_l1 ? aux(params, i_l).if0 : i_l;
    std::tie(prof.p_l, prof.p_f) = stage3_prices(params, prof.i_l, prof.i_f);
    res.profiles.push_back(prof);
  }
  res.tag = best.argmax.size() > 1 ? EquilibriumTag::MultipleCandidates
                                   : EquilibriumTag::UniqueInterior;
  res.outcome = evaluate(params, res.profile());
  res.metrics = metrics(params, res.profile(), res.outcome);
  if (res.outcome.n_l < 0.0 || res.outcome.n_f < 0.0) notes += "negative tilde demand; ";
  if (best.argmax.size() > 1) notes += "tied stage-1 optima reported as candidates; ";
  res.diagnostics = notes + "interior-only analysis (corner outcomes are out of scope)";
  return res;
}

oracle::Game game(const MarketParams& params) {
  require_variant(params);
  oracle::Game g;
  g.name = "outside_option";
  g.evaluate = [params](const StrategyProfile& p) { return evaluate(params, p); };
  g.stage3 = [params](double i_l, double i_f) { return stage3_prices(params, i_l, i_f); };
  g.stage2 = [params](double i_l) {
    // exact maximizer of the stage-2 quadratic; coincides with the regional
    // closed forms wherever those apply
    return numeric::quad_max_on_interval(stage2_quadratic(params, i_l), 0.0, i_l).argmax;
  };
  g.i_l_lo = params.delta_lb;
  g.i_l_hi = std::min(search_upper_bound(params), params.delta_lb + 4.0);
  return g;
}

}  // namespace specshare::outside_option
