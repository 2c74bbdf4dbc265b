#include "specshare/base_case.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace specshare::base_case {

namespace {

constexpr double kBoundarySlack = 1e-12;

void require_interior_regime(const MarketParams& params) {
  if (!(std::fabs(params.delta()) < 1.0))
    throw std::domain_error("base_case: interior regime requires |delta| < 1");
}

std::string format_profile(const StrategyProfile& p) {
  std::ostringstream os;
  os << "(i_l=" << p.i_l << ", i_f=" << p.i_f << ", p_l=" << p.p_l << ", p_f=" << p.p_f << ")";
  return os.str();
}

StrategyProfile assemble_interior(const MarketParams& params, double i_l) {
  StrategyProfile prof;
  prof.i_l = i_l;
  prof.i_f = stage2_if(params, i_l);
  std::tie(prof.p_l, prof.p_f) = stage3_prices(params, prof.i_l, prof.i_f);
  return prof;
}

EquilibriumResult finish(const MarketParams& params, EquilibriumResult res) {
  res.outcome = evaluate_base(params, res.profile());
  res.metrics = metrics(params, res.profile(), res.outcome);
  return res;
}

// Corner profiles can carry a nonpositive price on the side whose spectrum
// share is zero; that term contributes nothing, so the report is assembled
// directly instead of through the strict metrics contract.
EquilibriumResult finish_corner(const MarketParams& params, EquilibriumResult res) {
  const StrategyProfile& prof = res.profile();
  res.outcome = evaluate_base(params, res.profile());
  res.metrics.degree_of_cooperation = prof.i_f / prof.i_l;
  res.metrics.eu_resource_cost = 0.0;
  if (prof.i_f > 0.0) res.metrics.eu_resource_cost += prof.i_f / prof.p_f;
  if (prof.i_l - prof.i_f > 0.0) res.metrics.eu_resource_cost += (prof.i_l - prof.i_f) / prof.p_l;
  res.metrics.n_l = res.outcome.n_l;
  res.metrics.n_f = res.outcome.n_f;
  return res;
}

}  // namespace

Branches branches(const MarketParams& params) {
  require_interior_regime(params);
  const double delta = params.delta();
  Branches br;
  br.s = params.s;
  br.f1_num = 1.0 - delta;
  br.lb = std::sqrt((2.0 - delta) / (9.0 * params.s));
  br.singularity = 1.0 / std::sqrt(9.0 * params.s);
  // (2 - delta)/(9s) > 1/(9s) for delta < 1, so the closed-form branch never
  // touches the stage-2 singularity
  if (!(br.lb > br.singularity))
    throw std::logic_error("base_case: stage-1 lower bound at or below the stage-2 singularity");
  return br;
}

std::pair<double, double> stage3_prices(const MarketParams& params, double i_l, double i_f) {
  require_interior_regime(params);
  if (!(i_l > 0.0) || i_f < 0.0 || i_f > i_l + kBoundarySlack)
    throw std::domain_error("stage3_prices: requires 0 <= i_f <= i_l, i_l > 0");
  const double delta = params.delta();
  const double ratio = i_f / (3.0 * i_l);
  const double p_l = params.c + 2.0 / 3.0 - ratio + delta / 3.0;
  const double p_f = params.c + 1.0 / 3.0 + ratio - delta / 3.0;
  return {p_l, p_f};
}

double stage2_if(const MarketParams& params, double i_l) {
  const Branches br = branches(params);
  if (i_l < br.lb * (1.0 - 1e-12))
    throw std::domain_error("stage2_if: i_l below the stage-1 lower bound");
  if (i_l <= br.lb) return i_l;  // continuous: f1(lb) = lb
  return br.f1(i_l);
}

double stage2_best_response(const MarketParams& params, double i_l) {
  const Branches br = branches(params);
  if (!(i_l > 0.0)) throw std::domain_error("stage2_best_response: i_l must be positive");
  return (i_l <= br.lb) ? i_l : br.f1(i_l);
}

double stage1_objective(const MarketParams& params, double i_l) {
  const Branches br = branches(params);
  const double delta = params.delta();
  if (i_l <= br.lb) return (1.0 + delta) * (1.0 + delta) / 9.0 + (params.s - params.gamma) * i_l * i_l;
  const double f1 = br.f1(i_l);
  const double share = (2.0 + delta) / 3.0 - (1.0 - delta) / (27.0 * params.s * i_l * i_l - 3.0);
  return share * share + params.s * f1 * f1 - params.gamma * i_l * i_l;
}

numeric::MaxResult stage1_il(const MarketParams& params) {
  const Branches br = branches(params);
  const double delta = params.delta();
  if (!(params.delta_lb < br.lb))
    throw std::invalid_argument("base_case: requires delta_lb < sqrt((2-delta)/(9s))");
  if (params.m_ub && *params.m_ub <= br.lb) {
    // Degenerate bounded regime: the objective is increasing up to lb, so the
    // constraint binds and the maximizer is m_ub itself.
    return {{*params.m_ub}, stage1_objective(params, *params.m_ub)};
  }
  const auto objective = [&](double i_l) { return stage1_objective(params, i_l); };
  if (params.m_ub) return numeric::maximize_1d(objective, br.lb, *params.m_ub);
  // On the closed-form branch i_f* decreases from lb, so the positive part of
  // the objective is capped by ((2+delta)/3)^2 + s lb^2; -gamma i_l^2 dominates.
  const double cap = ((2.0 + delta) / 3.0) * ((2.0 + delta) / 3.0) + params.s * br.lb * br.lb;
  numeric::MaximizeOptions opt;
  opt.tail = numeric::QuadTail{cap, params.gamma};
  return numeric::maximize_1d(objective, br.lb, std::nullopt, opt);
}

namespace {

EquilibriumResult solve_interior(const MarketParams& params) {
  const Branches br = branches(params);
  EquilibriumResult res;
  if (params.m_ub && *params.m_ub <= br.lb) {
    StrategyProfile prof;
    prof.i_l = prof.i_f = *params.m_ub;
    std::tie(prof.p_l, prof.p_f) = stage3_prices(params, prof.i_l, prof.i_f);
    res.tag = EquilibriumTag::UniqueInterior;
    res.profiles = {prof};
    res.diagnostics =
        "bounded regime: m_ub at or below the stage-1 lower bound sqrt((2-delta)/(9s)); note "
        "this threshold is sometimes quoted without the square root, which is dimensionally "
        "inconsistent with that bound";
    return finish(params, std::move(res));
  }
  const numeric::MaxResult stage1 = stage1_il(params);
  res.tag = stage1.argmax.size() > 1 ? EquilibriumTag::MultipleCandidates
                                     : EquilibriumTag::UniqueInterior;
  for (double i_l : stage1.argmax) res.profiles.push_back(assemble_interior(params, i_l));
  if (stage1.argmax.size() > 1)
    res.diagnostics = "stage-1 maximization returned " + std::to_string(stage1.argmax.size()) +
                      " tied optima; each is a distinct SPNE";
  return finish(params, std::move(res));
}

EquilibriumResult solve_corner_high(const MarketParams& params, const SolveOptions& opt) {
  // delta >= 1: all EUs subscribe to the MNO, lease collapses to zero and the
  // MNO price is free inside [c+1, c+delta].
  const double delta = params.delta();
  EquilibriumResult res;
  PriceInterval interval{FreePrice::Pl, params.c + 1.0, params.c + delta};
  StrategyProfile corner;
  corner.i_l = params.delta_lb;
  corner.i_f = 0.0;
  corner.p_l = interval.lo + opt.corner_price_fraction * (interval.hi - interval.lo);
  corner.p_f = corner.p_l - delta;
  res.tag = EquilibriumTag::CornerFamily;
  res.profiles = {corner};
  res.price_interval = interval;

  if (delta == 1.0) {
    // knife edge: the interior point is an additional SPNE
    const double a = 1.0 / (3.0 * std::sqrt(params.s));
    const double invest = (params.m_ub && *params.m_ub <= a) ? *params.m_ub : a;
    if (params.delta_lb <= invest) {
      StrategyProfile interior;
      interior.i_l = interior.i_f = invest;
      interior.p_l = params.c + 2.0 / 3.0;
      interior.p_f = params.c + 1.0 / 3.0;
      res.tag = EquilibriumTag::MultipleCandidates;
      res.profiles.push_back(interior);
      res.diagnostics = "delta = 1: corner family plus interior SPNE " + format_profile(interior);
    }
  }
  return finish_corner(params, std::move(res));
}

EquilibriumResult solve_corner_low(const MarketParams& params, const SolveOptions& opt) {
  // delta <= -1: all EUs subscribe to the MVNO, the lease is full and the
  // MVNO price is free inside [c+1, c-delta] with p_l = p_f + delta (t_F = 0
  // at the full lease, so the indifference point sits exactly at 0).  A
  // variant with an extra -1 in the price relation and interval bound puts
  // the indifference point at 1 instead and fails the deviation check.
  const double delta = params.delta();
  const double unbounded = 1.0 / std::sqrt(2.0 * params.s);
  const double invest = (params.m_ub && *params.m_ub <= unbounded) ? *params.m_ub : unbounded;
  if (params.delta_lb > invest + kBoundarySlack)
    throw std::invalid_argument("base_case: delta <= -1 requires delta_lb <= 1/sqrt(2s)");
  EquilibriumResult res;
  PriceInterval interval{FreePrice::Pf, params.c + 1.0, params.c - delta};
  StrategyProfile corner;
  corner.i_l = corner.i_f = invest;
  corner.p_f = interval.lo + opt.corner_price_fraction * (interval.hi - interval.lo);
  corner.p_l = corner.p_f + delta;
  res.tag = EquilibriumTag::CornerFamily;
  res.profiles = {corner};
  res.price_interval = interval;
  res.diagnostics =
      "corner family with free p_f in [c+1, c-delta] and p_l = p_f + delta; the variant of "
      "this family with extra -1 terms is not deviation-proof and is not used";
  return finish_corner(params, std::move(res));
}

}  // namespace

EquilibriumResult solve(const MarketParams& params, const SolveOptions& options) {
  params.validate();
  if (!(options.corner_price_fraction >= 0.0 && options.corner_price_fraction <= 1.0))
    throw std::invalid_argument("solve: corner_price_fraction must lie in [0, 1]");
  const double delta = params.delta();
  if (std::fabs(delta) < 1.0) return solve_interior(params);
  if (delta >= 1.0) return solve_corner_high(params, options);
  return solve_corner_low(params, options);
}

oracle::Game interior_game(const MarketParams& params) {
  const Branches br = branches(params);
  oracle::Game game;
  game.name = "base";
  game.evaluate = [params](const StrategyProfile& p) { return evaluate_base(params, p); };
  game.stage3 = [params](double i_l, double i_f) { return stage3_prices(params, i_l, i_f); };
  game.stage2 = [params](double i_l) { return stage2_best_response(params, i_l); };
  game.i_l_lo = params.delta_lb;
  game.i_l_hi = std::max(2.0 * br.lb, 1.5) + 1.0;
  if (params.m_ub) game.i_l_hi = std::min(game.i_l_hi, *params.m_ub);
  return game;
}

oracle::Game corner_game(const MarketParams& params, double free_price) {
  const double delta = params.delta();
  if (std::fabs(delta) < 1.0)
    throw std::domain_error("corner_game: corner families require |delta| >= 1");
  oracle::Game game;
  game.evaluate = [params](const StrategyProfile& p) { return evaluate_base(params, p); };
  if (delta >= 1.0) {
    game.name = "base-corner-high";
    // prices pinned by the family; the lease stays at zero for any i_l
    game.stage3 = [free_price, delta](double, double) {
      return std::pair<double, double>{free_price, free_price - delta};
    };
    game.stage2 = [](double) { return 0.0; };
    game.i_l_lo = params.delta_lb;
    game.i_l_hi = params.delta_lb + 1.0 / std::sqrt(params.s) + 1.0;
  } else {
    game.name = "base-corner-low";
    // p_l held; the follower price tracks p_l - delta - t_F as the lease moves
    const double p_l_family = free_price + delta;
    game.stage3 = [p_l_family, delta](double i_l, double i_f) {
      const double t_f = (i_l - i_f) / i_l;
      return std::pair<double, double>{p_l_family, p_l_family - delta - t_f};
    };
    game.stage2 = [params](double i_l) {
      const double stationary = 1.0 / (2.0 * params.s * i_l);
      return std::min(stationary, i_l);
    };
    game.i_l_lo = params.delta_lb;
    game.i_l_hi = 2.0 / std::sqrt(2.0 * params.s) + 1.0;
  }
  if (params.m_ub) game.i_l_hi = std::min(game.i_l_hi, *params.m_ub);
  return game;
}

}  // namespace specshare::base_case
