#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <random>

#include "specshare/base_case.hpp"
#include "specshare/oracle.hpp"
#include "specshare/outside_option.hpp"

using namespace specshare;
using namespace specshare::outside_option;

namespace {

MarketParams make_params(double s, double gamma, double c, double k, double b,
                         double alpha = 1.0) {
  MarketParams p;
  p.s = s;
  p.gamma = gamma;
  p.c = c;
  p.k = k;
  p.b = b;
  p.alpha = alpha;
  return p;
}

// Independent stage-2 oracle: dense grid over the raw follower payoff with
// stage-3 fees substituted.
double stage2_grid_argmax(const MarketParams& p, double i_l, int n = 200001) {
  double bx = 0.0, bv = -1e300;
  for (int i = 0; i < n; ++i) {
    const double i_f = i_l * i / (n - 1.0);
    StrategyProfile prof{i_l, i_f, 0.0, 0.0};
    std::tie(prof.p_l, prof.p_f) = stage3_prices(p, i_l, i_f);
    const double v = evaluate(p, prof).pi_f;
    if (v > bv) {
      bv = v;
      bx = i_f;
    }
  }
  return bx;
}

}  // namespace

TEST_CASE("tilde demand: demand functions vanish when b = 0 and fees equal k") {
  const MarketParams p = make_params(1.0, 0.5, 1.0, 1.3, 0.0, 0.7);
  StrategyProfile prof{1.0, 0.4, 1.3, 1.3};
  const auto [ntl, ntf] = tilde_demand(p, prof, 0.45, 0.55);
  CHECK(ntl == doctest::Approx(0.7 * 0.45).epsilon(1e-14));
  CHECK(ntf == doctest::Approx(0.7 * 0.55).epsilon(1e-14));
}

TEST_CASE("tilde demand: direct substitution") {
  const MarketParams p = make_params(1.0, 0.5, 1.0, 1.0, 2.0, 1.0);
  StrategyProfile prof{1.0, 0.5, 1.2, 0.0};
  const auto [ntl, ntf] = tilde_demand(p, prof, 0.5, 0.5);
  (void)ntf;
  CHECK(ntl == doctest::Approx(1.3).epsilon(1e-14));
}

TEST_CASE("tilde demand: equilibrium expressions hold with alpha = 1") {
  const MarketParams p = make_params(3.0, 0.8, 1.0, 1.0, 2.0);
  const EquilibriumResult res = solve(p);
  const StrategyProfile& q = res.profile();
  const double expect_l = (q.i_l - q.i_f) / q.i_l + q.p_f - 2.0 * q.p_l + p.k +
                          p.b * (q.i_l - q.i_f);
  const double expect_f = q.i_f / q.i_l + q.p_l - 2.0 * q.p_f + p.k + p.b * q.i_f;
  CHECK(res.outcome.n_l == doctest::Approx(expect_l).epsilon(1e-10));
  CHECK(res.outcome.n_f == doctest::Approx(expect_f).epsilon(1e-10));
}

TEST_CASE("property: tilde demands sum to alpha (1 + 2k - p_l - p_f + b i_l)") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unif(0.1, 2.0);
  const MarketParams p = make_params(1.0, 0.5, 1.0, 1.1, 1.7, 0.8);
  for (int rep = 0; rep < 100; ++rep) {
    const double i_l = unif(rng);
    StrategyProfile prof{i_l, unif(rng) / 2.0 * i_l, unif(rng), unif(rng)};
    const double n_l = unif(rng) * 0.5;
    const auto [ntl, ntf] = tilde_demand(p, prof, n_l, 1.0 - n_l);
    const double expect =
        p.alpha * (1.0 + 2.0 * p.k - prof.p_l - prof.p_f + p.b * prof.i_l);
    CHECK(ntl + ntf == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("stage-3 fees: b = 0 collapse and direct substitution") {
  SUBCASE("b = 0, k = c") {
    const MarketParams p = make_params(1.0, 0.5, 1.0, 1.0, 0.0);
    const auto [p_l, p_f] = stage3_prices(p, 1.0, 0.25);
    CHECK(p_l == doctest::Approx(1.0 / 15.0 + 2.0 / 3.0 + 1.0 / 3.0 + 0.75 / 5.0).epsilon(1e-14));
    CHECK(p_f == doctest::Approx(1.0 / 15.0 + 2.0 / 3.0 + 1.0 / 3.0 + 0.25 / 5.0).epsilon(1e-14));
  }
  SUBCASE("b = 2, full lease; the listed terms sum to 1.2") {
    const MarketParams p = make_params(1.0, 0.5, 1.0, 1.0, 2.0);
    const auto [p_l, p_f] = stage3_prices(p, 1.0, 1.0);
    (void)p_f;
    CHECK(p_l ==
          doctest::Approx(1.0 / 15.0 + 2.0 / 3.0 + 1.0 / 3.0 - 2.0 / 5.0 + 8.0 / 15.0)
              .epsilon(1e-14));
    CHECK(p_l == doctest::Approx(1.2).epsilon(1e-14));
  }
  SUBCASE("fees rejected at and beyond 4/b") {
    const MarketParams p = make_params(1.0, 0.5, 1.0, 1.0, 2.0);
    CHECK_THROWS_AS((void)stage3_prices(p, 2.0, 0.5), std::domain_error);
  }
}

TEST_CASE("property: stage-3 first-order conditions vanish at the closed form") {
  std::mt19937 rng(111);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  const MarketParams p = make_params(2.5, 0.8, 1.0, 1.0, 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double i_l = 0.3 + unif(rng);
    const double i_f = unif(rng) * i_l;
    StrategyProfile star{i_l, i_f, 0.0, 0.0};
    std::tie(star.p_l, star.p_f) = stage3_prices(p, i_l, i_f);
    const double h = 1e-6;
    StrategyProfile up = star, dn = star;
    up.p_l += h;
    dn.p_l -= h;
    const double foc_l = (evaluate(p, up).pi_l - evaluate(p, dn).pi_l) / (2.0 * h);
    up = dn = star;
    up.p_f += h;
    dn.p_f -= h;
    const double foc_f = (evaluate(p, up).pi_f - evaluate(p, dn).pi_f) / (2.0 * h);
    CHECK(std::fabs(foc_l) < 1e-6);
    CHECK(std::fabs(foc_f) < 1e-6);
  }
}

TEST_CASE("stage-2 branches") {
  SUBCASE("interior stationary point under a large fee") {
    const MarketParams p = make_params(6.0, 0.8, 1.0, 1.0, 2.0);
    const double i_l = 1.0;
    const Stage2Result r = stage2_if(p, i_l);
    CHECK(r.branch == Stage2Branch::InteriorStationary);
    CHECK(r.i_f < i_l);
    CHECK(r.i_f == doctest::Approx(aux(p, i_l).if0).epsilon(1e-14));
  }
  SUBCASE("full lease below the regime threshold") {
    const MarketParams p = make_params(1.2, 0.8, 1.0, 1.0, 2.0);
    const Stage2Result r = stage2_if(p, 0.6);
    CHECK(r.branch == Stage2Branch::FullLease);
    CHECK(r.i_f == 0.6);
  }
  SUBCASE("degenerate linear payoff (2 alpha f^2 = s) leases everything when g >= 0") {
    // alpha = 1, b = 0, i_l = 1 gives f = 1/5, so s = 0.08 makes the
    // quadratic term vanish exactly
    MarketParams p = make_params(0.08, 0.04, 1.0, 1.0, 0.0);
    const Stage2Result r = stage2_if(p, 1.0);
    CHECK(r.branch == Stage2Branch::FullLease);
    CHECK(r.i_f == 1.0);
  }
  SUBCASE("no interior lease when g < 0 and the quadratic tilts down") {
    // k far below c drives g negative
    const MarketParams p = make_params(3.0, 0.8, 2.0, -2.0, 0.5);
    const Stage2Result r = stage2_if(p, 1.0);
    CHECK(r.branch == Stage2Branch::None);
    CHECK(std::isnan(r.i_f));
  }
}

TEST_CASE("property: stage-2 closed form equals the dense-grid argmax") {
  std::mt19937 rng(222);
  std::uniform_real_distribution<double> s_draw(1.0, 6.0);
  std::uniform_real_distribution<double> k_draw(0.8, 1.4);
  std::uniform_real_distribution<double> b_draw(0.5, 3.0);
  std::uniform_real_distribution<double> il_draw(0.3, 1.2);
  int exercised = 0;
  for (int rep = 0; rep < 200; ++rep) {
    MarketParams p = make_params(s_draw(rng), 0.5, 1.0, k_draw(rng), b_draw(rng));
    const double i_l = std::min(il_draw(rng), 3.9 / p.b);
    const Stage2Result r = stage2_if(p, i_l);
    if (r.branch == Stage2Branch::None) continue;
    ++exercised;
    const double grid = stage2_grid_argmax(p, i_l, 50001);
    CHECK(std::fabs(r.i_f - grid) <= std::max(1e-6, 2.0 * i_l / 50000.0));
  }
  CHECK(exercised > 150);
}

TEST_CASE("solve: small fee gives full cooperation and s-sensitive demands") {
  // in the full-lease regime the base case pins demands; here they move in s
  double prev_ntl = -1e300, prev_ntf = -1e300;
  for (double s : {2.0, 1.5, 1.2, 0.9}) {
    const MarketParams p = make_params(s, 0.8, 1.0, 1.0, 2.0);
    const EquilibriumResult res = solve(p);
    CHECK(res.metrics.degree_of_cooperation == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.outcome.n_l > prev_ntl);
    CHECK(res.outcome.n_f > prev_ntf);
    prev_ntl = res.outcome.n_l;
    prev_ntf = res.outcome.n_f;
  }
}

TEST_CASE("solve: resource-cost beats the base case at matched fees") {
  for (double s : {1.0, 2.0, 3.5, 5.0}) {
    const MarketParams p = make_params(s, 0.8, 1.0, 1.0, 2.0);
    const EquilibriumResult with_outside = solve(p);
    MarketParams base = p;
    base.k = base.b = 0.0;
    const EquilibriumResult plain = base_case::solve(base);
    CHECK(with_outside.metrics.eu_resource_cost > plain.metrics.eu_resource_cost);
  }
}

TEST_CASE("solve: b = 0 with matching k approaches the base-case structure") {
  // k chosen so the demand functions vanish at the base-case fees: with
  // degree 1 those fees are c + 1/3 and c + 2/3, so k between them keeps the
  // perturbation small
  MarketParams p = make_params(1.0, 0.5, 1.0, 0.0, 0.0);
  const EquilibriumResult plain = base_case::solve(p);
  p.k = 0.5 * (plain.profile().p_l + plain.profile().p_f);
  const EquilibriumResult res = solve(p);
  CHECK(res.metrics.degree_of_cooperation == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.profile().p_f > res.profile().p_l);  // same fee ordering as the base case
  CHECK(std::fabs(res.profile().p_l - plain.profile().p_l) < 0.25);
  CHECK(std::fabs(res.profile().p_f - plain.profile().p_f) < 0.25);
  CHECK(std::fabs(res.profile().i_l - plain.profile().i_l) < 0.1);
}

TEST_CASE("solve: region membership is consistent at the optimum") {
  for (double s : {1.0, 2.5, 4.0, 6.0}) {
    const MarketParams p = make_params(s, 0.8, 1.0, 1.0, 2.0);
    const EquilibriumResult res = solve(p);
    const RegionMembership m = region(p, res.profile().i_l);
    CHECK((m.in_l1 || m.in_l2));
    CHECK_FALSE((m.in_l1 && m.in_l2));
    const bool full = res.profile().i_f == doctest::Approx(res.profile().i_l).epsilon(1e-9);
    CHECK(full == m.in_l2);
  }
}

TEST_CASE("solve: bounded variant clips the stage-1 region") {
  MarketParams p = make_params(3.0, 0.8, 1.0, 1.0, 2.0);
  const EquilibriumResult unbounded = solve(p);
  p.m_ub = 0.8;  // below the unbounded optimum near 1.03
  const EquilibriumResult bounded = solve(p);
  CHECK(bounded.profile().i_l <= 0.8 + 1e-12);
  CHECK(bounded.profile().i_l < unbounded.profile().i_l);
  p.m_ub = 5.0;
  const EquilibriumResult slack = solve(p);
  CHECK(slack.profile().i_l == doctest::Approx(unbounded.profile().i_l).epsilon(1e-9));
}

TEST_CASE("oracle passes at returned equilibria") {
  for (double s : {1.2, 3.0, 5.0}) {
    const MarketParams p = make_params(s, 0.8, 1.0, 1.0, 2.0);
    const EquilibriumResult res = solve(p);
    const oracle::OracleReport rep = oracle::verify_spne(game(p), res.profile());
    CAPTURE(s);
    CHECK(rep.pass);
  }
}

TEST_CASE("scope: far outside the reference family the interior fees stop being a price NE") {
  // With a large enough exclusive base (b i_l of a few units) the leader
  // gains by pricing out of the common pool entirely and serving only its
  // own demand; the interior characterization never checks that branch, so
  // the oracle is expected to flag it.  Kept as a scope marker.
  MarketParams p = make_params(5.1, 0.8, 1.0, 1.25, 2.5);
  const EquilibriumResult res = solve(p);
  const oracle::OracleReport rep = oracle::verify_spne(game(p), res.profile());
  CHECK_FALSE(rep.pass);
  CHECK(rep.stage_gain[2] > rep.epsilon);
  // the reference numerical family itself is deviation-proof (checked above)
}

TEST_CASE("variant preconditions") {
  MarketParams p = make_params(1.0, 0.5, 1.0, 1.0, 2.0);
  p.v_l = 0.2;
  CHECK_THROWS_AS((void)solve(p), std::invalid_argument);
  p = make_params(1.0, 0.5, 1.0, 1.0, 500.0);
  CHECK_THROWS_AS((void)solve(p), std::invalid_argument);  // delta_lb >= 4/b
}
