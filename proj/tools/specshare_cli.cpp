#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "specshare/base_case.hpp"
#include "specshare/config.hpp"
#include "specshare/market.hpp"
#include "specshare/oracle.hpp"
#include "specshare/sweep.hpp"

namespace {

constexpr int kExitNoEquilibrium = 2;
constexpr int kExitValidation = 3;

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zeros
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

specshare::config::Scenario load_scenario(const std::string& path, const std::string& variant) {
  specshare::config::Scenario scenario = specshare::config::parse_file(path);
  if (!variant.empty()) {
    if (!specshare::config::known_variant(variant))
      throw std::invalid_argument("unknown variant '" + variant + "'");
    scenario.variant = variant;
  }
  return scenario;
}

void print_result(const std::string& variant, const specshare::EquilibriumResult& res) {
  using specshare::FreePrice;
  const specshare::StrategyProfile& p = res.profile();
  std::cout << "variant            = " << variant << "\n"
            << "tag                = " << to_string(res.tag) << "\n"
            << "i_l*               = " << fmt(p.i_l) << "\n"
            << "i_f*               = " << fmt(p.i_f) << "\n"
            << "p_l*               = " << fmt(p.p_l) << "\n"
            << "p_f*               = " << fmt(p.p_f) << "\n"
            << "n_l*               = " << fmt(res.outcome.n_l) << "\n"
            << "n_f*               = " << fmt(res.outcome.n_f) << "\n"
            << "pi_l*              = " << fmt(res.outcome.pi_l) << "\n"
            << "pi_f*              = " << fmt(res.outcome.pi_f) << "\n"
            << "degree             = " << fmt(res.metrics.degree_of_cooperation) << "\n"
            << "eu_resource_cost   = " << fmt(res.metrics.eu_resource_cost) << "\n";
  if (res.price_interval) {
    std::cout << "free_price         = " << (res.price_interval->coord == FreePrice::Pl ? "p_l" : "p_f")
              << " in [" << fmt(res.price_interval->lo) << ", " << fmt(res.price_interval->hi)
              << "]\n";
  }
  if (res.profiles.size() > 1) {
    for (size_t i = 1; i < res.profiles.size(); ++i) {
      const auto& q = res.profiles[i];
      std::cout << "candidate[" << i << "]       = (" << fmt(q.i_l) << ", " << fmt(q.i_f) << ", "
                << fmt(q.p_l) << ", " << fmt(q.p_f) << ")\n";
    }
  }
  if (!res.diagnostics.empty()) std::cout << "diagnostics        = " << res.diagnostics << "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPNE solver for sequential MNO/MVNO spectrum markets"};
  app.require_subcommand(1);

  std::string config_path, variant_override, out_path, svg_path, svg_col = "degree";
  double corner_frac = 0.5;
  std::string sweep_param = "s";
  double lo = 0.0, hi = 1.0, epsilon = -1.0, free_price = -1.0;
  int steps = 2, oracle_grid = 2001;
  bool with_oracle = false;

  CLI::App* solve = app.add_subcommand("solve", "solve one scenario");
  solve->add_option("--config", config_path, "scenario file")->required();
  solve->add_option("--variant", variant_override, "override the scenario variant");
  solve->add_option("--out", out_path, "write a one-row CSV");
  solve->add_option("--corner-price-frac", corner_frac,
                    "where in a corner price interval to evaluate (0..1)");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter");
  sweep->add_option("--config", config_path, "scenario file")->required();
  sweep->add_option("--variant", variant_override, "override the scenario variant");
  sweep->add_option("--sweep-param", sweep_param, "parameter to sweep")->required();
  sweep->add_option("--lo", lo, "sweep start")->required();
  sweep->add_option("--hi", hi, "sweep end")->required();
  sweep->add_option("--steps", steps, "number of grid points")->required();
  sweep->add_option("--out", out_path, "CSV output path")->required();
  sweep->add_option("--svg", svg_path, "optional SVG plot path");
  sweep->add_option("--svg-col", svg_col, "column plotted in the SVG");
  sweep->add_flag("--oracle", with_oracle, "verify every row with the oracle");
  sweep->add_option("--oracle-grid", oracle_grid, "oracle grid points per decision");
  sweep->add_option("--epsilon", epsilon, "oracle pass threshold override");

  CLI::App* verify = app.add_subcommand("verify", "solve, then verify with the oracle");
  verify->add_option("--config", config_path, "scenario file")->required();
  verify->add_option("--variant", variant_override, "override the scenario variant");
  verify->add_option("--oracle-grid", oracle_grid, "oracle grid points per decision");
  verify->add_option("--epsilon", epsilon, "oracle pass threshold override");
  verify->add_option("--price", free_price, "corner families: free price to verify");

  CLI11_PARSE(app, argc, argv);

  try {
    const specshare::config::Scenario scenario = load_scenario(config_path, variant_override);

    if (solve->parsed()) {
      specshare::EquilibriumResult res;
      if (scenario.variant == "base") {
        specshare::base_case::SolveOptions opts;
        opts.corner_price_fraction = corner_frac;
        res = specshare::base_case::solve(scenario.params, opts);
      } else {
        res = specshare::solve_variant(scenario.variant, scenario.params);
      }
      if (res.tag == specshare::EquilibriumTag::NoEquilibrium) {
        std::cout << "tag                = no_equilibrium\n";
        if (!res.diagnostics.empty()) std::cout << "diagnostics        = " << res.diagnostics << "\n";
        return kExitNoEquilibrium;
      }
      print_result(scenario.variant, res);
      if (!out_path.empty()) {
        specshare::SweepOutput one;
        one.swept_param = "row";
        one.rows.push_back(specshare::make_row(0.0, res));
        write_file(out_path, specshare::to_csv(one));
      }
      return 0;
    }

    if (sweep->parsed()) {
      specshare::SweepSpec spec;
      spec.variant = scenario.variant;
      spec.params = scenario.params;
      spec.swept_param = sweep_param;
      spec.lo = lo;
      spec.hi = hi;
      spec.n_steps = steps;
      spec.oracle = with_oracle;
      spec.oracle_grid = oracle_grid;
      if (epsilon >= 0.0) spec.epsilon = epsilon;
      const specshare::SweepOutput out = specshare::run_sweep(spec);
      write_file(out_path, specshare::to_csv(out));
      if (!svg_path.empty()) {
        std::ofstream svg(svg_path, std::ios::binary);
        if (!svg) throw std::runtime_error("cannot write " + svg_path);
        specshare::write_svg(out, svg_col, svg);
      }
      for (const std::string& line : out.footer) std::cout << line << "\n";
      std::cout << "wrote " << out.rows.size() << " rows to " << out_path << "\n";
      return 0;
    }

    // verify
    specshare::EquilibriumResult res = specshare::solve_variant(scenario.variant, scenario.params);
    if (res.tag == specshare::EquilibriumTag::NoEquilibrium) {
      std::cout << "tag = no_equilibrium; nothing to verify\n";
      return kExitNoEquilibrium;
    }
    if (free_price >= 0.0 && res.price_interval) {
      specshare::StrategyProfile& prof = res.profiles.front();
      const double delta = scenario.params.delta();
      if (res.price_interval->coord == specshare::FreePrice::Pl) {
        prof.p_l = free_price;
        prof.p_f = free_price - delta;
      } else {
        prof.p_f = free_price;
        prof.p_l = free_price + delta;
      }
    }
    specshare::oracle::VerifyOptions vopt;
    vopt.n_points = oracle_grid;
    if (epsilon >= 0.0) vopt.epsilon = epsilon;
    const specshare::oracle::Game game =
        specshare::game_for(scenario.variant, scenario.params, res);
    const specshare::oracle::OracleReport rep =
        specshare::oracle::verify_spne(game, res.profile(), vopt);
    std::cout << "profile            = (" << fmt(rep.profile.i_l) << ", " << fmt(rep.profile.i_f)
              << ", " << fmt(rep.profile.p_l) << ", " << fmt(rep.profile.p_f) << ")\n";
    const char* names[4] = {"stage1 (i_l)", "stage2 (i_f)", "stage3 (prices)", "stage4 (EUs)"};
    for (int i = 0; i < 4; ++i)
      std::cout << names[i] << " max unilateral gain = " << fmt(rep.stage_gain[i]) << "\n";
    std::cout << "epsilon            = " << fmt(rep.epsilon) << "\n"
              << "verdict            = " << (rep.pass ? "pass" : "fail") << "\n";
    return rep.pass ? 0 : 1;
  } catch (const specshare::config::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitValidation;
  }
}
