#ifndef SPECSHARE_SWEEP_HPP
#define SPECSHARE_SWEEP_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specshare/market.hpp"
#include "specshare/oracle.hpp"

namespace specshare {

/// Dispatches to the solver matching a variant name (see config::Scenario).
EquilibriumResult solve_variant(const std::string& variant, const MarketParams& params);

/// Oracle adapter for the representative profile of a solver result.
oracle::Game game_for(const std::string& variant, const MarketParams& params,
                      const EquilibriumResult& result);

struct SweepSpec {
  std::string variant = "base";
  std::string swept_param = "s";  ///< s, gamma, c, delta, delta_lb, m_ub, alpha, k, b or t
  double lo = 0.0;
  double hi = 1.0;
  int n_steps = 2;
  MarketParams params;
  bool oracle = false;
  int oracle_grid = 2001;
  std::optional<double> epsilon{};

  void validate() const;
};

/// One sweep grid point.  Columns are stable and ordered as declared; corner
/// rows carry the family's price interval in the two trailing columns.
struct ResultRow {
  double swept = 0.0;
  double i_l = 0.0, i_f = 0.0, p_l = 0.0, p_f = 0.0;
  double n_l = 0.0, n_f = 0.0, pi_l = 0.0, pi_f = 0.0;
  double degree = 0.0, eu_resource_cost = 0.0;
  std::string tag;     ///< equilibrium tag, or error:<what> for failed rows
  std::string oracle;  ///< pass | fail | empty when not requested
  std::optional<double> price_lo{}, price_hi{};
};

struct SweepOutput {
  std::string swept_param;
  std::vector<ResultRow> rows;
  std::vector<std::string> footer;  ///< comment lines (regime thresholds etc.)
};

/// Applies a swept value to a parameter block; throws std::invalid_argument
/// for unknown names.  "delta" sets v_l = value, v_f = 0.
void apply_param(MarketParams& params, const std::string& name, double value);

/// Runs the sweep.  Rows are computed in parallel (SPNE_THREADS caps the
/// worker count) and assembled in grid order; per-row solver errors land in
/// the row's tag column without aborting the sweep.
SweepOutput run_sweep(const SweepSpec& spec);

ResultRow make_row(double swept, const EquilibriumResult& result);

/// Deterministic CSV: comma separated, header row, 12 significant digits,
/// LF line endings, footer comments prefixed '#'.
std::string to_csv(const SweepOutput& out);

/// Inverse of to_csv for emitted files (round-trip checked by tests).
SweepOutput parse_csv(const std::string& text);

/// Single-series polyline SVG of one numeric column against the swept value.
void write_svg(const SweepOutput& out, const std::string& y_column, std::ostream& os);

/// Worker cap from SPNE_THREADS (falls back to the hardware concurrency).
unsigned thread_cap(size_t n_jobs);

}  // namespace specshare

#endif
