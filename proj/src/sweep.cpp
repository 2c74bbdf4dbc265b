#include "specshare/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "specshare/base_case.hpp"
#include "specshare/config.hpp"
#include "specshare/outside_option.hpp"
#include "specshare/three_player.hpp"

namespace specshare {

EquilibriumResult solve_variant(const std::string& variant, const MarketParams& params) {
  if (variant == "base") return base_case::solve(params);
  if (variant == "outside") return outside_option::solve(params);
  if (variant == "three_player") return three_player::solve(params);
  if (variant == "two_player_comparison") return three_player::solve_two_player_comparison(params);
  throw std::invalid_argument("solve_variant: unknown variant '" + variant + "'");
}

oracle::Game game_for(const std::string& variant, const MarketParams& params,
                      const EquilibriumResult& result) {
  if (variant == "base") {
    if (result.tag == EquilibriumTag::CornerFamily ||
        (result.tag == EquilibriumTag::MultipleCandidates && result.price_interval)) {
      const StrategyProfile& prof = result.profile();
      const double free_price =
          result.price_interval->coord == FreePrice::Pl ? prof.p_l : prof.p_f;
      return base_case::corner_game(params, free_price);
    }
    return base_case::interior_game(params);
  }
  if (variant == "outside") return outside_option::game(params);
  if (variant == "three_player") return three_player::game(params);
  if (variant == "two_player_comparison") return three_player::two_player_game(params);
  throw std::invalid_argument("game_for: unknown variant '" + variant + "'");
}

void SweepSpec::validate() const {
  if (!config::known_variant(variant))
    throw std::invalid_argument("SweepSpec: unknown variant '" + variant + "'");
  if (!(lo < hi)) throw std::invalid_argument("SweepSpec: requires lo < hi");
  if (n_steps < 2) throw std::invalid_argument("SweepSpec: requires n_steps >= 2");
  MarketParams probe = params;
  apply_param(probe, swept_param, lo);  // throws on unknown names
}

void apply_param(MarketParams& params, const std::string& name, double value) {
  if (name == "s") params.s = value;
  else if (name == "gamma") params.gamma = value;
  else if (name == "c") params.c = value;
  else if (name == "delta") { params.v_l = value; params.v_f = 0.0; }
  else if (name == "v_l") params.v_l = value;
  else if (name == "v_f") params.v_f = value;
  else if (name == "delta_lb") params.delta_lb = value;
  else if (name == "m_ub") params.m_ub = value;
  else if (name == "alpha") params.alpha = value;
  else if (name == "k") params.k = value;
  else if (name == "b") params.b = value;
  else if (name == "t") params.t = value;
  else throw std::invalid_argument("apply_param: unknown parameter '" + name + "'");
}

ResultRow make_row(double swept, const EquilibriumResult& result) {
  ResultRow row;
  row.swept = swept;
  const StrategyProfile& prof = result.profile();
  row.i_l = prof.i_l;
  row.i_f = prof.i_f;
  row.p_l = prof.p_l;
  row.p_f = prof.p_f;
  row.n_l = result.outcome.n_l;
  row.n_f = result.outcome.n_f;
  row.pi_l = result.outcome.pi_l;
  row.pi_f = result.outcome.pi_f;
  row.degree = result.metrics.degree_of_cooperation;
  row.eu_resource_cost = result.metrics.eu_resource_cost;
  row.tag = to_string(result.tag);
  if (result.price_interval) {
    row.price_lo = result.price_interval->lo;
    row.price_hi = result.price_interval->hi;
  }
  return row;
}

unsigned thread_cap(size_t n_jobs) {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPNE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<size_t>(cap, std::max<size_t>(n_jobs, 1)));
}

namespace {

std::string sanitize(std::string text) {
  for (char& ch : text) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return text;
}

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zeros
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ResultRow compute_row(const SweepSpec& spec, double value) {
  ResultRow row;
  row.swept = value;
  try {
    MarketParams params = spec.params;
    apply_param(params, spec.swept_param, value);
    const EquilibriumResult result = solve_variant(spec.variant, params);
    if (result.tag == EquilibriumTag::NoEquilibrium) {
      row.tag = to_string(result.tag);
      return row;
    }
    row = make_row(value, result);
    if (spec.oracle) {
      oracle::VerifyOptions vopt;
      vopt.n_points = spec.oracle_grid;
      vopt.epsilon = spec.epsilon;
      const oracle::OracleReport rep =
          oracle::verify_spne(game_for(spec.variant, params, result), result.profile(), vopt);
      row.oracle = rep.pass ? "pass" : "fail";
    }
  } catch (const std::exception& err) {
    row.tag = sanitize(std::string("error:") + err.what());
  }
  return row;
}

void detect_thresholds(SweepOutput& out) {
  const auto valid = [](const ResultRow& r) {
    return r.tag.rfind("error:", 0) != 0 && r.tag != "no_equilibrium";
  };
  for (size_t i = 1; i < out.rows.size(); ++i) {
    const ResultRow& prev = out.rows[i - 1];
    const ResultRow& cur = out.rows[i];
    if (!valid(prev) || !valid(cur)) continue;
    if (prev.degree >= 1.0 - 1e-9 && cur.degree < 1.0 - 1e-9) {
      out.footer.push_back("# threshold degree_lt_1 " + out.swept_param + " between " +
                           fmt(prev.swept) + " and " + fmt(cur.swept) + " midpoint " +
                           fmt(0.5 * (prev.swept + cur.swept)));
    }
  }
}

}  // namespace

SweepOutput run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepOutput out;
  out.swept_param = spec.swept_param;
  out.rows.resize(static_cast<size_t>(spec.n_steps));
  std::vector<double> values(static_cast<size_t>(spec.n_steps));
  for (int i = 0; i < spec.n_steps; ++i)
    values[static_cast<size_t>(i)] = spec.lo + (spec.hi - spec.lo) * i / (spec.n_steps - 1);

  const unsigned workers = thread_cap(values.size());
  if (workers <= 1) {
    for (size_t i = 0; i < values.size(); ++i) out.rows[i] = compute_row(spec, values[i]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (size_t i = w; i < values.size(); i += workers)
          out.rows[i] = compute_row(spec, values[i]);
      });
    }
    for (auto& th : pool) th.join();
  }
  detect_thresholds(out);
  return out;
}

std::string to_csv(const SweepOutput& out) {
  std::ostringstream os;
  os << out.swept_param
     << ",i_l,i_f,p_l,p_f,n_l,n_f,pi_l,pi_f,degree,eu_resource_cost,tag,oracle,price_lo,price_hi\n";
  for (const ResultRow& r : out.rows) {
    os << fmt(r.swept) << ',' << fmt(r.i_l) << ',' << fmt(r.i_f) << ',' << fmt(r.p_l) << ','
       << fmt(r.p_f) << ',' << fmt(r.n_l) << ',' << fmt(r.n_f) << ',' << fmt(r.pi_l) << ','
       << fmt(r.pi_f) << ',' << fmt(r.degree) << ',' << fmt(r.eu_resource_cost) << ','
       << sanitize(r.tag) << ',' << r.oracle << ','
       << (r.price_lo ? fmt(*r.price_lo) : std::string{}) << ','
       << (r.price_hi ? fmt(*r.price_hi) : std::string{}) << '\n';
  }
  for (const std::string& line : out.footer) os << line << '\n';
  return os.str();
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += ch;
    }
  }
  cells.push_back(cell);
  return cells;
}

}  // namespace

SweepOutput parse_csv(const std::string& text) {
  SweepOutput out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      out.footer.push_back(line);
      continue;
    }
    const std::vector<std::string> cells = split_csv(line);
    if (header) {
      if (cells.empty()) throw std::invalid_argument("parse_csv: empty header");
      out.swept_param = cells[0];
      header = false;
      continue;
    }
    if (cells.size() != 15) throw std::invalid_argument("parse_csv: expected 15 columns");
    ResultRow r;
    r.swept = std::stod(cells[0]);
    r.i_l = std::stod(cells[1]);
    r.i_f = std::stod(cells[2]);
    r.p_l = std::stod(cells[3]);
    r.p_f = std::stod(cells[4]);
    r.n_l = std::stod(cells[5]);
    r.n_f = std::stod(cells[6]);
    r.pi_l = std::stod(cells[7]);
    r.pi_f = std::stod(cells[8]);
    r.degree = std::stod(cells[9]);
    r.eu_resource_cost = std::stod(cells[10]);
    r.tag = cells[11];
    r.oracle = cells[12];
    if (!cells[13].empty()) r.price_lo = std::stod(cells[13]);
    if (!cells[14].empty()) r.price_hi = std::stod(cells[14]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

void write_svg(const SweepOutput& out, const std::string& y_column, std::ostream& os) {
  const auto column = [&](const ResultRow& r) -> double {
    if (y_column == "i_l") return r.i_l;
    if (y_column == "i_f") return r.i_f;
    if (y_column == "p_l") return r.p_l;
    if (y_column == "p_f") return r.p_f;
    if (y_column == "n_l") return r.n_l;
    if (y_column == "n_f") return r.n_f;
    if (y_column == "pi_l") return r.pi_l;
    if (y_column == "pi_f") return r.pi_f;
    if (y_column == "degree") return r.degree;
    if (y_column == "eu_resource_cost") return r.eu_resource_cost;
    throw std::invalid_argument("write_svg: unknown column '" + y_column + "'");
  };
  constexpr int kW = 640, kH = 480, kMargin = 60;
  std::vector<std::pair<double, double>> pts;
  for (const ResultRow& r : out.rows) {
    if (r.tag.rfind("error:", 0) == 0 || r.tag == "no_equilibrium") continue;
    pts.emplace_back(r.swept, column(r));
  }
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\">\n";
  if (!pts.empty()) {
    double x0 = pts.front().first, x1 = x0, y0 = pts.front().second, y1 = y0;
    for (const auto& [x, y] : pts) {
      x0 = std::min(x0, x); x1 = std::max(x1, x);
      y0 = std::min(y0, y); y1 = std::max(y1, y);
    }
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;
    const auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * (kW - 2 * kMargin); };
    const auto py = [&](double y) { return kH - kMargin - (y - y0) / (y1 - y0) * (kH - 2 * kMargin); };
    os << "  <polyline fill=\"none\" stroke=\"black\" points=\"";
    for (const auto& [x, y] : pts) os << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
    os << "\"/>\n";
    os << "  <line stroke=\"gray\" x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\""
       << kW - kMargin << "\" y2=\"" << kH - kMargin << "\"/>\n";
    os << "  <line stroke=\"gray\" x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\""
       << kMargin << "\" y2=\"" << kH - kMargin << "\"/>\n";
    os << "  <text x=\"" << kW / 2 << "\" y=\"" << kH - 20 << "\">" << out.swept_param
       << "</text>\n";
    os << "  <text x=\"15\" y=\"" << kH / 2 << "\" transform=\"rotate(-90 15 " << kH / 2 << ")\">"
       << y_column << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace specshare
