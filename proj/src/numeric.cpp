#include "specshare/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specshare::numeric {

double Quadratic::vertex() const {
  if (a == 0.0) throw std::domain_error("Quadratic: vertex undefined for a = 0");
  return -b / (2.0 * a);
}

QuadMax quad_max_on_interval(const Quadratic& q, double d, double e) {
  if (!(d < e)) throw std::invalid_argument("quad_max_on_interval: requires d < e");
  QuadMax r;
  if (q.a == 0.0) {
    // linear: endpoint with the larger value, lower endpoint on ties
    const double fd = q(d), fe = q(e);
    if (fd == fe) return {d, fd, true};
    return fd > fe ? QuadMax{d, fd, false} : QuadMax{e, fe, false};
  }
  const double v = q.vertex();
  if (q.a > 0.0) {
    const double mid = 0.5 * (d + e);
    if (mid == v) return {d, q(d), true};
    r.argmax = (mid < v) ? d : e;
  } else {
    r.argmax = std::clamp(v, d, e);
  }
  r.value = q(r.argmax);
  return r;
}

void GridSpec::validate() const {
  if (!(lo < hi)) throw std::invalid_argument("GridSpec: requires lo < hi");
  if (n_points < 3) throw std::invalid_argument("GridSpec: requires n_points >= 3");
  if (refinement_rounds < 0) throw std::invalid_argument("GridSpec: negative refinement_rounds");
}

namespace {

double grid_point(double lo, double hi, int i, int n) {
  if (i == 0) return lo;
  if (i == n - 1) return hi;
  return lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
}

struct Candidate {
  double x;
  double value;
};

// Value comparisons alone cannot place a smooth interior maximum better than
// the square root of machine precision (the payoff is flat to double
// precision there), so after zooming we bisect the sign of a central
// difference, which pins the stationary point to ~1e-10.
Candidate polish_interior(const std::function<double(double)>& f, double lo, double hi,
                          Candidate best) {
  const double x_scale = std::max(1.0, std::fabs(best.x));
  const double h = 1e-6 * x_scale;
  double w = 1e-4 * x_scale;
  if (!(best.x - w - h > lo && best.x + w + h < hi)) return best;
  const auto slope = [&](double x) { return f(x + h) - f(x - h); };
  double a = best.x - w, b = best.x + w;
  const double ga = slope(a), gb = slope(b);
  if (!std::isfinite(ga) || !std::isfinite(gb) || !(ga > 0.0) || !(gb < 0.0)) return best;
  for (int iter = 0; iter < 80 && (b - a) > 1e-13 * x_scale; ++iter) {
    const double mid = 0.5 * (a + b);
    const double gm = slope(mid);
    if (!std::isfinite(gm)) return best;
    (gm > 0.0 ? a : b) = mid;
  }
  const double x = 0.5 * (a + b);
  const double v = f(x);
  // accept anywhere on the value plateau of the maximum
  if (v >= best.value - 1e-10 * std::max(1.0, std::fabs(best.value))) return {x, v};
  return best;
}

// Shrink the bracket around x until its width drops below tol, re-gridding
// with a fixed small fan-out each round.
Candidate refine(const std::function<double(double)>& f, double lo, double hi, double x0,
                 double half_width, double tol) {
  constexpr int kFan = 33;
  Candidate best{x0, f(x0)};
  double h = half_width;
  for (int round = 0; round < 200; ++round) {
    const double a = std::max(lo, best.x - h);
    const double b = std::min(hi, best.x + h);
    if (!(b > a)) break;
    for (int i = 0; i < kFan; ++i) {
      const double x = grid_point(a, b, i, kFan);
      const double v = f(x);
      if (v > best.value) best = {x, v};
    }
    const double step = (b - a) / (kFan - 1);
    if (h <= tol * std::max(1.0, std::fabs(best.x))) break;
    h = 2.0 * step;
  }
  return polish_interior(f, lo, hi, best);
}

MaxResult scan_and_refine(const std::function<double(double)>& f, double lo, double hi,
                          const MaximizeOptions& opt) {
  const int n = std::max(3, opt.n_points);
  std::vector<double> vals(static_cast<size_t>(n));
  double vbest = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    vals[static_cast<size_t>(i)] = f(grid_point(lo, hi, i, n));
    vbest = std::max(vbest, vals[static_cast<size_t>(i)]);
  }
  const double scale = std::max(1.0, std::fabs(vbest));
  // keep every local maximum that is plausibly competitive before refinement
  const double keep = vbest - std::max(opt.tie_rel_tol, 1e-6) * scale;
  std::vector<Candidate> cands;
  for (int i = 0; i < n; ++i) {
    const double v = vals[static_cast<size_t>(i)];
    const bool up = (i == 0) || v >= vals[static_cast<size_t>(i - 1)];
    const bool down = (i == n - 1) || v >= vals[static_cast<size_t>(i + 1)];
    if (up && down && v >= keep) cands.push_back({grid_point(lo, hi, i, n), v});
  }
  const double step = (hi - lo) / (n - 1);
  for (auto& c : cands) c = refine(f, lo, hi, c.x, step, opt.argmax_tol);

  double refined_best = -std::numeric_limits<double>::infinity();
  for (const auto& c : cands) refined_best = std::max(refined_best, c.value);
  const double cut = refined_best - opt.tie_rel_tol * std::max(1.0, std::fabs(refined_best));

  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.x < b.x;
  });
  MaxResult result;
  result.value = refined_best;
  for (const auto& c : cands) {
    if (c.value < cut) continue;
    const double dedupe = 1e-7 * std::max(1.0, std::fabs(c.x));
    if (!result.argmax.empty() && std::fabs(c.x - result.argmax.back()) <= dedupe) continue;
    result.argmax.push_back(c.x);
  }
  return result;
}

}  // namespace

MaxResult maximize_1d(const std::function<double(double)>& objective, double lo,
                      std::optional<double> hi, const MaximizeOptions& options) {
  if (!std::isfinite(lo)) throw std::invalid_argument("maximize_1d: lo must be finite");
  if (hi) {
    if (*hi < lo) throw std::invalid_argument("maximize_1d: hi below lo");
    if (*hi == lo) return {{lo}, objective(lo)};
    return scan_and_refine(objective, lo, *hi, options);
  }
  if (!options.tail)
    throw std::invalid_argument("maximize_1d: unbounded domain needs a tail certificate");
  if (!(options.tail->decay > 0.0))
    throw std::invalid_argument("maximize_1d: tail decay must be positive");

  double hi_cur = std::max(4.0 * std::fabs(lo), lo + 1.0);
  double vbest = objective(lo);
  const int n = std::max(3, options.n_points);
  for (int doubling = 0;; ++doubling) {
    if (doubling > 64)
      throw std::runtime_error("maximize_1d: domain expansion failed; objective looks unbounded");
    for (int i = 0; i < n; ++i) vbest = std::max(vbest, objective(grid_point(lo, hi_cur, i, n)));
    const double bound = options.tail->positive_cap - options.tail->decay * hi_cur * hi_cur;
    if (bound < vbest) break;
    hi_cur *= 2.0;
  }
  return scan_and_refine(objective, lo, hi_cur, options);
}

}  // namespace specshare::numeric
