#ifndef SPECSHARE_NUMERIC_HPP
#define SPECSHARE_NUMERIC_HPP

#include <functional>
#include <optional>
#include <vector>

namespace specshare::numeric {

/// f(x) = a x^2 + b x + c.
struct Quadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double x) const noexcept { return (a * x + b) * x + c; }
  /// Stationary point -b / (2a); domain error when a = 0.
  double vertex() const;
};

struct QuadMax {
  double argmax = 0.0;
  double value = 0.0;
  bool tie = false;  ///< both endpoints (or endpoint and vertex) attain the max
};

/// Exact maximum of a quadratic on [d, e], d < e.
///
/// Convex case: endpoint selected by comparing the interval midpoint with the
/// vertex.  Concave case: vertex clamped to the interval.  Degenerate linear
/// case: endpoint with the larger value.  Ties return the lower endpoint and
/// set the tie flag.
QuadMax quad_max_on_interval(const Quadratic& q, double d, double e);

/// Uniform evaluation grid for the equilibrium oracle.
struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  int n_points = 2001;
  int refinement_rounds = 2;

  void validate() const;  ///< lo < hi, n_points >= 3, rounds >= 0
  double step() const noexcept { return (hi - lo) / (n_points - 1); }
};

/// Certifies that the objective is eventually dominated by a downward
/// parabola: f(x) <= positive_cap - decay * x^2 for all x >= the search
/// origin.  Required when maximizing over an unbounded domain.
struct QuadTail {
  double positive_cap = 0.0;
  double decay = 0.0;
};

struct MaximizeOptions {
  int n_points = 2001;
  double tie_rel_tol = 1e-9;    ///< candidates within this of the best are kept
  double argmax_tol = 1e-12;    ///< refinement stops below this bracket width
  std::optional<QuadTail> tail{};
};

struct MaxResult {
  std::vector<double> argmax;  ///< all grid-distinct maximizers, ascending
  double value = 0.0;
};

/// Bounded (or tail-certified unbounded) scalar maximization: coarse grid
/// scan followed by iterated local regridding around every near-optimal
/// candidate.  Returns every distinct maximizer whose refined value lies
/// within tie_rel_tol of the best, which keeps non-unique stage-1 optima
/// visible instead of silently picking one.
///
/// Without an upper bound the domain is extended by doubling until the tail
/// certificate shows no further improvement is possible; a missing
/// certificate throws std::invalid_argument, failed expansion (objective not
/// actually dominated) throws std::runtime_error.
MaxResult maximize_1d(const std::function<double(double)>& objective, double lo,
                      std::optional<double> hi, const MaximizeOptions& options = {});

}  // namespace specshare::numeric

#endif
