#ifndef MUFRAC_LEADERS_HPP
#define MUFRAC_LEADERS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "capacity.hpp"
#include "dyadic.hpp"
#include "error.hpp"
#include "mfspec.hpp"
#include "parallel.hpp"
#include "stats.hpp"
#include "wavelet.hpp"

namespace mufrac {

/// Leaders L_lambda for every cube at scales J_top .. J-1, stored per scale in
/// row-major k order.
struct LeaderField {
  int d = 1;
  int J_top = 0;
  int J = 0;
  Boundary boundary = Boundary::clipped;
  std::vector<std::vector<double>> levels;  // index j - J_top

  double at(int j, std::size_t cube) const { return levels[static_cast<std::size_t>(j - J_top)][cube]; }
  double at(const CubeIndex& c) const { return at(c.j, dyadic::linear_index(c)); }
};

/// L_lambda = max |c_lambda'| over lambda' at scales j .. J-1 inside the 3^d
/// neighbourhood of lambda (all orientations). Clipped neighbourhoods by
/// default; Boundary::periodic wraps like the transform.
inline LeaderField compute_leaders(const WaveletField& field, Boundary boundary = Boundary::clipped) {
  validate(field);
  const int d = field.d, J = field.J, no = field.orientations();
  LeaderField L;
  L.d = d;
  L.J_top = 0;
  L.J = J;
  L.boundary = boundary;
  L.levels.resize(static_cast<std::size_t>(J));
  // below[j][k]: max |c| over the subtree of cube k from scale j down.
  std::vector<double> below, finer;
  for (int j = J - 1; j >= 0; --j) {
    const std::size_t cubes = dyadic::cube_count(d, j);
    below.assign(cubes, 0.0);
    parallel_for(cubes, [&](std::size_t c) {
      double m = 0.0;
      for (int o = 1; o <= no; ++o) m = std::max(m, std::abs(field.at(j, c, o)));
      if (!finer.empty())
        for (int oct = 0; oct < (1 << d); ++oct) m = std::max(m, finer[dyadic::child_linear(d, j, c, oct)]);
      below[c] = m;
    });
    auto& out = L.levels[static_cast<std::size_t>(j)];
    out.assign(cubes, 0.0);
    parallel_for(cubes, [&](std::size_t c) {
      double m = 0.0;
      for (const auto& nb : dyadic::neighborhood_3(dyadic::from_linear(d, j, c), boundary))
        m = std::max(m, below[dyadic::linear_index(nb)]);
      out[c] = m;
    });
    finer.swap(below);
  }
  return L;
}

enum class ExponentMethod { min, regression };

inline std::string to_string(ExponentMethod m) { return m == ExponentMethod::min ? "min" : "regression"; }

/// Finite-scale exponent at x from the leader chain L_{lambda_j(x)},
/// j in [jmin, jmax]. Returns +infinity when a leader on the chain vanishes.
inline double pointwise_exponent(const LeaderField& L, std::span<const double> x, int jmin, int jmax,
                                 ExponentMethod method = ExponentMethod::regression) {
  detail::require(static_cast<int>(x.size()) == L.d, "pointwise_exponent: point dimension mismatch");
  detail::require(std::max(1, L.J_top) <= jmin && jmin < jmax && jmax <= L.J - 1,
                  "pointwise_exponent: need max(1, J_top) <= jmin < jmax <= J - 1");
  std::vector<double> xs, ys;
  double lowest = std::numeric_limits<double>::infinity();
  for (int j = jmin; j <= jmax; ++j) {
    const double v = L.at(dyadic::cube_of_point(x, j));
    if (!(v > 0.0)) return std::numeric_limits<double>::infinity();
    const double lv = std::log2(v);
    lowest = std::min(lowest, lv / -static_cast<double>(j));
    xs.push_back(-static_cast<double>(j));
    ys.push_back(lv);
  }
  return method == ExponentMethod::min ? lowest : fit_line(xs, ys).slope;
}

/// Large-deviation spectrum of the leaders (same recipe as coarse_spectrum).
inline SpectrumCurve leader_spectrum(const LeaderField& L, std::span<const double> hgrid, double delta, int jmin,
                                     int jmax) {
  detail::require(jmin >= std::max(1, L.J_top) && jmax <= L.J - 1, "leader_spectrum: scale range outside the field");
  std::vector<std::vector<double>> values(static_cast<std::size_t>(jmax) + 1);
  for (int j = jmin; j <= jmax; ++j) values[static_cast<std::size_t>(j)] = L.levels[static_cast<std::size_t>(j - L.J_top)];
  return detail::large_deviation_spectrum(values, hgrid, delta, jmin, jmax, L.d);
}

/// Change of the exponent at x when the finest coefficient scale is dropped
/// (leaders of the field truncated to J - 1 levels); needs jmax <= J - 2.
inline double truncation_delta(const WaveletField& f, std::span<const double> x, int jmin, int jmax,
                               ExponentMethod method = ExponentMethod::regression,
                               Boundary boundary = Boundary::clipped) {
  detail::require(jmax <= f.J - 2, "truncation_delta: need jmax <= J - 2");
  const double full = pointwise_exponent(compute_leaders(f, boundary), x, jmin, jmax, method);
  const double cut = pointwise_exponent(compute_leaders(truncated(f, f.J - 1), boundary), x, jmin, jmax, method);
  return cut - full;
}

/// Cube centres (k + 1/2) / side on a side^d grid.
inline std::vector<std::vector<double>> grid_points(int d, int side) {
  detail::require(d >= 1 && side >= 1, "grid_points: need d >= 1 and side >= 1");
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(side);
  std::vector<std::vector<double>> pts;
  pts.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<double> x(static_cast<std::size_t>(d));
    std::size_t rest = code;
    for (int i = d - 1; i >= 0; --i) {
      x[static_cast<std::size_t>(i)] = (static_cast<double>(rest % static_cast<std::size_t>(side)) + 0.5) / side;
      rest /= static_cast<std::size_t>(side);
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

struct BoundViolation {
  std::size_t point = 0;
  double exponent = 0.0;
  double bound = 0.0;
};

struct LowerBoundReport {
  std::size_t checked = 0;
  std::vector<BoundViolation> violations;
  std::vector<double> exponents;
  std::vector<double> lower_dims;
  double min_exponent = std::numeric_limits<double>::infinity();
  std::string note;
};

/// Checks exponent(f) >= lower local dimension(mu) - slack at every point.
inline LowerBoundReport lower_bound_check(const WaveletField& f, const CapacityTree& mu,
                                          const std::vector<std::vector<double>>& points, int jmin, int jmax,
                                          double slack, ExponentMethod method = ExponentMethod::min) {
  detail::require(jmax <= mu.depth(), "lower_bound_check: jmax exceeds the environment depth");
  const auto L = compute_leaders(f);
  LowerBoundReport rep;
  rep.checked = points.size();
  rep.exponents.resize(points.size());
  rep.lower_dims.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    rep.exponents[i] = pointwise_exponent(L, points[i], jmin, jmax, method);
    rep.lower_dims[i] = local_dims(mu, points[i], jmin, jmax).lower;
  });
  for (std::size_t i = 0; i < points.size(); ++i) {
    rep.min_exponent = std::min(rep.min_exponent, rep.exponents[i]);
    if (rep.exponents[i] < rep.lower_dims[i] - slack) rep.violations.push_back({i, rep.exponents[i], rep.lower_dims[i]});
  }
  if (rep.min_exponent <= 0.0) rep.note = "fitted minimal exponent is <= 0; the field may not be globally Hoelder";
  return rep;
}

}  // namespace mufrac

#endif  // MUFRAC_LEADERS_HPP
