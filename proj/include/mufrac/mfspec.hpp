#ifndef MUFRAC_MFSPEC_HPP
#define MUFRAC_MFSPEC_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "capacity.hpp"
#include "dyadic.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "stats.hpp"

namespace mufrac {

inline constexpr double kEmptyLevelSet = -std::numeric_limits<double>::infinity();

inline bool is_empty_level(double sigma) { return sigma == kEmptyLevelSet; }

/// Builds a uniform grid lo, lo+step, ..., up to hi (inclusive within half a
/// step). Points are lo + i*step, so a grid through 0 hits 0 exactly.
inline std::vector<double> uniform_grid(double lo, double hi, double step) {
  detail::require(step > 0.0 && hi >= lo, "uniform_grid: need step > 0 and hi >= lo");
  std::vector<double> g;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 0.5));
  for (long i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
  return g;
}

enum class TauMethod { regression, per_level_min };

struct QDiagnostics {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

struct ScalingFunction {
  int d = 1;
  std::vector<double> qgrid;
  std::vector<double> tau;
  std::vector<QDiagnostics> diagnostics;
  TauMethod method = TauMethod::regression;
  int jmin = 0;
  int jmax = 0;
};

/// (h, sigma(h)) samples; kEmptyLevelSet marks an empty level set.
struct SpectrumCurve {
  int d = 1;
  std::vector<double> hgrid;
  std::vector<double> sigma;
};

struct LocalDimension {
  double lower = 0.0;
  double upper = 0.0;
  double slope = 0.0;
  int jmin = 0;
  int jmax = 0;
};

/// log2 of S[j][q] = sum over generation-j cubes of mu^q, with 0^q = 0;
/// computed as a log-sum-exp so large |q| does not overflow.
struct StructureSums {
  std::vector<double> qgrid;
  std::vector<std::vector<double>> log2_sum;  // [j][q index]

  double value(int j, std::size_t qi) const {
    return std::exp2(log2_sum[static_cast<std::size_t>(j)][qi]);
  }
};

namespace detail {
inline double log2_sum_pow(std::span<const double> log2_masses, double q) {
  double top = -std::numeric_limits<double>::infinity();
  for (double lm : log2_masses)
    if (std::isfinite(lm)) top = std::max(top, q * lm);
  if (!std::isfinite(top)) return -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(log2_masses.size());
  for (double lm : log2_masses)
    if (std::isfinite(lm)) terms.push_back(std::exp2(q * lm - top));
  return top + std::log2(pairwise_sum(terms));
}
}  // namespace detail

inline StructureSums structure_sums(const CapacityTree& mu, std::span<const double> qgrid) {
  detail::require(mu.depth() >= 2, "structure_sums: need depth >= 2");
  detail::require(!qgrid.empty(), "structure_sums: empty q grid");
  StructureSums s;
  s.qgrid.assign(qgrid.begin(), qgrid.end());
  s.log2_sum.resize(static_cast<std::size_t>(mu.depth()) + 1);
  for (int j = 0; j <= mu.depth(); ++j) {
    auto row = mu.level(j);
    std::vector<double> lm(row.size());
    for (std::size_t i = 0; i < row.size(); ++i)
      lm[i] = row[i] > 0.0 ? std::log2(row[i]) : -std::numeric_limits<double>::infinity();
    auto& out = s.log2_sum[static_cast<std::size_t>(j)];
    out.resize(qgrid.size());
    parallel_for(qgrid.size(), [&](std::size_t qi) { out[qi] = detail::log2_sum_pow(lm, qgrid[qi]); });
  }
  return s;
}

/// Scaling function over scales [jmin, jmax]. regression: least-squares slope
/// of log2 S[j][q] against -j; per_level_min: min over j of log2 S / (-j).
inline ScalingFunction tau(const CapacityTree& mu, std::span<const double> qgrid, int jmin, int jmax,
                           TauMethod method = TauMethod::regression) {
  detail::require(!qgrid.empty(), "tau: empty q grid");
  detail::require(2 <= jmin && jmin < jmax && jmax <= mu.depth(), "tau: need 2 <= jmin < jmax <= J");
  const auto sums = structure_sums(mu, qgrid);
  ScalingFunction out;
  out.d = mu.dim();
  out.qgrid.assign(qgrid.begin(), qgrid.end());
  out.method = method;
  out.jmin = jmin;
  out.jmax = jmax;
  out.tau.resize(qgrid.size());
  out.diagnostics.resize(qgrid.size());
  std::vector<double> x;
  for (int j = jmin; j <= jmax; ++j) x.push_back(-static_cast<double>(j));
  for (std::size_t qi = 0; qi < qgrid.size(); ++qi) {
    std::vector<double> y;
    double per_level = std::numeric_limits<double>::infinity();
    for (int j = jmin; j <= jmax; ++j) {
      const double ls = sums.log2_sum[static_cast<std::size_t>(j)][qi];
      y.push_back(ls);
      per_level = std::min(per_level, ls / -static_cast<double>(j));
    }
    const auto fit = fit_line(x, y);
    out.diagnostics[qi] = {fit.slope, fit.intercept, fit.residual};
    out.tau[qi] = method == TauMethod::regression ? fit.slope : per_level;
  }
  return out;
}

/// Max discrete second difference (<= 0 for a concave sequence on a uniform
/// grid).
inline double max_second_difference(std::span<const double> v) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (!std::isfinite(v[i - 1]) || !std::isfinite(v[i]) || !std::isfinite(v[i + 1])) continue;
    worst = std::max(worst, v[i + 1] - 2.0 * v[i] + v[i - 1]);
  }
  return worst;
}

/// tau*(h) = min over the q grid of (h q - tau(q)); values below -d/2 become
/// kEmptyLevelSet.
inline SpectrumCurve legendre(const ScalingFunction& t, std::span<const double> hgrid) {
  detail::require(!t.qgrid.empty() && t.qgrid.front() <= -5.0 && t.qgrid.back() >= 5.0,
                  "legendre: q grid must span at least [-5, 5]");
  SpectrumCurve s;
  s.d = t.d;
  s.hgrid.assign(hgrid.begin(), hgrid.end());
  s.sigma.resize(hgrid.size());
  for (std::size_t i = 0; i < hgrid.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t qi = 0; qi < t.qgrid.size(); ++qi)
      best = std::min(best, hgrid[i] * t.qgrid[qi] - t.tau[qi]);
    s.sigma[i] = best < -0.5 * t.d ? kEmptyLevelSet : best;
  }
  return s;
}

struct TauSlopesAtZero {
  double symmetric = 0.0;
  double left = 0.0;   // tau'(0-)
  double right = 0.0;  // tau'(0+)
};

/// Difference quotients of tau at q = 0, which must be a grid point.
inline TauSlopesAtZero tau_slopes_at_zero(const ScalingFunction& t) {
  std::size_t z = t.qgrid.size();
  for (std::size_t i = 0; i < t.qgrid.size(); ++i)
    if (std::abs(t.qgrid[i]) < 1e-12) z = i;
  detail::require(z > 0 && z + 1 < t.qgrid.size(), "tau_slopes_at_zero: q = 0 must be an interior grid point");
  TauSlopesAtZero s;
  s.left = (t.tau[z] - t.tau[z - 1]) / (t.qgrid[z] - t.qgrid[z - 1]);
  s.right = (t.tau[z + 1] - t.tau[z]) / (t.qgrid[z + 1] - t.qgrid[z]);
  s.symmetric = (t.tau[z + 1] - t.tau[z - 1]) / (t.qgrid[z + 1] - t.qgrid[z - 1]);
  return s;
}

/// Finite-depth surrogates of the lower/upper local dimensions at x: min/max
/// over j in [jmin, jmax] of log2 mu(lambda_j(x)) / (-j), plus the regression
/// slope.
inline LocalDimension local_dims(const CapacityTree& mu, std::span<const double> x, int jmin, int jmax) {
  detail::require(1 <= jmin && jmin < jmax && jmax <= mu.depth(), "local_dims: need 1 <= jmin < jmax <= J");
  LocalDimension ld;
  ld.jmin = jmin;
  ld.jmax = jmax;
  ld.lower = std::numeric_limits<double>::infinity();
  ld.upper = -std::numeric_limits<double>::infinity();
  std::vector<double> xs, ys;
  for (int j = jmin; j <= jmax; ++j) {
    const double m = mu.mass(dyadic::cube_of_point(x, j));
    detail::require(m > 0.0, "local_dims: zero mass on the cube chain of x");
    const double e = std::log2(m) / -static_cast<double>(j);
    ld.lower = std::min(ld.lower, e);
    ld.upper = std::max(ld.upper, e);
    xs.push_back(-static_cast<double>(j));
    ys.push_back(std::log2(m));
  }
  ld.slope = fit_line(xs, ys).slope;
  return ld;
}

namespace detail {

/// Large-deviation spectrum from per-scale values v (masses or leaders):
/// N_j(h) = #{v : 2^(-j(h+delta)) <= v <= 2^(-j(h-delta))}, sigma(h) =
/// regression slope of log2 N_j(h) against j over the scales with N_j > 0,
/// clamped to [0, d]. Fewer than two populated scales => empty.
inline SpectrumCurve large_deviation_spectrum(const std::vector<std::vector<double>>& values_by_scale,
                                              std::span<const double> hgrid, double delta, int jmin, int jmax,
                                              int d) {
  require(delta > 0.0, "spectrum: bin half-width must be positive");
  require(1 <= jmin && jmin < jmax && static_cast<std::size_t>(jmax) < values_by_scale.size(),
          "spectrum: need 1 <= jmin < jmax within the available scales");
  SpectrumCurve s;
  s.d = d;
  s.hgrid.assign(hgrid.begin(), hgrid.end());
  s.sigma.assign(hgrid.size(), kEmptyLevelSet);
  std::vector<std::vector<double>> exps(static_cast<std::size_t>(jmax) + 1);
  for (int j = jmin; j <= jmax; ++j) {
    auto& e = exps[static_cast<std::size_t>(j)];
    for (double v : values_by_scale[static_cast<std::size_t>(j)])
      if (v > 0.0) e.push_back(-std::log2(v) / j);
    std::sort(e.begin(), e.end());
  }
  for (std::size_t i = 0; i < hgrid.size(); ++i) {
    std::vector<double> xs, ys;
    for (int j = jmin; j <= jmax; ++j) {
      const auto& e = exps[static_cast<std::size_t>(j)];
      // bin edges compared in exponent space with a tiny relative guard
      const double lo = hgrid[i] - delta - 1e-12;
      const double hi = hgrid[i] + delta + 1e-12;
      const auto n = std::upper_bound(e.begin(), e.end(), hi) - std::lower_bound(e.begin(), e.end(), lo);
      if (n > 0) {
        xs.push_back(static_cast<double>(j));
        ys.push_back(std::log2(static_cast<double>(n)));
      }
    }
    if (xs.size() < 2) continue;
    s.sigma[i] = std::clamp(fit_line(xs, ys).slope, 0.0, static_cast<double>(d));
  }
  return s;
}

}  // namespace detail

inline SpectrumCurve coarse_spectrum(const CapacityTree& mu, std::span<const double> hgrid, double delta, int jmin,
                                     int jmax) {
  detail::require(jmax <= mu.depth(), "coarse_spectrum: jmax exceeds the tree depth");
  std::vector<std::vector<double>> values(mu.levels().begin(), mu.levels().begin() + jmax + 1);
  return detail::large_deviation_spectrum(values, hgrid, delta, jmin, jmax, mu.dim());
}

/// Default bin half-width: 1.5 grid spacings.
inline double default_bin_half_width(std::span<const double> hgrid) {
  detail::require(hgrid.size() >= 2, "default_bin_half_width: need two grid points");
  return 1.5 * (hgrid[1] - hgrid[0]);
}

struct SpectrumDistance {
  double distance = 0.0;  // sup over compared bins; kEmptyLevelSet when none
  std::size_t compared = 0;
  double interior_lo = 0.0;
  double interior_hi = 0.0;
};

/// Sup-distance between two curves over bins finite in both and lying in
/// [lo, hi] (1e-9 slack on the bounds).
inline SpectrumDistance spectrum_distance(const SpectrumCurve& a, const SpectrumCurve& b, double lo, double hi) {
  detail::require(a.hgrid.size() == b.hgrid.size(), "spectrum_distance: grids differ");
  SpectrumDistance out;
  out.interior_lo = lo;
  out.interior_hi = hi;
  for (std::size_t i = 0; i < a.hgrid.size(); ++i) {
    detail::require(std::abs(a.hgrid[i] - b.hgrid[i]) < 1e-12, "spectrum_distance: grids differ");
    const double h = a.hgrid[i];
    if (h < lo - 1e-9 || h > hi + 1e-9) continue;
    if (is_empty_level(a.sigma[i]) || is_empty_level(b.sigma[i])) continue;
    out.distance = std::max(out.distance, std::abs(a.sigma[i] - b.sigma[i]));
    ++out.compared;
  }
  if (out.compared == 0) out.distance = kEmptyLevelSet;
  return out;
}

/// Interior of the exponent range [s1, s2] fitted by check_P, trimmed by
/// `margin` of its width on each side.
inline std::pair<double, double> interior_range(const CapacityTree& mu, double margin) {
  const auto p = check_P(mu);
  const double w = p.s2 - p.s1;
  return {p.s1 + margin * w, p.s2 - margin * w};
}

struct SmfParams {
  std::vector<double> qgrid = uniform_grid(-30.0, 30.0, 0.05);
  std::vector<double> hgrid = uniform_grid(0.0, 3.0, 0.05);
  double delta = 0.05;
  int jmin = 4;
  int jmax = -1;       // -1: tree depth
  int tau_jmin = 2;
  double margin = 0.1;  // interior trimming, fraction of [s1, s2]
};

struct SmfReport {
  bool holds = false;
  double tolerance = 0.0;
  SpectrumDistance distance;
  SpectrumCurve coarse;
  SpectrumCurve legendre;
};

/// Compares the coarse-grained spectrum with the Legendre transform of tau on
/// interior bins.
inline SmfReport smf_check(const CapacityTree& mu, double tolerance, const SmfParams& params = {}) {
  const int jmax = params.jmax < 0 ? mu.depth() : params.jmax;
  SmfReport rep;
  rep.tolerance = tolerance;
  rep.coarse = coarse_spectrum(mu, params.hgrid, params.delta, params.jmin, jmax);
  rep.legendre = legendre(tau(mu, params.qgrid, params.tau_jmin, jmax), params.hgrid);
  const auto [lo, hi] = interior_range(mu, params.margin);
  rep.distance = spectrum_distance(rep.coarse, rep.legendre, lo, hi);
  rep.holds = rep.distance.compared > 0 && rep.distance.distance <= tolerance;
  return rep;
}

/// True when sigma equals d (within tol) on every grid point of
/// [tau'(0+), tau'(0-)].
inline bool plateau_holds(const SpectrumCurve& s, const TauSlopesAtZero& slopes, double tol) {
  for (std::size_t i = 0; i < s.hgrid.size(); ++i) {
    if (s.hgrid[i] < slopes.right - 1e-12 || s.hgrid[i] > slopes.left + 1e-12) continue;
    if (is_empty_level(s.sigma[i]) || std::abs(s.sigma[i] - s.d) > tol) return false;
  }
  return true;
}

}  // namespace mufrac

#endif  // MUFRAC_MFSPEC_HPP
