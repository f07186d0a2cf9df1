#ifndef MUFRAC_NORMS_HPP
#define MUFRAC_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "capacity.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "wavelet.hpp"

namespace mufrac {

struct SeminormValue {
  double value = 0.0;
  std::string kind;  // wavelet_besov | modulus_besov | sobolev | lp
  double p = 0.0;
  double q = 0.0;
  int n = 0;
  double eps = 0.0;
  int resolution = 0;
};

namespace detail {

inline double lp_norm(std::span<const double> v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  std::vector<double> powed(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) powed[i] = std::pow(std::abs(v[i]), p);
  return std::pow(pairwise_sum(powed), 1.0 / p);
}

inline double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

inline double unit_ball_volume(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    default: return 4.0 * std::numbers::pi / 3.0;
  }
}

struct HStep {
  std::vector<std::int64_t> cells;  // h in units of 2^-J
  double norm = 0.0;                // |h| in [0,1] units
};

/// Directional h-grid on lo <= |h| <= hi: the 2d axis directions and the 2^d
/// diagonals, four magnitudes each (endpoints included, or cell midpoints of
/// the radial range when `midpoints`), snapped to the 2^-J lattice and
/// deduplicated.
inline std::vector<HStep> h_grid(int d, int J, double lo, double hi, bool midpoints) {
  std::vector<std::vector<double>> dirs;
  for (int i = 0; i < d; ++i)
    for (double s : {1.0, -1.0}) {
      std::vector<double> e(static_cast<std::size_t>(d), 0.0);
      e[static_cast<std::size_t>(i)] = s;
      dirs.push_back(e);
    }
  for (int code = 0; code < (1 << d); ++code) {
    std::vector<double> e(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) e[static_cast<std::size_t>(i)] = ((code >> i) & 1 ? -1.0 : 1.0) / std::sqrt(double(d));
    dirs.push_back(e);
  }
  const double N = std::ldexp(1.0, J);
  std::vector<HStep> out;
  for (const auto& e : dirs)
    for (int m = 0; m < 4; ++m) {
      const double mag = midpoints ? lo + (hi - lo) * (m + 0.5) / 4.0 : lo + (hi - lo) * m / 3.0;
      HStep h;
      double n2 = 0.0;
      for (int i = 0; i < d; ++i) {
        const auto c = static_cast<std::int64_t>(std::llround(e[static_cast<std::size_t>(i)] * mag * N));
        h.cells.push_back(c);
        n2 += static_cast<double>(c) * static_cast<double>(c);
      }
      if (n2 == 0.0) continue;
      h.norm = std::sqrt(n2) / N;
      if (std::none_of(out.begin(), out.end(), [&](const HStep& o) { return o.cells == h.cells; }))
        out.push_back(std::move(h));
    }
  return out;
}

/// Sum over x in Omega_{h,n} (grid points x with x + nh still a grid point of
/// [0,1)^d, so no difference wraps around) of |Delta^n_h f(x) / mu(B)|^p
/// times 2^-Jd, B the ball with diameter [x, x+nh]; for p = infinity
/// the max instead. Zero ball mass contributes 0.
inline double difference_integral(std::span<const double> samples, int d, int J, const CapacityTree& mu, int n,
                                  const HStep& h, double p) {
  const std::size_t N = std::size_t{1} << J;
  const auto total = samples.size();
  const double Nd = static_cast<double>(N);
  const double radius_cells = 0.5 * n * h.norm * Nd;
  std::vector<double> coef(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) coef[static_cast<std::size_t>(m)] = ((n - m) % 2 == 0 ? 1.0 : -1.0) * binomial(n, m);
  std::vector<double> terms(total, 0.0);
  parallel_for(total, [&](std::size_t idx) {
    std::vector<std::int64_t> k(static_cast<std::size_t>(d));
    std::size_t rest = idx;
    for (int i = d - 1; i >= 0; --i) {
      k[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rest % N);
      rest /= N;
    }
    std::vector<double> centre(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      const double c = static_cast<double>(k[static_cast<std::size_t>(i)]) + 0.5 * n * static_cast<double>(h.cells[static_cast<std::size_t>(i)]);
      if (c - radius_cells < -1e-9 || c + radius_cells > Nd - 1.0 + 1e-9) return;
      centre[static_cast<std::size_t>(i)] = std::min(c / Nd, std::nextafter(1.0, 0.0));
    }
    double diff = 0.0;
    for (int m = 0; m <= n; ++m) {
      std::size_t lin = 0;
      for (int i = 0; i < d; ++i) {
        auto v = k[static_cast<std::size_t>(i)] + m * h.cells[static_cast<std::size_t>(i)];
        v = ((v % static_cast<std::int64_t>(N)) + static_cast<std::int64_t>(N)) % static_cast<std::int64_t>(N);
        lin = lin * N + static_cast<std::size_t>(v);
      }
      diff += coef[static_cast<std::size_t>(m)] * samples[lin];
    }
    const double mass = ball_mass(mu, centre, std::min(0.5, 0.5 * n * h.norm));
    if (mass <= 0.0) return;
    const double ratio = std::abs(diff) / mass;
    terms[idx] = std::isinf(p) ? ratio : std::pow(ratio, p);
  });
  if (std::isinf(p)) return *std::max_element(terms.begin(), terms.end());
  return pairwise_sum(terms) / static_cast<double>(total);
}

inline int sample_depth(std::span<const double> samples, int d) {
  const int J = grid_depth(samples.size(), d);
  require(J >= 1, "samples must number 2^(J d) with J >= 1");
  return J;
}

}  // namespace detail

/// l^q over scales j = 1 .. J-1 of the l^p norm of c_lambda / mu(lambda),
/// with 0 wherever mu(lambda) = 0.
inline SeminormValue besov_wavelet_seminorm(const WaveletField& f, const CapacityTree& mu, double p, double q) {
  detail::require(p >= 1.0 && q >= 1.0, "besov_wavelet_seminorm: need p, q >= 1");
  detail::require(f.d == mu.dim() && f.J - 1 <= mu.depth(), "besov_wavelet_seminorm: field and environment disagree");
  std::vector<double> eps;
  const int no = f.orientations();
  for (int j = 1; j < f.J; ++j) {
    auto row = mu.level(j);
    std::vector<double> ratios(f.details[static_cast<std::size_t>(j)].size(), 0.0);
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c] > 0.0)
        for (int o = 1; o <= no; ++o) ratios[c * static_cast<std::size_t>(no) + static_cast<std::size_t>(o - 1)] = f.at(j, c, o) / row[c];
    eps.push_back(detail::lp_norm(ratios, p));
  }
  return {detail::lp_norm(eps, q), "wavelet_besov", p, q, 0, 0.0, f.J};
}

/// L^p norm of samples on [0,1]^d by the midpoint rule.
inline SeminormValue lp_norm_samples(std::span<const double> samples, int d, double p) {
  detail::require(p >= 1.0, "lp_norm_samples: p must be >= 1");
  const int J = detail::sample_depth(samples, d);
  double v = detail::lp_norm(samples, p);
  if (!std::isinf(p)) v *= std::pow(static_cast<double>(samples.size()), -1.0 / p);
  return {v, "lp", p, 0.0, 0, 0.0, J};
}

struct BtildeValue {
  double value = 0.0;
  double tail_bound = 0.0;  // bound on the omitted terms
  int n_first = 0;
  int n_last = 0;
};

/// Truncated translation-invariant metric of the btilde scale:
/// sum over n = n0 .. n0 + N_terms - 1 of 2^-n rho_n / (1 + rho_n), with
/// n0 = floor(max(1, 1/s1)) + 1 and rho_n the L^p + mu^(-1/n) wavelet norm
/// of f - g.
inline BtildeValue btilde_metric(const WaveletField& f, const WaveletField& g, const CapacityTree& mu, double p,
                                 double q, double s1_fitted, int N_terms, const FilterPair& filters) {
  detail::require(same_shape(f, g), "btilde_metric: shape mismatch");
  detail::require(s1_fitted > 0.0 && N_terms >= 8, "btilde_metric: need s1 > 0 and at least 8 terms");
  WaveletField diff = f;
  axpy(diff, -1.0, g);
  const double lp = lp_norm_samples(synthesize(diff, filters), f.d, p).value;
  BtildeValue out;
  out.n_first = static_cast<int>(std::floor(std::max(1.0, 1.0 / s1_fitted))) + 1;
  out.n_last = out.n_first + N_terms - 1;
  std::vector<double> terms;
  for (int n = out.n_first; n <= out.n_last; ++n) {
    const double rho = lp + besov_wavelet_seminorm(diff, transform_shift(mu, -1.0 / n), p, q).value;
    terms.push_back(std::ldexp(rho / (1.0 + rho), -n));
  }
  out.value = pairwise_sum(terms);
  out.tail_bound = std::ldexp(1.0, -out.n_last);
  return out;
}

/// mu-adapted n-th order L^p modulus at scale t on (0,1)^d: sup over the
/// h-grid on t/2 <= |h| <= t of the discrete L^p norm of
/// Delta^n_h f / mu(B[x, x+nh]).
inline double modulus(std::span<const double> samples, int d, const CapacityTree& mu, int n, double t, double p) {
  const int J = detail::sample_depth(samples, d);
  detail::require(n >= 1 && p >= 1.0, "modulus: need n >= 1 and p >= 1");
  detail::require(mu.dim() == d, "modulus: dimension mismatch");
  detail::require(t > 0.0 && t <= 1.0 / (2.0 * n) + 1e-15, "modulus: t must lie in (0, 1/(2n)]");
  detail::require(t >= std::ldexp(1.0, -J + 3) - 1e-15, "modulus: t is below the sample resolution 2^(3-J)");
  double best = 0.0;
  for (const auto& h : detail::h_grid(d, J, 0.5 * t, t, false)) {
    const double v = detail::difference_integral(samples, d, J, mu, n, h, p);
    best = std::max(best, std::isinf(p) ? v : std::pow(v, 1.0 / p));
  }
  return best;
}

/// First scale j with 2^-j <= 1/(2n).
inline int modulus_first_scale(int n) { return std::max(1, static_cast<int>(std::ceil(std::log2(2.0 * n)))); }

/// l^q over j of 2^(jd/p) modulus(f, 2^-j); the scan starts at
/// modulus_first_scale(n) so that t <= 1/(2n).
inline SeminormValue besov_modulus_seminorm(std::span<const double> samples, int d, const CapacityTree& mu, double p,
                                            double q, int n, int jmax) {
  const int J = detail::sample_depth(samples, d);
  detail::require(q >= 1.0, "besov_modulus_seminorm: q must be >= 1");
  detail::require(jmax <= J - 3, "besov_modulus_seminorm: need jmax <= J - 3");
  const int j0 = modulus_first_scale(n);
  detail::require(jmax >= j0, "besov_modulus_seminorm: jmax is below the first admissible scale");
  std::vector<double> terms;
  for (int j = j0; j <= jmax; ++j) {
    const double w = std::isinf(p) ? 1.0 : std::exp2(j * d / p);
    terms.push_back(w * modulus(samples, d, mu, n, std::ldexp(1.0, -j), p));
  }
  return {detail::lp_norm(terms, q), "modulus_besov", p, q, n, 0.0, J};
}

namespace detail {
/// Quadrature of int_{lo <= |h| <= hi} int |Delta^n_h f / mu(B)|^p |h|^-w dx dh
/// over radial shells [lo 2^i, min(lo 2^(i+1), hi)], each sampled by the midpoint h-grid with weight shell volume / count.
inline double shell_quadrature(std::span<const double> samples, int d, int J, const CapacityTree& mu, int n, double p,
                               double lo, double hi, double w) {
  std::vector<double> acc;
  for (double a = lo; a < hi * (1.0 - 1e-12); a *= 2.0) {
    const double b = std::min(2.0 * a, hi);
    const auto hs = h_grid(d, J, a, b, true);
    const double vol = unit_ball_volume(d) * (std::pow(b, d) - std::pow(a, d));
    const double weight = vol / static_cast<double>(hs.size());
    for (const auto& h : hs)
      acc.push_back(weight * difference_integral(samples, d, J, mu, n, h, p) * std::pow(h.norm, -w));
  }
  return pairwise_sum(acc);
}
}  // namespace detail

/// Quadrature of the double-integral seminorm over |h| in [2^-jmax, 1]; the
/// |h| >= 1 part is empty on the unit cube.
inline SeminormValue sobolev_seminorm(std::span<const double> samples, int d, const CapacityTree& mu, double p, int n,
                                      int jmax) {
  const int J = detail::sample_depth(samples, d);
  detail::require(!std::isinf(p) && p >= 1.0, "sobolev_seminorm: needs finite p >= 1");
  detail::require(n >= 1 && jmax >= 1 && jmax <= J - 3, "sobolev_seminorm: need n >= 1 and 1 <= jmax <= J - 3");
  const double integral = detail::shell_quadrature(samples, d, J, mu, n, p, std::ldexp(1.0, -jmax), 1.0, 2.0 * d);
  return {std::pow(integral, 1.0 / p), "sobolev", p, p, n, 0.0, J};
}

struct EmbeddingRow {
  int J = 0;
  double besov = 0.0;
  double sobolev = 0.0;
  std::vector<double> besov_tilde;  // one per eps
  double ratio_sobolev_besov = 0.0;
  std::vector<double> ratio_tilde_sobolev;
};

struct EmbeddingReport {
  std::vector<double> eps;
  std::vector<EmbeddingRow> rows;
  double spread_sobolev_besov = 0.0;  // max/min of the ratio across resolutions
  std::vector<double> spread_tilde_sobolev;
  std::string verdict;  // stable | unstable | degenerate
  bool hypothesis_violated = false;
};

/// Besov (modulus) vs Sobolev vs shifted Besov seminorms of f synthesized at
/// each resolution J in `resolutions`, with jmax = J - 3. Refuses
/// environments that fail every almost-doubling family unless `override`.
inline EmbeddingReport embedding_report(const WaveletField& f, const CapacityTree& mu, double p,
                                        std::vector<double> eps, const std::vector<int>& resolutions,
                                        const FilterPair& filters, int n = 2, double stability = 2.0,
                                        bool override_hypothesis = false) {
  detail::require(!resolutions.empty(), "embedding_report: empty resolution list");
  EmbeddingReport rep;
  const bool ad = check_almost_doubling(mu, PhiFamily::constant).holds ||
                  check_almost_doubling(mu, PhiFamily::log_log).holds ||
                  check_almost_doubling(mu, PhiFamily::log_power).holds;
  if (!ad) {
    if (!override_hypothesis) throw HypothesisError("embedding_report: environment is not almost doubling");
    rep.hypothesis_violated = true;
  }
  rep.eps = std::move(eps);
  std::vector<CapacityTree> shifted;
  for (double e : rep.eps) shifted.push_back(transform_shift(mu, -e));
  bool degenerate = false;
  for (int J : resolutions) {
    const auto samples = synthesize(truncated(f, J), filters);
    EmbeddingRow row;
    row.J = J;
    row.besov = besov_modulus_seminorm(samples, f.d, mu, p, p, n, J - 3).value;
    row.sobolev = sobolev_seminorm(samples, f.d, mu, p, n, J - 3).value;
    for (const auto& m : shifted) row.besov_tilde.push_back(besov_modulus_seminorm(samples, f.d, m, p, p, n, J - 3).value);
    if (row.besov <= 0.0 || row.sobolev <= 0.0) degenerate = true;
    row.ratio_sobolev_besov = row.besov > 0.0 ? row.sobolev / row.besov : std::numeric_limits<double>::quiet_NaN();
    for (double bt : row.besov_tilde)
      row.ratio_tilde_sobolev.push_back(row.sobolev > 0.0 ? bt / row.sobolev : std::numeric_limits<double>::quiet_NaN());
    rep.rows.push_back(std::move(row));
  }
  if (degenerate) {
    rep.verdict = "degenerate";
    return rep;
  }
  auto spread = [&](auto get) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& r : rep.rows) {
      lo = std::min(lo, get(r));
      hi = std::max(hi, get(r));
    }
    return hi / lo;
  };
  rep.spread_sobolev_besov = spread([](const EmbeddingRow& r) { return r.ratio_sobolev_besov; });
  bool stable = rep.spread_sobolev_besov <= stability;
  for (std::size_t e = 0; e < rep.eps.size(); ++e) {
    rep.spread_tilde_sobolev.push_back(spread([e](const EmbeddingRow& r) { return r.ratio_tilde_sobolev[e]; }));
    stable = stable && rep.spread_tilde_sobolev.back() <= stability;
  }
  rep.verdict = stable ? "stable" : "unstable";
  return rep;
}

/// Default eps grid {0.4, 0.2, 0.1, 0.05} restricted to (0, min(1, s1)).
inline std::vector<double> default_eps_grid(double s1) {
  std::vector<double> out;
  for (double e : {0.4, 0.2, 0.1, 0.05})
    if (e < std::min(1.0, s1)) out.push_back(e);
  return out;
}

struct OmegaRow {
  double t = 0.0;
  double lhs = 0.0;  // modulus^p
  double rhs = 0.0;  // t^-d times the shifted difference integral
  double C = 0.0;    // lhs / rhs; NaN when both vanish
};

struct OmegaReport {
  std::vector<OmegaRow> rows;
  double spread = 0.0;  // max C / min C
  bool degenerate = false;
};

/// Fitted constants C(t) = modulus(f, t)^p / (t^-d int_{t <= |h| <= 4nt}
/// int |Delta^n_h f / mu^(+eps)(B)|^p dx dh) for each t.
inline OmegaReport omega_bound_check(std::span<const double> samples, int d, const CapacityTree& mu, int n, double p,
                                     double eps, std::span<const double> t_list) {
  const int J = detail::sample_depth(samples, d);
  detail::require(!std::isinf(p) && p >= 1.0, "omega_bound_check: needs finite p >= 1");
  detail::require(eps > 0.0 && !t_list.empty(), "omega_bound_check: need eps > 0 and a nonempty t list");
  const auto shifted = transform_shift(mu, eps);
  OmegaReport rep;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double t : t_list) {
    OmegaRow row;
    row.t = t;
    row.lhs = std::pow(modulus(samples, d, mu, n, t, p), p);
    row.rhs = std::pow(t, -d) * detail::shell_quadrature(samples, d, J, shifted, n, p, t, 4.0 * n * t, 0.0);
    if (row.rhs > 0.0) {
      row.C = row.lhs / row.rhs;
      lo = std::min(lo, row.C);
      hi = std::max(hi, row.C);
    } else {
      row.C = std::numeric_limits<double>::quiet_NaN();
      rep.degenerate = true;
    }
    rep.rows.push_back(row);
  }
  rep.spread = rep.degenerate || lo <= 0.0 ? std::numeric_limits<double>::quiet_NaN() : hi / lo;
  return rep;
}

}  // namespace mufrac

#endif  // MUFRAC_NORMS_HPP
