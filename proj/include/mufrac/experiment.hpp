#ifndef MUFRAC_EXPERIMENT_HPP
#define MUFRAC_EXPERIMENT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "capacity.hpp"
#include "error.hpp"
#include "leaders.hpp"
#include "mfspec.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "synthesis.hpp"
#include "wavelet.hpp"

namespace mufrac {

struct TrialConfig {
  double q = kInfinity;  // exponent of the saturating family
  int d1 = 3;
  int num_beta = 50;
  std::uint64_t seed = 1;
  std::vector<std::vector<double>> points;
  int jmin = 4;
  int jmax = -1;  // -1: J - 1
  double slack = 0.1;
  ExponentMethod method = ExponentMethod::regression;
  Boundary boundary = Boundary::clipped;
};

struct TrialReport {
  std::vector<std::vector<double>> betas;
  std::vector<bool> pass;
  double fraction = 0.0;
  std::vector<std::vector<double>> exponents;  // [beta][point]
  std::vector<double> upper_dims;              // per point
  std::vector<double> lower_dims;
  std::string note =
      "consistency check of lower dim <= exponent <= upper dim at finitely many points and finite scales";
};

/// beta_b uniform in [0,1]^d1 from substream (seed, b).
inline std::vector<double> draw_beta(std::uint64_t seed, std::size_t b, int d1) {
  Rng rng = Rng::substream(seed, b, 0xBE7AULL);
  std::vector<double> beta(static_cast<std::size_t>(d1));
  for (auto& v : beta) v = rng.uniform();
  return beta;
}

namespace detail {

inline void validate_trial(const WaveletField& f, const CapacityTree& mu, const TrialConfig& cfg) {
  require(cfg.num_beta >= 1, "prevalence_trial: num_beta must be >= 1");
  require(cfg.d1 >= 2 * f.d + 1, "prevalence_trial: d1 must be >= 2d + 1");
  require(!cfg.points.empty(), "prevalence_trial: no sample points");
  require(f.d == mu.dim() && f.J - 1 <= mu.depth(), "prevalence_trial: field and environment disagree");
}

inline int trial_jmax(const WaveletField& f, const TrialConfig& cfg) { return cfg.jmax < 0 ? f.J - 1 : cfg.jmax; }

inline std::vector<double> exponents_at(const WaveletField& f, const TrialConfig& cfg) {
  const auto L = compute_leaders(f, cfg.boundary);
  const int jmax = trial_jmax(f, cfg);
  std::vector<double> out(cfg.points.size());
  for (std::size_t i = 0; i < cfg.points.size(); ++i)
    out[i] = pointwise_exponent(L, cfg.points[i], cfg.jmin, jmax, cfg.method);
  return out;
}

}  // namespace detail

/// Fraction of beta samples for which every sampled exponent of f^beta stays
/// below the upper local dimension of mu plus slack.
inline TrialReport prevalence_trial(const WaveletField& f, const CapacityTree& mu, const TrialConfig& cfg) {
  detail::validate_trial(f, mu, cfg);
  const auto family = split_family(saturating_field(mu, cfg.q, f.J, f.filter_name), cfg.d1);
  const int jmax = detail::trial_jmax(f, cfg);
  TrialReport rep;
  for (const auto& x : cfg.points) {
    const auto ld = local_dims(mu, x, cfg.jmin, jmax);
    rep.upper_dims.push_back(ld.upper);
    rep.lower_dims.push_back(ld.lower);
  }
  std::size_t passed = 0;
  for (int b = 0; b < cfg.num_beta; ++b) {
    auto beta = draw_beta(cfg.seed, static_cast<std::size_t>(b), cfg.d1);
    auto ex = detail::exponents_at(perturb(f, family, beta), cfg);
    bool ok = true;
    for (std::size_t i = 0; i < ex.size(); ++i) ok = ok && ex[i] <= rep.upper_dims[i] + cfg.slack;
    passed += ok ? 1 : 0;
    rep.pass.push_back(ok);
    rep.betas.push_back(std::move(beta));
    rep.exponents.push_back(std::move(ex));
  }
  rep.fraction = static_cast<double>(passed) / cfg.num_beta;
  return rep;
}

/// Pass fraction of an existing report re-evaluated at another slack.
inline double pass_fraction(const TrialReport& rep, double slack) {
  std::size_t passed = 0;
  for (const auto& ex : rep.exponents) {
    bool ok = true;
    for (std::size_t i = 0; i < ex.size(); ++i) ok = ok && ex[i] <= rep.upper_dims[i] + slack;
    passed += ok ? 1 : 0;
  }
  return rep.exponents.empty() ? 0.0 : static_cast<double>(passed) / rep.exponents.size();
}

struct SpectrumCompareParams {
  std::vector<double> qgrid = uniform_grid(-30.0, 30.0, 0.05);
  std::vector<double> hgrid = uniform_grid(0.0, 3.0, 0.1);
  double delta = 0.05;
  int jmin = 4;
  int jmax = -1;  // -1: J - 1
  int tau_jmin = 2;
};

struct SpectrumComparison {
  double distance = kEmptyLevelSet;  // sentinel when no bin is finite in both
  std::size_t compared = 0;
  SpectrumCurve leaders;
  SpectrumCurve legendre;
};

/// Sup distance between the leader spectrum of f_beta and the Legendre
/// transform of tau(mu) over bins finite in both.
inline SpectrumComparison spectrum_compare(const WaveletField& f_beta, const CapacityTree& mu,
                                           const SpectrumCompareParams& params = {},
                                           Boundary boundary = Boundary::clipped) {
  const int jmax = params.jmax < 0 ? f_beta.J - 1 : params.jmax;
  SpectrumComparison out;
  out.leaders = leader_spectrum(compute_leaders(f_beta, boundary), params.hgrid, params.delta, params.jmin, jmax);
  out.legendre = legendre(tau(mu, params.qgrid, params.tau_jmin, std::min(jmax, mu.depth())), params.hgrid);
  const auto d = spectrum_distance(out.leaders, out.legendre, -kInfinity, kInfinity);
  out.distance = d.distance;
  out.compared = d.compared;
  return out;
}

struct AdversarialResult {
  std::vector<double> beta;
  double margin = 0.0;
  int evaluations = 0;
};

/// Coordinate descent over beta in [0,1]^d1 minimizing
/// min over points of (upper dim + slack - exponent of f^beta). Starts from
/// draw_beta(seed, 0); each coordinate tries the values {0, 1/4, ..., 1}
/// in turn; `budget` caps the number of field evaluations.
inline AdversarialResult adversarial_beta_search(const WaveletField& f, const CapacityTree& mu,
                                                 const TrialConfig& cfg, int budget) {
  detail::require(budget >= 0, "adversarial_beta_search: budget must be >= 0");
  detail::validate_trial(f, mu, cfg);
  const auto family = split_family(saturating_field(mu, cfg.q, f.J, f.filter_name), cfg.d1);
  const int jmax = detail::trial_jmax(f, cfg);
  std::vector<double> upper;
  for (const auto& x : cfg.points) upper.push_back(local_dims(mu, x, cfg.jmin, jmax).upper);
  AdversarialResult res;
  res.beta = draw_beta(cfg.seed, 0, cfg.d1);
  auto margin_of = [&](const std::vector<double>& beta) {
    const auto ex = detail::exponents_at(perturb(f, family, beta), cfg);
    double m = kInfinity;
    for (std::size_t i = 0; i < ex.size(); ++i) m = std::min(m, upper[i] + cfg.slack - ex[i]);
    ++res.evaluations;
    return m;
  };
  if (budget == 0) {
    res.margin = std::numeric_limits<double>::quiet_NaN();  // not evaluated
    return res;
  }
  res.margin = margin_of(res.beta);
  const double candidates[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  bool improved = true;
  while (improved && res.evaluations < budget) {
    improved = false;
    for (int i = 0; i < cfg.d1 && res.evaluations < budget; ++i)
      for (double v : candidates) {
        if (res.evaluations >= budget) break;
        if (v == res.beta[static_cast<std::size_t>(i)]) continue;
        auto trial = res.beta;
        trial[static_cast<std::size_t>(i)] = v;
        const double m = margin_of(trial);
        if (m < res.margin) {
          res.margin = m;
          res.beta = std::move(trial);
          improved = true;
        }
      }
  }
  return res;
}

}  // namespace mufrac

#endif  // MUFRAC_EXPERIMENT_HPP
