#ifndef MUFRAC_CAPACITY_HPP
#define MUFRAC_CAPACITY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dyadic.hpp"
#include "error.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace mufrac {

/// Dyadic environment: a nonnegative mass mu(lambda) for every cube of
/// generation 0..depth in [0,1]^d. Immutable after construction.
class CapacityTree {
 public:
  CapacityTree(int d, int depth, std::vector<std::vector<double>> levels, bool monotone)
      : d_(d), depth_(depth), levels_(std::move(levels)), monotone_(monotone) {
    detail::require(d >= 1 && d <= 3, "CapacityTree: dimension must be 1, 2 or 3");
    detail::require(depth >= 0 && d * depth <= 30, "CapacityTree: depth out of range");
    detail::require(levels_.size() == static_cast<std::size_t>(depth) + 1,
                    "CapacityTree: need one level per scale 0..J");
    for (int j = 0; j <= depth; ++j) {
      const auto& row = levels_[static_cast<std::size_t>(j)];
      detail::require(row.size() == dyadic::cube_count(d, j),
                      "CapacityTree: level " + std::to_string(j) + " has the wrong size");
      for (double m : row)
        detail::require(std::isfinite(m) && m >= 0.0, "CapacityTree: masses must be finite and >= 0");
    }
    detail::require(levels_[0][0] > 0.0, "CapacityTree: root mass must be positive");
    if (monotone_) {
      detail::require(!monotonicity_violation().has_value(),
                      "CapacityTree: declared monotone but a child outweighs its parent");
    }
  }

  int dim() const { return d_; }
  int depth() const { return depth_; }
  bool monotone() const { return monotone_; }
  double root() const { return levels_[0][0]; }

  std::span<const double> level(int j) const { return levels_.at(static_cast<std::size_t>(j)); }
  double mass(int j, std::size_t idx) const { return levels_[static_cast<std::size_t>(j)][idx]; }
  double mass(const CubeIndex& c) const {
    detail::require(c.dim() == d_ && c.j <= depth_ && dyadic::valid(c), "mass: cube outside the tree");
    return mass(c.j, dyadic::linear_index(c));
  }
  const std::vector<std::vector<double>>& levels() const { return levels_; }

  bool has_zero_mass() const {
    for (const auto& row : levels_)
      for (double m : row)
        if (m == 0.0) return true;
    return false;
  }

  /// First (parent, child) pair with child mass above parent mass.
  std::optional<std::pair<CubeIndex, CubeIndex>> monotonicity_violation() const {
    const int children = 1 << d_;
    for (int j = 0; j < depth_; ++j) {
      for (std::size_t idx = 0; idx < dyadic::cube_count(d_, j); ++idx) {
        for (int o = 0; o < children; ++o) {
          std::size_t c = dyadic::child_linear(d_, j, idx, o);
          if (mass(j + 1, c) > mass(j, idx))
            return std::make_pair(dyadic::from_linear(d_, j, idx), dyadic::from_linear(d_, j + 1, c));
        }
      }
    }
    return std::nullopt;
  }

  bool operator==(const CapacityTree&) const = default;

 private:
  int d_;
  int depth_;
  std::vector<std::vector<double>> levels_;
  bool monotone_;
};

// ---------------------------------------------------------------------------
// Generators and transforms

inline CapacityTree power_law_env(int d, int depth, double alpha) {
  detail::require(alpha > 0.0, "power_law_env: decay exponent must be positive");
  std::vector<std::vector<double>> levels;
  for (int j = 0; j <= depth; ++j)
    levels.emplace_back(dyadic::cube_count(d, j), std::exp2(-alpha * j));
  return CapacityTree(d, depth, std::move(levels), true);
}

/// Multiplicative cascade; weights are indexed by octant (bit d-1-i selects
/// the upper half along axis i).
inline CapacityTree cascade_env(int d, int depth, std::span<const double> weights) {
  detail::require(weights.size() == (std::size_t{1} << d), "cascade_env: need 2^d weights");
  double sum = 0.0;
  for (double w : weights) {
    detail::require(w > 0.0 && w < 1.0, "cascade_env: weights must lie in (0,1)");
    sum += w;
  }
  detail::require(std::abs(sum - 1.0) <= 1e-12, "cascade_env: weights must sum to 1");
  std::vector<std::vector<double>> levels(static_cast<std::size_t>(depth) + 1);
  levels[0] = {1.0};
  for (int j = 0; j < depth; ++j) {
    auto& next = levels[static_cast<std::size_t>(j) + 1];
    next.assign(dyadic::cube_count(d, j + 1), 0.0);
    for (std::size_t idx = 0; idx < levels[static_cast<std::size_t>(j)].size(); ++idx)
      for (int o = 0; o < (1 << d); ++o)
        next[dyadic::child_linear(d, j, idx, o)] = levels[static_cast<std::size_t>(j)][idx] * weights[static_cast<std::size_t>(o)];
  }
  return CapacityTree(d, depth, std::move(levels), true);
}

/// Random multiplicative tree: every child weight is drawn uniformly in
/// [w_min, w_max] (not normalized), so level-j masses lie in
/// [w_min^j, w_max^j].
inline CapacityTree bounded_random_env(int d, int depth, double w_min, double w_max, std::uint64_t seed) {
  detail::require(w_min > 0.0 && w_min <= w_max && w_max < 1.0,
                  "bounded_random_env: need 0 < w_min <= w_max < 1");
  std::vector<std::vector<double>> levels(static_cast<std::size_t>(depth) + 1);
  levels[0] = {1.0};
  for (int j = 0; j < depth; ++j) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(j));
    auto& next = levels[static_cast<std::size_t>(j) + 1];
    next.assign(dyadic::cube_count(d, j + 1), 0.0);
    for (std::size_t idx = 0; idx < levels[static_cast<std::size_t>(j)].size(); ++idx)
      for (int o = 0; o < (1 << d); ++o)
        next[dyadic::child_linear(d, j, idx, o)] =
            levels[static_cast<std::size_t>(j)][idx] * (w_min == w_max ? w_min : rng.uniform(w_min, w_max));
  }
  return CapacityTree(d, depth, std::move(levels), true);
}

/// mu^s: every mass raised to the power s.
inline CapacityTree transform_power(const CapacityTree& mu, double s) {
  detail::require(s > 0.0, "transform_power: exponent must be positive");
  auto levels = mu.levels();
  if (s != 1.0)
    for (auto& row : levels)
      for (auto& m : row) m = std::pow(m, s);
  return CapacityTree(mu.dim(), mu.depth(), std::move(levels), mu.monotone());
}

struct PropertyWitness {
  CubeIndex first;
  std::optional<CubeIndex> second;  // absent for single-cube witnesses
  double ratio = 0.0;               // mass(first) / mass(second), or mass(first)
};

/// Recomputes the witnessed ratio from the tree.
inline double recheck(const CapacityTree& mu, const PropertyWitness& w) {
  if (!w.second) return mu.mass(w.first);
  return mu.mass(w.first) / mu.mass(*w.second);
}

/// Outcome of a structural check. Only the fields relevant to a given check
/// are filled; see each check for which ones.
struct PropertyReport {
  bool holds = false;
  double C = 1.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double c_mu = 0.0;      // doubling constant (max ratio)
  double phi_c = 0.0;     // fitted coefficient of the phi family
  double growth = 0.0;    // slope of the per-scale log2 statistic against j
  std::vector<double> per_scale;  // per-scale statistic (log2 ratios, envelopes)
  std::vector<double> per_scale_hi;
  std::optional<PropertyWitness> witness;
  std::string note;
};

/// Two-sided power bounds C^-1 2^(-j s2) <= mu(lambda) <= C 2^(-j s1).
/// C = max(1, mu(root), 1/mu(root)); per_scale/per_scale_hi carry the
/// per-level min/max of log2(1/mu)/j.
inline PropertyReport check_P(const CapacityTree& mu) {
  detail::require(mu.depth() >= 2, "check_P: need depth >= 2");
  PropertyReport rep;
  const double root = mu.root();
  rep.C = std::max({1.0, root, 1.0 / root});
  const double logC = std::log2(rep.C);
  double s1 = std::numeric_limits<double>::infinity();
  double s2 = -std::numeric_limits<double>::infinity();
  rep.per_scale.assign(static_cast<std::size_t>(mu.depth()) + 1, 0.0);
  rep.per_scale_hi.assign(static_cast<std::size_t>(mu.depth()) + 1, 0.0);
  for (int j = 1; j <= mu.depth(); ++j) {
    auto row = mu.level(j);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < row.size(); ++idx) {
      if (row[idx] == 0.0) {
        rep.holds = false;
        rep.witness = PropertyWitness{dyadic::from_linear(mu.dim(), j, idx), std::nullopt, 0.0};
        rep.note = "zero mass: support is not all of [0,1]^d";
        return rep;
      }
      const double e = -std::log2(row[idx]);
      lo = std::min(lo, e / j);
      hi = std::max(hi, e / j);
      s1 = std::min(s1, (e + logC) / j);
      s2 = std::max(s2, (e - logC) / j);
    }
    rep.per_scale[static_cast<std::size_t>(j)] = lo;
    rep.per_scale_hi[static_cast<std::size_t>(j)] = hi;
  }
  rep.s1 = s1;
  rep.s2 = s2;
  rep.holds = std::isfinite(s1) && std::isfinite(s2) && s1 > 0.0 && s2 > 0.0;
  if (!rep.holds) rep.note = "fitted exponents are not positive";
  return rep;
}

/// mu^(+s)(lambda) = mu(lambda) 2^(-j s), side length standing in for the
/// diameter. Negative shifts must stay below the fitted Hoelder exponent s1.
inline CapacityTree transform_shift(const CapacityTree& mu, double s) {
  if (s < 0.0) {
    auto p = check_P(mu);
    detail::require(p.holds && -s < p.s1, "transform_shift: negative shift exceeds the fitted exponent s1");
  }
  auto levels = mu.levels();
  if (s != 0.0)
    for (int j = 0; j <= mu.depth(); ++j) {
      const double factor = std::exp2(-s * j);
      for (auto& m : levels[static_cast<std::size_t>(j)]) m *= factor;
    }
  CapacityTree probe(mu.dim(), mu.depth(), levels, false);
  const bool mono = !probe.monotonicity_violation().has_value();
  return CapacityTree(mu.dim(), mu.depth(), std::move(levels), mono);
}

// ---------------------------------------------------------------------------
// Doubling-type scans on the dyadic proxy family

namespace detail {

/// Linear indices of same-scale cubes adjacent to idx inside [0,1]^d
/// (closures meet, no wrap), excluding idx itself.
inline void adjacent_clipped(int d, int j, std::size_t idx, std::vector<std::size_t>& out) {
  out.clear();
  const std::int64_t n = dyadic::side(j);
  const std::size_t mask = (std::size_t{1} << j) - 1;
  std::int64_t k[3] = {0, 0, 0};
  for (int i = 0; i < d; ++i) k[i] = static_cast<std::int64_t>((idx >> ((d - 1 - i) * j)) & mask);
  int total = 1;
  for (int i = 0; i < d; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    int rest = code;
    bool inside = true;
    bool self = true;
    std::size_t lin = 0;
    for (int i = 0; i < d; ++i) {
      const std::int64_t off = rest % 3 - 1;
      rest /= 3;
      const std::int64_t v = k[i] + off;
      if (v < 0 || v >= n) {
        inside = false;
        break;
      }
      if (off != 0) self = false;
      lin = (lin << j) | static_cast<std::size_t>(v);
    }
    if (inside && !self) out.push_back(lin);
  }
}

struct ScaleRatios {
  std::vector<double> adjacent;      // per scale: max log2 ratio over adjacent pairs
  std::vector<double> parent_child;  // per scale j: max log2 ratio parent(j)/child(j+1)
  std::vector<PropertyWitness> adjacent_witness;
  std::vector<PropertyWitness> parent_child_witness;
};

/// Per-scale worst mass ratios for j = 0 .. depth-1.
inline ScaleRatios scan_ratios(const CapacityTree& mu) {
  const int d = mu.dim();
  const int top = mu.depth();
  ScaleRatios r;
  r.adjacent.assign(static_cast<std::size_t>(top), 0.0);
  r.parent_child.assign(static_cast<std::size_t>(top), -std::numeric_limits<double>::infinity());
  r.adjacent_witness.resize(static_cast<std::size_t>(top));
  r.parent_child_witness.resize(static_cast<std::size_t>(top));
  std::vector<std::size_t> nbrs;
  for (int j = 0; j < top; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    auto row = mu.level(j);
    bool have_adj = false;
    for (std::size_t idx = 0; idx < row.size(); ++idx) {
      adjacent_clipped(d, j, idx, nbrs);
      for (std::size_t nb : nbrs) {
        if (nb <= idx) continue;
        const double a = row[idx];
        const double b = row[nb];
        const double lr = std::abs(std::log2(a) - std::log2(b));
        if (!have_adj || lr > r.adjacent[sj]) {
          have_adj = true;
          r.adjacent[sj] = lr;
          const bool a_big = a >= b;
          r.adjacent_witness[sj] = PropertyWitness{dyadic::from_linear(d, j, a_big ? idx : nb),
                                                   dyadic::from_linear(d, j, a_big ? nb : idx),
                                                   a_big ? a / b : b / a};
        }
      }
      for (int o = 0; o < (1 << d); ++o) {
        const std::size_t c = dyadic::child_linear(d, j, idx, o);
        const double pm = row[idx];
        const double cm = mu.mass(j + 1, c);
        const double lr = std::abs(std::log2(pm) - std::log2(cm));
        if (lr > r.parent_child[sj]) {
          r.parent_child[sj] = lr;
          const bool p_big = pm >= cm;
          auto P = dyadic::from_linear(d, j, idx);
          auto Cc = dyadic::from_linear(d, j + 1, c);
          r.parent_child_witness[sj] = PropertyWitness{p_big ? P : Cc, p_big ? Cc : P, p_big ? pm / cm : cm / pm};
        }
      }
    }
  }
  return r;
}

inline double growth_slope(std::span<const double> values, int first_scale) {
  std::vector<double> x, y;
  for (std::size_t i = static_cast<std::size_t>(first_scale); i < values.size(); ++i) {
    x.push_back(static_cast<double>(i));
    y.push_back(values[i]);
  }
  if (x.size() < 2) return 0.0;
  return fit_line(x, y).slope;
}

inline constexpr double kGrowthTolerance = 0.05;

}  // namespace detail

/// Doubling on the dyadic proxy family: adjacent same-scale pairs (no wrap)
/// and parent/child pairs. c_mu is the largest ratio seen; holds when neither
/// per-scale log2 ratio series grows with j (regression slope below 0.05).
/// per_scale holds the per-scale max log2 ratio.
inline PropertyReport check_doubling(const CapacityTree& mu) {
  detail::require(mu.depth() >= 3, "check_doubling: need depth >= 3");
  detail::require(!mu.has_zero_mass(), "check_doubling: zero masses are not supported");
  const auto r = detail::scan_ratios(mu);
  PropertyReport rep;
  const std::size_t top = r.adjacent.size();
  rep.per_scale.resize(top);
  double best = -1.0;
  for (std::size_t j = 0; j < top; ++j) {
    rep.per_scale[j] = std::max(r.adjacent[j], r.parent_child[j]);
    // later scales win ties so the witness sits at the finest offending pair
    if (rep.per_scale[j] >= best) {
      best = rep.per_scale[j];
      rep.witness = r.adjacent[j] >= r.parent_child[j] && j > 0 ? r.adjacent_witness[j] : r.parent_child_witness[j];
    }
  }
  rep.c_mu = std::exp2(best);
  const double g_adj = detail::growth_slope(r.adjacent, 1);
  const double g_pc = detail::growth_slope(r.parent_child, 0);
  rep.growth = std::max(g_adj, g_pc);
  rep.holds = rep.growth < detail::kGrowthTolerance;
  rep.note = "dyadic proxy: adjacent same-scale cubes (no wrap) and parent/child pairs";
  return rep;
}

enum class PhiFamily { constant, log_log, log_power };

/// phi(2^-j) / c for the chosen family; log_power uses exponent theta < 1.
inline double phi_shape(PhiFamily f, int j, double theta = 0.5) {
  const double lr = j * std::log(2.0);  // log(1/r)
  switch (f) {
    case PhiFamily::constant: return 1.0;
    case PhiFamily::log_log: return std::log(lr);
    case PhiFamily::log_power: return std::pow(lr, theta);
  }
  return 1.0;
}

/// Fits the smallest c with ratio_j <= exp(c * shape(j)) over scales
/// j = first .. depth-1, where first is the first scale >= 2 with
/// shape(j) >= 1 (log_log: j >= 4), kept at least two scales below the
/// finest. Smaller shapes blow the fitted coefficient up at coarse scales
/// and mask its growth. Holds when the coefficient needed on the finest third of
/// the scales does not exceed the one needed on the coarsest third (5%
/// slack) and phi(2^-j) / (j ln 2) decreases between those thirds.
inline PropertyReport check_almost_doubling(const CapacityTree& mu, PhiFamily family, double theta = 0.5) {
  detail::require(mu.depth() >= 4, "check_almost_doubling: need depth >= 4");
  detail::require(theta > 0.0 && theta < 1.0, "check_almost_doubling: theta must lie in (0,1)");
  detail::require(!mu.has_zero_mass(), "check_almost_doubling: zero masses are not supported");
  const auto r = detail::scan_ratios(mu);
  PropertyReport rep;
  const int last = mu.depth() - 1;
  int first = 2;
  while (first < last - 2 && phi_shape(family, first, theta) < 1.0) ++first;
  std::vector<double> need;  // per-scale coefficient
  rep.per_scale.assign(static_cast<std::size_t>(mu.depth()), 0.0);
  for (int j = first; j <= last; ++j) {
    const double lnratio = std::max(r.adjacent[static_cast<std::size_t>(j)], r.parent_child[static_cast<std::size_t>(j)]) * std::log(2.0);
    rep.per_scale[static_cast<std::size_t>(j)] = lnratio;
    need.push_back(lnratio / phi_shape(family, j, theta));
  }
  const std::size_t n = need.size();
  const std::size_t third = std::max<std::size_t>(1, n / 3);
  double c_first = 0.0, c_last = 0.0, c_all = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c_all = std::max(c_all, need[i]);
    if (i < third) c_first = std::max(c_first, need[i]);
    if (i >= n - third) c_last = std::max(c_last, need[i]);
  }
  auto phi_over_log = [&](std::size_t i) {
    const int j = first + static_cast<int>(i);
    return c_all * phi_shape(family, j, theta) / (j * std::log(2.0));
  };
  double head = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < third; ++i) {
    head += phi_over_log(i);
    tail += phi_over_log(n - third + i);
  }
  rep.phi_c = c_all;
  rep.growth = c_first > 0.0 ? c_last / c_first : (c_last > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  rep.holds = c_last <= c_first * 1.05 + 1e-12 && (c_all == 0.0 || tail < head);
  std::size_t worst_i = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (need[i] >= need[worst_i]) worst_i = i;
  const std::size_t worst = worst_i + static_cast<std::size_t>(first);
  rep.witness = r.adjacent[worst] >= r.parent_child[worst] ? r.adjacent_witness[worst] : r.parent_child_witness[worst];
  rep.note = "coefficient needed on coarse vs fine thirds of the scanned scales";
  return rep;
}

/// Weak quasi-Bernoulli control mu(adj) <= C 2^((j'-j) s2) mu(desc) over all
/// scales j <= j', all adjacent (or equal) cubes and all descendants.
/// s2 = largest parent/child log2 ratio; log2 C_j = worst adjacent log2 ratio
/// at scale j. Every scanned triple is verified against the fit; holds when
/// the per-scale constant does not grow with j (slope below 0.05).
inline PropertyReport check_P2(const CapacityTree& mu) {
  detail::require(mu.depth() >= 4, "check_P2: need depth >= 4");
  detail::require(!mu.has_zero_mass(), "check_P2: zero masses are not supported");
  const int d = mu.dim();
  const int top = mu.depth();
  const auto r = detail::scan_ratios(mu);
  PropertyReport rep;
  double s2 = 0.0;
  for (double v : r.parent_child) s2 = std::max(s2, v);
  double logC = 0.0;
  for (double v : r.adjacent) logC = std::max(logC, v);
  std::vector<std::size_t> nbrs;
  {
    // scan_ratios stops one level short of the leaves; the triples below do not
    auto row = mu.level(top);
    for (std::size_t idx = 0; idx < row.size(); ++idx) {
      detail::adjacent_clipped(d, top, idx, nbrs);
      for (std::size_t nb : nbrs) logC = std::max(logC, std::abs(std::log2(row[nb]) - std::log2(row[idx])));
    }
  }

  // For every finer scale jf, min-pool its masses down to each coarser scale
  // j: pooled[idx] is the lightest generation-jf descendant of cube idx.
  std::vector<double> per_scale(static_cast<std::size_t>(top) + 1, 0.0);
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (int jf = 0; jf <= top; ++jf) {
    auto finest = mu.level(jf);
    std::vector<double> pooled(finest.begin(), finest.end());
    std::vector<std::size_t> arg(pooled.size());
    for (std::size_t i = 0; i < arg.size(); ++i) arg[i] = i;
    for (int j = jf; j >= 0; --j) {
      if (j < jf) {
        const std::size_t count = dyadic::cube_count(d, j);
        std::vector<double> coarser(count, std::numeric_limits<double>::infinity());
        std::vector<std::size_t> coarser_arg(count, 0);
        for (std::size_t idx = 0; idx < count; ++idx)
          for (int o = 0; o < (1 << d); ++o) {
            const std::size_t c = dyadic::child_linear(d, j, idx, o);
            if (pooled[c] < coarser[idx]) {
              coarser[idx] = pooled[c];
              coarser_arg[idx] = arg[c];
            }
          }
        pooled = std::move(coarser);
        arg = std::move(coarser_arg);
      }
      auto row = mu.level(j);
      for (std::size_t idx = 0; idx < row.size(); ++idx) {
        detail::adjacent_clipped(d, j, idx, nbrs);
        nbrs.push_back(idx);
        for (std::size_t nb : nbrs) {
          const double lhs = std::log2(row[nb]) - std::log2(pooled[idx]);
          const double excess = lhs - (logC + (jf - j) * s2);
          if (excess > worst_excess) {
            worst_excess = excess;
            rep.witness = PropertyWitness{dyadic::from_linear(d, j, nb), dyadic::from_linear(d, jf, arg[idx]),
                                          std::exp2(lhs)};
          }
          if (jf == j) per_scale[static_cast<std::size_t>(j)] = std::max(per_scale[static_cast<std::size_t>(j)], lhs);
        }
      }
    }
  }
  rep.s2 = s2;
  rep.C = std::exp2(logC);
  rep.per_scale = per_scale;
  rep.growth = detail::growth_slope(r.adjacent, 1);
  const bool fit_ok = worst_excess <= 1e-9;
  rep.holds = fit_ok && std::isfinite(s2) && std::isfinite(logC) && rep.growth < detail::kGrowthTolerance;
  rep.note = fit_ok ? "exhaustive scan; constant phi absorbed into C"
                    : "fit violated on a scanned triple";
  return rep;
}

/// Scale whose cubes just cover a ball of radius r: max(0, floor(-log2(2r))).
inline int ball_scale(double r) {
  return std::max(0, static_cast<int>(std::floor(-std::log2(2.0 * r))));
}

/// Dyadic proxy for mu(B(x, r)): the mass of the generation-j_r cube
/// containing x, with j_r = ball_scale(r) capped at the tree depth.
inline double ball_mass(const CapacityTree& mu, std::span<const double> x, double r) {
  detail::require(r > 0.0 && r <= 0.5, "ball_mass: radius must lie in (0, 1/2]");
  detail::require(static_cast<int>(x.size()) == mu.dim(), "ball_mass: dimension mismatch");
  const int j = std::min(ball_scale(r), mu.depth());
  return mu.mass(dyadic::cube_of_point(x, j));
}

}  // namespace mufrac

#endif  // MUFRAC_CAPACITY_HPP
