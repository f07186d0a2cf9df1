#ifndef MUFRAC_WAVELET_HPP
#define MUFRAC_WAVELET_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dyadic.hpp"
#include "error.hpp"
#include "filters.hpp"
#include "parallel.hpp"

namespace mufrac {

/// Periodic wavelet coefficients on [0,1]^d in the L-infinity normalization
/// c = 2^(dj) <f, Psi_lambda>. details[j] holds scale j (0 <= j < J) in
/// row-major k order with the orientation index minor:
/// details[j][linear_index(k) * (2^d - 1) + (o - 1)].
struct WaveletField {
  int d = 1;
  int J = 0;
  std::string filter_name;
  double coarse = 0.0;
  std::vector<std::vector<double>> details;

  static WaveletField zeros(int d, int J, std::string filter_name = "") {
    detail::require(d >= 1 && d <= 3 && J >= 1 && d * J <= 30, "WaveletField: need 1 <= d <= 3, J >= 1, dJ <= 30");
    WaveletField f;
    f.d = d;
    f.J = J;
    f.filter_name = std::move(filter_name);
    for (int j = 0; j < J; ++j)
      f.details.emplace_back(dyadic::cube_count(d, j) * static_cast<std::size_t>(dyadic::orientation_count(d)), 0.0);
    return f;
  }

  int orientations() const { return dyadic::orientation_count(d); }
  double& at(int j, std::size_t cube, int o) {
    return details[static_cast<std::size_t>(j)][cube * static_cast<std::size_t>(orientations()) + static_cast<std::size_t>(o - 1)];
  }
  double at(int j, std::size_t cube, int o) const {
    return details[static_cast<std::size_t>(j)][cube * static_cast<std::size_t>(orientations()) + static_cast<std::size_t>(o - 1)];
  }
  double at(const WaveletIndex& w) const { return at(w.cube.j, dyadic::linear_index(w.cube), w.orientation); }

  bool operator==(const WaveletField&) const = default;
};

inline bool same_shape(const WaveletField& a, const WaveletField& b) { return a.d == b.d && a.J == b.J; }

/// Throws InvalidArgument on inconsistent sizes or non-finite values.
inline void validate(const WaveletField& f) {
  detail::require(f.d >= 1 && f.d <= 3 && f.J >= 1 && f.d * f.J <= 30, "WaveletField: bad dimensions");
  detail::require(f.details.size() == static_cast<std::size_t>(f.J), "WaveletField: wrong number of levels");
  detail::require(std::isfinite(f.coarse), "WaveletField: non-finite coarse coefficient");
  for (int j = 0; j < f.J; ++j) {
    const auto& row = f.details[static_cast<std::size_t>(j)];
    detail::require(row.size() == dyadic::cube_count(f.d, j) * static_cast<std::size_t>(f.orientations()),
                    "WaveletField: wrong size at level " + std::to_string(j));
    for (double c : row) detail::require(std::isfinite(c), "WaveletField: non-finite coefficient");
  }
}

/// y += a x, coefficient-wise (coarse included).
inline void axpy(WaveletField& y, double a, const WaveletField& x) {
  detail::require(same_shape(x, y), "axpy: shape mismatch");
  y.coarse += a * x.coarse;
  for (std::size_t j = 0; j < y.details.size(); ++j)
    for (std::size_t i = 0; i < y.details[j].size(); ++i) y.details[j][i] += a * x.details[j][i];
}

inline WaveletField scaled(const WaveletField& f, double a) {
  WaveletField out = f;
  out.coarse *= a;
  for (auto& row : out.details)
    for (auto& c : row) c *= a;
  return out;
}

/// The first J levels of f (J <= f.J): a coarser-resolution copy.
inline WaveletField truncated(const WaveletField& f, int J) {
  detail::require(J >= 1 && J <= f.J, "truncated: J must lie in [1, f.J]");
  WaveletField out = f;
  out.J = J;
  out.details.resize(static_cast<std::size_t>(J));
  return out;
}

namespace detail {

/// J with size == 2^(J d), or -1.
inline int grid_depth(std::size_t size, int d) {
  for (int J = 0; J * d < 62; ++J)
    if ((std::size_t{1} << (J * d)) == size) return J;
  return -1;
}

// One periodic analysis (forward) or synthesis (inverse) step along `axis`
// on the leading block of side n inside a cube array of side N.
inline void filter_axis(std::vector<double>& buf, int d, std::size_t N, std::size_t n, int axis, const FilterPair& f,
                        bool forward) {
  std::size_t stride = 1;
  for (int i = axis + 1; i < d; ++i) stride *= N;
  std::size_t lines = 1;
  for (int i = 0; i < d - 1; ++i) lines *= n;
  const std::size_t half = n / 2;
  const std::size_t L = f.lowpass.size();
  parallel_for(lines, [&](std::size_t line) {
    // base offset: decode the other coordinates of this line
    std::size_t base = 0, rest = line;
    for (int i = d - 1; i >= 0; --i) {
      if (i == axis) continue;
      std::size_t s = 1;
      for (int t = i + 1; t < d; ++t) s *= N;
      base += (rest % n) * s;
      rest /= n;
    }
    std::vector<double> in(n), out(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) in[t] = buf[base + t * stride];
    if (forward) {
      for (std::size_t k = 0; k < half; ++k) {
        double a = 0.0, g = 0.0;
        for (std::size_t m = 0; m < L; ++m) {
          const double x = in[(2 * k + m) % n];
          a += f.lowpass[m] * x;
          g += f.highpass[m] * x;
        }
        out[k] = a;
        out[half + k] = g;
      }
    } else {
      for (std::size_t k = 0; k < half; ++k)
        for (std::size_t m = 0; m < L; ++m)
          out[(2 * k + m) % n] += f.lowpass[m] * in[k] + f.highpass[m] * in[half + k];
    }
    for (std::size_t t = 0; t < n; ++t) buf[base + t * stride] = out[t];
  });
}

// Position in the side-N array of the (k, l) sub-band entry at scale j.
inline std::size_t subband_offset(int d, int j, std::size_t N, std::size_t cube, int o) {
  const std::size_t mask = (std::size_t{1} << j) - 1;
  const std::size_t half = std::size_t{1} << j;
  std::size_t pos = 0;
  for (int i = 0; i < d; ++i) {
    const std::size_t ki = (cube >> ((d - 1 - i) * j)) & mask;
    const std::size_t li = (static_cast<std::size_t>(o) >> (d - 1 - i)) & 1U;
    pos = pos * N + ki + li * half;
  }
  return pos;
}

}  // namespace detail

/// Periodic separable transform of 2^(J d) samples (row-major, k_0 most
/// significant) down to scale 0.
inline WaveletField analyze(std::span<const double> samples, int d, const FilterPair& filters) {
  detail::require(d >= 1 && d <= 3, "analyze: dimension must be 1, 2 or 3");
  const int J = detail::grid_depth(samples.size(), d);
  detail::require(J >= 1, "analyze: sample count must be 2^(J d) with J >= 1");
  const std::size_t N = std::size_t{1} << J;
  detail::require(N >= filters.lowpass.size(), "analyze: grid is shorter than the filter support");
  auto field = WaveletField::zeros(d, J, filters.name);
  std::vector<double> buf(samples.begin(), samples.end());
  const double in_scale = std::exp2(-0.5 * J * d);
  for (auto& v : buf) v *= in_scale;
  const int no = field.orientations();
  for (int j = J - 1; j >= 0; --j) {
    const std::size_t n = std::size_t{2} << j;
    for (int axis = 0; axis < d; ++axis) detail::filter_axis(buf, d, N, n, axis, filters, true);
    const double c_scale = std::exp2(0.5 * j * d);
    const std::size_t cubes = dyadic::cube_count(d, j);
    for (std::size_t c = 0; c < cubes; ++c)
      for (int o = 1; o <= no; ++o) field.at(j, c, o) = c_scale * buf[detail::subband_offset(d, j, N, c, o)];
  }
  field.coarse = buf[0];
  return field;
}

/// Exact inverse of analyze.
inline std::vector<double> synthesize(const WaveletField& field, const FilterPair& filters) {
  validate(field);
  const int d = field.d, J = field.J;
  const std::size_t N = std::size_t{1} << J;
  detail::require(N >= filters.lowpass.size(), "synthesize: grid is shorter than the filter support");
  std::vector<double> buf(dyadic::cube_count(d, J), 0.0);
  buf[0] = field.coarse;
  const int no = field.orientations();
  for (int j = 0; j < J; ++j) {
    const std::size_t n = std::size_t{2} << j;
    const double c_scale = std::exp2(-0.5 * j * d);
    const std::size_t cubes = dyadic::cube_count(d, j);
    for (std::size_t c = 0; c < cubes; ++c)
      for (int o = 1; o <= no; ++o) buf[detail::subband_offset(d, j, N, c, o)] = c_scale * field.at(j, c, o);
    for (int axis = d - 1; axis >= 0; --axis) detail::filter_axis(buf, d, N, n, axis, filters, false);
  }
  const double out_scale = std::exp2(0.5 * J * d);
  for (auto& v : buf) v *= out_scale;
  return buf;
}

struct HolderBound {
  double M_fit = 0.0;
  std::vector<double> per_scale;  // max ratio at each scale
};

/// M_fit = max over lambda with |k_i - floor(2^j x_i)| <= window of
/// |c_lambda| / (2^(-j gamma) (1 + |2^j x - k|)^gamma).
inline HolderBound holder_coefficient_bound(const WaveletField& field, std::span<const double> x, double gamma,
                                            int window = 2) {
  detail::require(gamma > 0.0, "holder_coefficient_bound: gamma must be positive");
  detail::require(static_cast<int>(x.size()) == field.d, "holder_coefficient_bound: point dimension mismatch");
  detail::require(window >= 0, "holder_coefficient_bound: window must be nonnegative");
  HolderBound out;
  out.per_scale.assign(static_cast<std::size_t>(field.J), 0.0);
  for (int j = 0; j < field.J; ++j) {
    const auto centre = dyadic::cube_of_point(x, j);
    CubeIndex c{j, centre.k};
    const int d = field.d;
    const int span = 2 * window + 1;
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(span);
    double best = 0.0;
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t rest = code;
      bool inside = true;
      double dist2 = 0.0;
      for (int i = 0; i < d; ++i) {
        const auto off = static_cast<std::int64_t>(rest % static_cast<std::size_t>(span)) - window;
        rest /= static_cast<std::size_t>(span);
        const auto ki = centre.k[static_cast<std::size_t>(i)] + off;
        if (ki < 0 || ki >= dyadic::side(j)) inside = false;
        c.k[static_cast<std::size_t>(i)] = ki;
        const double diff = std::ldexp(x[static_cast<std::size_t>(i)], j) - static_cast<double>(ki);
        dist2 += diff * diff;
      }
      if (!inside) continue;
      const double denom = std::exp2(-j * gamma) * std::pow(1.0 + std::sqrt(dist2), gamma);
      const auto lin = dyadic::linear_index(c);
      for (int o = 1; o <= field.orientations(); ++o) best = std::max(best, std::abs(field.at(j, lin, o)) / denom);
    }
    out.per_scale[static_cast<std::size_t>(j)] = best;
    out.M_fit = std::max(out.M_fit, best);
  }
  return out;
}

/// Smallest admissible vanishing-moment count floor(s2 + d/p) + 1 (p may be
/// infinity).
inline int required_vanishing_moments(double s2, int d, double p) {
  detail::require(p >= 1.0, "required_vanishing_moments: p must be >= 1");
  return static_cast<int>(std::floor(s2 + d / p)) + 1;
}

/// Warning text when the filter has fewer vanishing moments than the
/// environment requires; empty when it is sufficient.
inline std::optional<std::string> regularity_warning(const FilterPair& f, double s2, int d, double p) {
  const int need = required_vanishing_moments(s2, d, p);
  if (f.vanishing_moments >= need) return std::nullopt;
  return "filter " + f.name + " has " + std::to_string(f.vanishing_moments) + " vanishing moments; the environment needs " +
         std::to_string(need);
}

}  // namespace mufrac

#endif  // MUFRAC_WAVELET_HPP
