#ifndef MUFRAC_SYNTHESIS_HPP
#define MUFRAC_SYNTHESIS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "capacity.hpp"
#include "error.hpp"
#include "rng.hpp"
#include "wavelet.hpp"

namespace mufrac {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Saturating field over mu: coefficient j^(-2/q) mu(lambda) for j >= 1 in
/// every orientation, zero at j = 0 and for the coarse term. q = kInfinity
/// drops the logarithmic factor.
inline WaveletField saturating_field(const CapacityTree& mu, double q, int J, std::string filter_name = "") {
  detail::require(q >= 1.0, "saturating_field: q must be >= 1");
  detail::require(J >= 1 && J - 1 <= mu.depth(), "saturating_field: J - 1 exceeds the environment depth");
  detail::require(!mu.has_zero_mass(), "saturating_field: environment must have full support");
  auto f = WaveletField::zeros(mu.dim(), J, std::move(filter_name));
  const int no = f.orientations();
  for (int j = 1; j < J; ++j) {
    const double factor = std::isinf(q) ? 1.0 : std::pow(static_cast<double>(j), -2.0 / q);
    auto row = mu.level(j);
    for (std::size_t c = 0; c < row.size(); ++c)
      for (int o = 1; o <= no; ++o) f.at(j, c, o) = factor * row[c];
  }
  return f;
}

using SplitFamily = std::vector<WaveletField>;

/// Member i keeps exactly the scales j with j mod d1 == i.
inline SplitFamily split_family(const WaveletField& g, int d1) {
  detail::require(d1 >= 1, "split_family: d1 must be >= 1");
  SplitFamily fam;
  for (int i = 0; i < d1; ++i) {
    auto m = WaveletField::zeros(g.d, g.J, g.filter_name);
    for (int j = 0; j < g.J; ++j)
      if (j % d1 == i) m.details[static_cast<std::size_t>(j)] = g.details[static_cast<std::size_t>(j)];
    if (i == 0) m.coarse = g.coarse;
    fam.push_back(std::move(m));
  }
  return fam;
}

/// Smallest d1 with d1 > 2 p d.
inline int choose_d1(int p, int d) {
  detail::require(p >= 1 && d >= 1, "choose_d1: need p >= 1 and d >= 1");
  return 2 * p * d + 1;
}

/// f + sum_i beta_i member_i.
inline WaveletField perturb(const WaveletField& f, const SplitFamily& family, std::span<const double> beta) {
  detail::require(beta.size() == family.size(), "perturb: beta length differs from the family size");
  WaveletField out = f;
  for (std::size_t i = 0; i < family.size(); ++i) {
    detail::require(same_shape(f, family[i]), "perturb: shape mismatch");
    if (beta[i] != 0.0) axpy(out, beta[i], family[i]);
  }
  return out;
}

/// Random field with |c_lambda| <= mu(lambda) 2^(-j (d/p + decay)):
/// c = u mu(lambda) 2^(-j (d/p + decay)), u uniform in [-1, 1], drawn from a
/// per-scale substream so the coarse scales agree across J. p = kInfinity
/// gives the plain environment bound.
inline WaveletField random_bounded_field(const CapacityTree& mu, int J, std::uint64_t seed, double p = kInfinity,
                                         double decay = 0.25, std::string filter_name = "") {
  detail::require(J >= 1 && J - 1 <= mu.depth(), "random_bounded_field: J - 1 exceeds the environment depth");
  detail::require(p >= 1.0 && decay >= 0.0, "random_bounded_field: need p >= 1 and decay >= 0");
  auto f = WaveletField::zeros(mu.dim(), J, std::move(filter_name));
  const double rate = mu.dim() / p + decay;
  const int no = f.orientations();
  {
    Rng rng = Rng::substream(seed, 0xC0A45EULL);
    f.coarse = rng.uniform(-1.0, 1.0);
  }
  for (int j = 0; j < J; ++j) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(j));
    const double envelope = std::exp2(-rate * j);
    auto row = mu.level(j);
    for (std::size_t c = 0; c < row.size(); ++c)
      for (int o = 1; o <= no; ++o) f.at(j, c, o) = rng.uniform(-1.0, 1.0) * row[c] * envelope;
  }
  return f;
}

}  // namespace mufrac

#endif  // MUFRAC_SYNTHESIS_HPP
