#include <cmath>

#include <gtest/gtest.h>

#include "mufrac/capacity.hpp"
#include "mufrac/norms.hpp"
#include "mufrac/synthesis.hpp"

using namespace mufrac;

namespace {

const double kCascade[] = {0.3, 0.7};

}  // namespace

TEST(WaveletBesov, SaturatingFieldValues) {
  const auto mu = cascade_env(1, 10, kCascade);
  EXPECT_NEAR(besov_wavelet_seminorm(saturating_field(mu, kInfinity, 11), mu, kInfinity, kInfinity).value, 1.0, 1e-12);
  // p = infinity, q = 2: (sum_j j^-2)^(1/2).
  double sum = 0.0;
  for (int j = 1; j < 11; ++j) sum += 1.0 / (j * j);
  EXPECT_NEAR(besov_wavelet_seminorm(saturating_field(mu, 2.0, 11), mu, kInfinity, 2.0).value, std::sqrt(sum), 1e-12);
  // p = 2, q = 2: level norm (2^j)^(1/2) j^-1.
  sum = 0.0;
  for (int j = 1; j < 11; ++j) sum += std::exp2(j) / (j * j);
  EXPECT_NEAR(besov_wavelet_seminorm(saturating_field(mu, 2.0, 11), mu, 2.0, 2.0).value / std::sqrt(sum), 1.0, 1e-12);
}

TEST(WaveletBesov, ZeroMassCubesContributeNothing) {
  std::vector<std::vector<double>> levels{{1.0}, {1.0, 0.0}, {0.5, 0.5, 0.0, 0.0}};
  const CapacityTree mu(1, 2, levels, true);
  auto f = WaveletField::zeros(1, 3);
  f.at(1, 0, 1) = 0.25;
  f.at(1, 1, 1) = 7.0;
  f.at(2, 0, 1) = 0.5;
  EXPECT_DOUBLE_EQ(besov_wavelet_seminorm(f, mu, 1.0, 1.0).value, 0.25 + 1.0);
}

TEST(WaveletBesov, TriangleInequality) {
  const auto mu = bounded_random_env(2, 6, 0.2, 0.8, 5);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto f = random_bounded_field(mu, 7, 100 + s), g = random_bounded_field(mu, 7, 200 + s);
    auto fg = f;
    axpy(fg, 1.0, g);
    for (double p : {1.0, 2.0, kInfinity})
      EXPECT_LE(besov_wavelet_seminorm(fg, mu, p, 2.0).value,
                besov_wavelet_seminorm(f, mu, p, 2.0).value + besov_wavelet_seminorm(g, mu, p, 2.0).value + 1e-12);
  }
}

TEST(WaveletBesov, ShiftedEnvironmentsOrderTheSeminorms) {
  // mu^(-eps) scales level-j masses by 2^(j eps), so larger eps shrinks the
  // seminorm.
  const auto mu = cascade_env(1, 10, kCascade);
  const auto f = random_bounded_field(mu, 11, 7);
  double prev = besov_wavelet_seminorm(f, mu, 2.0, 2.0).value;
  for (double eps : {0.05, 0.1, 0.2, 0.4}) {
    const double v = besov_wavelet_seminorm(f, transform_shift(mu, -eps), 2.0, 2.0).value;
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(LpNorm, Samples) {
  const std::vector<double> s{1.0, -1.0, 3.0, -3.0};
  EXPECT_DOUBLE_EQ(lp_norm_samples(s, 1, 1.0).value, 2.0);
  EXPECT_DOUBLE_EQ(lp_norm_samples(s, 1, 2.0).value, std::sqrt(5.0));
  EXPECT_DOUBLE_EQ(lp_norm_samples(s, 2, kInfinity).value, 3.0);
  EXPECT_THROW(lp_norm_samples(std::vector<double>(3, 0.0), 1, 2.0), InvalidArgument);
}

TEST(Btilde, MetricAxioms) {
  const auto mu = power_law_env(1, 10, 1.0);
  const auto& db4 = filter("db4");
  const auto f = random_bounded_field(mu, 10, 1), g = random_bounded_field(mu, 10, 2), h = random_bounded_field(mu, 10, 3);
  const double s1 = 1.0;
  const auto dfg = btilde_metric(f, g, mu, 2.0, 2.0, s1, 8, db4);
  EXPECT_EQ(dfg.n_first, 2);
  EXPECT_EQ(dfg.n_last, 9);
  EXPECT_DOUBLE_EQ(dfg.tail_bound, std::ldexp(1.0, -9));
  EXPECT_EQ(btilde_metric(f, f, mu, 2.0, 2.0, s1, 8, db4).value, 0.0);
  EXPECT_NEAR(btilde_metric(g, f, mu, 2.0, 2.0, s1, 8, db4).value, dfg.value, 1e-15);
  const double dgh = btilde_metric(g, h, mu, 2.0, 2.0, s1, 8, db4).value;
  const double dfh = btilde_metric(f, h, mu, 2.0, 2.0, s1, 8, db4).value;
  EXPECT_LE(dfh, dfg.value + dgh + 1e-15);
  // Every term is below 2^-n.
  EXPECT_LT(dfg.value, std::ldexp(1.0, 1 - dfg.n_first));
  EXPECT_THROW(btilde_metric(f, g, mu, 2.0, 2.0, s1, 7, db4), InvalidArgument);
}

TEST(Btilde, SmallPerturbationsAreClose) {
  const auto mu = power_law_env(1, 10, 1.0);
  const auto& db4 = filter("db4");
  const auto f = random_bounded_field(mu, 10, 1);
  auto g = f;
  g.at(5, 3, 1) += 1e-9;
  const auto d = btilde_metric(f, g, mu, 2.0, 2.0, 0.5, 8, db4);
  EXPECT_EQ(d.n_first, 3);
  EXPECT_LT(d.value, 1e-6);
  EXPECT_LT(d.value, std::ldexp(1.0, -d.n_first));
}

TEST(Btilde, SaturatingFieldStaysInsideTheBall) {
  // Over power_law(1) the ratios c / mu^(-1/n) are 2^(-j/n) <= 1, so every
  // rho_n stays bounded and the metric converges in J well below sum 2^-n.
  const auto& db4 = filter("db4");
  std::vector<double> values;
  for (int J : {12, 14}) {
    const auto mu = power_law_env(1, J, 1.0);
    const auto d = btilde_metric(saturating_field(mu, kInfinity, J), WaveletField::zeros(1, J), mu, kInfinity,
                                 kInfinity, 1.0, 8, db4);
    EXPECT_LT(d.value, std::ldexp(1.0, 1 - d.n_first) - 0.1);
    values.push_back(d.value);
  }
  EXPECT_NEAR(values[0], values[1], 1e-3);
}

TEST(Modulus, QuadraticsHaveConstantSecondDifferences) {
  const int J = 10;
  const std::size_t N = std::size_t{1} << J;
  std::vector<double> linear(N), quad(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double x = (i + 0.5) / N;
    linear[i] = 3.0 * x - 1.0;
    quad[i] = x * x;
  }
  const auto mu = power_law_env(1, J, 1.0);
  EXPECT_LE(modulus(linear, 1, mu, 2, 0.125, 2.0), 1e-10);
  EXPECT_GT(modulus(quad, 1, mu, 2, 0.125, 2.0), 0.0);
  EXPECT_THROW(modulus(linear, 1, mu, 2, 0.3, 2.0), InvalidArgument);
  EXPECT_THROW(modulus(linear, 1, mu, 2, std::ldexp(1.0, -9), 2.0), InvalidArgument);
}

TEST(ModulusBesov, FirstScaleDependsOnOrder) {
  EXPECT_EQ(modulus_first_scale(1), 1);
  EXPECT_EQ(modulus_first_scale(2), 2);
  EXPECT_EQ(modulus_first_scale(3), 3);
  const auto mu = power_law_env(1, 8, 1.0);
  const std::vector<double> s(256, 1.0);
  EXPECT_EQ(besov_modulus_seminorm(s, 1, mu, 2.0, 2.0, 2, 5).value, 0.0);
  EXPECT_THROW(besov_modulus_seminorm(s, 1, mu, 2.0, 2.0, 2, 6), InvalidArgument);
  EXPECT_THROW(besov_modulus_seminorm(s, 1, mu, 2.0, 2.0, 4, 2), InvalidArgument);
}

TEST(Sobolev, ZeroForAffineSamples) {
  const auto mu = power_law_env(2, 6, 1.0);
  std::vector<double> s(std::size_t{1} << 12);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<double>(i / 64) - 2.0 * static_cast<double>(i % 64);
  EXPECT_LE(sobolev_seminorm(s, 2, mu, 2.0, 2, 3).value, 1e-8);
  EXPECT_THROW(sobolev_seminorm(s, 2, mu, kInfinity, 2, 3), InvalidArgument);
}

TEST(Embedding, RefusesEnvironmentsThatAreNotAlmostDoubling) {
  const auto mu = cascade_env(1, 12, kCascade);
  const auto f = random_bounded_field(mu, 11, 3);
  EXPECT_THROW(embedding_report(f, mu, 2.0, {0.1}, {9}, filter("db4")), HypothesisError);
  const auto rep = embedding_report(f, mu, 2.0, {0.1}, {9}, filter("db4"), 2, 2.0, true);
  EXPECT_TRUE(rep.hypothesis_violated);
  ASSERT_EQ(rep.rows.size(), 1u);
}

TEST(Embedding, ZeroFieldIsDegenerate) {
  const auto mu = power_law_env(1, 10, 1.0);
  const auto rep = embedding_report(WaveletField::zeros(1, 10), mu, 2.0, {0.1}, {9, 10}, filter("db4"));
  EXPECT_EQ(rep.verdict, "degenerate");
  EXPECT_FALSE(rep.hypothesis_violated);
}

TEST(Embedding, DefaultEpsGrid) {
  EXPECT_EQ(default_eps_grid(2.0), (std::vector<double>{0.4, 0.2, 0.1, 0.05}));
  EXPECT_EQ(default_eps_grid(0.15), (std::vector<double>{0.1, 0.05}));
}

TEST(Omega, ZeroSamplesAreDegenerate) {
  const auto mu = power_law_env(1, 10, 1.0);
  const double ts[] = {0.125, 0.0625};
  const auto rep = omega_bound_check(std::vector<double>(1024, 0.0), 1, mu, 2, 2.0, 0.1, ts);
  EXPECT_TRUE(rep.degenerate);
  EXPECT_TRUE(std::isnan(rep.spread));
  EXPECT_TRUE(std::isnan(rep.rows[0].C));
}

TEST(Omega, SpikeGivesFiniteConstants) {
  const auto mu = power_law_env(1, 10, 1.0);
  std::vector<double> s(1024, 0.0);
  s[400] = 1.0;
  const double ts[] = {0.125, 0.0625, 0.03125};
  const auto rep = omega_bound_check(s, 1, mu, 2, 2.0, 0.1, ts);
  EXPECT_FALSE(rep.degenerate);
  for (const auto& r : rep.rows) {
    EXPECT_GT(r.C, 0.0);
    EXPECT_TRUE(std::isfinite(r.C));
  }
  EXPECT_GE(rep.spread, 1.0);
}

TEST(Omega, ConstantsSettleAtFineScales) {
  // Away from the coarse scales, where 4 n t approaches the domain size, the
  // fitted constant stabilises for random fields bounded by the environment.
  const int J = 16;
  const auto mu = power_law_env(1, J, 1.0);
  const auto& db4 = filter("db4");
  std::vector<double> ts;
  for (int e = 8; e <= 11; ++e) ts.push_back(std::ldexp(1.0, -e));
  for (std::uint64_t seed = 1300; seed < 1305; ++seed) {
    const auto f = random_bounded_field(mu, J, seed, 2.0, 0.25, "db4");
    const auto rep = omega_bound_check(synthesize(f, db4), 1, mu, 2, 2.0, 0.1, ts);
    ASSERT_FALSE(rep.degenerate);
    EXPECT_LE(rep.spread, 4.0) << "seed " << seed;
  }
}
