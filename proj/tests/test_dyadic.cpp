#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "mufrac/dyadic.hpp"
#include "mufrac/rng.hpp"

using namespace mufrac;

TEST(Dyadic, CubeOfPointFloorsCoordinates) {
  const double x[] = {0.3, 0.75};
  const auto c = dyadic::cube_of_point(x, 3);
  EXPECT_EQ(c.j, 3);
  EXPECT_EQ(c.k, (std::vector<std::int64_t>{2, 6}));
  EXPECT_TRUE(dyadic::contains(c, x));
}

TEST(Dyadic, CubeOfPointRejectsOutside) {
  const double x[] = {1.0};
  EXPECT_THROW(dyadic::cube_of_point(x, 2), InvalidArgument);
  const double y[] = {-0.1};
  EXPECT_THROW(dyadic::cube_of_point(y, 2), InvalidArgument);
}

TEST(Dyadic, LinearIndexRoundTripsAllCubes) {
  for (int d = 1; d <= 3; ++d)
    for (int j = 0; j <= 4; ++j)
      for (std::size_t i = 0; i < dyadic::cube_count(d, j); ++i) {
        const auto c = dyadic::from_linear(d, j, i);
        ASSERT_TRUE(dyadic::valid(c));
        ASSERT_EQ(dyadic::linear_index(c), i);
      }
}

TEST(Dyadic, FirstAxisIsMostSignificant) {
  const CubeIndex c{2, {1, 3}};
  EXPECT_EQ(dyadic::linear_index(c), 1u * 4 + 3);
}

TEST(Dyadic, ParentAndChildrenAgree) {
  for (int d = 1; d <= 3; ++d)
    for (int j = 0; j < 4; ++j)
      for (std::size_t i = 0; i < dyadic::cube_count(d, j); ++i)
        for (int o = 0; o < (1 << d); ++o) {
          const std::size_t c = dyadic::child_linear(d, j, i, o);
          ASSERT_EQ(dyadic::parent_linear(d, j + 1, c), i);
          ASSERT_EQ(dyadic::linear_index(dyadic::parent(dyadic::from_linear(d, j + 1, c))), i);
        }
}

TEST(Dyadic, OctantBitSelectsUpperHalf) {
  // d = 2: octant 2 = bit (d-1-0) set, upper half along axis 0.
  const auto c = dyadic::from_linear(2, 1, dyadic::child_linear(2, 0, 0, 2));
  EXPECT_EQ(c.k, (std::vector<std::int64_t>{1, 0}));
}

TEST(Dyadic, NeighborhoodSizes) {
  const CubeIndex interior{3, {4, 4}};
  EXPECT_EQ(dyadic::neighborhood_3(interior, Boundary::clipped).size(), 9u);
  const CubeIndex corner{3, {0, 7}};
  EXPECT_EQ(dyadic::neighborhood_3(corner, Boundary::clipped).size(), 4u);
  EXPECT_EQ(dyadic::neighborhood_3(corner, Boundary::periodic).size(), 9u);
  const CubeIndex edge1{2, {0}};
  const auto wrapped = dyadic::neighborhood_3(edge1, Boundary::periodic);
  std::set<std::int64_t> ks;
  for (const auto& c : wrapped) ks.insert(c.k[0]);
  EXPECT_EQ(ks, (std::set<std::int64_t>{3, 0, 1}));
}

TEST(Dyadic, NeighborhoodClosuresMeet) {
  // Brute-force oracle: cubes whose closed intervals intersect on every axis.
  for (int j = 1; j <= 3; ++j)
    for (std::size_t i = 0; i < dyadic::cube_count(2, j); ++i) {
      const auto c = dyadic::from_linear(2, j, i);
      std::set<std::size_t> expected;
      for (std::size_t m = 0; m < dyadic::cube_count(2, j); ++m) {
        const auto o = dyadic::from_linear(2, j, m);
        bool meet = true;
        for (int a = 0; a < 2; ++a) meet = meet && std::abs(o.k[a] - c.k[a]) <= 1;
        if (meet) expected.insert(m);
      }
      std::set<std::size_t> got;
      for (const auto& nb : dyadic::neighborhood_3(c, Boundary::clipped)) got.insert(dyadic::linear_index(nb));
      ASSERT_EQ(got, expected);
    }
}

TEST(Dyadic, DescendantsTileTheCube) {
  const CubeIndex c{1, {1, 0}};
  const auto desc = dyadic::descendants(c, 3);
  ASSERT_EQ(desc.size(), 16u);
  for (const auto& s : desc) EXPECT_EQ(dyadic::linear_index(dyadic::parent(dyadic::parent(s))), dyadic::linear_index(c));
  EXPECT_THROW(dyadic::descendants(c, 0), InvalidArgument);
}

TEST(Dyadic, RandomPointsLieInTheirCubes) {
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const double x[] = {rng.uniform(), rng.uniform(), rng.uniform()};
    const int j = t % 20;
    const auto c = dyadic::cube_of_point(x, j);
    ASSERT_TRUE(dyadic::contains(c, x));
    if (j > 0) {
      ASSERT_TRUE(dyadic::contains(dyadic::parent(c), x));
    }
  }
}

TEST(Rng, SubstreamsAreReproducibleAndDistinct) {
  auto a = Rng::substream(3, 1, 2), b = Rng::substream(3, 1, 2), c = Rng::substream(3, 2, 1);
  const double va = a.uniform();
  EXPECT_EQ(va, b.uniform());
  EXPECT_NE(va, c.uniform());
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
