#ifndef MUFRAC_DYADIC_HPP
#define MUFRAC_DYADIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "error.hpp"

// Dyadic cubes on [0,1)^d. A cube of scale j is the half-open product
// prod_i [k_i 2^-j, (k_i + 1) 2^-j); its linear index is row-major in k with
// k_0 the most significant coordinate.

namespace mufrac {

/// Handling of the 3^d neighbourhood at the boundary of [0,1]^d.
enum class Boundary {
  periodic,  // wrap around the torus
  clipped,   // drop neighbours outside [0,1]^d
};

struct CubeIndex {
  int j = 0;
  std::vector<std::int64_t> k;

  int dim() const { return static_cast<int>(k.size()); }
  bool operator==(const CubeIndex&) const = default;
};

/// Orientation l in {0,1}^d \ {0}, encoded as the integer sum_i l_i 2^(d-1-i)
/// (values 1 .. 2^d - 1).
struct WaveletIndex {
  CubeIndex cube;
  int orientation = 1;
};

namespace dyadic {

inline std::int64_t side(int j) { return std::int64_t{1} << j; }
inline std::size_t cube_count(int d, int j) { return std::size_t{1} << (d * j); }
inline int orientation_count(int d) { return (1 << d) - 1; }

inline bool valid(const CubeIndex& c) {
  if (c.j < 0 || c.k.empty()) return false;
  for (auto ki : c.k)
    if (ki < 0 || ki >= side(c.j)) return false;
  return true;
}

inline std::size_t linear_index(const CubeIndex& c) {
  std::size_t idx = 0;
  for (auto ki : c.k) idx = (idx << c.j) | static_cast<std::size_t>(ki);
  return idx;
}

inline CubeIndex from_linear(int d, int j, std::size_t idx) {
  CubeIndex c{j, std::vector<std::int64_t>(static_cast<std::size_t>(d))};
  const std::size_t mask = (std::size_t{1} << j) - 1;
  for (int i = d - 1; i >= 0; --i) {
    c.k[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(idx & mask);
    idx >>= j;
  }
  return c;
}

/// Generation-j cube containing x, with k_i = floor(x_i 2^j).
inline CubeIndex cube_of_point(std::span<const double> x, int j) {
  detail::require(j >= 0 && j < 62, "cube_of_point: scale must be in [0, 62)");
  detail::require(!x.empty(), "cube_of_point: empty point");
  CubeIndex c{j, {}};
  c.k.reserve(x.size());
  const double scale = std::ldexp(1.0, j);
  for (double xi : x) {
    detail::require(xi >= 0.0 && xi < 1.0, "cube_of_point: point outside [0,1)^d");
    auto ki = static_cast<std::int64_t>(std::floor(xi * scale));
    c.k.push_back(std::min(ki, side(j) - 1));
  }
  return c;
}

inline bool contains(const CubeIndex& c, std::span<const double> x) {
  if (x.size() != c.k.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lo = std::ldexp(static_cast<double>(c.k[i]), -c.j);
    double hi = std::ldexp(static_cast<double>(c.k[i] + 1), -c.j);
    if (!(x[i] >= lo && x[i] < hi)) return false;
  }
  return true;
}

inline CubeIndex parent(const CubeIndex& c) {
  detail::require(c.j > 0, "parent: root cube has no parent");
  CubeIndex p{c.j - 1, c.k};
  for (auto& ki : p.k) ki >>= 1;
  return p;
}

/// Same-generation cubes whose closures meet the closure of c: exactly 3^d
/// entries with periodic wrap (duplicates when 2^j < 3), fewer when clipped.
inline std::vector<CubeIndex> neighborhood_3(const CubeIndex& c, Boundary b = Boundary::periodic) {
  const int d = c.dim();
  const std::int64_t n = side(c.j);
  std::vector<CubeIndex> out;
  int total = 1;
  for (int i = 0; i < d; ++i) total *= 3;
  out.reserve(static_cast<std::size_t>(total));
  for (int code = 0; code < total; ++code) {
    CubeIndex nb{c.j, c.k};
    bool inside = true;
    int rest = code;
    for (int i = 0; i < d; ++i) {
      std::int64_t off = rest % 3 - 1;
      rest /= 3;
      std::int64_t v = c.k[static_cast<std::size_t>(i)] + off;
      if (b == Boundary::periodic) {
        v = ((v % n) + n) % n;
      } else if (v < 0 || v >= n) {
        inside = false;
        break;
      }
      nb.k[static_cast<std::size_t>(i)] = v;
    }
    if (inside) out.push_back(std::move(nb));
  }
  return out;
}

/// All 2^(d (finer - c.j)) generation-`finer` cubes contained in c, in
/// row-major order.
inline std::vector<CubeIndex> descendants(const CubeIndex& c, int finer) {
  detail::require(finer >= c.j, "descendants: target scale is coarser than the cube");
  const int d = c.dim();
  const int depth = finer - c.j;
  const std::size_t per_axis = std::size_t{1} << depth;
  const std::size_t count = cube_count(d, depth);
  std::vector<CubeIndex> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    CubeIndex child{finer, std::vector<std::int64_t>(static_cast<std::size_t>(d))};
    std::size_t rest = idx;
    for (int i = d - 1; i >= 0; --i) {
      auto off = static_cast<std::int64_t>(rest % per_axis);
      rest /= per_axis;
      child.k[static_cast<std::size_t>(i)] = (c.k[static_cast<std::size_t>(i)] << depth) + off;
    }
    out.push_back(std::move(child));
  }
  return out;
}

/// Linear index of the parent of cube `idx` (scale j > 0) at scale j - 1.
inline std::size_t parent_linear(int d, int j, std::size_t idx) {
  const std::size_t mask = (std::size_t{1} << j) - 1;
  std::size_t out = 0;
  for (int i = 0; i < d; ++i) {
    const int shift = (d - 1 - i) * j;
    const std::size_t ki = (idx >> shift) & mask;
    out |= (ki >> 1) << ((d - 1 - i) * (j - 1));
  }
  return out;
}

/// Linear index at scale j + 1 of child `octant` of cube `idx` (scale j);
/// octant bit (d-1-i) selects the upper half along axis i.
inline std::size_t child_linear(int d, int j, std::size_t idx, int octant) {
  const std::size_t mask = (std::size_t{1} << j) - 1;
  std::size_t out = 0;
  for (int i = 0; i < d; ++i) {
    const std::size_t ki = (idx >> ((d - 1 - i) * j)) & mask;
    const std::size_t bit = (static_cast<std::size_t>(octant) >> (d - 1 - i)) & 1U;
    out |= ((ki << 1) | bit) << ((d - 1 - i) * (j + 1));
  }
  return out;
}

/// Lower-left corner of the cube.
inline std::vector<double> corner(const CubeIndex& c) {
  std::vector<double> x;
  x.reserve(c.k.size());
  for (auto ki : c.k) x.push_back(std::ldexp(static_cast<double>(ki), -c.j));
  return x;
}

}  // namespace dyadic
}  // namespace mufrac

#endif  // MUFRAC_DYADIC_HPP
