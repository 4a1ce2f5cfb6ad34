#pragma once

#include <array>
#include <string>

#include "beauville/numtheory.hpp"

namespace beauville {

enum class Geometry { spherical, euclidean, hyperbolic };

std::string to_string(Geometry g);

/// Triangle group T_{r,s,t} = <x, y, z : x^r = y^s = z^t = xyz = 1>.
struct TriangleType {
  std::array<u64, 3> orders{};  // ascending
  Geometry geometry = Geometry::hyperbolic;
  /// mu = 1 - (1/r + 1/s + 1/t) = mu_num / mu_den in lowest terms.
  std::int64_t mu_num = 0;
  u64 mu_den = 1;

  double measure() const { return static_cast<double>(mu_num) / static_cast<double>(mu_den); }
  std::string measure_string() const;
};

/// Requires r, s, t >= 2.
TriangleType classify_triangle(u64 r, u64 s, u64 t);

/// PSL2(p^e) is a quotient of T_{2,3,7} iff e = 1 and p = 0, +-1 mod 7, or
/// e = 3 and p = +-2, +-3 mod 7.
bool hurwitz_psl2(u64 p, unsigned e);

}  // namespace beauville
