#include "beauville/triangle.hpp"

#include <algorithm>

#include "beauville/errors.hpp"

namespace beauville {

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::spherical: return "spherical";
    case Geometry::euclidean: return "euclidean";
    case Geometry::hyperbolic: return "hyperbolic";
  }
  return "?";
}

std::string TriangleType::measure_string() const {
  if (mu_den == 1) return std::to_string(mu_num);
  return std::to_string(mu_num) + "/" + std::to_string(mu_den);
}

TriangleType classify_triangle(u64 r, u64 s, u64 t) {
  if (r < 2 || s < 2 || t < 2) throw InvalidArgument("triangle type entries must be at least 2");
  if (r > (u64{1} << 20) || s > (u64{1} << 20) || t > (u64{1} << 20))
    throw InvalidArgument("triangle type entries must be at most 2^20");
  TriangleType tt;
  tt.orders = {r, s, t};
  std::sort(tt.orders.begin(), tt.orders.end());
  const __int128 den = static_cast<__int128>(r) * s * t;
  const __int128 num = den - static_cast<__int128>(s) * t - static_cast<__int128>(r) * t - static_cast<__int128>(r) * s;
  const u64 g = gcd(static_cast<u64>(num < 0 ? -num : num), static_cast<u64>(den));
  tt.mu_num = static_cast<std::int64_t>(num / static_cast<__int128>(g == 0 ? 1 : g));
  tt.mu_den = static_cast<u64>(den / (g == 0 ? 1 : g));
  if (num == 0) tt.mu_den = 1;
  tt.geometry = num < 0 ? Geometry::spherical : num == 0 ? Geometry::euclidean : Geometry::hyperbolic;
  return tt;
}

bool hurwitz_psl2(u64 p, unsigned e) {
  if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  if (e == 0) throw InvalidArgument("e must be at least 1");
  const u64 r = p % 7;
  if (e == 1) return r == 0 || r == 1 || r == 6;
  if (e == 3) return r == 2 || r == 3 || r == 4 || r == 5;
  return false;
}

}  // namespace beauville
