#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace beauville {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : m - (b - a); }

u64 powmod(u64 base, u64 exp, u64 m);

u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

/// Prime factorization as (prime, multiplicity) pairs, primes ascending.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

/// Distinct prime divisors, ascending.
std::vector<u64> prime_divisors(u64 n);

/// All positive divisors, ascending.
std::vector<u64> divisors(u64 n);

/// Modular inverse of a mod m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);

/// p^e, throwing InvalidArgument when the result does not fit in 63 bits.
u64 checked_pow(u64 p, unsigned e);

}  // namespace beauville
