#include "beauville/numtheory.hpp"

#include <algorithm>
#include <numeric>

#include "beauville/errors.hpp"

namespace beauville {

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

// Brent's variant of Pollard rho; n must be odd and composite.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return addmod(mulmod(v, v, n), c, n); };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<u64> primes;
  for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, unsigned>> result;
  for (u64 p : primes) {
    if (!result.empty() && result.back().first == p)
      ++result.back().second;
    else
      result.emplace_back(p, 1);
  }
  return result;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (auto [p, k] : factorize(n)) out.push_back(p);
  return out;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (auto [p, k] : factorize(n)) {
    const std::size_t existing = out.size();
    u64 pk = 1;
    for (unsigned i = 0; i < k; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < existing; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 invmod(u64 a, u64 m) {
  // Extended Euclid on signed 128-bit values.
  __int128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    __int128 quot = old_r / r;
    __int128 tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw DivisionByZero("value is not invertible modulo " + std::to_string(m));
  old_s %= static_cast<__int128>(m);
  if (old_s < 0) old_s += m;
  return static_cast<u64>(old_s);
}

u64 checked_pow(u64 p, unsigned e) {
  u128 result = 1;
  for (unsigned i = 0; i < e; ++i) {
    result *= p;
    if (result >= (static_cast<u128>(1) << 63))
      throw InvalidArgument("field order " + std::to_string(p) + "^" + std::to_string(e) +
                            " does not fit in 63 bits");
  }
  return static_cast<u64>(result);
}

}  // namespace beauville
