#include "beauville/field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <utility>

#include "beauville/errors.hpp"

namespace beauville {

namespace {

using Poly = std::vector<u64>;  // coefficients over F_p, lowest first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, u64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 lead_inv = invmod(m.back(), p);
  while (a.size() > dm) {
    const u64 factor = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = submod(a[shift + i], mulmod(factor, m[i], p), p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = addmod(prod[i + j], mulmod(a[i], b[j], p), p);
  }
  return poly_mod(std::move(prod), m, p);
}

Poly poly_powmod(Poly base, u64 k, const Poly& m, u64 p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (k) {
    if (k & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    k >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = submod(a[i], b[i], p);
  trim(a);
  return a;
}

// x^(p^k) mod m by k successive p-th powers.
Poly frobenius_power_of_x(unsigned k, const Poly& m, u64 p) {
  Poly x = poly_mod(Poly{0, 1}, m, p);
  for (unsigned i = 0; i < k; ++i) x = poly_powmod(x, p, m, p);
  return x;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

u64 parse_u64(std::string_view s, std::string_view what) {
  s = strip(s);
  u64 value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidArgument("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  return value;
}

}  // namespace

bool is_irreducible(u64 p, std::span<const u64> monic) {
  Poly f(monic.begin(), monic.end());
  trim(f);
  if (f.size() < 2) return false;
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  // x^(p^n) = x mod f, and gcd(x^(p^(n/r)) - x, f) = 1 for every prime r | n.
  if (poly_sub(frobenius_power_of_x(n, f, p), poly_mod(Poly{0, 1}, f, p), p).size() != 0) return false;
  for (u64 r : prime_divisors(n)) {
    Poly g = poly_gcd(f, poly_sub(frobenius_power_of_x(static_cast<unsigned>(n / r), f, p), Poly{0, 1}, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<u64> find_irreducible(u64 p, unsigned e) {
  if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw InvalidArgument("field degree must be at least 1");
  if (e == 1) return {0, 1};
  const u64 count = checked_pow(p, e);
  for (u64 code = 1; code < count; ++code) {
    Poly f(e + 1, 0);
    u64 rest = code;
    for (unsigned i = 0; i < e; ++i) {
      f[i] = rest % p;
      rest /= p;
    }
    f[e] = 1;
    if (f[0] == 0) continue;
    if (is_irreducible(p, f)) return f;
  }
  throw InternalError("no irreducible polynomial found");
}

u64 FieldSpec::order() const { return checked_pow(p, e); }

std::string FieldSpec::to_string() const {
  if (e == 1) return std::to_string(p);
  return std::to_string(p) + "^" + std::to_string(e);
}

FieldSpec FieldSpec::parse(std::string_view text) {
  text = strip(text);
  FieldSpec spec;
  const auto caret = text.find('^');
  spec.p = parse_u64(text.substr(0, caret), "field characteristic");
  spec.e = caret == std::string_view::npos
               ? 1u
               : static_cast<unsigned>(parse_u64(text.substr(caret + 1), "field degree"));
  if (caret == std::string_view::npos && spec.p > 1 && !is_prime(spec.p)) {
    // A bare prime power such as 8 means 2^3.
    const auto f = factorize(spec.p);
    if (f.size() == 1) {
      spec.p = f.front().first;
      spec.e = f.front().second;
    }
  }
  if (!is_prime(spec.p)) throw InvalidArgument("field order " + std::string(text) + " is not a prime power");
  if (spec.e == 0) throw InvalidArgument("field degree must be at least 1");
  checked_pow(spec.p, spec.e);
  spec.modulus = find_irreducible(spec.p, spec.e);
  return spec;
}

struct Field::Tables {
  std::vector<std::uint32_t> exp;  // length 2(q-1)
  std::vector<std::uint32_t> log;  // length q, log[0] unused
};

namespace {
constexpr u64 kTableLimit = u64{1} << 20;
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  if (!is_prime(spec_.p)) throw InvalidArgument("characteristic " + std::to_string(spec_.p) + " is not prime");
  if (spec_.e == 0) throw InvalidArgument("field degree must be at least 1");
  if (spec_.modulus.size() != spec_.e + 1 || spec_.modulus.back() != 1)
    throw InvalidArgument("modulus must be monic of degree " + std::to_string(spec_.e));
  for (u64 c : spec_.modulus)
    if (c >= spec_.p) throw InvalidArgument("modulus coefficients must be reduced mod p");
  if (spec_.e > 1 && !is_irreducible(spec_.p, spec_.modulus))
    throw InvalidArgument("modulus is not irreducible over F_" + std::to_string(spec_.p));
  q_ = checked_pow(spec_.p, spec_.e);
  digit_weight_.resize(spec_.e);
  u64 w = 1;
  for (unsigned i = 0; i < spec_.e; ++i) {
    digit_weight_[i] = w;
    if (i + 1 < spec_.e) w *= spec_.p;
  }

  primitive_ = find_primitive();
  if (spec_.e > 1 && q_ <= kTableLimit) {
    auto tables = std::make_shared<Tables>();
    tables->exp.resize(2 * (q_ - 1));
    tables->log.assign(q_, 0);
    FieldElement x = one();
    for (u64 i = 0; i < q_ - 1; ++i) {
      tables->exp[i] = static_cast<std::uint32_t>(x.code);
      tables->log[x.code] = static_cast<std::uint32_t>(i);
      x = poly_mul(x, primitive_);
    }
    for (u64 i = q_ - 1; i < 2 * (q_ - 1); ++i) tables->exp[i] = tables->exp[i - (q_ - 1)];
    tables_ = std::move(tables);
  }

  if (spec_.p == 2) {
    for (u64 c = 1; c < q_; ++c) {
      if (absolute_trace(FieldElement{c}) == 1) {
        trace_one_ = FieldElement{c};
        break;
      }
    }
  } else {
    for (u64 c = 2; c < q_; ++c) {
      if (!is_square(FieldElement{c})) {
        nonsquare_ = FieldElement{c};
        break;
      }
    }
  }
}

Field Field::make(u64 p, unsigned e) {
  FieldSpec spec;
  spec.p = p;
  spec.e = e;
  spec.modulus = find_irreducible(p, e);
  return Field(std::move(spec));
}

FieldElement Field::find_primitive() const {
  if (q_ == 2) return one();
  const auto primes = prime_divisors(q_ - 1);
  for (u64 c = 2; c < q_; ++c) {
    FieldElement g{c};
    bool ok = true;
    for (u64 r : primes) {
      if (pow_slow(g, (q_ - 1) / r) == one()) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw InternalError("no primitive element in GF(" + spec_.to_string() + ")");
}

FieldElement Field::from_int(std::int64_t v) const {
  const std::int64_t p = static_cast<std::int64_t>(spec_.p);
  if (spec_.p > static_cast<u64>(INT64_MAX)) return FieldElement{static_cast<u64>(v)};
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return FieldElement{static_cast<u64>(r)};
}

FieldElement Field::from_coeffs(std::span<const u64> coeffs) const {
  if (coeffs.size() > spec_.e) throw InvalidArgument("too many coefficients for GF(" + spec_.to_string() + ")");
  u64 code = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) code += (coeffs[i] % spec_.p) * digit_weight_[i];
  return FieldElement{code};
}

std::vector<u64> Field::coeffs(FieldElement a) const {
  std::vector<u64> out(spec_.e);
  if (spec_.e == 1) {
    out[0] = a.code;
    return out;
  }
  for (unsigned i = 0; i < spec_.e; ++i) {
    out[i] = a.code % spec_.p;
    a.code /= spec_.p;
  }
  return out;
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
  if (spec_.e == 1) return FieldElement{addmod(a.code, b.code, spec_.p)};
  if (spec_.p == 2) return FieldElement{a.code ^ b.code};
  u64 result = 0;
  for (unsigned i = 0; i < spec_.e; ++i) {
    u64 s = a.code % spec_.p + b.code % spec_.p;
    if (s >= spec_.p) s -= spec_.p;
    result += s * digit_weight_[i];
    a.code /= spec_.p;
    b.code /= spec_.p;
  }
  return FieldElement{result};
}

FieldElement Field::neg(FieldElement a) const {
  if (spec_.e == 1) return FieldElement{a.code == 0 ? 0 : spec_.p - a.code};
  if (spec_.p == 2) return a;
  u64 result = 0;
  for (unsigned i = 0; i < spec_.e; ++i) {
    const u64 d = a.code % spec_.p;
    result += (d == 0 ? 0 : spec_.p - d) * digit_weight_[i];
    a.code /= spec_.p;
  }
  return FieldElement{result};
}

FieldElement Field::sub(FieldElement a, FieldElement b) const {
  if (spec_.e == 1) return FieldElement{submod(a.code, b.code, spec_.p)};
  return add(a, neg(b));
}

FieldElement Field::poly_mul(FieldElement a, FieldElement b) const {
  return from_coeffs(poly_mulmod(coeffs(a), coeffs(b), spec_.modulus, spec_.p));
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
  if (spec_.e == 1) return FieldElement{mulmod(a.code, b.code, spec_.p)};
  if (a.code == 0 || b.code == 0) return zero();
  if (tables_) return FieldElement{tables_->exp[tables_->log[a.code] + tables_->log[b.code]]};
  return poly_mul(a, b);
}

FieldElement Field::pow_slow(FieldElement a, u64 k) const {
  if (spec_.e == 1) return FieldElement{powmod(a.code, k, spec_.p)};
  FieldElement result = one();
  while (k) {
    if (k & 1) result = poly_mul(result, a);
    a = poly_mul(a, a);
    k >>= 1;
  }
  return result;
}

FieldElement Field::pow(FieldElement a, u64 k) const {
  if (k == 0) return one();
  if (a.code == 0) return zero();
  if (tables_) {
    const u64 l = static_cast<u64>(static_cast<u128>(tables_->log[a.code]) * (k % (q_ - 1)) % (q_ - 1));
    return FieldElement{tables_->exp[l]};
  }
  return pow_slow(a, k);
}

FieldElement Field::inv(FieldElement a) const {
  if (a.code == 0) throw DivisionByZero("inverse of zero in GF(" + spec_.to_string() + ")");
  if (spec_.e == 1) return FieldElement{invmod(a.code, spec_.p)};
  if (tables_) return FieldElement{tables_->exp[(q_ - 1 - tables_->log[a.code]) % (q_ - 1)]};
  return pow_slow(a, q_ - 2);
}

bool Field::is_square(FieldElement a) const {
  if (spec_.p == 2 || a.code == 0) return true;
  return pow(a, (q_ - 1) / 2) == one();
}

bool Field::sqrt(FieldElement a, FieldElement& root) const {
  if (a.code == 0) {
    root = zero();
    return true;
  }
  if (spec_.p == 2) {
    root = pow(a, q_ / 2);
    return true;
  }
  if (!is_square(a)) return false;
  // Tonelli-Shanks in GF(q).
  u64 t = q_ - 1;
  unsigned s = 0;
  while ((t & 1) == 0) {
    t >>= 1;
    ++s;
  }
  FieldElement c = pow(nonsquare_, t);
  FieldElement tt = pow(a, t);
  FieldElement r = pow(a, (t + 1) / 2);
  unsigned m = s;
  while (tt != one()) {
    unsigned i = 0;
    FieldElement probe = tt;
    while (probe != one()) {
      probe = mul(probe, probe);
      ++i;
    }
    FieldElement b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mul(b, b);
    m = i;
    c = mul(b, b);
    tt = mul(tt, c);
    r = mul(r, b);
  }
  root = r;
  return true;
}

u64 Field::absolute_trace(FieldElement a) const {
  FieldElement sum = zero();
  FieldElement term = a;
  for (unsigned i = 0; i < spec_.e; ++i) {
    sum = add(sum, term);
    term = frobenius(term);
  }
  return sum.code;
}

std::vector<FieldElement> Field::solve_quadratic(FieldElement a, FieldElement b, FieldElement c) const {
  if (a.code == 0) throw InvalidArgument("solve_quadratic requires a nonzero leading coefficient");
  std::vector<FieldElement> roots;
  if (spec_.p == 2) {
    if (b.code == 0) {
      FieldElement r;
      sqrt(div(c, a), r);
      roots.push_back(r);
      return roots;
    }
    // x = (b/a) y turns the equation into y^2 + y = ac/b^2.
    const FieldElement delta = div(mul(a, c), mul(b, b));
    if (absolute_trace(delta) != 0) return roots;
    FieldElement y = zero();
    FieldElement partial = zero();      // sum_{j<i} tau^(2^j)
    FieldElement tau_pow = trace_one_;  // tau^(2^j)
    FieldElement delta_pow = delta;     // delta^(2^i)
    for (unsigned i = 1; i < spec_.e; ++i) {
      partial = add(partial, tau_pow);
      tau_pow = mul(tau_pow, tau_pow);
      delta_pow = mul(delta_pow, delta_pow);
      y = add(y, mul(partial, delta_pow));
    }
    const FieldElement scale = div(b, a);
    roots.push_back(mul(scale, y));
    roots.push_back(mul(scale, add(y, one())));
  } else {
    const FieldElement disc = sub(mul(b, b), mul(from_int(4), mul(a, c)));
    FieldElement s;
    if (!sqrt(disc, s)) return roots;
    const FieldElement two_a_inv = inv(mul(from_int(2), a));
    roots.push_back(mul(sub(s, b), two_a_inv));
    if (s.code != 0) roots.push_back(mul(sub(neg(s), b), two_a_inv));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

unsigned Field::subfield_degree(FieldElement a) const {
  for (u64 d : divisors(spec_.e)) {
    FieldElement x = a;
    for (u64 i = 0; i < d; ++i) x = frobenius(x);
    if (x == a) return static_cast<unsigned>(d);
  }
  return spec_.e;
}

std::string Field::format(FieldElement a) const {
  if (spec_.e == 1) return std::to_string(a.code);
  const auto cs = coeffs(a);
  std::string out = std::to_string(cs[0]);
  for (unsigned i = 1; i < spec_.e; ++i) {
    out += '+';
    out += std::to_string(cs[i]);
    out += "*t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

FieldElement Field::parse_element(std::string_view text) const {
  text = strip(text);
  if (text.empty()) throw InvalidArgument("empty field element");
  FieldElement total = zero();
  std::size_t pos = 0;
  bool first = true;
  while (pos <= text.size()) {
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      negative = text[pos] == '-';
      if (first && text[pos] == '+') throw InvalidArgument("malformed field element: '" + std::string(text) + "'");
      ++pos;
    } else if (!first) {
      break;
    }
    std::size_t end = pos;
    while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
    std::string_view term = strip(text.substr(pos, end - pos));
    if (term.empty()) throw InvalidArgument("malformed field element: '" + std::string(text) + "'");

    u64 coeff = 1;
    unsigned degree = 0;
    const auto tpos = term.find('t');
    if (tpos == std::string_view::npos) {
      coeff = parse_u64(term, "field element coefficient") % spec_.p;
    } else {
      std::string_view before = strip(term.substr(0, tpos));
      std::string_view after = strip(term.substr(tpos + 1));
      if (!before.empty()) {
        if (before.back() != '*') throw InvalidArgument("malformed field element term: '" + std::string(term) + "'");
        before.remove_suffix(1);
        coeff = parse_u64(before, "field element coefficient") % spec_.p;
      }
      degree = 1;
      if (!after.empty()) {
        if (after.front() != '^') throw InvalidArgument("malformed field element term: '" + std::string(term) + "'");
        degree = static_cast<unsigned>(parse_u64(after.substr(1), "exponent of t"));
      }
    }
    if (degree >= spec_.e && coeff != 0)
      throw InvalidArgument("term t^" + std::to_string(degree) + " exceeds degree of GF(" + spec_.to_string() + ")");
    FieldElement value = degree < spec_.e ? FieldElement{coeff * digit_weight_[degree]} : zero();
    if (spec_.e == 1) value = FieldElement{coeff};
    total = negative ? sub(total, value) : add(total, value);
    first = false;
    pos = end;
    if (pos == text.size()) break;
  }
  return total;
}

Residue Residue::make(u64 n, std::int64_t v) {
  if (n == 0) throw InvalidArgument("residue modulus must be positive");
  const __int128 m = n;
  __int128 r = static_cast<__int128>(v) % m;
  if (r < 0) r += m;
  return Residue{n, static_cast<u64>(r)};
}

Residue Residue::operator+(Residue o) const { return Residue{n, addmod(value, o.value, n)}; }
Residue Residue::operator-(Residue o) const { return Residue{n, submod(value, o.value, n)}; }
Residue Residue::operator-() const { return Residue{n, value == 0 ? 0 : n - value}; }
Residue Residue::operator*(Residue o) const { return Residue{n, mulmod(value, o.value, n)}; }
Residue Residue::inverse() const { return Residue{n, invmod(value, n)}; }

}  // namespace beauville
