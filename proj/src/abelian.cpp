#include "beauville/abelian.hpp"

#include <charconv>

#include "beauville/errors.hpp"

namespace beauville {

AbelianGroup::AbelianGroup(u64 n) : n_(n) {
  if (n < 2) throw InvalidArgument("abelian group Z_n x Z_n requires n >= 2");
  if (n > (u64{1} << 31)) throw InvalidArgument("abelian modulus too large");
}

AbelianPair AbelianGroup::make(std::int64_t x, std::int64_t y) const {
  return AbelianPair{Residue::make(n_, x), Residue::make(n_, y)};
}

AbelianPair AbelianGroup::add(const AbelianPair& a, const AbelianPair& b) const {
  return AbelianPair{a.x + b.x, a.y + b.y};
}

AbelianPair AbelianGroup::negate(const AbelianPair& a) const { return AbelianPair{-a.x, -a.y}; }

u64 AbelianGroup::order_of(const AbelianPair& a) const { return n_ / gcd(gcd(a.x.value, a.y.value), n_); }

bool AbelianGroup::generates_pair(const AbelianPair& x, const AbelianPair& y) const {
  const Residue det = x.x * y.y - y.x * x.y;
  return gcd(det.value, n_) == 1;
}

const AbelianPair& AbelianGroup::get(const Element& a) const {
  const auto* pair = std::get_if<AbelianPair>(&a);
  if (!pair || pair->x.n != n_ || pair->y.n != n_)
    throw HandleMismatch("element does not belong to " + descriptor());
  return *pair;
}

void AbelianGroup::check_member(const Element& a) const { get(a); }

Element AbelianGroup::multiply(const Element& a, const Element& b) const { return add(get(a), get(b)); }

Element AbelianGroup::inverse(const Element& a) const { return negate(get(a)); }

Element AbelianGroup::power(const Element& a, u64 k) const {
  const auto& p = get(a);
  const Residue kk = Residue::make(n_, static_cast<std::int64_t>(k % n_));
  return AbelianPair{p.x * kk, p.y * kk};
}

u64 AbelianGroup::element_order(const Element& a) const { return order_of(get(a)); }

bool AbelianGroup::generates(const Element& x, const Element& y) const { return generates_pair(get(x), get(y)); }

std::string AbelianGroup::describe_generated(const Element& x, const Element& y) const {
  const auto& a = get(x);
  const auto& b = get(y);
  const Residue det = a.x * b.y - b.x * a.y;
  if (gcd(det.value, n_) == 1) return "full group";
  return "proper subgroup (gcd(det, n) = " + std::to_string(gcd(det.value, n_)) + ")";
}

Fingerprint AbelianGroup::fingerprint(const Element& a) const {
  const auto& p = get(a);
  return Fingerprint{{static_cast<std::int64_t>(p.x.value), static_cast<std::int64_t>(p.y.value)}};
}

std::string AbelianGroup::describe_class(const Fingerprint& f) const {
  if (f.key.size() != 2) return f.to_string();
  return "{(" + std::to_string(f.key[0]) + "," + std::to_string(f.key[1]) + ")}";
}

void AbelianGroup::for_each_element(const std::function<void(const Element&)>& visit) const {
  for (u64 x = 0; x < n_; ++x)
    for (u64 y = 0; y < n_; ++y) visit(AbelianPair{Residue{n_, x}, Residue{n_, y}});
}

Element AbelianGroup::random_element(Rng& rng) const {
  std::uniform_int_distribution<u64> dist(0, n_ - 1);
  const u64 x = dist(rng);
  const u64 y = dist(rng);
  return AbelianPair{Residue{n_, x}, Residue{n_, y}};
}

std::string AbelianGroup::format(const Element& a) const {
  const auto& p = get(a);
  return "(" + std::to_string(p.x.value) + "," + std::to_string(p.y.value) + ")";
}

Element AbelianGroup::parse_element(std::string_view text) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 5 || text.front() != '(' || text.back() != ')')
    throw InvalidArgument("abelian element must look like (a,b): '" + std::string(text) + "'");
  text = text.substr(1, text.size() - 2);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw InvalidArgument("abelian element must look like (a,b)");
  auto number = [&](std::string_view s) {
    s = trim(s);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw InvalidArgument("malformed residue '" + std::string(s) + "'");
    return v;
  };
  return make(number(text.substr(0, comma)), number(text.substr(comma + 1)));
}

}  // namespace beauville
