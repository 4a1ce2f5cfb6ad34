#include "beauville/group.hpp"

#include <charconv>

#include "beauville/abelian.hpp"
#include "beauville/errors.hpp"
#include "beauville/perm.hpp"
#include "beauville/psl2.hpp"

namespace beauville {

namespace {

constexpr std::size_t kMix = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ProjElement>) {
          std::size_t h = x.m.a.code;
          for (u64 v : {x.m.b.code, x.m.c.code, x.m.d.code}) h = h * kMix ^ v;
          return h;
        } else if constexpr (std::is_same_v<T, Permutation>) {
          return PermutationHash{}(x) ^ 0x5bd1e995;
        } else {
          return (x.x.value * kMix ^ x.y.value) + x.x.n;
        }
      },
      e);
}

std::string Fingerprint::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(key[i]);
  }
  return out;
}

Fingerprint Fingerprint::parse(std::string_view text) {
  Fingerprint f;
  if (text.empty()) throw InvalidArgument("empty fingerprint");
  while (true) {
    const auto dot = text.find('.');
    const std::string_view part = text.substr(0, dot);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
      throw InvalidArgument("malformed fingerprint '" + std::string(text) + "'");
    f.key.push_back(v);
    if (dot == std::string_view::npos) break;
    text.remove_prefix(dot + 1);
  }
  return f;
}

std::size_t FingerprintHash::operator()(const Fingerprint& f) const noexcept {
  std::size_t h = f.key.size();
  for (std::int64_t v : f.key) h = h * kMix ^ static_cast<std::size_t>(v);
  return h;
}

Rng stream_rng(u64 master_seed, u64 index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x6265u};
  return Rng(seq);
}

Element GroupImpl::power(const Element& a, u64 k) const {
  Element result = identity();
  Element base = a;
  while (k) {
    if (k & 1) result = multiply(result, base);
    base = multiply(base, base);
    k >>= 1;
  }
  return result;
}

Group Group::psl2(u64 p, unsigned e) { return Group(std::make_shared<Psl2Group>(Field::make(p, e))); }

Group Group::alternating(unsigned n) { return Group(std::make_shared<PermGroup>(n, true)); }

Group Group::symmetric(unsigned n) { return Group(std::make_shared<PermGroup>(n, false)); }

Group Group::abelian(u64 n) { return Group(std::make_shared<AbelianGroup>(n)); }

Group Group::parse(std::string_view descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string_view::npos)
    throw InvalidArgument("group descriptor must be psl2:p^e, alt:n, sym:n or ab:n, got '" +
                          std::string(descriptor) + "'");
  const std::string_view kind = descriptor.substr(0, colon);
  const std::string_view arg = descriptor.substr(colon + 1);
  if (kind == "psl2") return Group(std::make_shared<Psl2Group>(Field::parse(arg)));
  u64 n = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
  if (arg.empty() || ec != std::errc{} || ptr != arg.data() + arg.size())
    throw InvalidArgument("malformed group parameter '" + std::string(arg) + "'");
  if (kind == "ab") return abelian(n);
  if (n > 4096) throw InvalidArgument("permutation degree too large: " + std::to_string(n));
  if (kind == "alt") return alternating(static_cast<unsigned>(n));
  if (kind == "sym") return symmetric(static_cast<unsigned>(n));
  throw InvalidArgument("unknown group kind '" + std::string(kind) + "'");
}

Element Group::conjugate(const Element& a, const Element& g) const {
  return multiply(multiply(inverse(g), a), g);
}

void Group::enumerate(u64 limit, const std::function<void(const Element&)>& visit) const {
  u64 n = 0;
  bool too_big = false;
  try {
    n = order();
  } catch (const CapExceeded&) {
    too_big = true;
  }
  if (too_big || n > limit)
    throw CapExceeded("enumerating " + descriptor() + " (order " + order_string() + ") exceeds the cap of " +
                      std::to_string(limit) + " elements");
  impl_->for_each_element(visit);
}

std::vector<Element> Group::elements(u64 limit) const {
  std::vector<Element> out;
  enumerate(limit, [&](const Element& x) { out.push_back(x); });
  return out;
}

const Psl2Group* Group::as_psl2() const { return dynamic_cast<const Psl2Group*>(impl_.get()); }
const PermGroup* Group::as_perm() const { return dynamic_cast<const PermGroup*>(impl_.get()); }
const AbelianGroup* Group::as_abelian() const { return dynamic_cast<const AbelianGroup*>(impl_.get()); }

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::psl2: return "psl2";
    case GroupKind::alternating: return "alt";
    case GroupKind::symmetric: return "sym";
    case GroupKind::abelian: return "ab";
  }
  return "?";
}

}  // namespace beauville
