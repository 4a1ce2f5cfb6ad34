#include "beauville/perm.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "beauville/errors.hpp"

namespace beauville {

using boost::multiprecision::cpp_int;

namespace {

cpp_int factorial(unsigned n) {
  cpp_int f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

bool fixes_prefix(const Permutation& g, const std::vector<unsigned>& base, std::size_t len) {
  for (std::size_t j = 0; j < len; ++j)
    if (g[base[j]] != base[j]) return false;
  return true;
}

std::optional<unsigned> first_moved(const Permutation& g) {
  for (unsigned i = 0; i < g.degree(); ++i)
    if (g[i] != i) return i;
  return std::nullopt;
}

CycleShape homogeneous_shape(unsigned m, unsigned k, unsigned f) {
  CycleShape s;
  s.lengths.assign(k, m);
  s.lengths.insert(s.lengths.end(), f, 1u);
  return s;
}

std::optional<std::vector<CycleShape>> try_six(unsigned n, const std::array<unsigned, 6>& orders) {
  std::vector<CycleShape> out;
  std::vector<unsigned> used;
  for (unsigned o : orders) {
    if (o < 2) throw InvalidArgument("class orders must be at least 2");
    bool found = false;
    for (unsigned f = n % o; f + o <= n; f += o) {
      const unsigned k = (n - f) / o;
      if (((o - 1) * k) % 2 != 0) continue;
      if (std::find(used.begin(), used.end(), f) != used.end()) continue;
      used.push_back(f);
      out.push_back(homogeneous_shape(o, k, f));
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return out;
}

}  // namespace

std::vector<u64> Bsgs::orbit_lengths() const {
  std::vector<u64> out;
  for (const auto& level : levels_) out.push_back(level.orbit.size());
  return out;
}

std::string Bsgs::order_string() const {
  cpp_int order = 1;
  for (const auto& level : levels_) order *= level.orbit.size();
  return order.str();
}

bool Bsgs::has_order_factorial(bool half) const {
  cpp_int order = 1;
  for (const auto& level : levels_) order *= level.orbit.size();
  cpp_int target = factorial(n_);
  if (half) target /= 2;
  return order == target;
}

bool Bsgs::contains(const Permutation& g) const {
  if (g.degree() != n_) return false;
  auto [residue, level] = strip(g);
  return level == levels_.size() && residue.is_identity();
}

std::pair<Permutation, std::size_t> Bsgs::strip(Permutation g) const {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const unsigned beta = g[base_[i]];
    const auto& u = levels_[i].transversal[beta];
    if (!u) return {std::move(g), i};
    g = g * u->inverse();
  }
  return {std::move(g), levels_.size()};
}

void Bsgs::rebuild_level(std::size_t i) {
  Level& level = levels_[i];
  level.transversal.assign(n_, std::nullopt);
  level.orbit.clear();
  std::vector<const Permutation*> gens;
  for (const auto& g : gens_)
    if (fixes_prefix(g, base_, i)) gens.push_back(&g);
  level.transversal[base_[i]] = Permutation::identity(n_);
  level.orbit.push_back(base_[i]);
  for (std::size_t head = 0; head < level.orbit.size(); ++head) {
    const unsigned pt = level.orbit[head];
    for (const Permutation* s : gens) {
      const unsigned img = (*s)[pt];
      if (level.transversal[img]) continue;
      level.transversal[img] = *level.transversal[pt] * *s;
      level.orbit.push_back(img);
    }
  }
}

Bsgs schreier_sims(unsigned n, const std::vector<Permutation>& gens) {
  Bsgs b;
  b.n_ = n;
  for (const auto& g : gens) {
    if (g.degree() != n) throw HandleMismatch("generator degree differs from " + std::to_string(n));
    if (!g.is_identity()) b.gens_.push_back(g);
  }
  for (const auto& g : b.gens_) {
    if (fixes_prefix(g, b.base_, b.base_.size())) b.base_.push_back(*first_moved(g));
  }
  b.levels_.resize(b.base_.size());
  for (std::size_t i = 0; i < b.levels_.size(); ++i) b.rebuild_level(i);

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(b.base_.size()) - 1;
  while (i >= 0) {
    bool complete = true;
    std::vector<Permutation> level_gens;
    for (const auto& g : b.gens_)
      if (fixes_prefix(g, b.base_, static_cast<std::size_t>(i))) level_gens.push_back(g);
    const auto& level = b.levels_[static_cast<std::size_t>(i)];
    const std::vector<unsigned> orbit = level.orbit;
    for (std::size_t oi = 0; oi < orbit.size() && complete; ++oi) {
      const unsigned beta = orbit[oi];
      for (const auto& s : level_gens) {
        const auto& lv = b.levels_[static_cast<std::size_t>(i)];
        const Permutation h = *lv.transversal[beta] * s * lv.transversal[s[beta]]->inverse();
        if (h.is_identity()) continue;
        auto [residue, j] = b.strip(h);
        if (j == b.levels_.size() && residue.is_identity()) continue;
        complete = false;
        if (j == b.levels_.size()) {
          b.base_.push_back(*first_moved(residue));
          b.levels_.emplace_back();
        }
        b.gens_.push_back(std::move(residue));
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) b.rebuild_level(l);
        i = static_cast<std::ptrdiff_t>(j);
        break;
      }
    }
    if (complete) --i;
  }
  return b;
}

Permutation perm_power(const Permutation& x, u64 k) {
  std::vector<std::uint32_t> img(x.images());
  for (const auto& cycle : x.cycles()) {
    const std::size_t len = cycle.size();
    const std::size_t shift = static_cast<std::size_t>(k % len);
    for (std::size_t t = 0; t < len; ++t) img[cycle[t]] = cycle[(t + shift) % len];
  }
  return Permutation(std::move(img));
}

PermGroup::PermGroup(unsigned n, bool alternating) : n_(n), alternating_(alternating) {
  if (n < 3) throw InvalidArgument("alternating and symmetric groups require n >= 3");
}

u64 PermGroup::order() const {
  if (n_ > 20) throw CapExceeded("order of " + descriptor() + " exceeds 64 bits");
  u64 f = 1;
  for (unsigned i = 2; i <= n_; ++i) f *= i;
  return alternating_ ? f / 2 : f;
}

std::string PermGroup::order_string() const {
  cpp_int f = factorial(n_);
  if (alternating_) f /= 2;
  return f.str();
}

Fingerprint PermGroup::class_fingerprint(const Permutation& x) const {
  const CycleShape shape = x.shape();
  Fingerprint fp;
  for (unsigned l : shape.lengths) fp.key.push_back(l);
  if (!alternating_) return fp;
  bool splits = true;
  for (std::size_t i = 0; i < shape.lengths.size(); ++i) {
    if (shape.lengths[i] % 2 == 0 || (i > 0 && shape.lengths[i] == shape.lengths[i - 1])) splits = false;
  }
  if (!splits) {
    fp.key.push_back(-1);
    return fp;
  }
  auto cycles = x.cycles();
  for (unsigned pt = 0; pt < n_; ++pt)
    if (x[pt] == pt) cycles.push_back({pt});
  std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<std::uint32_t> conj;
  conj.reserve(n_);
  for (const auto& c : cycles) conj.insert(conj.end(), c.begin(), c.end());
  fp.key.push_back(Permutation(std::move(conj)).is_even() ? 0 : 1);
  return fp;
}

bool PermGroup::generates_perm(const Permutation& x, const Permutation& y) const {
  if (!alternating_ && x.is_even() && y.is_even()) return false;
  // Transitivity first: cheap and rejects most proper subgroups.
  std::vector<unsigned> parent(n_);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](unsigned a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  unsigned components = n_;
  for (const Permutation* g : {&x, &y}) {
    for (unsigned i = 0; i < n_; ++i) {
      const unsigned a = find(i), b = find((*g)[i]);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  if (components != 1) return false;
  return schreier_sims(n_, {x, y}).has_order_factorial(alternating_);
}

bool PermGroup::order_is_realizable(u64 k) const {
  if (k == 0) return false;
  if (k == 1) return true;
  const auto divs = divisors(k);
  // best[(L, parity)] = least total length of cycles with lcm L and that parity.
  std::map<std::pair<u64, int>, u64> best{{{1, 0}, 0}};
  bool changed = true;
  while (changed) {
    changed = false;
    const auto snapshot = best;
    for (const auto& [state, cost] : snapshot) {
      for (u64 d : divs) {
        if (d < 2 || cost + d > n_) continue;
        const std::pair<u64, int> next{lcm(state.first, d), state.second ^ static_cast<int>(d % 2 == 0)};
        auto it = best.find(next);
        if (it == best.end() || it->second > cost + d) {
          best[next] = cost + d;
          changed = true;
        }
      }
    }
  }
  if (best.count({k, 0})) return true;
  return !alternating_ && best.count({k, 1});
}

std::vector<CycleShape> PermGroup::shapes_of_order(u64 k, std::size_t limit) const {
  std::vector<CycleShape> out;
  std::vector<unsigned> parts;
  std::vector<unsigned> lengths;
  for (u64 d : divisors(k))
    if (d <= n_) lengths.push_back(static_cast<unsigned>(d));
  std::sort(lengths.rbegin(), lengths.rend());
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t from, unsigned remaining) {
    if (out.size() >= limit) return;
    if (remaining == 0) {
      CycleShape s{parts};
      if (s.element_order() == k && (!alternating_ || s.is_even())) out.push_back(std::move(s));
      return;
    }
    for (std::size_t i = from; i < lengths.size(); ++i) {
      if (lengths[i] > remaining) continue;
      parts.push_back(lengths[i]);
      rec(i, remaining - lengths[i]);
      parts.pop_back();
    }
  };
  rec(0, n_);
  return out;
}

Permutation PermGroup::random_with_shape(const CycleShape& shape, Rng& rng) const {
  if (shape.degree() != n_) throw InvalidArgument("shape " + shape.to_string() + " has wrong degree");
  std::vector<unsigned> points(n_);
  std::iota(points.begin(), points.end(), 0u);
  std::shuffle(points.begin(), points.end(), rng);
  std::vector<std::vector<unsigned>> cycles;
  std::size_t pos = 0;
  for (unsigned l : shape.lengths) {
    cycles.emplace_back(points.begin() + pos, points.begin() + pos + l);
    pos += l;
  }
  return Permutation::from_cycles(n_, cycles);
}

Permutation PermGroup::layout(const CycleShape& shape) const {
  if (shape.degree() != n_) throw InvalidArgument("shape " + shape.to_string() + " has wrong degree");
  std::vector<std::vector<unsigned>> cycles;
  unsigned pos = 0;
  for (unsigned l : shape.lengths) {
    std::vector<unsigned> c(l);
    std::iota(c.begin(), c.end(), pos);
    cycles.push_back(std::move(c));
    pos += l;
  }
  return Permutation::from_cycles(n_, cycles);
}

const Permutation& PermGroup::get(const Element& a) const {
  const auto* x = std::get_if<Permutation>(&a);
  if (!x || x->degree() != n_) throw HandleMismatch("element does not belong to " + descriptor());
  if (alternating_ && !x->is_even()) throw HandleMismatch("odd permutation passed to " + descriptor());
  return *x;
}

void PermGroup::check_member(const Element& a) const { get(a); }

Element PermGroup::multiply(const Element& a, const Element& b) const { return get(a) * get(b); }
Element PermGroup::inverse(const Element& a) const { return get(a).inverse(); }
Element PermGroup::power(const Element& a, u64 k) const { return perm_power(get(a), k); }
u64 PermGroup::element_order(const Element& a) const { return get(a).order(); }

bool PermGroup::generates(const Element& x, const Element& y) const { return generates_perm(get(x), get(y)); }

std::string PermGroup::describe_generated(const Element& x, const Element& y) const {
  const auto& a = get(x);
  const auto& b = get(y);
  const Bsgs bsgs = schreier_sims(n_, {a, b});
  if (bsgs.has_order_factorial(alternating_)) return "full group";
  return "proper subgroup of order " + bsgs.order_string();
}

Fingerprint PermGroup::fingerprint(const Element& a) const { return class_fingerprint(get(a)); }

std::string PermGroup::describe_class(const Fingerprint& f) const {
  if (f.key.empty()) return f.to_string();
  CycleShape shape;
  std::size_t len = f.key.size();
  if (alternating_) --len;
  for (std::size_t i = 0; i < len; ++i) shape.lengths.push_back(static_cast<unsigned>(f.key[i]));
  std::string out = shape.to_string();
  if (alternating_ && f.key.back() >= 0) out += f.key.back() == 0 ? " (a)" : " (b)";
  return out;
}

void PermGroup::for_each_element(const std::function<void(const Element&)>& visit) const {
  std::vector<std::uint32_t> img(n_);
  std::iota(img.begin(), img.end(), 0u);
  do {
    Permutation p(img);
    if (!alternating_ || p.is_even()) visit(p);
  } while (std::next_permutation(img.begin(), img.end()));
}

Element PermGroup::random_element(Rng& rng) const {
  std::vector<std::uint32_t> img(n_);
  std::iota(img.begin(), img.end(), 0u);
  for (unsigned i = n_ - 1; i > 0; --i) {
    std::uniform_int_distribution<unsigned> dist(0, i);
    std::swap(img[i], img[dist(rng)]);
  }
  Permutation p(img);
  if (alternating_ && !p.is_even()) {
    std::swap(img[0], img[1]);
    p = Permutation(std::move(img));
  }
  return p;
}

std::string PermGroup::format(const Element& a) const { return get(a).to_string(); }

Element PermGroup::parse_element(std::string_view text) const {
  Permutation p = Permutation::parse(n_, text);
  if (alternating_ && !p.is_even())
    throw InvalidArgument("permutation " + std::string(text) + " is odd and does not lie in " + descriptor());
  return p;
}

Permutation construct_almost_homogeneous(unsigned n, unsigned m, unsigned f, bool even) {
  if (m < 2) throw InvalidArgument("cycle length m must be at least 2");
  if (f > n || (n - f) % m != 0 || n - f < m)
    throw InvalidArgument("n - f = " + std::to_string(static_cast<long long>(n) - f) +
                          " is not a positive multiple of m = " + std::to_string(m));
  const unsigned k = (n - f) / m;
  if (even && ((m - 1) * k) % 2 != 0)
    throw InvalidArgument("shape (" + std::to_string(m) + "^" + std::to_string(k) + ",1^" + std::to_string(f) +
                          ") is odd: (m-1)k = " + std::to_string((m - 1) * k));
  std::vector<std::vector<unsigned>> cycles(k);
  for (unsigned c = 0; c < k; ++c) {
    cycles[c].resize(m);
    std::iota(cycles[c].begin(), cycles[c].end(), c * m);
  }
  Permutation p = Permutation::from_cycles(n, cycles);
  if (p.order() != m || p.fixed_points() != f) throw InternalError("almost homogeneous construction failed");
  return p;
}

std::optional<unsigned> smallest_six_class_degree(unsigned n, const std::array<unsigned, 6>& orders, unsigned bound) {
  for (unsigned m = n; m < bound; ++m)
    if (try_six(m, orders)) return m;
  return std::nullopt;
}

std::vector<CycleShape> select_six_classes(unsigned n, const std::array<unsigned, 6>& orders) {
  if (auto shapes = try_six(n, orders)) return *shapes;
  std::string msg = "no six distinct even almost homogeneous classes of the requested orders in degree " +
                    std::to_string(n);
  if (auto m = smallest_six_class_degree(n, orders)) msg += "; smallest feasible degree is " + std::to_string(*m);
  throw InvalidArgument(msg);
}

}  // namespace beauville
