#include "beauville/psl2.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "beauville/errors.hpp"

namespace beauville {

namespace {

struct ProjHash {
  std::size_t operator()(const ProjElement& x) const noexcept {
    std::size_t h = x.m.a.code;
    h = h * 0x9E3779B97F4A7C15ULL ^ x.m.b.code;
    h = h * 0x9E3779B97F4A7C15ULL ^ x.m.c.code;
    h = h * 0x9E3779B97F4A7C15ULL ^ x.m.d.code;
    return h;
  }
};

}  // namespace

std::string to_string(SplitType t) {
  switch (t) {
    case SplitType::identity: return "identity";
    case SplitType::split: return "split";
    case SplitType::nonsplit: return "nonsplit";
    case SplitType::unipotent: return "unipotent";
  }
  return "?";
}

std::string SubgroupClass::to_string() const {
  switch (kind) {
    case Kind::structural: return "structural";
    case Kind::dihedral: return "dihedral";
    case Kind::a4: return "A4";
    case Kind::s4: return "S4";
    case Kind::a5: return "A5";
    case Kind::full: return "full";
    case Kind::subfield:
      return std::string(projective == Projective::psl ? "PSL2" : "PGL2") + "(p^" +
             std::to_string(subfield_degree) + ")";
  }
  return "?";
}

Psl2Group::Psl2Group(Field field) : field_(std::move(field)) {
  if (field_.order() < 4) throw InvalidArgument("psl2 requires q = p^e >= 4");
  if (field_.order() > (u64{1} << 40)) throw InvalidArgument("psl2 supports q up to 2^40");
  d_ = field_.p() == 2 ? 1 : 2;
  two_ = field_.from_int(2);
  minus_two_ = field_.neg(two_);
  split_primes_ = prime_divisors(split_order());
  nonsplit_primes_ = prime_divisors(nonsplit_order());
}

u64 Psl2Group::order() const {
  const u128 q = field_.order();
  const u128 n = q * (q * q - 1) / d_;
  if (n >> 64) throw CapExceeded("order of " + descriptor() + " exceeds 64 bits");
  return static_cast<u64>(n);
}

Mat2 Psl2Group::sl_identity() const { return Mat2{field_.one(), field_.zero(), field_.zero(), field_.one()}; }

Mat2 Psl2Group::sl_mul(const Mat2& x, const Mat2& y) const {
  const Field& f = field_;
  return Mat2{f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)), f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
              f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
}

Mat2 Psl2Group::sl_inverse(const Mat2& x) const { return Mat2{x.d, field_.neg(x.b), field_.neg(x.c), x.a}; }

Mat2 Psl2Group::sl_negate(const Mat2& x) const {
  return Mat2{field_.neg(x.a), field_.neg(x.b), field_.neg(x.c), field_.neg(x.d)};
}

Mat2 Psl2Group::sl_pow(Mat2 x, u64 k) const {
  Mat2 result = sl_identity();
  while (k) {
    if (k & 1) result = sl_mul(result, x);
    x = sl_mul(x, x);
    k >>= 1;
  }
  return result;
}

FieldElement Psl2Group::trace(const Mat2& x) const { return field_.add(x.a, x.d); }

FieldElement Psl2Group::det(const Mat2& x) const { return field_.sub(field_.mul(x.a, x.d), field_.mul(x.b, x.c)); }

bool Psl2Group::is_scalar(const Mat2& x) const {
  return x.b.code == 0 && x.c.code == 0 && x.a == x.d && (x.a == field_.one() || x.a == field_.neg(field_.one()));
}

Mat2 Psl2Group::companion(FieldElement alpha) const {
  return Mat2{field_.zero(), field_.neg(field_.one()), field_.one(), alpha};
}

ProjElement Psl2Group::project(const Mat2& x) const {
  for (FieldElement v : {x.a, x.b, x.c, x.d}) {
    if (v.code == 0) continue;
    if (field_.neg(v).code < v.code) return ProjElement{sl_negate(x)};
    return ProjElement{x};
  }
  throw InternalError("zero matrix is not in SL2");
}

ProjElement Psl2Group::mul(const ProjElement& x, const ProjElement& y) const { return project(sl_mul(x.m, y.m)); }

ProjElement Psl2Group::inv(const ProjElement& x) const { return project(sl_inverse(x.m)); }

ProjElement Psl2Group::pow(const ProjElement& x, u64 k) const { return project(sl_pow(x.m, k)); }

bool Psl2Group::is_split_trace(FieldElement t) const {
  if (field_.p() == 2) return field_.absolute_trace(field_.inv(field_.mul(t, t))) == 0;
  return field_.is_square(field_.sub(field_.mul(t, t), field_.from_int(4)));
}

u64 Psl2Group::order_of(const ProjElement& x) const {
  if (is_scalar(x.m)) return 1;
  const FieldElement t = trace(x.m);
  if (field_.p() == 2 ? t.code == 0 : (t == two_ || t == minus_two_)) return field_.p();
  const bool split = is_split_trace(t);
  u64 k = split ? split_order() : nonsplit_order();
  for (u64 r : split ? split_primes_ : nonsplit_primes_) {
    while (k % r == 0 && is_scalar(sl_pow(x.m, k / r))) k /= r;
  }
  return k;
}

SplitType Psl2Group::split_type(const ProjElement& x) const {
  const u64 k = order_of(x);
  if (k == 1) return SplitType::identity;
  if (k == field_.p()) return SplitType::unipotent;
  return split_order() % k == 0 ? SplitType::split : SplitType::nonsplit;
}

Fingerprint Psl2Group::class_fingerprint(const ProjElement& x) const {
  if (is_scalar(x.m)) return Fingerprint{{0}};
  const FieldElement t = trace(x.m);
  const bool unipotent = field_.p() == 2 ? t.code == 0 : (t == two_ || t == minus_two_);
  if (!unipotent) {
    const FieldElement nt = field_.neg(t);
    return Fingerprint{{1, static_cast<std::int64_t>(std::min(t.code, nt.code))}};
  }
  if (field_.p() == 2) return Fingerprint{{2, 1}};
  // Conjugates of [[1, b], [0, 1]] keep the square class of b in the upper
  // right entry, or of -c in the lower left one.
  const Mat2 m = t == two_ ? x.m : sl_negate(x.m);
  const bool square = m.c.code != 0 ? field_.is_square(field_.neg(m.c)) : field_.is_square(m.b);
  return Fingerprint{{2, square ? 1 : 0}};
}

TraceTriple Psl2Group::trace_triple(const ProjElement& x, const ProjElement& y) const {
  return TraceTriple{trace(x.m), trace(y.m), trace(sl_mul(x.m, y.m))};
}

bool Psl2Group::is_singular(const TraceTriple& t) const {
  const Field& f = field_;
  FieldElement s = f.add(f.add(f.mul(t.alpha, t.alpha), f.mul(t.beta, t.beta)), f.mul(t.gamma, t.gamma));
  s = f.sub(s, f.mul(f.mul(t.alpha, t.beta), t.gamma));
  s = f.sub(s, f.from_int(4));
  return s.code == 0;
}

// A = companion(alpha), B = [[beta - s, z + gamma - alpha s], [z, s]]. Then
// tr B = beta and tr AB = gamma for every (s, z); det B = 1 is the quadratic
// z^2 + (gamma - alpha s) z + 1 - (beta - s) s = 0.
std::optional<MacbeathSolution> Psl2Group::sweep_companion(FieldElement alpha, FieldElement beta,
                                                           FieldElement gamma) const {
  const Field& f = field_;
  const Mat2 a = companion(alpha);
  for (u64 code = 0; code < q(); ++code) {
    const FieldElement s{code};
    const FieldElement lin = f.sub(gamma, f.mul(alpha, s));
    const FieldElement cst = f.sub(f.one(), f.mul(f.sub(beta, s), s));
    const auto roots = f.solve_quadratic(f.one(), lin, cst);
    if (roots.empty()) continue;
    const FieldElement z = roots.front();
    const Mat2 b{f.sub(beta, s), f.add(z, lin), z, s};
    const Mat2 c = sl_inverse(sl_mul(a, b));
    return MacbeathSolution{a, b, c};
  }
  return std::nullopt;
}

MacbeathSolution Psl2Group::macbeath_solve(const TraceTriple& t) const {
  MacbeathSolution sol;
  bool found = false;
  if (auto s = sweep_companion(t.alpha, t.beta, t.gamma)) {
    sol = *s;
    found = true;
  } else if (auto s = sweep_companion(t.beta, t.gamma, t.alpha)) {
    // XYZ = I with traces (beta, gamma, alpha) gives ZXY = I.
    sol = MacbeathSolution{s->c, s->a, s->b};
    found = true;
  } else if (auto s = sweep_companion(t.gamma, t.alpha, t.beta)) {
    sol = MacbeathSolution{s->b, s->c, s->a};
    found = true;
  } else {
    // Scalar A = eps I forces C = eps B^-1, so gamma = eps beta.
    for (const FieldElement eps : {field_.one(), field_.neg(field_.one())}) {
      if (t.alpha != field_.mul(eps, two_) || t.gamma != field_.mul(eps, t.beta)) continue;
      const Mat2 a{eps, field_.zero(), field_.zero(), eps};
      const Mat2 b = companion(t.beta);
      sol = MacbeathSolution{a, b, sl_inverse(sl_mul(a, b))};
      found = true;
      break;
    }
  }
  if (!found || trace(sol.a) != t.alpha || trace(sol.b) != t.beta || trace(sol.c) != t.gamma ||
      sl_mul(sl_mul(sol.a, sol.b), sol.c) != sl_identity())
    throw InternalError("trace triple (" + field_.format(t.alpha) + "," + field_.format(t.beta) + "," +
                        field_.format(t.gamma) + ") has no solution in " + descriptor());
  return sol;
}

std::optional<u64> Psl2Group::bounded_closure(const ProjElement& x, const ProjElement& y, u64 limit) const {
  std::unordered_set<ProjElement, ProjHash> seen;
  std::vector<ProjElement> queue{project(sl_identity())};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const ProjElement* g : {&x, &y}) {
      ProjElement h = mul(queue[head], *g);
      if (seen.insert(h).second) {
        if (seen.size() > limit) return std::nullopt;
        queue.push_back(h);
      }
    }
  }
  return seen.size();
}

SubgroupClass Psl2Group::classify_subgroup(const ProjElement& x, const ProjElement& y) const {
  using Kind = SubgroupClass::Kind;
  const TraceTriple t = trace_triple(x, y);
  if (is_singular(t)) return SubgroupClass{Kind::structural};

  const std::array<u64, 3> orders{order_of(x), order_of(y), order_of(mul(x, y))};
  if (std::count(orders.begin(), orders.end(), u64{2}) >= 2) return SubgroupClass{Kind::dihedral};

  if (*std::max_element(orders.begin(), orders.end()) <= 5) {
    if (auto size = bounded_closure(x, y, 60)) {
      if (*size == order()) return SubgroupClass{Kind::full};
      if (*size == 12) return SubgroupClass{Kind::a4};
      if (*size == 24) return SubgroupClass{Kind::s4};
      if (*size == 60) return SubgroupClass{Kind::a5};
      throw InternalError("non-singular pair generated a group of order " + std::to_string(*size));
    }
  }

  // Squared traces and alpha*beta*gamma are invariant under the choice of lifts
  // and generate the field of definition of <x, y> in PGL2.
  const Field& f = field_;
  const unsigned e = f.e();
  u64 d_proj = 1;
  for (FieldElement v : {f.mul(t.alpha, t.alpha), f.mul(t.beta, t.beta), f.mul(t.gamma, t.gamma),
                         f.mul(f.mul(t.alpha, t.beta), t.gamma)})
    d_proj = lcm(d_proj, f.subfield_degree(v));
  if (d_proj == e) return SubgroupClass{Kind::full};
  u64 d_lift = 1;
  for (FieldElement v : {t.alpha, t.beta, t.gamma}) d_lift = lcm(d_lift, f.subfield_degree(v));
  return SubgroupClass{Kind::subfield, static_cast<unsigned>(d_proj),
                       d_lift == d_proj ? SubgroupClass::Projective::psl : SubgroupClass::Projective::pgl};
}

std::vector<u64> Psl2Group::order_from_trace(FieldElement alpha) const {
  const bool unipotent_trace = field_.p() == 2 ? alpha.code == 0 : (alpha == two_ || alpha == minus_two_);
  if (unipotent_trace) return {1, field_.p()};
  return {order_of(project(companion(alpha)))};
}

std::vector<FieldElement> Psl2Group::traces_of_order(u64 k) const {
  std::vector<FieldElement> out;
  if (k < 2 || !order_is_realizable(k)) return out;
  if (k == field_.p()) {
    out.push_back(field_.p() == 2 ? field_.zero() : two_);
    if (field_.p() != 2) out.push_back(minus_two_);
    std::sort(out.begin(), out.end());
    return out;
  }
  if (q() > (u64{1} << 24)) throw CapExceeded("trace scan over GF(" + field_.spec().to_string() + ") exceeds 2^24 elements");
  for (u64 code = 0; code < q(); ++code) {
    const FieldElement alpha{code};
    const auto orders = order_from_trace(alpha);
    if (orders.size() == 1 && orders.front() == k) out.push_back(alpha);
  }
  return out;
}

bool Psl2Group::order_is_realizable(u64 k) const {
  return k == 1 || k == field_.p() || (k != 0 && (split_order() % k == 0 || nonsplit_order() % k == 0));
}

ProjElement Psl2Group::find_element_of_order(u64 k) const {
  if (!order_is_realizable(k))
    throw InvalidArgument("no element of order " + std::to_string(k) + " in " + descriptor() +
                          ": orders are 1, p = " + std::to_string(field_.p()) + ", or divisors of (q-1)/d = " +
                          std::to_string(split_order()) + " or (q+1)/d = " + std::to_string(nonsplit_order()));
  if (k == 1) return project(sl_identity());
  if (k == field_.p()) return project(Mat2{field_.one(), field_.one(), field_.zero(), field_.one()});
  if (split_order() % k == 0) {
    // diag(mu, mu^-1) has projective order ord(mu^d).
    const FieldElement mu = field_.pow(field_.primitive_element(), (q() - 1) / (d_ * k));
    return project(Mat2{mu, field_.zero(), field_.zero(), field_.inv(mu)});
  }
  const auto traces = traces_of_order(k);
  if (traces.empty()) throw InternalError("no trace of order " + std::to_string(k) + " in " + descriptor());
  return project(companion(traces.front()));
}

ProjElement Psl2Group::random_uniform(Rng& rng) const {
  std::uniform_int_distribution<u64> dist(0, q() - 1);
  FieldElement a, b;
  do {
    a = FieldElement{dist(rng)};
    b = FieldElement{dist(rng)};
  } while (a.code == 0 && b.code == 0);
  const FieldElement u{dist(rng)};
  const Field& f = field_;
  // Each nonzero first row (a, b) has exactly q completions with ad - bc = 1.
  if (a.code != 0) return project(Mat2{a, b, u, f.div(f.add(f.one(), f.mul(b, u)), a)});
  return project(Mat2{a, b, f.neg(f.inv(b)), u});
}

std::string Psl2Group::format_matrix(const Mat2& m) const {
  return "[[" + field_.format(m.a) + "," + field_.format(m.b) + "],[" + field_.format(m.c) + "," +
         field_.format(m.d) + "]]";
}

Mat2 Psl2Group::parse_matrix(std::string_view text) const {
  std::string cleaned;
  for (char ch : text)
    if (ch != '[' && ch != ']') cleaned += ch;
  std::vector<std::string_view> parts;
  std::string_view rest = cleaned;
  while (true) {
    const auto comma = rest.find(',');
    parts.push_back(rest.substr(0, comma));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (parts.size() != 4 || text.find("[[") == std::string_view::npos)
    throw InvalidArgument("matrix must look like [[a,b],[c,d]]: '" + std::string(text) + "'");
  Mat2 m{field_.parse_element(parts[0]), field_.parse_element(parts[1]), field_.parse_element(parts[2]),
         field_.parse_element(parts[3])};
  if (det(m) != field_.one())
    throw InvalidArgument("matrix " + std::string(text) + " does not have determinant 1 over GF(" +
                          field_.spec().to_string() + ")");
  return m;
}

const ProjElement& Psl2Group::get(const Element& a) const {
  const auto* x = std::get_if<ProjElement>(&a);
  if (!x) throw HandleMismatch("element does not belong to " + descriptor());
  return *x;
}

void Psl2Group::check_member(const Element& a) const {
  const auto& x = get(a);
  for (FieldElement v : {x.m.a, x.m.b, x.m.c, x.m.d})
    if (!field_.contains(v)) throw HandleMismatch("matrix entries outside GF(" + field_.spec().to_string() + ")");
  if (det(x.m) != field_.one() || project(x.m) != x) throw HandleMismatch("not a canonical element of " + descriptor());
}

Element Psl2Group::multiply(const Element& a, const Element& b) const { return mul(get(a), get(b)); }
Element Psl2Group::inverse(const Element& a) const { return inv(get(a)); }
Element Psl2Group::power(const Element& a, u64 k) const { return pow(get(a), k); }
u64 Psl2Group::element_order(const Element& a) const { return order_of(get(a)); }

bool Psl2Group::generates(const Element& x, const Element& y) const {
  return classify_subgroup(get(x), get(y)).kind == SubgroupClass::Kind::full;
}

std::string Psl2Group::describe_generated(const Element& x, const Element& y) const {
  return classify_subgroup(get(x), get(y)).to_string();
}

Fingerprint Psl2Group::fingerprint(const Element& a) const { return class_fingerprint(get(a)); }

std::string Psl2Group::describe_class(const Fingerprint& f) const {
  if (f.key.size() == 1 && f.key[0] == 0) return "identity";
  if (f.key.size() == 2 && f.key[0] == 1) return "trace +-" + field_.format(FieldElement{static_cast<u64>(f.key[1])});
  if (f.key.size() == 2 && f.key[0] == 2) return f.key[1] ? "unipotent (square)" : "unipotent (non-square)";
  return f.to_string();
}

void Psl2Group::for_each_element(const std::function<void(const Element&)>& visit) const {
  const Field& f = field_;
  for (u64 ac = 0; ac < q(); ++ac) {
    for (u64 bc = 0; bc < q(); ++bc) {
      if (ac == 0 && bc == 0) continue;
      const FieldElement a{ac}, b{bc};
      for (u64 uc = 0; uc < q(); ++uc) {
        const FieldElement u{uc};
        const Mat2 m = ac != 0 ? Mat2{a, b, u, f.div(f.add(f.one(), f.mul(b, u)), a)}
                               : Mat2{a, b, f.neg(f.inv(b)), u};
        const ProjElement x = project(m);
        if (x.m == m) visit(x);
      }
    }
  }
}

std::string Psl2Group::format(const Element& a) const { return format_matrix(get(a).m); }

Element Psl2Group::parse_element(std::string_view text) const { return project(parse_matrix(text)); }

}  // namespace beauville
