#include "beauville/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "beauville/errors.hpp"

namespace beauville {

unsigned CycleShape::degree() const {
  unsigned n = 0;
  for (unsigned l : lengths) n += l;
  return n;
}

unsigned CycleShape::fixed_points() const {
  return static_cast<unsigned>(std::count(lengths.begin(), lengths.end(), 1u));
}

u64 CycleShape::element_order() const {
  u64 order = 1;
  for (unsigned l : lengths) order = lcm(order, l);
  return order;
}

bool CycleShape::is_even() const {
  unsigned even_cycles = 0;
  for (unsigned l : lengths)
    if (l % 2 == 0) ++even_cycles;
  return even_cycles % 2 == 0;
}

bool CycleShape::is_almost_homogeneous() const {
  unsigned m = 0;
  for (unsigned l : lengths) {
    if (l == 1) continue;
    if (m != 0 && l != m) return false;
    m = l;
  }
  return m >= 2;
}

unsigned CycleShape::cycle_length() const {
  for (unsigned l : lengths)
    if (l > 1) return l;
  return 1;
}

unsigned CycleShape::cycle_count() const {
  return static_cast<unsigned>(lengths.size()) - fixed_points();
}

std::string CycleShape::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < lengths.size();) {
    std::size_t j = i;
    while (j < lengths.size() && lengths[j] == lengths[i]) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(lengths[i]) + "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

CycleShape CycleShape::parse(std::string_view text) {
  CycleShape shape;
  std::size_t pos = 0;
  auto number = [&](std::string_view s) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw InvalidArgument("malformed cycle shape: '" + std::string(text) + "'");
    return v;
  };
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view part = text.substr(pos, end - pos);
    const auto caret = part.find('^');
    const unsigned len = number(part.substr(0, caret));
    const unsigned mult = caret == std::string_view::npos ? 1 : number(part.substr(caret + 1));
    if (len == 0) throw InvalidArgument("cycle lengths must be positive");
    shape.lengths.insert(shape.lengths.end(), mult, len);
    pos = end + 1;
  }
  std::sort(shape.lengths.begin(), shape.lengths.end(), std::greater<>());
  return shape;
}

Permutation::Permutation(std::vector<std::uint32_t> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (auto v : img_) {
    if (v >= img_.size() || seen[v]) throw InvalidArgument("image array is not a bijection");
    seen[v] = 1;
  }
  even_ = shape().is_even();
}

Permutation Permutation::identity(unsigned n) {
  std::vector<std::uint32_t> img(n);
  for (unsigned i = 0; i < n; ++i) img[i] = i;
  Permutation p;
  p.img_ = std::move(img);
  return p;
}

Permutation Permutation::from_cycles(unsigned n, const std::vector<std::vector<unsigned>>& cycles) {
  std::vector<std::uint32_t> img(n);
  for (unsigned i = 0; i < n; ++i) img[i] = i;
  std::vector<char> used(n, 0);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const unsigned from = cycle[i];
      if (from >= n) throw InvalidArgument("point " + std::to_string(from + 1) + " exceeds degree " + std::to_string(n));
      if (used[from]) throw InvalidArgument("point " + std::to_string(from + 1) + " appears in two cycles");
      used[from] = 1;
      img[from] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Permutation(std::move(img));
}

Permutation Permutation::parse(unsigned n, std::string_view text) {
  std::vector<std::vector<unsigned>> cycles;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size()) throw InvalidArgument("empty permutation; use () for the identity");
  while (pos < text.size()) {
    if (text[pos] != '(') throw InvalidArgument("malformed cycle notation: '" + std::string(text) + "'");
    ++pos;
    std::vector<unsigned> cycle;
    for (;;) {
      while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
      if (pos >= text.size()) throw InvalidArgument("unterminated cycle in '" + std::string(text) + "'");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      unsigned v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
      if (ec != std::errc{}) throw InvalidArgument("malformed cycle notation: '" + std::string(text) + "'");
      if (v == 0 || v > n)
        throw InvalidArgument("point " + std::to_string(v) + " outside 1.." + std::to_string(n));
      cycle.push_back(v - 1);
      pos = static_cast<std::size_t>(ptr - text.data());
    }
    if (cycle.size() > 1) cycles.push_back(std::move(cycle));
    skip_ws();
  }
  return from_cycles(n, cycles);
}

Permutation Permutation::operator*(const Permutation& other) const {
  if (other.degree() != degree()) throw HandleMismatch("permutations of different degree");
  Permutation out;
  out.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out.img_[i] = other.img_[img_[i]];
  out.even_ = even_ == other.even_;
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out.img_[img_[i]] = static_cast<std::uint32_t>(i);
  out.even_ = even_;
  return out;
}

Permutation Permutation::conjugate_by(const Permutation& g) const { return g.inverse() * *this * g; }

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

std::vector<std::vector<unsigned>> Permutation::cycles() const {
  std::vector<std::vector<unsigned>> out;
  std::vector<char> seen(img_.size(), 0);
  for (unsigned i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    std::vector<unsigned> cycle;
    for (unsigned j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      cycle.push_back(j);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

CycleShape Permutation::shape() const {
  CycleShape s;
  std::vector<char> seen(img_.size(), 0);
  for (unsigned i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    unsigned len = 0;
    for (unsigned j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      ++len;
    }
    s.lengths.push_back(len);
  }
  std::sort(s.lengths.begin(), s.lengths.end(), std::greater<>());
  return s;
}

u64 Permutation::order() const { return shape().element_order(); }

unsigned Permutation::fixed_points() const {
  unsigned f = 0;
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] == i) ++f;
  return f;
}

std::string Permutation::to_string() const {
  const auto cs = cycles();
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& c : cs) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c[i] + 1);
    }
    out += ')';
  }
  return out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto v : p.images()) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace beauville
