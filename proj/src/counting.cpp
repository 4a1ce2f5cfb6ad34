#include "beauville/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "beauville/errors.hpp"
#include "json.hpp"

namespace beauville {

using cd = std::complex<double>;

ClassPartition::ClassPartition(Group group, std::vector<ClassData> classes, std::vector<std::vector<Element>> members)
    : group_(std::move(group)), classes_(std::move(classes)), members_(std::move(members)) {
  for (std::size_t i = 0; i < classes_.size(); ++i) index_.emplace(classes_[i].fingerprint, i);
}

std::optional<std::size_t> ClassPartition::find(const Fingerprint& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ClassPartition::index_of(const Element& x) const {
  auto i = find(group_.fingerprint(x));
  if (!i) throw InternalError("element has an unknown class fingerprint");
  return *i;
}

std::size_t ClassPartition::inverse_class(std::size_t i) const {
  return index_of(group_.inverse(classes_[i].representative));
}

ClassPartition conjugacy_classes(const Group& g, u64 cap) {
  std::map<Fingerprint, std::size_t> slot;
  std::vector<ClassData> classes;
  std::vector<std::vector<Element>> members;
  g.enumerate(cap, [&](const Element& x) {
    Fingerprint f = g.fingerprint(x);
    auto [it, inserted] = slot.try_emplace(f, classes.size());
    if (inserted) {
      classes.push_back(ClassData{std::move(f), 0, x, g.element_order(x)});
      members.emplace_back();
    }
    ++classes[it->second].size;
    members[it->second].push_back(x);
  });
  std::vector<std::size_t> order(classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = classes[a];
    const auto& y = classes[b];
    if (x.element_order != y.element_order) return x.element_order < y.element_order;
    if (x.size != y.size) return x.size < y.size;
    return x.fingerprint < y.fingerprint;
  });
  std::vector<ClassData> sorted;
  std::vector<std::vector<Element>> sorted_members;
  for (std::size_t i : order) {
    sorted.push_back(std::move(classes[i]));
    sorted_members.push_back(std::move(members[i]));
  }
  return ClassPartition(g, std::move(sorted), std::move(sorted_members));
}

u64 frobenius_count_brute(const ClassPartition& classes, std::size_t x, std::size_t y, std::size_t z) {
  const Group& g = classes.group();
  const Element& rep = classes[x].representative;
  u64 count = 0;
  for (const Element& b : classes.members(y))
    if (classes.index_of(g.inverse(g.multiply(rep, b))) == z) ++count;
  return count * classes[x].size;
}

u64 CharacterTable::group_order() const {
  u64 n = 0;
  for (u64 s : class_sizes) n += s;
  return n;
}

std::vector<u64> CharacterTable::degrees() const {
  std::vector<u64> out;
  for (const auto& row : values) out.push_back(static_cast<u64>(std::llround(row[0].real())));
  return out;
}

double CharacterTable::orthogonality_defect() const {
  const std::size_t r = values.size();
  const double n = static_cast<double>(group_order());
  double worst = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      cd row{0, 0};
      for (std::size_t k = 0; k < r; ++k)
        row += static_cast<double>(class_sizes[k]) * values[i][k] * std::conj(values[j][k]);
      worst = std::max(worst, std::abs(row / n - (i == j ? 1.0 : 0.0)));
      cd col{0, 0};
      for (std::size_t c = 0; c < r; ++c) col += values[c][i] * std::conj(values[c][j]);
      // Column relation: sum_chi chi(g_i) conj(chi(g_j)) = |C_G(g_i)| delta_ij.
      const double expect = i == j ? n / static_cast<double>(class_sizes[i]) : 0.0;
      worst = std::max(worst, std::abs(col - expect) / (n / static_cast<double>(class_sizes[i])));
    }
  double sq = 0;
  for (const auto& row : values) sq += std::norm(row[0]);
  worst = std::max(worst, std::abs(sq - n) / n);
  return worst;
}

std::string CharacterTable::serialize() const {
  nlohmann::ordered_json doc;
  doc["format"] = "beauville-character-table";
  doc["version"] = 1;
  doc["group"] = group;
  doc["tolerance"] = tolerance;
  auto& cls = doc["classes"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < fingerprints.size(); ++i)
    cls.push_back({{"fingerprint", fingerprints[i].to_string()}, {"size", class_sizes[i]}, {"order", class_orders[i]}});
  auto& vals = doc["values"] = nlohmann::ordered_json::array();
  for (const auto& row : values) {
    auto jr = nlohmann::ordered_json::array();
    for (const cd& v : row) jr.push_back({v.real(), v.imag()});
    vals.push_back(std::move(jr));
  }
  return doc.dump(1) + "\n";
}

CharacterTable CharacterTable::parse(std::string_view text) {
  CharacterTable t;
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("format") != "beauville-character-table") throw InvalidArgument("not a character table document");
    t.group = doc.at("group").get<std::string>();
    t.tolerance = doc.at("tolerance").get<double>();
    for (const auto& c : doc.at("classes")) {
      t.fingerprints.push_back(Fingerprint::parse(c.at("fingerprint").get<std::string>()));
      t.class_sizes.push_back(c.at("size").get<u64>());
      t.class_orders.push_back(c.at("order").get<u64>());
    }
    for (const auto& row : doc.at("values")) {
      std::vector<cd> r;
      for (const auto& v : row) r.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
      if (r.size() != t.fingerprints.size()) throw InvalidArgument("character table row has wrong length");
      t.values.push_back(std::move(r));
    }
    if (t.values.size() != t.fingerprints.size()) throw InvalidArgument("character table is not square");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed character table: ") + e.what());
  }
  return t;
}

CharacterTable character_table_small(const ClassPartition& classes, u64 cap, u64 seed) {
  const Group& g = classes.group();
  const std::size_t r = classes.size();
  u64 n = 0;
  for (const auto& c : classes.classes()) n += c.size;
  if (n > cap)
    throw CapExceeded("character table of " + g.descriptor() + " (order " + std::to_string(n) +
                      ") exceeds the cap of " + std::to_string(cap) + " elements");
  if (r > 60) throw CapExceeded(g.descriptor() + " has " + std::to_string(r) + " classes, above the limit of 60");

  // a[i](j, k) = #{(x, y) in C_i x C_j : xy = g_k} for the representative g_k.
  std::vector<Eigen::MatrixXd> a(r, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)));
  for (std::size_t k = 0; k < r; ++k) {
    const Element& gk = classes[k].representative;
    for (std::size_t i = 0; i < r; ++i)
      for (const Element& x : classes.members(i)) {
        const std::size_t j = classes.index_of(g.multiply(g.inverse(x), gk));
        a[i](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) += 1.0;
      }
  }

  // Central characters w_k = |C_k| chi(g_k) / chi(1) are common right
  // eigenvectors of every a[i], with eigenvalue w_i.
  Rng rng = stream_rng(seed, 0);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Eigen::MatrixXcd vectors;
  bool separated = false;
  for (int attempt = 0; attempt < 50 && !separated; ++attempt) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
    for (std::size_t i = 0; i < r; ++i) m += coef(rng) * a[i] / static_cast<double>(classes[i].size);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) continue;
    const Eigen::VectorXcd lambda = solver.eigenvalues();
    double gap = 1e300;
    for (Eigen::Index x = 0; x < lambda.size(); ++x)
      for (Eigen::Index y = x + 1; y < lambda.size(); ++y) gap = std::min(gap, std::abs(lambda[x] - lambda[y]));
    if (gap < 1e-4) continue;
    separated = true;
    vectors = solver.eigenvectors();
    // One step of inverse iteration per eigenvector sharpens it to working precision.
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
      Eigen::MatrixXcd shifted = m.cast<cd>();
      shifted.diagonal().array() -= lambda[c] + cd(1e-12, 0);
      Eigen::VectorXcd v = shifted.fullPivLu().solve(vectors.col(c));
      if (v.allFinite() && v.norm() > 0) vectors.col(c) = v / v.norm();
    }
  }
  if (!separated) throw InternalError("class algebra eigenvalues did not separate for " + g.descriptor());

  CharacterTable t;
  t.group = g.descriptor();
  for (const auto& c : classes.classes()) {
    t.fingerprints.push_back(c.fingerprint);
    t.class_sizes.push_back(c.size);
    t.class_orders.push_back(c.element_order);
  }
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::VectorXcd w = vectors.col(c) / vectors(0, c);
    double s = 0;
    for (std::size_t k = 0; k < r; ++k) s += std::norm(w[static_cast<Eigen::Index>(k)]) / static_cast<double>(classes[k].size);
    const double deg_raw = std::sqrt(static_cast<double>(n) / s);
    const double deg = std::round(deg_raw);
    if (std::abs(deg - deg_raw) > 1e-6) throw InternalError("non-integral character degree " + std::to_string(deg_raw));
    std::vector<cd> row(r);
    for (std::size_t k = 0; k < r; ++k) {
      cd v = w[static_cast<Eigen::Index>(k)] * deg / static_cast<double>(classes[k].size);
      if (std::abs(v.imag()) < 1e-12) v.imag(0.0);
      if (std::abs(v.real()) < 1e-12) v.real(0.0);
      row[k] = v;
    }
    row[0] = cd(deg, 0.0);
    t.values.push_back(std::move(row));
  }
  auto key = [](const std::vector<cd>& row) {
    std::vector<std::pair<long long, long long>> k;
    for (const cd& v : row) k.emplace_back(std::llround(v.real() * 1e6), std::llround(v.imag() * 1e6));
    return k;
  };
  std::sort(t.values.begin(), t.values.end(), [&](const auto& x, const auto& y) {
    const bool tx = std::all_of(x.begin(), x.end(), [](const cd& v) { return std::abs(v - cd(1, 0)) < 1e-6; });
    const bool ty = std::all_of(y.begin(), y.end(), [](const cd& v) { return std::abs(v - cd(1, 0)) < 1e-6; });
    if (tx != ty) return tx;
    if (std::llround(x[0].real()) != std::llround(y[0].real())) return x[0].real() < y[0].real();
    return key(x) < key(y);
  });
  const double defect = t.orthogonality_defect();
  if (defect > t.tolerance)
    throw InternalError("character table of " + g.descriptor() + " fails orthogonality (defect " +
                        std::to_string(defect) + ")");
  return t;
}

double frobenius_main_term(const CharacterTable& table, std::size_t x, std::size_t y, std::size_t z) {
  return static_cast<double>(table.class_sizes[x]) * static_cast<double>(table.class_sizes[y]) *
         static_cast<double>(table.class_sizes[z]) / static_cast<double>(table.group_order());
}

u64 frobenius_count_char(const CharacterTable& table, std::size_t x, std::size_t y, std::size_t z, double* raw) {
  const std::size_t r = table.size();
  if (x >= r || y >= r || z >= r) throw InvalidArgument("class index out of range");
  cd sum{0, 0};
  for (const auto& row : table.values) sum += row[x] * row[y] * row[z] / row[0];
  const cd value = frobenius_main_term(table, x, y, z) * sum;
  if (raw) *raw = value.real();
  const double nearest = std::round(value.real());
  if (std::abs(value.real() - nearest) > 1e-6 || std::abs(value.imag()) > 1e-6 || nearest < 0)
    throw Error("character sum " + std::to_string(value.real()) + " is not a non-negative integer; table invalid");
  return static_cast<u64>(nearest);
}

double witten_zeta(const std::vector<u64>& degrees, double s) {
  if (!(s > 0)) throw InvalidArgument("zeta requires s > 0");
  double sum = 0;
  for (u64 d : degrees) sum += std::pow(static_cast<double>(d), -s);
  return sum;
}

CharacterTable cached_character_table(const ClassPartition& classes, u64 cap, u64 seed) {
  const char* dir = std::getenv("BEAUVILLE_CACHE_DIR");
  if (!dir || !*dir) return character_table_small(classes, cap, seed);
  std::string name = classes.group().descriptor();
  for (char& c : name)
    if (c == ':' || c == '^') c = '_';
  const std::filesystem::path path = std::filesystem::path(dir) / (name + ".json");
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CharacterTable t = CharacterTable::parse(buf.str());
    bool match = t.group == classes.group().descriptor() && t.fingerprints.size() == classes.size();
    for (std::size_t i = 0; match && i < classes.size(); ++i) match = t.fingerprints[i] == classes[i].fingerprint;
    if (match) return t;
  }
  CharacterTable t = character_table_small(classes, cap, seed);
  std::filesystem::create_directories(dir);
  std::ofstream(path) << t.serialize();
  return t;
}

}  // namespace beauville
