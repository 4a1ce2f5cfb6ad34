#include "beauville/cli.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "beauville/abelian.hpp"
#include "beauville/beauville.hpp"
#include "beauville/counting.hpp"
#include "beauville/errors.hpp"
#include "beauville/perm.hpp"
#include "beauville/probability.hpp"
#include "beauville/psl2.hpp"
#include "beauville/triangle.hpp"
#include "json.hpp"

namespace beauville {

namespace {

using json = nlohmann::ordered_json;

constexpr u64 kDefaultSeed = 1729;

struct Common {
  std::string format = "json";
  std::string out_path;
  bool no_timing = false;
  u64 seed = kDefaultSeed;
  unsigned workers = 1;
  u64 cap_enum = 1'000'000;
  u64 cap_search = 1'000'000'000;
  u64 cap_table = 10'000;
};

struct Outcome {
  json result;
  int code = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "tsv", "text"}));
  sub->add_option("--out", c.out_path, "Also write the output here; a .jsonl path appends one record");
  sub->add_flag("--no-timing", c.no_timing, "Omit elapsed times");
  sub->add_option("--seed", c.seed, "Master seed");
  sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  sub->add_option("--cap-enum", c.cap_enum, "Largest group enumerated element by element");
  sub->add_option("--cap-search", c.cap_search, "Largest number of pair checks in a search");
  sub->add_option("--cap-table", c.cap_table, "Largest group for character tables");
}

json common_config(const Common& c) {
  return json{{"seed", c.seed},         {"workers", c.workers},       {"cap_enum", c.cap_enum},
              {"cap_search", c.cap_search}, {"cap_table", c.cap_table}, {"format", c.format}};
}

json type_json(const Type& t) { return json::array({t[0], t[1], t[2]}); }

json report_json(const Group& g, const BeauvilleQuadruple& q, const VerificationReport& r) {
  json doc;
  doc["overall"] = r.overall();
  doc["cond_i"] = r.cond_i;
  doc["cond_ii"] = json::array({r.cond_ii[0], r.cond_ii[1]});
  doc["cond_iii"] = r.cond_iii;
  doc["coprime_fast_path"] = r.coprime_fast_path;
  doc["generated"] = json::array({r.generated[0], r.generated[1]});
  doc["types"] = json::array({type_json(r.types[0]), type_json(r.types[1])});
  doc["hyperbolic"] = json::array({r.hyperbolic[0], r.hyperbolic[1]});
  doc["common_class"] = r.common_class ? json(r.common_class->to_string()) : json(nullptr);
  doc["common_class_text"] = r.common_class ? json(r.common_class_text) : json(nullptr);
  doc["quad"] = q.to_string(g);
  doc["z1"] = g.format(g.inverse(g.multiply(q.x1, q.y1)));
  doc["z2"] = g.format(g.inverse(g.multiply(q.x2, q.y2)));
  return doc;
}

json fraction_json(const Fraction& f) {
  const Interval iv = f.interval();
  return json{{"value", f.value()}, {"hits", f.hits}, {"total", f.total}, {"wilson95", json::array({iv.lo, iv.hi})}};
}

json stats_json(const Group& g, const ComponentStats& s) {
  json doc;
  if (g.as_psl2()) {
    doc["split"] = fraction_json(s.split);
    doc["nonsplit"] = fraction_json(s.nonsplit);
    doc["unipotent"] = fraction_json(s.unipotent);
    doc["triple_split"] = fraction_json(s.triple_split);
  }
  doc["generating"] = fraction_json(s.generating);
  if (s.even_order.total) doc["even_order"] = fraction_json(s.even_order);
  if (s.order_div3.total) doc["order_div3"] = fraction_json(s.order_div3);
  if (s.involution_overlap.total) doc["involution_overlap"] = fraction_json(s.involution_overlap);
  return doc;
}

std::pair<Element, Element> parse_pair(const Group& g, const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos || text.find(';', semi + 1) != std::string::npos)
    throw InvalidArgument("pair must look like x;y");
  return {g.parse_element(text.substr(0, semi)), g.parse_element(text.substr(semi + 1))};
}

TraceTriple parse_traces(const Field& f, const std::string& text) {
  std::vector<FieldElement> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(f.parse_element(part));
  if (v.size() != 3) throw InvalidArgument("traces must look like alpha,beta,gamma");
  return TraceTriple{v[0], v[1], v[2]};
}

std::vector<u64> parse_degrees(const std::string& text) {
  std::vector<u64> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(part, &used);
      if (used != part.size() || v == 0) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InvalidArgument("degrees must be positive integers separated by commas");
    }
  }
  if (out.empty()) throw InvalidArgument("no degrees given");
  return out;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string render(const json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  std::string s;
  if (format == "tsv") {
    for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? "\t" : "") + rows[i].first;
    s += "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? "\t" : "") + rows[i].second;
    return s + "\n";
  }
  for (const auto& [k, v] : rows) s += k + ": " + v + "\n";
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unmixed Beauville structures in PSL2(q), alternating, symmetric and abelian groups", "beauville"};
  app.require_subcommand(1);
  Common c;

  std::string group, quad, pair, traces, strategy = "exhaustive", type1, type2, method = "brute", degrees, export_path;
  u64 r = 0, s = 0, t = 0, p = 0, samples = 0, attempts = 0;
  unsigned e = 1;
  double zeta_s = 2.0;
  bool components = false;
  std::optional<std::size_t> cx, cy, cz;

  auto* verify_cmd = app.add_subcommand("verify", "Check the three conditions for a quadruple");
  verify_cmd->add_option("--group", group, "psl2:p^e, alt:n, sym:n or ab:n")->required();
  verify_cmd->add_option("--quad", quad, "x1;y1;x2;y2")->required();

  auto* search_cmd = app.add_subcommand("search", "Search for a structure");
  search_cmd->add_option("--group", group)->required();
  search_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"exhaustive", "macbeath", "random"}));
  search_cmd->add_option("--type1", type1, "r,s,t");
  search_cmd->add_option("--type2", type2, "r,s,t");
  search_cmd->add_option("--attempts", attempts, "Quadruples drawn by the random strategy");

  auto* triple_cmd = app.add_subcommand("triple", "Find a generating triple of given orders");
  triple_cmd->add_option("--group", group)->required();
  triple_cmd->add_option("--r", r)->required();
  triple_cmd->add_option("--s", s)->required();
  triple_cmd->add_option("--t", t)->required();
  triple_cmd->add_option("--attempts", attempts, "Random attempts for large permutation groups");

  auto* classify_cmd = app.add_subcommand("classify", "Describe the subgroup generated by a pair");
  classify_cmd->add_option("--group", group)->required();
  auto* pair_opt = classify_cmd->add_option("--pair", pair, "x;y");
  classify_cmd->add_option("--traces", traces, "alpha,beta,gamma (psl2 only)")->excludes(pair_opt);

  auto* estimate_cmd = app.add_subcommand("estimate", "Monte Carlo estimate of P(G)");
  estimate_cmd->add_option("--group", group)->required();
  estimate_cmd->add_option("--samples", samples, "Sampled quadruples (default 20000)");
  estimate_cmd->add_flag("--components", components, "Also report component statistics");

  auto* stats_cmd = app.add_subcommand("stats", "Split, generation and order statistics of random pairs");
  stats_cmd->add_option("--group", group)->required();
  stats_cmd->add_option("--samples", samples, "Sampled pairs (default 100000)");

  auto* exact_cmd = app.add_subcommand("exact", "Exact P(G) by exhaustive census");
  exact_cmd->add_option("--group", group)->required();

  auto* classes_cmd = app.add_subcommand("classes", "List conjugacy classes");
  classes_cmd->add_option("--group", group)->required();

  auto* frob_cmd = app.add_subcommand("frobenius", "Count solutions of xyz = 1 in three classes");
  frob_cmd->add_option("--group", group)->required();
  frob_cmd->add_option("--method", method)->check(CLI::IsMember({"brute", "character"}));
  frob_cmd->add_option("--x", cx, "Class index as listed by `classes`")->required();
  frob_cmd->add_option("--y", cy)->required();
  frob_cmd->add_option("--z", cz)->required();

  auto* table_cmd = app.add_subcommand("chartable", "Compute a character table");
  table_cmd->add_option("--group", group)->required();
  table_cmd->add_option("--export", export_path, "Write the table document to this file");

  auto* zeta_cmd = app.add_subcommand("zeta", "Witten zeta function");
  auto* zeta_group = zeta_cmd->add_option("--group", group);
  zeta_cmd->add_option("--degrees", degrees, "Character degrees, comma separated")->excludes(zeta_group);
  zeta_cmd->add_option("--s", zeta_s, "Exponent (default 2)");

  auto* hurwitz_cmd = app.add_subcommand("hurwitz", "Hurwitz residue criterion for PSL2(p^e)");
  hurwitz_cmd->add_option("--p", p)->required();
  hurwitz_cmd->add_option("--e", e)->required();

  auto* triangle_cmd = app.add_subcommand("triangle", "Classify a triangle type");
  triangle_cmd->add_option("--r", r)->required();
  triangle_cmd->add_option("--s", s)->required();
  triangle_cmd->add_option("--t", t)->required();

  for (CLI::App* sub : app.get_subcommands({})) add_common(sub, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& ex) {
    const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
    if (sub && ex.get_name() == "CallForHelp") {
      out << sub->help();
      return 0;
    }
    err << "error: " << ex.what() << "\n";
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  json doc;
  doc["command"] = command;
  json config = common_config(c);
  const auto start = std::chrono::steady_clock::now();
  int code = 0;

  auto emit = [&](json& d) {
    if (!c.no_timing)
      d["timing"] = json{{"elapsed_seconds",
                          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    const std::string text = render(d, c.format);
    out << text;
    if (!c.out_path.empty()) {
      const bool jsonl = c.out_path.size() >= 6 && c.out_path.substr(c.out_path.size() - 6) == ".jsonl";
      std::ofstream f(c.out_path, jsonl ? std::ios::app : std::ios::trunc);
      if (!f) {
        err << "error: cannot write " << c.out_path << "\n";
        return;
      }
      f << (jsonl ? d.dump() + "\n" : text);
    }
  };

  try {
    json result;
    auto make_group = [&] {
      Group g = Group::parse(group);
      config["group"] = g.descriptor();
      return g;
    };

    if (command == "verify") {
      const Group g = make_group();
      config["quad"] = quad;
      const BeauvilleQuadruple q = BeauvilleQuadruple::parse(g, quad);
      const VerificationReport rep = verify(g, q);
      result = report_json(g, q, rep);
      code = rep.overall() ? 0 : 1;
    } else if (command == "search") {
      const Group g = make_group();
      SearchOptions o;
      o.strategy = parse_strategy(strategy);
      if (!type1.empty()) o.type1 = parse_type(type1);
      if (!type2.empty()) o.type2 = parse_type(type2);
      o.seed = c.seed;
      o.cap_enum = c.cap_enum;
      o.cap_search = c.cap_search;
      if (attempts) o.random_attempts = attempts;
      config["strategy"] = strategy;
      config["type1"] = o.type1 ? type_json(*o.type1) : json(nullptr);
      config["type2"] = o.type2 ? type_json(*o.type2) : json(nullptr);
      config["attempts"] = o.random_attempts;
      const SearchResult res = search_structure(g, o);
      result["status"] = to_string(res.status);
      result["iterations"] = res.iterations;
      result["note"] = res.note;
      result["quad"] = res.quad ? json(res.quad->to_string(g)) : json(nullptr);
      result["report"] = res.report ? report_json(g, *res.quad, *res.report) : json(nullptr);
      code = res.status == SearchStatus::found ? 0 : 1;
    } else if (command == "triple") {
      const Group g = make_group();
      TripleOptions o;
      o.seed = c.seed;
      o.cap_enum = c.cap_enum;
      if (attempts) o.random_attempts = attempts;
      config["r"] = r;
      config["s"] = s;
      config["t"] = t;
      config["attempts"] = o.random_attempts;
      const TripleResult res = find_generating_triple(g, r, s, t, o);
      result["status"] = to_string(res.status);
      result["unrealizable"] = res.unrealizable;
      result["note"] = res.note;
      if (res.triple) {
        result["x"] = g.format(res.triple->x);
        result["y"] = g.format(res.triple->y);
        result["z"] = g.format(res.triple->z);
        result["pair"] = g.format(res.triple->x) + ";" + g.format(res.triple->y);
        result["type"] = type_json(res.triple->type);
      }
      code = res.status == SearchStatus::found ? 0 : 1;
    } else if (command == "classify") {
      const Group g = make_group();
      if (pair.empty() == traces.empty()) throw InvalidArgument("classify needs exactly one of --pair or --traces");
      config["pair"] = pair.empty() ? json(nullptr) : json(pair);
      config["traces"] = traces.empty() ? json(nullptr) : json(traces);
      Element x, y;
      if (!pair.empty()) {
        std::tie(x, y) = parse_pair(g, pair);
      } else {
        const auto* G = g.as_psl2();
        if (!G) throw InvalidArgument("--traces needs a psl2 group");
        const TraceTriple tr = parse_traces(G->field(), traces);
        const MacbeathSolution sol = G->macbeath_solve(tr);
        x = G->project(sol.a);
        y = G->project(sol.b);
        result["pair"] = g.format(x) + ";" + g.format(y);
      }
      const Element xy = g.multiply(x, y);
      result["generates"] = g.generates(x, y);
      result["subgroup"] = g.describe_generated(x, y);
      result["orders"] = type_json({g.element_order(x), g.element_order(y), g.element_order(xy)});
      if (const auto* G = g.as_psl2()) {
        const auto& a = std::get<ProjElement>(x);
        const auto& b = std::get<ProjElement>(y);
        const TraceTriple tr = G->trace_triple(a, b);
        const Field& f = G->field();
        result["traces"] = json::array({f.format(tr.alpha), f.format(tr.beta), f.format(tr.gamma)});
        result["singular"] = G->is_singular(tr);
        result["split_types"] = json::array(
            {to_string(G->split_type(a)), to_string(G->split_type(b)), to_string(G->split_type(G->mul(a, b)))});
      }
    } else if (command == "estimate") {
      const Group g = make_group();
      EstimationConfig cfg{g, samples ? samples : 20000, c.seed, c.workers, components};
      config["samples"] = cfg.samples;
      config["components"] = components;
      const EstimateResult res = estimate_beauville_probability(cfg);
      result["estimate"] = fraction_json(res.estimate);
      if (res.components) result["components"] = stats_json(g, *res.components);
    } else if (command == "stats") {
      const Group g = make_group();
      EstimationConfig cfg{g, samples ? samples : 100000, c.seed, c.workers, true};
      config["samples"] = cfg.samples;
      result = stats_json(g, estimate_component_stats(cfg));
    } else if (command == "exact") {
      const Group g = make_group();
      const ExactProbability pr = exact_probability_exhaustive(g, c.cap_enum, c.cap_search);
      result["probability"] = pr.to_string();
      result["value"] = pr.value();
      code = pr.numerator > 0 ? 0 : 1;
    } else if (command == "classes") {
      const Group g = make_group();
      const ClassPartition cl = conjugacy_classes(g, c.cap_enum);
      result["order"] = g.order_string();
      json list = json::array();
      for (std::size_t i = 0; i < cl.size(); ++i)
        list.push_back(json{{"index", i},
                            {"fingerprint", cl[i].fingerprint.to_string()},
                            {"description", g.describe_class(cl[i].fingerprint)},
                            {"size", cl[i].size},
                            {"order", cl[i].element_order},
                            {"representative", g.format(cl[i].representative)}});
      result["classes"] = std::move(list);
    } else if (command == "frobenius") {
      const Group g = make_group();
      config["method"] = method;
      config["x"] = *cx;
      config["y"] = *cy;
      config["z"] = *cz;
      const ClassPartition cl = conjugacy_classes(g, c.cap_enum);
      for (std::size_t i : {*cx, *cy, *cz})
        if (i >= cl.size())
          throw InvalidArgument("class index " + std::to_string(i) + " out of range (" + std::to_string(cl.size()) +
                                " classes)");
      if (method == "brute") {
        result["count"] = frobenius_count_brute(cl, *cx, *cy, *cz);
      } else {
        const CharacterTable tab = cached_character_table(cl, c.cap_table, c.seed);
        double raw = 0;
        result["count"] = frobenius_count_char(tab, *cx, *cy, *cz, &raw);
        result["character_sum"] = raw;
        result["main_term"] = frobenius_main_term(tab, *cx, *cy, *cz);
      }
    } else if (command == "chartable") {
      const Group g = make_group();
      config["export"] = export_path.empty() ? json(nullptr) : json(export_path);
      const ClassPartition cl = conjugacy_classes(g, c.cap_enum);
      const CharacterTable tab = cached_character_table(cl, c.cap_table, c.seed);
      if (!export_path.empty()) {
        std::ofstream f(export_path);
        if (!f) throw InvalidArgument("cannot write " + export_path);
        f << tab.serialize();
      }
      result["degrees"] = tab.degrees();
      result["orthogonality_defect"] = tab.orthogonality_defect();
      result["table"] = json::parse(tab.serialize());
    } else if (command == "zeta") {
      config["s"] = zeta_s;
      std::vector<u64> degs;
      if (!group.empty()) {
        const Group g = make_group();
        degs = cached_character_table(conjugacy_classes(g, c.cap_enum), c.cap_table, c.seed).degrees();
      } else if (!degrees.empty()) {
        degs = parse_degrees(degrees);
      } else {
        throw InvalidArgument("zeta needs --group or --degrees");
      }
      config["degrees"] = degs;
      result["zeta"] = witten_zeta(degs, zeta_s);
    } else if (command == "hurwitz") {
      config["p"] = p;
      config["e"] = e;
      const bool h = hurwitz_psl2(p, e);
      result["hurwitz"] = h;
      result["verdict"] = h ? "Hurwitz" : "not Hurwitz";
      code = h ? 0 : 1;
    } else if (command == "triangle") {
      config["r"] = r;
      config["s"] = s;
      config["t"] = t;
      const TriangleType tt = classify_triangle(r, s, t);
      result["orders"] = type_json(tt.orders);
      result["geometry"] = to_string(tt.geometry);
      result["measure"] = tt.measure_string();
      result["measure_value"] = tt.measure();
    }
    doc["config"] = std::move(config);
    doc["result"] = std::move(result);
    doc["exit_code"] = code;
    emit(doc);
    return code;
  } catch (const Error& ex) {
    int fail = 2;
    std::string kind = "usage";
    if (dynamic_cast<const CapExceeded*>(&ex)) {
      fail = 3;
      kind = "cap_exceeded";
    } else if (dynamic_cast<const InternalError*>(&ex)) {
      fail = 4;
      kind = "internal";
    }
    err << "error: " << ex.what() << "\n";
    doc["config"] = std::move(config);
    doc["error"] = json{{"kind", kind}, {"message", ex.what()}};
    doc["exit_code"] = fail;
    if (c.format == "json") emit(doc);
    return fail;
  }
}

}  // namespace beauville
