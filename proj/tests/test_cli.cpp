#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "beauville/cli.hpp"
#include "json.hpp"

using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "beauville");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = beauville::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("verify exit codes and report") {
  const Run ok = run({"verify", "--group", "ab:5", "--quad", "(0,1);(1,0);(1,2);(1,4)"});
  CHECK(ok.code == 0);
  const json d = ok.doc();
  CHECK(d["result"]["cond_i"] == true);
  CHECK(d["result"]["cond_ii"] == json::array({true, true}));
  CHECK(d["result"]["cond_iii"] == true);
  CHECK(d["exit_code"] == 0);
  CHECK(d.contains("timing"));

  const Run bad = run({"verify", "--group", "ab:5", "--quad", "(0,1);(0,2);(1,2);(1,4)"});
  CHECK(bad.code == 1);
  CHECK(bad.doc()["result"]["overall"] == false);
}

TEST_CASE("search, hurwitz and triangle exit codes") {
  const Run a5 = run({"search", "--group", "alt:5", "--strategy", "exhaustive", "--no-timing"});
  CHECK(a5.code == 1);
  CHECK(a5.doc()["result"]["status"] == "nonexistent");

  CHECK(run({"hurwitz", "--p", "5", "--e", "1"}).code == 1);
  const Run h7 = run({"hurwitz", "--p", "7", "--e", "1"});
  CHECK(h7.code == 0);
  CHECK(h7.doc()["result"]["hurwitz"] == true);

  const Run tri = run({"triangle", "--r", "2", "--s", "3", "--t", "7"});
  CHECK(tri.code == 0);
  CHECK(tri.doc()["result"]["geometry"] == "hyperbolic");
  CHECK(tri.doc()["result"]["measure"] == "1/42");
}

TEST_CASE("usage and cap errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"verify", "--group", "ab:5"}).code == 2);
  const Run unknown = run({"classes", "--group", "foo:3"});
  CHECK(unknown.code == 2);
  CHECK(unknown.doc()["error"]["kind"] == "usage");
  CHECK(unknown.err.find("error:") == 0);
  CHECK(run({"verify", "--group", "alt:5", "--quad", "(1 2);(1 2 3);(1 2 3);(1 2 3)"}).code == 2);
  CHECK(run({"search", "--group", "alt:5", "--type1", "2,3,5", "--type2", "2,3,5"}).code == 2);
  CHECK(run({"classify", "--group", "alt:5", "--traces", "1,1,1"}).code == 2);
  const Run cap = run({"classes", "--group", "alt:100"});
  CHECK(cap.code == 3);
  CHECK(cap.doc()["error"]["kind"] == "cap_exceeded");
  CHECK(run({"search", "--group", "psl2:7", "--cap-enum", "100"}).code == 3);
  CHECK(run({"chartable", "--group", "psl2:29", "--cap-table", "1000"}).code == 3);
}

TEST_CASE("config echoes defaults") {
  const json d = run({"estimate", "--group", "psl2:7", "--samples", "50", "--no-timing"}).doc();
  const json& cfg = d["config"];
  CHECK(cfg["seed"] == 1729);
  CHECK(cfg["workers"] == 1);
  CHECK(cfg["samples"] == 50);
  CHECK(cfg["cap_enum"] == 1000000);
  CHECK(cfg["cap_search"] == 1000000000);
  CHECK(cfg["cap_table"] == 10000);
  CHECK(cfg["format"] == "json");
  CHECK(cfg["group"] == "psl2:7");
  CHECK_FALSE(d.contains("timing"));
}

TEST_CASE("printed elements re-parse through verify") {
  for (std::string g : {"ab:7", "alt:6", "psl2:8", "psl2:13", "psl2:25"}) {
    std::vector<std::string> args{"search", "--group", g, "--no-timing"};
    if (g.rfind("psl2", 0) == 0) args.insert(args.end(), {"--strategy", "macbeath"});
    const Run s = run(args);
    CAPTURE(g);
    REQUIRE(s.code == 0);
    const std::string quad = s.doc()["result"]["quad"];
    const Run v = run({"verify", "--group", g, "--quad", quad, "--no-timing"});
    CHECK(v.code == 0);
    CHECK(v.doc()["result"]["quad"] == quad);
  }
  const Run t = run({"triple", "--group", "psl2:7", "--r", "2", "--s", "3", "--t", "7"});
  REQUIRE(t.code == 0);
  const std::string pair = t.doc()["result"]["pair"];
  const Run c = run({"classify", "--group", "psl2:7", "--pair", pair});
  CHECK(c.code == 0);
  CHECK(c.doc()["result"]["generates"] == true);
  CHECK(c.doc()["result"]["orders"] == json::array({2, 3, 7}));

  const Run tr = run({"classify", "--group", "psl2:49", "--traces", "3,4,2"});
  REQUIRE(tr.code == 0);
  CHECK(tr.doc()["result"]["subgroup"] == "PSL2(p^1)");
  const std::string back = tr.doc()["result"]["pair"];
  CHECK(run({"classify", "--group", "psl2:49", "--pair", back}).doc()["result"]["subgroup"] == "PSL2(p^1)");

  const Run classes = run({"classes", "--group", "alt:5"});
  for (const auto& cl : classes.doc()["result"]["classes"]) {
    const std::string rep = cl["representative"];
    CHECK(run({"classify", "--group", "alt:5", "--pair", rep + ";" + rep}).code == 0);
  }
}

TEST_CASE("identical invocations give identical json") {
  const std::vector<std::vector<std::string>> cases{
      {"estimate", "--group", "psl2:13", "--samples", "500", "--components", "--no-timing"},
      {"stats", "--group", "psl2:101", "--samples", "2000", "--no-timing", "--workers", "2"},
      {"search", "--group", "alt:8", "--strategy", "random", "--no-timing"},
      {"triple", "--group", "alt:10", "--r", "3", "--s", "4", "--t", "5", "--no-timing"},
      {"chartable", "--group", "psl2:8", "--no-timing"},
  };
  for (const auto& args : cases) {
    const Run a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  auto with_workers = [](std::string w) {
    return run({"estimate", "--group", "psl2:11", "--samples", "800", "--workers", w, "--no-timing"}).doc()["result"];
  };
  CHECK(with_workers("1") == with_workers("3"));
}

TEST_CASE("output formats and files") {
  const Run tsv = run({"hurwitz", "--p", "7", "--e", "1", "--format", "tsv", "--no-timing"});
  std::istringstream lines(tsv.out);
  std::string header, values, extra;
  std::getline(lines, header);
  std::getline(lines, values);
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(header.find("result.hurwitz") != std::string::npos);
  CHECK(std::count(header.begin(), header.end(), '\t') == std::count(values.begin(), values.end(), '\t'));
  const Run text = run({"hurwitz", "--p", "7", "--e", "1", "--format", "text", "--no-timing"});
  CHECK(text.out.find("result.hurwitz: true") != std::string::npos);
  CHECK(run({"hurwitz", "--p", "7", "--e", "1", "--format", "xml"}).code == 2);

  const auto dir = std::filesystem::temp_directory_path() / "beauville_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string log = (dir / "runs.jsonl").string();
  run({"hurwitz", "--p", "7", "--e", "1", "--out", log});
  run({"triangle", "--r", "2", "--s", "3", "--t", "6", "--out", log});
  std::istringstream records(read_file(log));
  std::string first, second;
  std::getline(records, first);
  std::getline(records, second);
  CHECK(json::parse(first)["command"] == "hurwitz");
  CHECK(json::parse(second)["command"] == "triangle");
  CHECK_FALSE(std::getline(records, extra));

  const std::string plain = (dir / "out.json").string();
  run({"triangle", "--r", "2", "--s", "3", "--t", "6", "--out", plain, "--no-timing"});
  const Run last = run({"hurwitz", "--p", "7", "--e", "1", "--out", plain, "--no-timing"});
  CHECK(read_file(plain) == last.out);

  const std::string table = (dir / "a5.json").string();
  CHECK(run({"chartable", "--group", "alt:5", "--export", table}).code == 0);
  CHECK(json::parse(read_file(table))["group"] == "alt:5");
  std::filesystem::remove_all(dir);
}

TEST_CASE("counting subcommands") {
  const json classes = run({"classes", "--group", "alt:5"}).doc()["result"];
  CHECK(classes["classes"].size() == 5);
  const Run brute = run({"frobenius", "--group", "alt:5", "--x", "2", "--y", "2", "--z", "2"});
  const Run chars =
      run({"frobenius", "--group", "alt:5", "--x", "2", "--y", "2", "--z", "2", "--method", "character"});
  CHECK(brute.doc()["result"]["count"] == 140);
  CHECK(chars.doc()["result"]["count"] == 140);
  CHECK(run({"frobenius", "--group", "alt:5", "--x", "9", "--y", "0", "--z", "0"}).code == 2);
  const json zeta = run({"zeta", "--degrees", "1,3,3,4,5"}).doc()["result"];
  CHECK(zeta["zeta"].get<double>() == doctest::Approx(1.3247).epsilon(1e-4));
  const json zg = run({"zeta", "--group", "psl2:7", "--s", "2"}).doc()["result"];
  CHECK(zg["zeta"].get<double>() > 1);
  CHECK(run({"exact", "--group", "ab:5"}).doc()["result"]["probability"] == "2304/78125");
}
