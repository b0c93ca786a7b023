#include "latdiv/cli.hpp"
#include "latdiv/document.hpp"

#include <doctest.h>

#include <sstream>

using namespace latdiv;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(LATDIV_FIXTURE_DIR) + "/" + name; }
std::string golden(const std::string& name) { return read_file(std::string(LATDIV_GOLDEN_DIR) + "/" + name); }

}  // namespace

TEST_CASE("golden outputs") {
  struct Case {
    std::vector<std::string> args;
    std::string file;
  };
  const std::vector<Case> cases = {
      {{"gen", "--m3", "--alpha", "1"}, "m3-canonical.json"},
      {{"check", fixture("n5.json")}, "check-n5.txt"},
      {{"tightspan", fixture("m3.json"), "--enumerate"}, "tightspan-m3.txt"},
      {{"tightspan", fixture("n5.json"), "--enumerate"}, "tightspan-n5.txt"},
      {{"tightspan", fixture("n5.json"), "--kappa", "a3"}, "kappa-n5-a3.txt"},
      {{"birkhoff", fixture("divisors-12.json")}, "birkhoff-d12.txt"},
      {{"render", fixture("m3.json")}, "render-m3.dot"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.file);
    const Run r = run(c.args);
    CHECK(r.code == 0);
    CHECK(r.out == golden(c.file));
  }
  const Run bad = run({"check", fixture("bad-chain.json")});
  CHECK(bad.code == 1);
  CHECK(bad.out == golden("check-bad-chain.txt"));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"gen"}).code == 2);
  CHECK(run({"gen", "--m3", "--n5"}).code == 2);
  CHECK(run({"tightspan", fixture("m3.json")}).code == 2);
  CHECK(run({"--threads", "0", "check", fixture("m3.json")}).code == 2);
  CHECK(run({"check", "/nonexistent.json"}).code == 1);
  CHECK(run({"gen", "--m3", "--alpha", "0"}).code == 1);
  CHECK(run({"gen", "--n5", "--alpha", "2", "--beta", "1"}).code == 1);
  CHECK(run({"gen", "--powerset", "3", "--diversity", "height"}).code == 0);
  CHECK(run({"gen", "--powerset", "13"}).code == 2);
  CHECK(run({"tightspan", fixture("m3.json"), "--kappa", "nope"}).code == 1);
  CHECK(run({"tightspan", fixture("divisors-360.json"), "--enumerate"}).code == 1);
  CHECK(run({"birkhoff", fixture("m3.json")}).code == 1);
  CHECK(run({"tightspan", fixture("bad-chain.json"), "--enumerate"}).code == 1);
  CHECK_FALSE(run({"check", "/nonexistent.json"}).err.empty());
}

TEST_CASE("every generator output passes check") {
  const std::vector<std::vector<std::string>> gens = {
      {"--m3", "--alpha", "3/2"},
      {"--n5", "--alpha", "1", "--beta", "3"},
      {"--powerset", "3", "--diversity", "trivial"},
      {"--powerset", "3", "--diversity", "height"},
      {"--powerset", "2", "--diversity", "cardinality"},
      {"--divisors", "36", "--diversity", "omega"},
      {"--divisors", "30", "--diversity", "height"},
      {"--multiset", "x:2,y:1"},
  };
  for (const auto& g : gens) {
    std::vector<std::string> args{"gen"};
    args.insert(args.end(), g.begin(), g.end());
    const Run made = run(args);
    CAPTURE(made.err);
    REQUIRE(made.code == 0);
    const LoadedDocument doc = load_document(made.out);
    REQUIRE(doc.diversity.has_value());
    CHECK(doc.diversity->is_valid());
    CHECK(serialize(doc.doc) == made.out);
  }
}

TEST_CASE("thread count does not change output") {
  for (const char* threads : {"2", "4"}) {
    const Run one = run({"tightspan", fixture("powerset-3.json"), "--enumerate"});
    const Run many = run({"--threads", threads, "tightspan", fixture("powerset-3.json"), "--enumerate"});
    CHECK(one.out == many.out);
  }
}

TEST_CASE("tightspan modes") {
  const Run member = run({"tightspan", fixture("m3.json"), "--member", fixture("../tests/golden/point-m3.json")});
  CHECK(member.code == 0);
  CHECK(member.out.find("in T_L: no") != std::string::npos);
  const Run minimized =
      run({"tightspan", fixture("m3.json"), "--minimize", fixture("../tests/golden/point-m3.json")});
  CHECK(minimized.code == 0);
  CHECK(minimized.out.find("minimized: (0,0,1,1,1)") != std::string::npos);
  const Run chain = run({"tightspan", fixture("bad-chain.json"), "--counterexamples"});
  CHECK(chain.code == 1);
  const Run cex = run({"tightspan", fixture("counterexample-powerset-abc.json"), "--counterexamples"});
  CHECK(cex.code == 0);
  CHECK(cex.out.find("kappa join counterexamples: 21\n") != std::string::npos);
}

TEST_CASE("nway and metric") {
  const Run held = run({"nway", fixture("m3.json"), "--n", "3", "--check"});
  CHECK(held.code == 0);
  CHECK(held.out == "n-way axioms (n=3): hold\n");
  const Run listed = run({"nway", fixture("m3.json"), "--n", "2"});
  CHECK(listed.code == 0);
  CHECK(listed.out.find("d(a1,a2) = 1") != std::string::npos);
  const Run metric = run({"metric", fixture("powerset-3.json")});
  CHECK(metric.code == 0);
  CHECK_FALSE(metric.out.empty());
}
