#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "ngstrat/cli.hpp"
#include "ngstrat/quads.hpp"
#include "ngstrat/stratify.hpp"

namespace ngstrat {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ngstrat-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }

  std::string read(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  CliRun run(std::vector<std::string> args, const std::string& stdin_text = "") {
    args.insert(args.begin(), "ngstrat");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

const std::string kReified = "<y> <b> <c> <x> .\n<a> <b> <c> <y> .\n";
const std::string kCircular = "<y> <type> <statement> <x> .\n<x> <type> <statement> <y> .\n";

TEST_F(Cli, CheckOkAndCycle) {
  const CliRun ok = run({"check", file("r.nq", kReified)});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "ok: 2 assignments\n");
  const CliRun bad = run({"check", file("c.nq", kCircular)});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out, "cycle: x -> y -> x\n");
}

TEST_F(Cli, CheckReadsStandardInput) {
  EXPECT_EQ(run({"check", "-"}, kReified).out, "ok: 2 assignments\n");
  const CliRun twice = run({"merge", "-", "-", "--policy", "left"}, kReified);
  EXPECT_EQ(twice.code, 2);
}

TEST_F(Cli, CheckAnnotations) {
  const std::string good = "# levels: a=0; b=0; c=0; x=4; y=2\n" + kReified;
  EXPECT_EQ(run({"check", "--annotations", file("g.nq", good)}).code, 0);
  const std::string flat = "# levels: a=0; b=0; c=0; x=1; y=1\n" + kReified;
  const CliRun bad = run({"check", "--annotations", file("f.nq", flat)});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("annotations:"), std::string::npos);
  EXPECT_EQ(run({"check", "--annotations", file("n.nq", kReified)}).code, 1);
}

TEST_F(Cli, ParseErrorsAreUsageErrors) {
  const std::string path = file("dup.nq", "<a> <b> <c> <u> .\n<d> <e> <f> <u> .\n");
  const CliRun r = run({"check", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(path + ":2:"), std::string::npos) << r.err;
  EXPECT_EQ(run({"check", (dir_ / "missing.nq").string()}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"slice", file("s.nq", kReified)}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, LevelsWritesHeader) {
  const CliRun r = run({"levels", file("r.nq", kReified)});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "# levels: a=0; b=0; c=0; x=2; y=1\n<y> <b> <c> <x> .\n<a> <b> <c> <y> .\n");
  const std::string out = (dir_ / "out.nq").string();
  EXPECT_EQ(run({"levels", file("r2.nq", kReified), "-o", out}).out, "");
  EXPECT_EQ(read(out), r.out);
  EXPECT_EQ(run({"levels", file("c.nq", kCircular)}).code, 1);
}

TEST_F(Cli, SliceDropsTrackingTags) {
  // Ground data at level 1, a derived summary at 2, tags about it at 3.
  const std::string doc =
      "<a> <knows> <b> <g1> .\n<b> <knows> <c> <g2> .\n<g1> <supports> <g2> <s> .\n"
      "<urn:reasoner> <new> <s> <tag> .\n";
  const CliRun one = run({"slice", file("t.nq", doc), "--level", "1"});
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(parse_quads(one.out), parse_quads("<a> <knows> <b> <g1> .\n<b> <knows> <c> <g2> .\n"));
  const CliRun two = run({"slice", file("t2.nq", doc), "--level", "2"});
  EXPECT_EQ(parse_quads(two.out).size(), 3u);
  EXPECT_EQ(run({"slice", file("c.nq", kCircular), "--level", "1"}).code, 1);
}

TEST_F(Cli, MergePolicies) {
  const std::string a = file("a.nq", "<s> <p> <o1> <u> .\n<s> <p> <o> <v> .\n");
  const std::string b = file("b.nq", "<s> <p> <o2> <u> .\n<s> <p> <o> <w> .\n");
  EXPECT_EQ(parse_quads(run({"merge", a, b, "--policy", "left"}).out),
            parse_quads("<s> <p> <o1> <u> .\n<s> <p> <o> <v> .\n<s> <p> <o> <w> .\n"));
  EXPECT_EQ(parse_quads(run({"merge", a, b, "--policy", "right"}).out),
            parse_quads("<s> <p> <o2> <u> .\n<s> <p> <o> <v> .\n<s> <p> <o> <w> .\n"));
  EXPECT_EQ(parse_quads(run({"merge", a, b, "--policy", "drop"}).out),
            parse_quads("<s> <p> <o> <v> .\n<s> <p> <o> <w> .\n"));
  const CliRun renamed = run({"merge", a, b, "--policy", "rename"});
  EXPECT_EQ(renamed.code, 0);
  EXPECT_NE(renamed.out.find("<u#~1> ."), std::string::npos);
  EXPECT_NE(renamed.out.find("<u#~2> ."), std::string::npos);
  EXPECT_EQ(parse_quads(renamed.out).size(), 4u);
  EXPECT_EQ(run({"merge", a, b, "--policy", "sideways"}).code, 2);
}

TEST_F(Cli, Meet) {
  const std::string a = file("a.nq", "<s> <p> <o1> <u> .\n<s> <p> <o> <v> .\n");
  const std::string b = file("b.nq", "<s> <p> <o2> <u> .\n<s> <p> <o> <v> .\n");
  EXPECT_EQ(run({"meet", a, b}).out, "<s> <p> <o> <v> .\n");
}

TEST_F(Cli, CanonIsDeterministic) {
  const std::string doc = "<c> <p> <o> <z> .\n# note\n<a> <p> \"o\" <m> .\n";
  const CliRun first = run({"canon", file("d.nq", doc)});
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.out, run({"canon", file("d2.nq", doc)}).out);
  EXPECT_EQ(run({"canon", file("d3.nq", first.out)}).out, first.out);
  EXPECT_EQ(run({"canon", file("l.nq", "<x> <p> <o> <y> .\n")}).out, "<x> <p> <o> <y> .\n");
}

TEST_F(Cli, ReasonBuiltinAndRules) {
  const std::string doc = file("d.nq", "<a> <b> <c> <n1> .\n<c> <b> <d> <n2> .\n<b> <predicate> <transitive> <n3> .\n");
  const CliRun builtin = run({"reason", doc, "--builtin"});
  EXPECT_EQ(builtin.code, 0);
  EXPECT_NE(builtin.out.find("<a> <b> <d> <urn:derived:"), std::string::npos);

  const std::string rules = file("r.rules", "(?a,<b>,?c) => (?c,<inverse-b>,?a)\n");
  const CliRun custom = run({"reason", doc, "--rules", rules});
  EXPECT_EQ(custom.code, 0);
  EXPECT_NE(custom.out.find("<c> <inverse-b> <a>"), std::string::npos);
  EXPECT_EQ(custom.out.find("<a> <b> <d>"), std::string::npos);

  EXPECT_EQ(run({"reason", doc}).code, 2);
  const std::string unbound = file("u.rules", "(?a,?b,?c) => (?x,?b,?c)\n");
  const CliRun r = run({"reason", doc, "--rules", unbound});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(unbound + ":1:"), std::string::npos) << r.err;
}

TEST_F(Cli, ReasonTrackingAndUses) {
  const std::string doc = file("d.nq", "<a> <b> <c> <n1> .\n<b> <predicate> <symmetric> <n2> .\n");
  const CliRun tracked = run({"reason", doc, "--builtin", "--track", "urn:gamma", "--infer-uses"});
  EXPECT_EQ(tracked.code, 0);
  EXPECT_NE(tracked.out.find("<urn:gamma> <new> <urn:derived:"), std::string::npos);
  EXPECT_TRUE(check_batch(parse_quads(tracked.out)).ok);
}

TEST_F(Cli, ReasonFlagsCyclicOutput) {
  const CliRun c = run({"reason", file("c.nq", kCircular), "--builtin"});
  EXPECT_EQ(c.code, 1);
  EXPECT_NE(c.err.find("cycle: "), std::string::npos);
  EXPECT_FALSE(c.out.empty());
}

TEST_F(Cli, ApplyReportsRejections) {
  const std::string doc = file("d.nq", "<a> <b> <c> <x> .\n<x> <b> <c> <y> .\n");
  const std::string log = file("ops.log",
                               "+ <z> <y> <b> <c> .\n"
                               "+ <a> <z> <p> <q> .\n"
                               "+ <x> <a> <b> <c> .\n"
                               "- <w> .\n"
                               "- <z> .\n");
  const CliRun r = run({"apply", doc, log});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find(log + ":2: rejected + a: case (a): cycle a -> z -> y -> x -> a"), std::string::npos)
      << r.err;
  EXPECT_NE(r.err.find(log + ":3: rejected + x: precondition: name already assigned"), std::string::npos);
  EXPECT_NE(r.err.find(log + ":4: rejected - w: precondition: name not assigned"), std::string::npos);
  EXPECT_NE(r.err.find("applied 5 operations: 2 accepted, 3 rejected"), std::string::npos);
  EXPECT_EQ(parse_quads(r.out), parse_quads("<a> <b> <c> <x> .\n<x> <b> <c> <y> .\n"));

  const CliRun strict = run({"apply", doc, log, "--strict"});
  EXPECT_EQ(strict.code, 1);
  EXPECT_EQ(strict.out, "");
}

TEST_F(Cli, StrictApplyAgreesWithCheck) {
  std::mt19937 rng(60);
  const auto names = testgen::iris("s", 8);
  int failures = 0;
  for (int i = 0; i < 100; ++i) {
    std::string log, final_doc;
    std::vector<Term> pool = names;
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t count = 1 + testgen::uniform(rng, pool.size());
    for (std::size_t k = 0; k < count; ++k) {
      const Term s = testgen::coin(rng, 0.5) ? testgen::pick(rng, names) : Term::iri("leaf");
      const Term o = testgen::coin(rng, 0.5) ? testgen::pick(rng, names) : Term::iri("leaf");
      const std::string triple = to_string(s) + " <p> " + to_string(o);
      log += "+ " + to_string(pool[k]) + " " + triple + " .\n";
      final_doc += triple + " " + to_string(pool[k]) + " .\n";
    }
    const std::string tag = std::to_string(i);
    const CliRun applied = run({"apply", file("e" + tag + ".nq", ""), file("l" + tag + ".log", log), "--strict"});
    const CliRun checked = run({"check", file("f" + tag + ".nq", final_doc)});
    EXPECT_EQ(applied.code, checked.code) << log;
    failures += checked.code != 0;
  }
  EXPECT_GT(failures, 10);
  EXPECT_LT(failures, 90);
}

TEST_F(Cli, ApplyOnCyclicDocumentFails) {
  EXPECT_EQ(run({"apply", file("c.nq", kCircular), file("l.log", "")}).code, 1);
  EXPECT_EQ(run({"apply", file("d.nq", kReified), file("bad.log", "* <x> .\n")}).code, 2);
}

TEST_F(Cli, SerializeErrorExitsOne) {
  // A rule deriving a literal subject cannot be written back.
  const std::string doc = file("d.nq", "<a> <b> \"lit\" <x> .\n");
  const std::string rules = file("r.rules", "(?a,<b>,?c) => (?c,<b>,?a)\n");
  const CliRun r = run({"reason", doc, "--rules", rules});
  EXPECT_EQ(r.code, 1);
}

}  // namespace
}  // namespace ngstrat
