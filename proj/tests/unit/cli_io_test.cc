#include <cstdlib>
#include <fstream>
#include <sstream>

#include "oneclock/cli_io.h"
#include "oneclock/oracle.h"
#include "test_util.h"

namespace oneclock {
namespace {

using testing::Pts;
using testing::Q;

std::string Fixture(const std::string& name) {
  std::ifstream in(std::string(ONECLOCK_FIXTURE_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Diagnostic DiagnosticOf(const std::string& text) {
  try {
    ParseGame(text);
  } catch (const DocumentError& e) {
    return e.diagnostic();
  }
  ADD_FAILURE() << "document was accepted";
  return {};
}

const char* kHeader = R"({"format": "oneclock-game", "version": 1, "kind": )";

std::string Sptg1(const std::string& state, const std::string& action) {
  return std::string(kHeader) + "\"sptg\",\n\"states\": [" + state +
         "],\n\"actions\": [" + action + "]}";
}

TEST(ParseGame, FixtureA) {
  auto doc = ParseGame(Fixture("fixture-a.json"));
  EXPECT_EQ(doc.kind, GameKind::kSptg);
  EXPECT_EQ(doc.states.size(), 3u);
  EXPECT_EQ(doc.actions.size(), 4u);
  EXPECT_EQ(doc.actions[1].cost, ExtCost(Q(1, 2)));
  auto g = ToSptg(doc);
  EXPECT_EQ(SolveSptg(g).values, SolveSptg(fixtures::FixtureA()).values);
}

TEST(ParseGame, InfinityCost) {
  auto doc = ParseGame(Sptg1(R"({"id": "a", "owner": 1, "rate": "1/3"})",
                             R"({"id": "x", "from": "a", "to": "bot", "cost": "inf"})"));
  EXPECT_TRUE(doc.actions[0].cost.is_infinite());
  EXPECT_EQ(doc.states[0].rate, Q(1, 3));
}

TEST(ParseGame, DistinctDiagnostics) {
  const std::string a = R"({"id": "a", "owner": 1, "rate": 1})";
  const std::string x = R"({"id": "x", "from": "a", "to": "bot", "cost": 1})";

  auto neg = DiagnosticOf(Sptg1(a, R"({"id": "x", "from": "a", "to": "bot",
      "cost": "-1"})"));
  EXPECT_EQ(neg.code, ErrorCode::kNegativeCost);
  EXPECT_EQ(neg.field, "/actions/0/cost");
  EXPECT_EQ(neg.line, 4u);

  auto rate = DiagnosticOf(Sptg1(R"({"id": "a", "owner": 1, "rate": -2})", x));
  EXPECT_EQ(rate.code, ErrorCode::kNegativeRate);
  EXPECT_EQ(rate.field, "/states/0/rate");
  EXPECT_EQ(rate.line, 2u);

  auto unknown = DiagnosticOf(Sptg1(R"({"id": "a", "owner": 1, "rate": 1, "colour": 2})", x));
  EXPECT_EQ(unknown.code, ErrorCode::kUnknownField);
  EXPECT_EQ(unknown.field, "/states/0/colour");

  auto dangling = DiagnosticOf(Sptg1(a, R"({"id": "x", "from": "a", "to": "b", "cost": 1})"));
  EXPECT_EQ(dangling.code, ErrorCode::kDanglingReference);
  EXPECT_EQ(dangling.field, "/actions/0/to");

  auto dup = DiagnosticOf(Sptg1(a + "," + a, x));
  EXPECT_EQ(dup.code, ErrorCode::kDuplicateId);

  auto syntax = DiagnosticOf(Sptg1(a, x + ","));
  EXPECT_EQ(syntax.code, ErrorCode::kSyntax);
  EXPECT_EQ(syntax.line, 3u);

  auto missing = DiagnosticOf(Sptg1(a + R"(, {"id": "b", "owner": 2, "rate": 0})", x));
  EXPECT_EQ(missing.code, ErrorCode::kMissingAction);
  EXPECT_EQ(missing.field, "/states/1");

  auto flt = DiagnosticOf(Sptg1(R"({"id": "a", "owner": 1, "rate": 0.5})", x));
  EXPECT_EQ(flt.code, ErrorCode::kDomain);

  auto interval = DiagnosticOf(std::string(kHeader) +
                               R"("ptg", "states": [{"id": "a", "owner": 1, "rate": 1}],
      "actions": [{"id": "x", "from": "a", "to": "bot", "cost": 1,
                   "interval": {"lo": 2, "hi": 1}}]})");
  EXPECT_EQ(interval.code, ErrorCode::kIntervalOrder);
  EXPECT_EQ(interval.field, "/actions/0/interval");

  auto sptg_interval = DiagnosticOf(Sptg1(a, R"({"id": "x", "from": "a", "to": "bot",
      "cost": 1, "interval": {"lo": 0, "hi": 1}})"));
  EXPECT_EQ(sptg_interval.code, ErrorCode::kUnknownField);

  auto version = DiagnosticOf(R"({"version": 2, "kind": "sptg", "states": [], "actions": []})");
  EXPECT_EQ(version.field, "/version");
}

TEST(ParseGame, RoundTrip) {
  for (const char* name : {"fixture-a.json", "demo-ptg.json", "reset-loop.json",
                           "self-loop.json"}) {
    auto doc = ParseGame(Fixture(name));
    EXPECT_EQ(ParseGame(FormatGame(doc)), doc) << name;
  }
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomOptions o;
    o.seed = seed;
    o.infinite_costs = true;
    auto doc = ToDocument(RandomPtg(o));
    EXPECT_EQ(ParseGame(FormatGame(doc)), doc);
    auto sd = ToDocument(RandomSptg(o));
    EXPECT_EQ(ParseGame(FormatGame(sd)), sd);
  }
}

TEST(EmitPlot, FixtureARows) {
  auto doc = ParseGame(Fixture("fixture-a.json"));
  auto res = MakeResult(doc, SolveSptg(ToSptg(doc)));
  EXPECT_EQ(EmitPlot(res),
            "state,x_left,x_right,v_left,v_right\n"
            "k1,0,1/2,3/2,1\n"
            "k1,1/2,1,1,0\n"
            "k2a,0,1,2,0\n"
            "k2b,0,1,1,0\n");
}

TEST(EmitPlot, InfinityAndJumps) {
  auto fig = ParseGame(Fixture("demo-ptg.json"));
  auto res = MakeResult(fig, SolvePtg(ToPtg(fig)));
  EXPECT_EQ(EmitPlot(res),
            "state,x_left,x_right,v_left,v_right\n"
            "s1,0,1,0,0\n"
            "s2,0,0,1,1\n"
            "s2,0,1,0,0\n");
  auto loop = ParseGame(Fixture("reset-loop.json"));
  auto inf = MakeResult(loop, SolvePtg(ToPtg(loop)));
  EXPECT_EQ(EmitPlot(inf), "state,x_left,x_right,v_left,v_right\nk,0,1,inf,inf\n");
  EXPECT_EQ(EmitPlot(res, true), EmitPlot(res));  // integers print alike
}

TEST(EmitPlot, MatchesEvaluation) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomOptions o;
    o.seed = seed;
    o.states = 3;
    auto g = RandomPtg(o);
    auto doc = ToDocument(g);
    auto r = SolvePtg(g);
    auto res = MakeResult(doc, r);
    std::istringstream rows(EmitPlot(res));
    std::string line;
    std::getline(rows, line);
    while (std::getline(rows, line)) {
      std::vector<std::string> f;
      std::stringstream ss(line);
      for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
      ASSERT_EQ(f.size(), 5u);
      int k = doc.StateIndex(f[0]);
      Rational a = Rational::Parse(f[1]), b = Rational::Parse(f[2]);
      const auto& fn = r.values[k];
      if (a == b) {
        EXPECT_EQ(fn.Eval(a), ExtCost::Parse(f[3]));
      } else {
        EXPECT_EQ(fn.Eval(a, Side::kRight), ExtCost::Parse(f[3]));
        EXPECT_EQ(fn.Eval(b, Side::kLeft), ExtCost::Parse(f[4]));
      }
    }
  }
}

TEST(EmitResult, RoundTripsLosslessly) {
  auto a = ParseGame(Fixture("fixture-a.json"));
  auto ra = MakeResult(a, SolveSptg(ToSptg(a)));
  ra.wall_seconds.reset();
  EXPECT_EQ(ParseResult(EmitResult(ra)), ra);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomOptions o;
    o.seed = seed;
    o.infinite_costs = true;
    auto g = RandomPtg(o);
    auto doc = ToDocument(g);
    auto r = MakeResult(doc, SolvePtg(g));
    r.verification.push_back({"demo", seed % 2 == 0, "x"});
    auto back = ParseResult(EmitResult(r));
    EXPECT_EQ(back, r) << "seed " << seed;
    auto pg = RandomPricedGame(o);
    auto pd = ToDocument(pg);
    auto pr = MakeResult(pd, ExtendedDijkstra(pg));
    EXPECT_EQ(ParseResult(EmitResult(pr)), pr);
  }
}

int Cli(std::vector<std::string> args, std::string* out = nullptr,
        std::string* err = nullptr) {
  std::ostringstream o, e;
  int code = RunCli(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

TEST(RunCli, SolveVerifyFixtures) {
  for (const char* name : {"fixture-a.json", "demo-ptg.json", "reset-loop.json",
                           "self-loop.json"}) {
    std::string out, err;
    EXPECT_EQ(Cli({"solve", std::string(ONECLOCK_FIXTURE_DIR) + "/" + name,
                   "--verify"},
                  &out, &err),
              0)
        << name << ": " << err;
    EXPECT_TRUE(ParseResult(out).verified());
  }
}

TEST(RunCli, DeterministicOutput) {
  std::string a, b;
  const std::string f = std::string(ONECLOCK_FIXTURE_DIR) + "/demo-ptg.json";
  Cli({"solve", f}, &a);
  Cli({"solve", f}, &b);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("wall_seconds"), std::string::npos);
}

TEST(RunCli, MatchesExpectedOutput) {
  std::string out;
  Cli({"solve", std::string(ONECLOCK_FIXTURE_DIR) + "/fixture-a.json"}, &out);
  EXPECT_EQ(out, Fixture("fixture-a.expected.json"));
}

TEST(RunCli, BadInputExitsTwo) {
  const std::string path = ::testing::TempDir() + "corrupt.json";
  std::ofstream(path) << "{\"version\": 1, \"kind\": \"sptg\", \"states\": [";
  std::string err;
  EXPECT_EQ(Cli({"solve", path}, nullptr, &err), 2);
  EXPECT_NE(err.find("syntax"), std::string::npos);
  EXPECT_EQ(Cli({"solve", "/no/such/file.json"}), 2);
  EXPECT_EQ(Cli({"frobnicate"}), 2);
  EXPECT_EQ(Cli({"bench", "--family", "bogus"}), 2);
}

TEST(RunCli, FuzzSummary) {
  std::string out;
  EXPECT_EQ(Cli({"fuzz", "--seed", "1", "--count", "50"}, &out), 0);
  EXPECT_NE(out.find("fuzz sptg: 50 games, 50 agree, 0 disagree"),
            std::string::npos);
}

TEST(RunCli, FastPathOnlyAffectsPlots) {
  const std::string plot = ::testing::TempDir() + "plot.csv";
  const std::string f = std::string(ONECLOCK_FIXTURE_DIR) + "/fixture-a.json";
  setenv("ONECLOCK_FAST_FLOAT", "1", 1);
  std::string out;
  EXPECT_EQ(Cli({"solve", f, "--plot", plot}, &out), 0);
  unsetenv("ONECLOCK_FAST_FLOAT");
  std::ifstream in(plot);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_NE(buf.str().find("k1,0,0.5,1.5,1"), std::string::npos);
  EXPECT_NE(out.find("\"3/2\""), std::string::npos);
}

}  // namespace
}  // namespace oneclock
