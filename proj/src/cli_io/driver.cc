#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "oneclock/cli_io.h"
#include "oneclock/oracle.h"
#include "verify.h"

namespace oneclock {

namespace {

// Input problems exit with 2, failed verification with 1.
constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;

bool FastFloatRequested() {
  const char* v = std::getenv("ONECLOCK_FAST_FLOAT");
  if (!v) return false;
  std::string s(v);
  return !s.empty() && s != "0" && s != "false" && s != "off";
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kValidation, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw Error(ErrorCode::kValidation, "cannot write " + path);
  }
}

struct SolveFlags {
  std::string input, out, plot;
  bool verify = false;
  bool instrumented = false;
  bool timings = false;
};

int Solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
  GameDocument doc = ParseGame(ReadFile(f.input));
  ResultDocument res = SolveDocument(
      doc, {.verify = f.verify, .instrumented = f.instrumented,
            .timings = f.timings});

  std::string text = EmitResult(res);
  if (f.out.empty()) {
    out << text;
  } else {
    WriteFile(f.out, text);
  }
  if (!f.plot.empty()) {
    bool decimal = FastFloatRequested();
    if (decimal && f.verify) {
      err << "note: ONECLOCK_FAST_FLOAT ignored under --verify\n";
      decimal = false;
    }
    WriteFile(f.plot, EmitPlot(res, decimal));
  }
  if (!res.verified()) {
    for (const auto& c : res.verification) {
      if (!c.ok) err << "verification failed: " << c.name << ": " << c.detail << "\n";
    }
    return kExitVerify;
  }
  return kExitOk;
}

struct FuzzFlags {
  std::uint64_t seed = 1;
  std::size_t count = 50;
  std::size_t size = 4;
  std::string kind = "all";
};

int Fuzz(const FuzzFlags& f, std::ostream& out) {
  std::vector<std::string> kinds;
  if (f.kind == "all") {
    kinds = {"priced", "sptg", "ptg"};
  } else {
    kinds = {f.kind};
  }
  bool all_ok = true;
  for (const auto& kind : kinds) {
    std::size_t agree = 0;
    for (std::size_t i = 0; i < f.count; ++i) {
      RandomOptions o;
      o.seed = f.seed + i;
      o.states = 1 + i % f.size;
      o.infinite_costs = i % 3 == 2;
      std::vector<CheckDoc> checks;
      if (kind == "priced") {
        auto g = RandomPricedGame(o);
        checks = detail::VerifyPriced(g, ExtendedDijkstra(g));
      } else if (kind == "sptg") {
        auto g = RandomSptg(o);
        checks = detail::VerifySptg(g, SolveSptg(g));
      } else {
        o.resets = i % 2 == 1;
        auto g = RandomPtg(o);
        checks = detail::VerifyPtg(g, SolvePtg(g));
      }
      bool ok = true;
      for (const auto& c : checks) {
        if (c.ok) continue;
        ok = false;
        out << "seed " << o.seed << " " << kind << ": " << c.name << ": "
            << c.detail << "\n";
      }
      agree += ok;
    }
    out << "fuzz " << kind << ": " << f.count << " games, " << agree
        << " agree, " << f.count - agree << " disagree\n";
    all_ok = all_ok && agree == f.count;
  }
  return all_ok ? kExitOk : kExitVerify;
}

struct BenchFlags {
  std::string family = "random";
  std::size_t size = 20;
  std::size_t count = 5;
  std::uint64_t seed = 1;
};

int Bench(const BenchFlags& f, std::ostream& out) {
  out << "family,seed,states,actions,L,sweep_steps,oracle_calls,seconds\n";
  for (std::size_t i = 0; i < f.count; ++i) {
    RandomOptions o;
    o.seed = f.seed + i;
    o.states = f.size;
    o.max_actions = 4;
    std::size_t actions = 0, L = 0, steps = 0, calls = 0;
    auto start = std::chrono::steady_clock::now();
    if (f.family == "random") {
      o.layered = true;
      auto g = RandomSptg(o);
      auto r = SolveSptg(g);
      actions = g.num_actions();
      L = r.stats.event_points;
      steps = r.stats.sweep_steps;
      calls = 1;
    } else {
      o.reachability = f.family == "reach";
      o.resets = true;
      auto g = RandomPtg(o);
      auto r = SolvePtg(g);
      actions = g.num_actions();
      L = r.stats.event_points;
      steps = r.stats.sweep_steps;
      calls = r.stats.oracle_calls;
    }
    std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
    out << f.family << ',' << o.seed << ',' << o.states << ',' << actions << ','
        << L << ',' << steps << ',' << calls << ',' << std::fixed
        << std::setprecision(6) << secs.count() << std::defaultfloat << '\n';
  }
  return kExitOk;
}

}  // namespace

ResultDocument SolveDocument(const GameDocument& doc,
                             const SolveOptions& options) {
  ResultDocument res;
  SweepOptions sweep{.instrumented = options.instrumented};
  switch (doc.kind) {
    case GameKind::kPriced: {
      auto g = ToPricedGame(doc);
      auto sol = ExtendedDijkstra(g);
      res = MakeResult(doc, sol);
      if (options.verify) res.verification = detail::VerifyPriced(g, sol);
      break;
    }
    case GameKind::kSptg: {
      auto g = ToSptg(doc);
      auto sol = SolveSptg(g, sweep);
      res = MakeResult(doc, sol);
      if (options.verify) res.verification = detail::VerifySptg(g, sol);
      break;
    }
    case GameKind::kPtg: {
      auto g = ToPtg(doc);
      auto sol = SolvePtg(g, sweep);
      res = MakeResult(doc, sol);
      if (options.verify) res.verification = detail::VerifyPtg(g, sol);
      break;
    }
  }
  if (!options.timings) res.wall_seconds.reset();
  return res;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Exact solver for one-clock priced timed games", "oneclock"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* s = app.add_subcommand("solve", "Solve a game document");
  s->add_option("file", solve.input, "Game document")->required();
  s->add_option("--out", solve.out, "Write the result document here");
  s->add_option("--plot", solve.plot, "Write a CSV segment table here");
  s->add_flag("--verify", solve.verify, "Cross-check with the oracles");
  s->add_flag("--instrumented", solve.instrumented,
              "Single-switch sweeps with potential accounting");
  s->add_flag("--timings", solve.timings, "Include wall-clock time");

  FuzzFlags fuzz;
  auto* z = app.add_subcommand("fuzz", "Random games against the oracles");
  z->add_option("--seed", fuzz.seed, "First seed");
  z->add_option("--count", fuzz.count, "Games per kind")
      ->check(CLI::PositiveNumber);
  z->add_option("--size", fuzz.size, "Largest state count")
      ->check(CLI::PositiveNumber);
  z->add_option("--kind", fuzz.kind, "priced, sptg, ptg or all")
      ->check(CLI::IsMember({"priced", "sptg", "ptg", "all"}));

  BenchFlags bench;
  auto* b = app.add_subcommand("bench", "Time the solvers on generated games");
  b->add_option("--family", bench.family, "reach, automata or random")
      ->check(CLI::IsMember({"reach", "automata", "random"}));
  b->add_option("--size", bench.size, "States per game")
      ->check(CLI::PositiveNumber);
  b->add_option("--count", bench.count, "Number of games");
  b->add_option("--seed", bench.seed, "First seed");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (s->parsed()) return Solve(solve, out, err);
    if (z->parsed()) return Fuzz(fuzz, out);
    return Bench(bench, out);
  } catch (const DocumentError& e) {
    err << solve.input << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    bool input = e.code() != ErrorCode::kVerification &&
                 e.code() != ErrorCode::kNonConvergence &&
                 e.code() != ErrorCode::kBudgetExceeded;
    return input ? kExitInput : kExitVerify;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerify;
  }
}

}  // namespace oneclock
