// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "grid_oracle.hpp"
#include "intransit/arena.hpp"
#include "intransit/classify.hpp"
#include "intransit/crosstable.hpp"
#include "intransit/demos.hpp"
#include "intransit/mixed.hpp"
#include "intransit/series.hpp"
#include "test_util.hpp"

namespace intransit {
namespace {

using testing::bundled;

constexpr std::int64_t kFuel = 100000;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

// Runs one criterion, enforcing its time limit.
bool criterion(int id, const char* title, double limit_s, const std::function<Check()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Check c;
  try {
    c = body();
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    c.expect(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s");
  }
  std::printf("%s criterion %d: %s (%.3f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, title, secs,
              c.detail.empty() ? "" : " -- ", c.detail.c_str());
  std::fflush(stdout);
  return c.ok;
}

std::vector<NashCell> brute_nash(const GameTable& g) {
  std::vector<NashCell> out;
  for (int i = 1; i <= g.rows(); ++i) {
    for (int j = 1; j <= g.cols(); ++j) {
      bool stable = true;
      for (int k = 1; k <= g.rows(); ++k) stable = stable && to_int(g.at(k, j)) <= to_int(g.at(i, j));
      for (int l = 1; l <= g.cols(); ++l) stable = stable && to_int(g.at(i, l)) >= to_int(g.at(i, j));
      if (stable) out.push_back({i, j});
    }
  }
  return out;
}

Check bundled_tables() {
  Check c;
  const auto rps = bundled("rps");
  const auto dice = bundled("dice");
  c.expect(classify(rps).kind == ClassKind::kStronglyIntransitive, "rps not StronglyIntransitive");
  const auto d = classify(dice);
  c.expect(d.kind == ClassKind::kWeakDomination && d.dominator == 6, "dice not WeakDomination(6)");
  c.expect(find_cycles(rps, 3) == std::vector<Cycle>{{1, 2, 3}}, "rps cycles differ from R->P->S");
  c.expect(format_cycle(rps, {1, 2, 3}) == "R -> P -> S -> R", "rps cycle spelling");
  c.expect(find_cycles(dice, 3).empty(), "dice has a cycle");
  return c;
}

Check equilibrium_link() {
  Check c;
  std::mt19937_64 rng(2024);
  int tables = 0;
  int intransitive = 0;
  int dominated = 0;
  int weak_without_cell = 0;
  int antisymmetric_without_cell = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    // Alternate antisymmetric square tables with unconstrained ones.
    const int r = 2 + trial % 7;
    const int cols = 2 + (trial / 7) % 7;
    const auto g = trial % 2 == 0 ? testing::random_symmetric(rng, r)
                                  : testing::random_table(rng, r, cols);
    ++tables;
    const auto cls = classify(g);
    const auto nash = brute_nash(g);
    c.expect(nash == pure_nash(g), "pure_nash differs from brute force");
    if (cls.kind == ClassKind::kStronglyIntransitive) {
      ++intransitive;
      c.expect(nash.empty(), "StronglyIntransitive table with a pure Nash cell");
    }
    if (cls.dominator) {
      ++dominated;
      const bool in_row = std::any_of(nash.begin(), nash.end(),
                                      [&](const NashCell& n) { return n.i == *cls.dominator; });
      if (!in_row) ++weak_without_cell;
      if (!in_row && is_symmetric(g)) ++antisymmetric_without_cell;
      if (!in_row && cls.kind == ClassKind::kStrictDomination) {
        c.expect(false, "StrictDomination without a Nash cell in the dominator row");
      }
    }
  }
  c.expect(weak_without_cell == 0,
           std::to_string(weak_without_cell) + " of " + std::to_string(dominated) +
               " dominated tables lack a Nash cell in the dominator row (" +
               std::to_string(antisymmetric_without_cell) + " of them antisymmetric)");
  if (c.ok) {
    c.detail = std::to_string(tables) + " tables, " + std::to_string(intransitive) +
               " intransitive, " + std::to_string(dominated) + " dominated";
  }
  return c;
}

Check exploiter_regress() {
  Check c;
  const auto rps = bundled("rps");
  const auto catalog = shipped_catalog(rps, kFuel);
  c.expect(catalog.size() >= 5, "catalog too small");
  const Learner e{"exploiter", build_exploiter(rps, Side::kRow), {}};
  int beaten = 0;
  for (const auto& l : catalog) {
    if (l.is_host()) continue;
    // Halting is judged the way the exploiter sees it: on the other side,
    // inside the child budget.
    EvalEnv env;
    env.game = &rps;
    env.side = Side::kCol;
    env.opponent_source = e.source();
    env.self_source = l.source();
    env.fuel = kFuel - 2 - kSimReserve;
    const auto sim = evaluate(l.program, env);
    if (!sim.halted() || sim.value < 1 || sim.value > rps.cols()) continue;
    const auto m = run_match(rps, e, l, kFuel);
    c.expect(m.result == MatchResult::kWin1, "exploiter does not beat " + l.name);
    ++beaten;
  }
  c.expect(beaten >= 3, "fewer than three halting catalog learners");

  const Learner ee{"exploiter2", build_exploiter_of(e.source(), kFuel), {}};
  const auto regress = run_match(rps, ee, e, 10 * kFuel, kFuel, Mode::kDeadline);
  c.expect(regress.result == MatchResult::kWin1, "exploiter-of-exploiter with 10x fuel loses");
  c.expect(run_match(rps, ee, e, 10 * kFuel, kFuel, Mode::kStrict).result ==
               MatchResult::kUndecided,
           "strict regress match is decided");
  c.expect(run_match(rps, e, e, kFuel).result == MatchResult::kUndecided,
           "exploiter vs exploiter decided");
  const auto rep = run_tournament(rps, catalog, kFuel);
  c.expect(!rep.universal_winner, "tournament has a universal winner");
  if (c.ok) {
    c.detail = std::to_string(beaten) + " halting learners beaten; regress won in deadline mode";
  }
  return c;
}

Check oracle_and_defiance() {
  Check c;
  const auto rps = bundled("rps");
  const auto oracle = oracle_learner();
  const auto spin = run_match(rps, oracle, make_learner("spinner", "loop"), kFuel);
  c.expect(spin.result == MatchResult::kWin1, "oracle does not beat loop");
  c.expect(spin.detail.first.opponent_proof &&
               spin.detail.first.opponent_proof->first_step <
                   spin.detail.first.opponent_proof->repeat_step,
           "no repetition witness attached");
  for (int k = 1; k <= rps.cols(); ++k) {
    const auto m = run_match(rps, oracle, make_learner("c", "const " + std::to_string(k)), kFuel);
    c.expect(m.result == MatchResult::kWin1, "oracle does not beat const " + std::to_string(k));
  }
  const Learner grow{"defiance", build_defiance(), {}};
  c.expect(run_match(rps, oracle, grow, kFuel, Mode::kStrict).result == MatchResult::kUndecided,
           "oracle vs grow decided");
  for (const auto& l : shipped_catalog(rps, kFuel)) {
    c.expect(run_match(rps, l, grow, kFuel, Mode::kStrict).result != MatchResult::kWin1,
             l.name + " defeats grow");
    c.expect(run_match(rps, grow, l, kFuel, Mode::kStrict).result != MatchResult::kWin2,
             l.name + " defeats grow");
  }
  return c;
}

Check enumeration_bound() {
  Check c;
  int shapes = 0;
  for (int r = 1; r <= 9; ++r) {
    for (int k = 1; r * k <= 9; ++k) {
      std::uint64_t expect = 1;
      for (int t = 0; t < r * k; ++t) expect *= 3;
      c.expect(enumerate_game_count(r, k) == expect,
               "count mismatch at " + std::to_string(r) + "x" + std::to_string(k));
      ++shapes;
    }
  }
  if (c.ok) c.detail = std::to_string(shapes) + " shapes";
  return c;
}

Check mixed_solver() {
  Check c;
  const auto rps = fictitious_play(bundled("rps"), 100000, 1e-2);
  c.expect(rps.exploitability <= 1e-2, "rps exploitability above 1e-2");
  for (double p : rps.row.probs) c.expect(std::abs(p - 1.0 / 3) <= 0.01, "rps row not uniform");
  for (double p : rps.col.probs) c.expect(std::abs(p - 1.0 / 3) <= 0.01, "rps col not uniform");
  c.expect(std::abs(rps.value) <= 1e-2, "rps value not 0");
  for (const char* name : {"rps", "pennies", "firstmover", "single", "well"}) {
    const auto g = bundled(name);
    const auto [lo, hi] = testing::grid_bounds(g);
    const auto fp = fictitious_play(g, 200000, 1e-3);
    c.expect(std::abs(fp.value - (lo + hi) / 2) <= 1e-2,
             std::string(name) + " value " + std::to_string(fp.value) + " vs grid " +
                 std::to_string((lo + hi) / 2));
  }
  return c;
}

Check series_closure() {
  Check c;
  const auto rps = bundled("rps");
  const auto sum = compose_series({rps, rps.role_swapped()}, Aggregator::kSumSign);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) c.expect(sum.at(i, j) == Outcome::kDraw, "entry not a draw");
  }
  for (const char* name : {"rps", "dice", "rpsls", "well", "pennies", "firstmover", "single"}) {
    const auto g = bundled(name);
    for (Aggregator agg : {Aggregator::kSumSign, Aggregator::kMajority, Aggregator::kLexicographic}) {
      c.expect(compose_series({g}, agg) == g, std::string(name) + " not preserved");
    }
  }
  return c;
}

Check crosstable_cycle() {
  Check c;
  std::ifstream in(testing::data_path("crosstables/engines3.csv"));
  std::stringstream ss;
  ss << in.rdbuf();
  const auto g = ingest_crosstable(ss.str(), 0.0).second;
  const auto cycles = find_cycles(g, 3);
  c.expect(cycles.size() == 1, "expected exactly one 3-cycle");
  if (cycles.size() == 1) {
    // Each engine beats the next: Stockfish > FatFritz > Houdini > Stockfish.
    c.expect(g.at(1, 2) == Outcome::kWin && g.at(2, 3) == Outcome::kWin &&
                 g.at(3, 1) == Outcome::kWin,
             "cycle does not follow the engine triplet");
  }
  const auto wide = ingest_crosstable(ss.str(), 0.06).second;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) c.expect(wide.at(i, j) == Outcome::kDraw, "margin 0.06 left a result");
  }
  c.expect(find_cycles(wide, 3).empty(), "margin 0.06 left a cycle");
  return c;
}

Check determinism() {
  Check c;
  for (const char* name : {"rps", "rpsls", "pennies"}) {
    const auto g = bundled(name);
    const auto catalog = shipped_catalog(g, kFuel);
    const auto first = run_tournament(g, catalog, kFuel).format();
    c.expect(run_tournament(g, catalog, kFuel).format() == first, std::string(name) + " rerun differs");
    c.expect(run_tournament_serial(g, catalog, kFuel).format() == first,
             std::string(name) + " serial differs");
    for (int threads : {1, 2, 4, 8}) {
      c.expect(run_tournament(g, catalog, kFuel, Mode::kStrict, threads).format() == first,
               std::string(name) + " differs with " + std::to_string(threads) + " threads");
    }
  }
  return c;
}

}  // namespace
}  // namespace intransit

int main() {
  using namespace intransit;
  int failed = 0;
  failed += !criterion(1, "classification and cycles of the bundled rps and dice tables", 1,
                       bundled_tables);
  failed += !criterion(2, "strong intransitivity excludes pure equilibria; domination implies one "
                          "in the dominator row",
                       30, equilibrium_link);
  failed += !criterion(3, "exploiter beats halting learners, regress, no universal winner", 10,
                       exploiter_regress);
  failed += !criterion(4, "oracle winner vs loop, constants and grow; grow is never beaten", 10,
                       oracle_and_defiance);
  failed += !criterion(5, "enumerated table counts equal 3^(rows*cols) up to 9 cells", 60,
                       enumeration_bound);
  failed += !criterion(6, "fictitious play on rps and grid-oracle agreement", 60, mixed_solver);
  failed += !criterion(7, "series closure", 1, series_closure);
  failed += !criterion(8, "crosstable triplet and draw band", 1, crosstable_cycle);
  failed += !criterion(9, "tournament reports are byte-identical across runs and thread counts", 0,
                       determinism);
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
