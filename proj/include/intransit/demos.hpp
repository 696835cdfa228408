#pragma once

#include <optional>
#include <string>
#include <vector>

#include "intransit/arena.hpp"

namespace intransit {

// Simulates the opponent against itself and best-responds to the result:
//   match sim(opp, self, rest) { halted(k) => bestresp(k) | exhausted => const 1 }
// The program reads its side from the evaluation environment, so the same
// text serves both sides.
StrategyProgram build_exploiter(const GameTable& game, Side side);

// Exploiter aimed at one fixed program instead of `opp`. With a budget the
// target is simulated under exactly that much fuel; without one it gets all
// usable fuel.
StrategyProgram build_exploiter_of(const std::string& target_source,
                                   std::optional<std::int64_t> budget = std::nullopt);

// `grow`: never halts and never repeats a state.
StrategyProgram build_defiance();

// Host-level learner: decide the opponent's halting by state repetition,
// claim victory with strategy 1 and the proof if it never halts, otherwise
// best-respond to what it outputs.
struct OracleWinner {
  const GameTable* game = nullptr;
  Side side = Side::kRow;
  std::int64_t fuel = 0;
  std::int64_t memory_cap = EvalEnv{}.memory_cap;

  EvalResult play(const std::string& opponent_source) const;
};

OracleWinner build_oracle_winner(const GameTable& game, Side side, std::int64_t fuel,
                                 std::int64_t memory_cap = EvalEnv{}.memory_cap);

Learner oracle_learner(std::string name = "oracle",
                       std::int64_t memory_cap = EvalEnv{}.memory_cap);

// Constants for every strategy (up to six), exploiter, exploiter-of-exploiter
// (budgeted at `fuel`), spinner (`loop`), defiance and the oracle winner.
std::vector<Learner> shipped_catalog(const GameTable& game, std::int64_t fuel);

// Learner file: `learner <name>` then the program text, or `@oracle` for
// the built-in oracle winner.
Learner parse_learner(std::string_view text);
Learner load_learner(const std::string& path);
// All regular files in `dir`, ordered by file name.
std::vector<Learner> load_learners(const std::string& dir);

}  // namespace intransit
