#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intransit/dsl.hpp"
#include "intransit/game.hpp"

namespace intransit {

// A learner computed by the host rather than written in the strategy
// language. Receives the game, its side, the opponent's source and its fuel.
using HostStrategy = std::function<EvalResult(const GameTable&, Side, const std::string&,
                                              std::int64_t)>;

struct Learner {
  std::string name;
  StrategyProgram program;  // empty when `host` is set
  HostStrategy host;
  std::string host_source = std::string(kOracleSource);

  bool is_host() const { return static_cast<bool>(host); }
  const std::string& source() const { return is_host() ? host_source : program.source(); }
};

Learner make_learner(std::string name, std::string_view program_text);

// Evaluates a learner for one side of a match.
EvalResult play(const Learner& learner, const GameTable& game, Side side,
                const std::string& opponent_source, std::int64_t fuel,
                std::int64_t memory_cap = EvalEnv{}.memory_cap);

enum class Mode { kStrict, kDeadline };
enum class MatchResult { kWin1, kWin2, kDraw, kUndecided };

const char* mode_name(Mode mode);
std::optional<Mode> mode_from_name(const std::string& name);
const char* match_result_name(MatchResult r);

// Which adjudication rule decided a match.
enum class Rule { kBothHalted, kNonHaltProof, kExhausted, kBothNonHalted, kFault };

struct MatchRecord {
  std::string game;
  std::string learner1;
  std::string learner2;
  MatchResult result = MatchResult::kUndecided;
  Rule rule = Rule::kBothNonHalted;
  std::pair<EvalResult, EvalResult> detail;
  std::optional<std::pair<int, int>> strategies;
  std::pair<std::int64_t, std::int64_t> fuel_used;
  Mode mode = Mode::kStrict;

  // `eval1=<tag> eval2=<tag> result=<tag>`
  std::string trace() const;
};

// Pure adjudication of two evaluation results for the row (1) and column (2)
// players.
std::pair<MatchResult, Rule> adjudicate(const GameTable& game, const EvalResult& e1,
                                        const EvalResult& e2, Mode mode);

MatchRecord run_match(const GameTable& game, const Learner& l1, const Learner& l2,
                      std::int64_t fuel, Mode mode = Mode::kStrict);
// Per-side fuel; the tournament always grants both sides the same amount.
MatchRecord run_match(const GameTable& game, const Learner& l1, const Learner& l2,
                      std::int64_t fuel1, std::int64_t fuel2, Mode mode);

enum class PairOutcome { kWin, kLoss, kDraw, kUndecided };
const char* pair_outcome_name(PairOutcome o);

struct Tally {
  int wins = 0;
  int draws = 0;
  int losses = 0;
  int undecided = 0;
  bool operator==(const Tally&) const = default;
};

struct TournamentReport {
  std::string game;
  std::vector<std::string> names;
  std::vector<MatchRecord> matches;
  // matrix[a][b]: result of a against b from a's perspective, where a is the
  // row player of the recorded match (or its mirror in symmetric games).
  // The universal winner's row holds only wins, diagonal included.
  std::vector<std::vector<std::optional<PairOutcome>>> matrix;
  std::vector<Tally> tallies;
  std::optional<std::string> universal_winner;

  std::string format() const;
};

// Each unordered pair once in symmetric games, each ordered pair otherwise,
// self-play included. A single learner gives an empty report.
// Matches run in parallel with `threads` workers (0: runtime default); the
// report does not depend on the schedule.
TournamentReport run_tournament(const GameTable& game, const std::vector<Learner>& learners,
                                std::int64_t fuel, Mode mode = Mode::kStrict, int threads = 0);
// Serial reference.
TournamentReport run_tournament_serial(const GameTable& game,
                                       const std::vector<Learner>& learners, std::int64_t fuel,
                                       Mode mode = Mode::kStrict);

}  // namespace intransit
