#include "intransit/arena.hpp"

#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace intransit {

Learner make_learner(std::string name, std::string_view program_text) {
  Learner l;
  l.name = std::move(name);
  l.program = parse_program(program_text);
  return l;
}

EvalResult play(const Learner& learner, const GameTable& game, Side side,
                const std::string& opponent_source, std::int64_t fuel, std::int64_t memory_cap) {
  if (learner.is_host()) return learner.host(game, side, opponent_source, fuel);
  EvalEnv env;
  env.game = &game;
  env.side = side;
  env.opponent_source = opponent_source;
  env.self_source = learner.program.source();
  env.fuel = fuel;
  env.memory_cap = memory_cap;
  return evaluate(learner.program, env);
}

const char* mode_name(Mode mode) { return mode == Mode::kStrict ? "strict" : "deadline"; }

std::optional<Mode> mode_from_name(const std::string& name) {
  if (name == "strict") return Mode::kStrict;
  if (name == "deadline") return Mode::kDeadline;
  return std::nullopt;
}

const char* match_result_name(MatchResult r) {
  switch (r) {
    case MatchResult::kWin1: return "Win1";
    case MatchResult::kWin2: return "Win2";
    case MatchResult::kDraw: return "Draw";
    case MatchResult::kUndecided: return "Undecided";
  }
  return "?";
}

const char* pair_outcome_name(PairOutcome o) {
  switch (o) {
    case PairOutcome::kWin: return "W";
    case PairOutcome::kLoss: return "L";
    case PairOutcome::kDraw: return "D";
    case PairOutcome::kUndecided: return "U";
  }
  return "?";
}

namespace {

enum class Status { kValid, kFault, kProven, kExhausted };

Status status_of(const EvalResult& e, int range) {
  switch (e.tag) {
    case EvalTag::kHalted: return e.value >= 1 && e.value <= range ? Status::kValid : Status::kFault;
    case EvalTag::kRuntimeFault: return Status::kFault;
    case EvalTag::kProvenNonHalting: return Status::kProven;
    case EvalTag::kFuelExhausted: return Status::kExhausted;
  }
  return Status::kFault;
}

}  // namespace

std::pair<MatchResult, Rule> adjudicate(const GameTable& game, const EvalResult& e1,
                                        const EvalResult& e2, Mode mode) {
  const Status s1 = status_of(e1, game.rows());
  const Status s2 = status_of(e2, game.cols());

  if (s1 == Status::kFault || s2 == Status::kFault) {
    if (s1 == s2) return {MatchResult::kUndecided, Rule::kFault};
    return {s1 == Status::kFault ? MatchResult::kWin2 : MatchResult::kWin1, Rule::kFault};
  }
  if (s1 == Status::kValid && s2 == Status::kValid) {
    const int v = game.value(static_cast<int>(e1.value) - 1, static_cast<int>(e2.value) - 1);
    return {v > 0 ? MatchResult::kWin1 : v < 0 ? MatchResult::kWin2 : MatchResult::kDraw,
            Rule::kBothHalted};
  }
  if (s1 != Status::kValid && s2 != Status::kValid) {
    return {MatchResult::kUndecided, Rule::kBothNonHalted};
  }
  const bool first_halted = s1 == Status::kValid;
  const Status other = first_halted ? s2 : s1;
  const MatchResult halted_wins = first_halted ? MatchResult::kWin1 : MatchResult::kWin2;
  if (other == Status::kProven) return {halted_wins, Rule::kNonHaltProof};
  return {mode == Mode::kDeadline ? halted_wins : MatchResult::kUndecided, Rule::kExhausted};
}

std::string MatchRecord::trace() const {
  std::ostringstream out;
  out << "eval1=" << eval_tag_name(detail.first.tag) << " eval2=" << eval_tag_name(detail.second.tag)
      << " result=" << match_result_name(result);
  return out.str();
}

MatchRecord run_match(const GameTable& game, const Learner& l1, const Learner& l2,
                      std::int64_t fuel, Mode mode) {
  return run_match(game, l1, l2, fuel, fuel, mode);
}

MatchRecord run_match(const GameTable& game, const Learner& l1, const Learner& l2,
                      std::int64_t fuel1, std::int64_t fuel2, Mode mode) {
  MatchRecord rec;
  rec.game = game.name();
  rec.learner1 = l1.name;
  rec.learner2 = l2.name;
  rec.mode = mode;
  rec.detail.first = play(l1, game, Side::kRow, l2.source(), fuel1);
  rec.detail.second = play(l2, game, Side::kCol, l1.source(), fuel2);
  std::tie(rec.result, rec.rule) = adjudicate(game, rec.detail.first, rec.detail.second, mode);
  if (rec.rule == Rule::kBothHalted) {
    rec.strategies = {static_cast<int>(rec.detail.first.value),
                      static_cast<int>(rec.detail.second.value)};
  }
  rec.fuel_used = {rec.detail.first.fuel_used, rec.detail.second.fuel_used};
  return rec;
}

namespace {

struct Pairing {
  std::size_t a;
  std::size_t b;
};

// Learners also meet a copy of themselves; a lone learner plays nobody.
std::vector<Pairing> schedule(const GameTable& game, std::size_t n) {
  std::vector<Pairing> pairs;
  if (n < 2) return pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (game.symmetric_flag() && b < a) continue;
      pairs.push_back({a, b});
    }
  }
  return pairs;
}

PairOutcome from_row_view(MatchResult r) {
  switch (r) {
    case MatchResult::kWin1: return PairOutcome::kWin;
    case MatchResult::kWin2: return PairOutcome::kLoss;
    case MatchResult::kDraw: return PairOutcome::kDraw;
    case MatchResult::kUndecided: return PairOutcome::kUndecided;
  }
  return PairOutcome::kUndecided;
}

PairOutcome mirror(PairOutcome o) {
  if (o == PairOutcome::kWin) return PairOutcome::kLoss;
  if (o == PairOutcome::kLoss) return PairOutcome::kWin;
  return o;
}

void count(Tally& t, PairOutcome o) {
  switch (o) {
    case PairOutcome::kWin: ++t.wins; break;
    case PairOutcome::kLoss: ++t.losses; break;
    case PairOutcome::kDraw: ++t.draws; break;
    case PairOutcome::kUndecided: ++t.undecided; break;
  }
}

TournamentReport assemble(const GameTable& game, const std::vector<Learner>& learners,
                          const std::vector<Pairing>& pairs, std::vector<MatchRecord> matches) {
  const std::size_t n = learners.size();
  TournamentReport rep;
  rep.game = game.name();
  for (const auto& l : learners) rep.names.push_back(l.name);
  rep.matrix.assign(n, std::vector<std::optional<PairOutcome>>(n));
  rep.tallies.assign(n, Tally{});
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs[k];
    const PairOutcome o = from_row_view(matches[k].result);
    rep.matrix[a][b] = o;
    count(rep.tallies[a], o);
    if (a == b) continue;
    if (game.symmetric_flag()) rep.matrix[b][a] = mirror(o);
    count(rep.tallies[b], mirror(o));
  }
  for (std::size_t a = 0; a < n; ++a) {
    bool all_wins = true;
    for (std::size_t b = 0; b < n && all_wins; ++b) all_wins = rep.matrix[a][b] == PairOutcome::kWin;
    if (all_wins) {
      rep.universal_winner = learners[a].name;
      break;
    }
  }
  rep.matches = std::move(matches);
  return rep;
}

}  // namespace

TournamentReport run_tournament_serial(const GameTable& game,
                                       const std::vector<Learner>& learners, std::int64_t fuel,
                                       Mode mode) {
  const auto pairs = schedule(game, learners.size());
  std::vector<MatchRecord> matches;
  matches.reserve(pairs.size());
  for (const auto& p : pairs) {
    matches.push_back(run_match(game, learners[p.a], learners[p.b], fuel, mode));
  }
  return assemble(game, learners, pairs, std::move(matches));
}

TournamentReport run_tournament(const GameTable& game, const std::vector<Learner>& learners,
                                std::int64_t fuel, Mode mode, int threads) {
  const auto pairs = schedule(game, learners.size());
  std::vector<MatchRecord> matches(pairs.size());
  const int count = static_cast<int>(pairs.size());
#ifdef _OPENMP
  const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
#endif
  for (int k = 0; k < count; ++k) {
    matches[k] = run_match(game, learners[pairs[k].a], learners[pairs[k].b], fuel, mode);
  }
  (void)threads;
  return assemble(game, learners, pairs, std::move(matches));
}

std::string TournamentReport::format() const {
  std::ostringstream out;
  out << "game=" << game << "\n";
  out << "learners=" << names.size() << "\n";
  for (const auto& m : matches) {
    out << "match " << m.learner1 << " vs " << m.learner2 << ": " << m.trace();
    if (m.strategies) out << " strategies=" << m.strategies->first << "," << m.strategies->second;
    out << " fuel=" << m.fuel_used.first << "," << m.fuel_used.second << "\n";
  }
  for (std::size_t a = 0; a < names.size(); ++a) {
    out << "row " << names[a] << ":";
    for (std::size_t b = 0; b < names.size(); ++b) {
      out << ' ' << (matrix[a][b] ? pair_outcome_name(*matrix[a][b]) : "-");
    }
    out << "\n";
  }
  for (std::size_t a = 0; a < names.size(); ++a) {
    const Tally& t = tallies[a];
    out << "tally " << names[a] << " wins=" << t.wins << " draws=" << t.draws
        << " losses=" << t.losses << " undecided=" << t.undecided << "\n";
  }
  out << "universal_winner=" << (universal_winner ? *universal_winner : "none") << "\n";
  return out.str();
}

}  // namespace intransit
