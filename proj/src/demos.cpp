#include "intransit/demos.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "intransit/classify.hpp"

namespace intransit {

namespace {

std::string exploiter_text(const std::string& target, const std::string& budget) {
  return "match sim(" + target + ", self, " + budget +
         ") { halted(k) => bestresp(k) | exhausted => const 1 }";
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

StrategyProgram build_exploiter(const GameTable&, Side) {
  return parse_program(exploiter_text("opp", "rest"));
}

StrategyProgram build_exploiter_of(const std::string& target_source,
                                   std::optional<std::int64_t> budget) {
  return parse_program(exploiter_text(quote_source(target_source),
                                      budget ? std::to_string(*budget) : "rest"));
}

StrategyProgram build_defiance() { return parse_program("grow"); }

EvalResult OracleWinner::play(const std::string& opponent_source) const {
  EvalResult out;
  StrategyProgram opponent;
  try {
    opponent = parse_program(opponent_source);
  } catch (const ParseError&) {
    // Nothing to simulate; any fixed answer will do.
    out.tag = EvalTag::kHalted;
    out.value = 1;
    out.fuel_used = std::min<std::int64_t>(fuel, 1);
    if (fuel < 1) out.tag = EvalTag::kFuelExhausted;
    return out;
  }

  EvalEnv env;
  env.game = game;
  env.side = opposite(side);
  env.opponent_source = std::string(kOracleSource);
  env.self_source = opponent_source;
  env.fuel = std::max<std::int64_t>(fuel - kSimReserve, 0);
  env.memory_cap = memory_cap;
  const EvalResult sim = evaluate(opponent, env);

  out.fuel_used = sim.fuel_used + 1;
  switch (sim.tag) {
    case EvalTag::kProvenNonHalting:
      out.tag = EvalTag::kHalted;
      out.value = 1;
      out.opponent_proof = sim.witness;
      break;
    case EvalTag::kHalted:
      out.tag = EvalTag::kHalted;
      if (sim.value >= 1 && sim.value <= game->count(opposite(side))) {
        out.value = best_response(*game, side, static_cast<int>(sim.value));
      } else {
        out.value = 1;
      }
      break;
    case EvalTag::kRuntimeFault:
      out.tag = EvalTag::kHalted;
      out.value = 1;
      break;
    case EvalTag::kFuelExhausted:
      out.tag = EvalTag::kFuelExhausted;
      out.fuel_used = fuel;
      break;
  }
  return out;
}

OracleWinner build_oracle_winner(const GameTable& game, Side side, std::int64_t fuel,
                                 std::int64_t memory_cap) {
  return OracleWinner{&game, side, fuel, memory_cap};
}

Learner oracle_learner(std::string name, std::int64_t memory_cap) {
  Learner l;
  l.name = std::move(name);
  l.host = [memory_cap](const GameTable& game, Side side, const std::string& opponent,
                        std::int64_t fuel) {
    return build_oracle_winner(game, side, fuel, memory_cap).play(opponent);
  };
  return l;
}

std::vector<Learner> shipped_catalog(const GameTable& game, std::int64_t fuel) {
  std::vector<Learner> out;
  const int consts = std::min({game.rows(), game.cols(), 6});
  for (int k = 1; k <= consts; ++k) {
    out.push_back(make_learner("const-" + game.label(Side::kRow, k), "const " + std::to_string(k)));
  }
  const auto exploiter = build_exploiter(game, Side::kRow);
  out.push_back(Learner{"exploiter", exploiter, {}});
  out.push_back(Learner{"exploiter2", build_exploiter_of(exploiter.source(), fuel), {}});
  out.push_back(make_learner("spinner", "loop"));
  out.push_back(Learner{"defiance", build_defiance(), {}});
  out.push_back(oracle_learner("oracle"));
  return out;
}

Learner parse_learner(std::string_view text) {
  const auto nl = text.find('\n');
  const std::string header = trim(text.substr(0, nl));
  const std::string body = nl == std::string_view::npos ? "" : std::string(text.substr(nl + 1));
  if (header.rfind("learner ", 0) != 0 || trim(header.substr(8)).empty()) {
    throw ParseError("expected 'learner <name>' on the first line", 1, 1);
  }
  std::string name = trim(header.substr(8));
  if (trim(body) == kOracleSource) return oracle_learner(std::move(name));
  try {
    return make_learner(std::move(name), body);
  } catch (const ParseError& e) {
    // Program lines start on line 2 of the file.
    throw ParseError(e.message(), e.line() > 0 ? e.line() + 1 : 0, e.column());
  }
}

Learner load_learner(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open learner file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_learner(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.message(), e.line(), e.column());
  }
}

std::vector<Learner> load_learners(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ParseError("not a directory: '" + dir + "'");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Learner> out;
  for (const auto& f : files) out.push_back(load_learner(f.string()));
  return out;
}

}  // namespace intransit
