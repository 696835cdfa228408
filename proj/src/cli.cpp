#include "intransit/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "intransit/arena.hpp"
#include "intransit/classify.hpp"
#include "intransit/crosstable.hpp"
#include "intransit/demos.hpp"
#include "intransit/game.hpp"
#include "intransit/mixed.hpp"
#include "intransit/series.hpp"

namespace intransit::cli {

namespace {

struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string game_pos;
  std::vector<std::string> games;
  std::string p1, p2, learners, crosstable_path, demo_name, assert_class;
  std::int64_t fuel = 100000;
  std::string mode = "strict";
  int max_len = 3;
  std::string aggregate = "sum";
  long iters = 100000;
  double tol = 1e-2;
  double margin = 0.0;
  int rows = 0, cols = 0;
  int threads = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GameTable the_game(const Options& o) {
  if (!o.game_pos.empty()) return load_game(o.game_pos);
  if (o.games.size() == 1) return load_game(o.games.front());
  throw CLI::ValidationError("--game", "exactly one game file is required");
}

Mode the_mode(const Options& o) { return *mode_from_name(o.mode); }

std::string fmt(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << (std::abs(v) < 5e-7 ? 0.0 : v);
  return s.str();
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

std::string strategy_text(const GameTable& g, Side side, const EvalResult& e) {
  if (e.tag != EvalTag::kHalted) return eval_tag_name(e.tag);
  if (e.value >= 1 && e.value <= g.count(side)) return g.label(side, static_cast<int>(e.value));
  return "invalid(" + std::to_string(e.value) + ")";
}

void describe_match(std::ostream& out, const GameTable& g, const MatchRecord& m) {
  out << m.learner1 << " vs " << m.learner2 << ": " << m.trace();
  out << " p1=" << strategy_text(g, Side::kRow, m.detail.first)
      << " p2=" << strategy_text(g, Side::kCol, m.detail.second);
  for (const auto* e : {&m.detail.first, &m.detail.second}) {
    if (e->witness) {
      out << " nonhalt_witness=" << e->witness->first_step << "," << e->witness->repeat_step;
    }
    if (e->opponent_proof) {
      out << " proof_attached=" << e->opponent_proof->first_step << ","
          << e->opponent_proof->repeat_step;
    }
  }
  out << "\n";
}

int cmd_classify(const Options& o, std::ostream& out) {
  const auto g = the_game(o);
  const auto c = classify(g);
  std::vector<Cycle> cycles;
  if (is_symmetric(g)) cycles = find_cycles(g, o.max_len);
  out << classification_report(g, c, cycles);
  if (!o.assert_class.empty()) {
    auto want = class_kind_from_name(o.assert_class);
    if (!want) throw CLI::ValidationError("--assert-class", "unknown kind " + o.assert_class);
    if (*want != c.kind) {
      throw AssertionFailure(std::string("expected ") + o.assert_class + ", got " +
                             class_kind_name(c.kind));
    }
  }
  return kOk;
}

int cmd_cycles(const Options& o, std::ostream& out) {
  const auto g = the_game(o);
  const auto cycles = find_cycles(g, o.max_len);
  for (const auto& c : cycles) out << "cycle: " << format_cycle(g, c) << "\n";
  out << "cycles=" << cycles.size() << "\n";
  return kOk;
}

int cmd_nash(const Options& o, std::ostream& out) {
  const auto g = the_game(o);
  const auto cells = pure_nash(g);
  for (const auto& c : cells) {
    out << "nash " << g.label(Side::kRow, c.i) << " " << g.label(Side::kCol, c.j) << "\n";
  }
  out << "nash_cells=" << cells.size() << "\n";
  return kOk;
}

int cmd_arena(const Options& o, std::ostream& out) {
  const auto g = the_game(o);
  if (o.p1.empty() || o.p2.empty()) throw CLI::ValidationError("--p1/--p2", "both are required");
  const auto l1 = load_learner(o.p1);
  const auto l2 = load_learner(o.p2);
  const auto m = run_match(g, l1, l2, o.fuel, the_mode(o));
  out << "game=" << g.name() << " mode=" << mode_name(m.mode) << " fuel=" << o.fuel << "\n";
  describe_match(out, g, m);
  out << m.trace() << "\n";
  return kOk;
}

int cmd_tournament(const Options& o, std::ostream& out) {
  const auto g = the_game(o);
  const auto learners = o.learners.empty() ? shipped_catalog(g, o.fuel) : load_learners(o.learners);
  const auto rep = run_tournament(g, learners, o.fuel, the_mode(o), o.threads);
  out << rep.format();
  return kOk;
}

std::string tag_of(const GameTable& g, const MatchRecord& m) {
  std::ostringstream s;
  describe_match(s, g, m);
  return s.str();
}

int demo_theorem1(const Options& o, std::ostream& out) {
  const auto g = the_game(o);
  const auto cls = classify(g);
  out << "# An exploiter reads its opponent's source, simulates the opponent playing\n"
         "# against it, and answers with a best response.\n";
  out << "game=" << g.name() << " classification=" << class_kind_name(cls.kind) << "\n";
  const auto catalog = shipped_catalog(g, o.fuel);
  const Learner exploiter{"exploiter", build_exploiter(g, Side::kRow), {}};
  out << "exploiter: " << exploiter.program.canonical() << "\n";
  for (const auto& l : catalog) {
    if (l.name == "exploiter") continue;
    out << tag_of(g, run_match(g, exploiter, l, o.fuel, the_mode(o)));
  }
  const Learner regress{"exploiter2", build_exploiter_of(exploiter.program.source(), o.fuel), {}};
  out << "# exploiter-of-exploiter simulates the exploiter at its exact budget; with\n"
         "# ten times the fuel and a move deadline it wins, at equal fuel nobody moves.\n";
  out << tag_of(g, run_match(g, regress, exploiter, 10 * o.fuel, o.fuel, Mode::kDeadline));
  out << tag_of(g, run_match(g, regress, exploiter, o.fuel, o.fuel, Mode::kDeadline));
  const auto rep = run_tournament(g, catalog, o.fuel, the_mode(o), o.threads);
  out << "# full catalog tournament (" << mode_name(the_mode(o)) << ")\n";
  out << rep.format();
  return kOk;
}

int demo_theorem2(const Options& o, std::ostream& out) {
  const auto g = the_game(o);
  out << "# The oracle winner decides halting by state repetition: a proven\n"
         "# non-halting opponent loses to strategy 1 plus the proof, a halting one\n"
         "# is best-responded. Opponents it can neither run out nor prove stuck\n"
         "# leave the match undecided.\n";
  out << "game=" << g.name() << "\n";
  const auto oracle = oracle_learner("oracle");
  std::vector<Learner> opponents;
  for (const auto& l : shipped_catalog(g, o.fuel)) {
    if (l.name != "oracle") opponents.push_back(l);
  }
  for (const auto& l : opponents) out << tag_of(g, run_match(g, oracle, l, o.fuel, the_mode(o)));
  auto all = opponents;
  all.push_back(oracle);
  const auto rep = run_tournament(g, all, o.fuel, the_mode(o), o.threads);
  out << rep.format();
  return kOk;
}

int demo_theorem3(const Options& o, std::ostream& out) {
  const auto g = the_game(o);
  out << "# Defiance never halts and never repeats a state, so no opponent can win\n"
         "# by playing or by proof while fuel exhaustion decides nothing.\n";
  out << "game=" << g.name() << "\n";
  const Learner defiance{"defiance", build_defiance(), {}};
  for (const auto& l : shipped_catalog(g, o.fuel)) {
    if (l.name == "defiance") continue;
    out << tag_of(g, run_match(g, l, defiance, o.fuel, the_mode(o)));
  }
  const auto rep = run_tournament(g, shipped_catalog(g, o.fuel), o.fuel, the_mode(o), o.threads);
  out << rep.format();
  return kOk;
}

int cmd_demo(const Options& o, std::ostream& out) {
  if (o.demo_name == "theorem1") return demo_theorem1(o, out);
  if (o.demo_name == "theorem2") return demo_theorem2(o, out);
  if (o.demo_name == "theorem3") return demo_theorem3(o, out);
  throw CLI::ValidationError("demo", "unknown demo '" + o.demo_name + "'");
}

int cmd_series(const Options& o, std::ostream& out) {
  std::vector<GameTable> games;
  if (!o.game_pos.empty()) games.push_back(load_game(o.game_pos));
  for (const auto& p : o.games) games.push_back(load_game(p));
  if (games.empty()) throw CLI::ValidationError("--game", "at least one game is required");
  const auto agg = aggregator_from_name(o.aggregate);
  out << serialize_game(compose_series(games, *agg));
  return kOk;
}

int cmd_maxmin(const Options& o, std::ostream& out) {
  const auto g = the_game(o);
  const auto r = fictitious_play(g, o.iters, o.tol);
  out << "p1=" << join(r.row.probs) << " p2=" << join(r.col.probs) << " value=" << fmt(r.value)
      << " exploitability=" << fmt(r.exploitability) << "\n";
  out << "iterations=" << r.iterations << " converged=" << (r.converged ? "true" : "false")
      << "\n";
  return kOk;
}

int cmd_crosstable(const Options& o, std::ostream& out) {
  const std::string path = !o.crosstable_path.empty() ? o.crosstable_path : o.game_pos;
  if (path.empty()) throw CLI::ValidationError("crosstable", "a crosstable file is required");
  auto [ct, g] = ingest_crosstable(read_file(path), o.margin);
  out << serialize_game(g);
  const auto cycles = find_cycles(g, o.max_len);
  for (const auto& c : cycles) out << "cycle: " << format_cycle(g, c) << "\n";
  out << "cycles=" << cycles.size() << "\n";
  return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  if (o.rows < 1 || o.cols < 1) throw CLI::ValidationError("--rows/--cols", "must be positive");
  const bool explicit_enum = o.rows * o.cols <= kEnumerationLimit;
  out << "count=" << enumerate_game_count(o.rows, o.cols) << "\n";
  out << "method=" << (explicit_enum ? "enumeration" : "closed-form") << "\n";
  return kOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Open-source competitions over win/draw/loss games", "intransit"};
  app.require_subcommand(1);

  const auto valid_modes = CLI::IsMember({"strict", "deadline"});
  auto add_game = [&](CLI::App* sub, bool positional) {
    if (positional) sub->add_option("game_file", o.game_pos, "Game file");
    sub->add_option("--game", o.games, "Game file");
  };

  auto* classify_cmd = app.add_subcommand("classify", "Classify a game");
  add_game(classify_cmd, true);
  classify_cmd->add_option("--assert-class", o.assert_class, "Fail with exit 3 unless this kind");
  classify_cmd->add_option("--max-len", o.max_len)->check(CLI::Range(3, 5));

  auto* cycles_cmd = app.add_subcommand("cycles", "Dominance cycles of a symmetric game");
  add_game(cycles_cmd, true);
  cycles_cmd->add_option("--max-len", o.max_len)->check(CLI::Range(3, 5));

  auto* nash_cmd = app.add_subcommand("nash", "Pure Nash cells");
  add_game(nash_cmd, true);

  auto* arena_cmd = app.add_subcommand("arena", "Play one open-source match");
  add_game(arena_cmd, true);
  arena_cmd->add_option("--p1", o.p1, "Learner file for player 1");
  arena_cmd->add_option("--p2", o.p2, "Learner file for player 2");
  arena_cmd->add_option("--fuel", o.fuel)->check(CLI::PositiveNumber);
  arena_cmd->add_option("--mode", o.mode)->check(valid_modes);

  auto* tour_cmd = app.add_subcommand("tournament", "Round robin over learners");
  add_game(tour_cmd, true);
  tour_cmd->add_option("--learners", o.learners, "Directory of learner files (default: catalog)");
  tour_cmd->add_option("--fuel", o.fuel)->check(CLI::PositiveNumber);
  tour_cmd->add_option("--mode", o.mode)->check(valid_modes);
  tour_cmd->add_option("--threads", o.threads)->check(CLI::NonNegativeNumber);

  auto* demo_cmd = app.add_subcommand("demo", "Run a demonstration: theorem1|theorem2|theorem3");
  demo_cmd->add_option("name", o.demo_name)->required()->check(
      CLI::IsMember({"theorem1", "theorem2", "theorem3"}));
  add_game(demo_cmd, false);
  demo_cmd->add_option("--fuel", o.fuel)->check(CLI::PositiveNumber);
  demo_cmd->add_option("--mode", o.mode)->check(valid_modes);
  demo_cmd->add_option("--threads", o.threads)->check(CLI::NonNegativeNumber);

  auto* series_cmd = app.add_subcommand("series", "Compose a multi-game series");
  add_game(series_cmd, false);
  series_cmd->add_option("--aggregate", o.aggregate)->check(CLI::IsMember({"sum", "majority", "lex"}));

  auto* maxmin_cmd = app.add_subcommand("maxmin", "Mixed equilibrium by fictitious play");
  add_game(maxmin_cmd, true);
  maxmin_cmd->add_option("--iters", o.iters)->check(CLI::PositiveNumber);
  maxmin_cmd->add_option("--tol", o.tol)->check(CLI::PositiveNumber);

  auto* ct_cmd = app.add_subcommand("crosstable", "Dominance relation of a score crosstable");
  ct_cmd->add_option("file", o.crosstable_path, "Crosstable file");
  ct_cmd->add_option("--margin", o.margin)->check(CLI::Range(0.0, 0.4999999));
  ct_cmd->add_option("--max-len", o.max_len)->check(CLI::Range(3, 5));

  auto* enum_cmd = app.add_subcommand("enumerate", "Count distinct win/draw/loss tables");
  enum_cmd->add_option("--rows", o.rows)->required();
  enum_cmd->add_option("--cols", o.cols)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(o, out);
    if (*cycles_cmd) return cmd_cycles(o, out);
    if (*nash_cmd) return cmd_nash(o, out);
    if (*arena_cmd) return cmd_arena(o, out);
    if (*tour_cmd) return cmd_tournament(o, out);
    if (*demo_cmd) return cmd_demo(o, out);
    if (*series_cmd) return cmd_series(o, out);
    if (*maxmin_cmd) return cmd_maxmin(o, out);
    if (*ct_cmd) return cmd_crosstable(o, out);
    if (*enum_cmd) return cmd_enumerate(o, out);
  } catch (const AssertionFailure& e) {
    err << "assertion failed: " << e.what() << "\n";
    return kAssertion;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kFormat;
  } catch (const InvariantError& e) {
    err << "format error: " << e.what() << "\n";
    return kFormat;
  } catch (const ComplementarityViolation& e) {
    err << "format error: " << e.what() << "\n";
    return kFormat;
  } catch (const ShapeMismatch& e) {
    err << "format error: " << e.what() << "\n";
    return kFormat;
  } catch (const NotSymmetric& e) {
    err << "format error: " << e.what() << "\n";
    return kFormat;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace intransit::cli
