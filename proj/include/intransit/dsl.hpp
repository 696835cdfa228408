#pragma once

// Strategy programs: a small deterministic language for learners that read
// their opponent's source. Evaluation is a small-step machine metered in
// fuel; every step costs one unit, nested simulations draw on the same pool.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intransit/game.hpp"

namespace intransit {

namespace dsl {

enum class Op : std::uint8_t { kConst, kBestResp, kSim, kMatch, kIf, kVar, kLoop, kGrow };
enum class Cmp : std::uint8_t { kEq, kLt, kGt };
enum class SrcKind : std::uint8_t { kOpp, kSelf, kQuoted };

struct Program;

struct Src {
  SrcKind kind = SrcKind::kOpp;
  std::shared_ptr<const Program> quoted;  // kQuoted only
};

struct Node {
  Op op = Op::kConst;
  std::int64_t value = 0;  // kConst literal, kVar de Bruijn index, kSim budget
  bool bare = false;       // kConst written as a bare INT
  bool rest = false;       // kSim budget is `rest`
  Cmp cmp = Cmp::kEq;
  std::string name;        // kVar name, kMatch binder
  int a = -1, b = -1, c = -1, d = -1;
  Src prog;                // kSim program operand
  Src against;             // kSim opponent operand
};

struct Program {
  std::vector<Node> nodes;
  int root = -1;
  std::string canonical;
};

}  // namespace dsl

// Reserve kept by a simulating program after granting fuel to a child.
inline constexpr std::int64_t kSimReserve = 16;

// Source text handed to opponents of host-level learners.
inline constexpr std::string_view kOracleSource = "@oracle";

class StrategyProgram {
 public:
  StrategyProgram() = default;
  StrategyProgram(std::string source, std::shared_ptr<const dsl::Program> ast)
      : source_(std::move(source)), ast_(std::move(ast)) {}

  const std::string& source() const { return source_; }
  const dsl::Program& ast() const { return *ast_; }
  std::shared_ptr<const dsl::Program> ast_ptr() const { return ast_; }
  // Canonical pretty-printed form.
  const std::string& canonical() const { return ast_->canonical; }

 private:
  std::string source_;
  std::shared_ptr<const dsl::Program> ast_;
};

// Throws ParseError carrying line and column.
StrategyProgram parse_program(std::string_view text);

std::string print_program(const dsl::Program& program);

// Escapes a program text for use as a quoted `sim` operand.
std::string quote_source(std::string_view text);

struct EvalEnv {
  const GameTable* game = nullptr;
  Side side = Side::kRow;
  std::string opponent_source;
  std::string self_source;
  std::int64_t fuel = 0;
  std::int64_t memory_cap = std::int64_t{16} << 20;
};

struct NonHaltWitness {
  std::int64_t first_step = 0;
  std::int64_t repeat_step = 0;
  std::uint64_t state_hash = 0;
  std::size_t state_bytes = 0;
};

enum class EvalTag { kHalted, kFuelExhausted, kProvenNonHalting, kRuntimeFault };

const char* eval_tag_name(EvalTag tag);

struct EvalResult {
  EvalTag tag = EvalTag::kFuelExhausted;
  std::int64_t value = 0;  // kHalted
  std::optional<NonHaltWitness> witness;
  std::int64_t fuel_used = 0;
  std::string fault;  // kRuntimeFault
  // Host learners only: a non-halting proof about the opponent, attached to
  // a halted result.
  std::optional<NonHaltWitness> opponent_proof;

  bool halted() const { return tag == EvalTag::kHalted; }
};

EvalResult evaluate(const StrategyProgram& program, const EvalEnv& env);

// Runs the program tracking visited machine states. A returned witness is a
// proof that the evaluation never halts; no witness proves nothing.
std::optional<NonHaltWitness> prove_nonhalt(const StrategyProgram& program, const EvalEnv& env);

}  // namespace intransit
