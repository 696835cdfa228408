#pragma once

#include <optional>
#include <string>
#include <vector>

#include "intransit/game.hpp"

namespace intransit {

enum class ClassKind { kStrictDomination, kWeakDomination, kStronglyIntransitive, kOther };

const char* class_kind_name(ClassKind kind);
std::optional<ClassKind> class_kind_from_name(const std::string& name);

// A beating answer to every strategy of both sides, 1-based.
//   col_answer[i-1] = column j with entry(i, j) = -1
//   row_answer[j-1] = row i with entry(i, j) = +1
struct Witnesses {
  std::vector<int> col_answer;
  std::vector<int> row_answer;
};

struct Classification {
  ClassKind kind = ClassKind::kOther;
  std::optional<int> dominator;
  std::optional<Witnesses> witnesses;
};

struct NashCell {
  int i;
  int j;
  auto operator<=>(const NashCell&) const = default;
};

// Lowest row that wins everything (strict) or never loses (weak).
std::optional<int> find_dominator(const GameTable& table, bool strict);

// Witnesses are the lowest qualifying index per strategy.
std::optional<Witnesses> is_strongly_intransitive(const GameTable& table);

std::vector<NashCell> pure_nash(const GameTable& table);

Classification classify(const GameTable& table);

// Total best response of `side` to a fixed 1-based opposing strategy: the
// lowest index achieving the best payoff for that side (win, else draw,
// else the forced loss). Throws IndexError.
int best_response(const GameTable& table, Side side, int opponent_strategy);

// Simple directed cycle in the dominance digraph, where an edge a -> b means
// b beats a. Stored without repeating the first vertex; the smallest index
// comes first.
using Cycle = std::vector<int>;

class NotSymmetric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// All simple cycles of length 3..max_len, sorted. max_len must be 3, 4 or 5.
std::vector<Cycle> find_cycles(const GameTable& table, int max_len);

// Line-oriented report: classification, dominator, witnesses, cycles.
std::string classification_report(const GameTable& table, const Classification& c,
                                   const std::vector<Cycle>& cycles);
std::string format_cycle(const GameTable& table, const Cycle& cycle);

}  // namespace intransit
