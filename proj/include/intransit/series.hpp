#pragma once

#include <optional>
#include <string>
#include <vector>

#include "intransit/game.hpp"

namespace intransit {

// How per-game outcomes of a series combine into one overall outcome.
enum class Aggregator {
  kSumSign,        // sign of the summed payoffs
  kMajority,       // sign of (wins - losses)
  kLexicographic,  // first game that is not a draw decides
};

const char* aggregator_name(Aggregator agg);
// Accepts the CLI spellings `sum`, `majority`, `lex`.
std::optional<Aggregator> aggregator_from_name(const std::string& name);

// Throws ShapeMismatch unless all games share one shape (and at least one is
// given).
GameTable compose_series(const std::vector<GameTable>& games, Aggregator agg);

}  // namespace intransit
