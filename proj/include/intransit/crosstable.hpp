#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intransit/game.hpp"

namespace intransit {

class ComplementarityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pairwise score fractions of a round-robin: scores[a][b] is a's share of
// the points against b. The diagonal is empty.
struct Crosstable {
  std::vector<std::string> names;
  std::vector<std::vector<std::optional<double>>> scores;
};

inline constexpr double kComplementarityTolerance = 1e-6;

// Parses `names,A,B,...` followed by one `A,,0.55,...` line per participant.
// Throws ParseError or ComplementarityViolation.
Crosstable parse_crosstable(std::string_view text);

// +1 above 0.5 + margin, -1 below 0.5 - margin, else a draw. Missing pairs
// are draws. Requires 0 <= margin < 0.5.
GameTable dominance_table(const Crosstable& table, double margin, const std::string& name);

std::pair<Crosstable, GameTable> ingest_crosstable(std::string_view text, double margin,
                                                   const std::string& name = "crosstable");

}  // namespace intransit
