#include "intransit/series.hpp"

namespace intransit {

const char* aggregator_name(Aggregator agg) {
  switch (agg) {
    case Aggregator::kSumSign: return "sum";
    case Aggregator::kMajority: return "majority";
    case Aggregator::kLexicographic: return "lex";
  }
  return "?";
}

std::optional<Aggregator> aggregator_from_name(const std::string& name) {
  if (name == "sum") return Aggregator::kSumSign;
  if (name == "majority") return Aggregator::kMajority;
  if (name == "lex") return Aggregator::kLexicographic;
  return std::nullopt;
}

namespace {

int sign(int v) { return (v > 0) - (v < 0); }

}  // namespace

GameTable compose_series(const std::vector<GameTable>& games, Aggregator agg) {
  if (games.empty()) throw ShapeMismatch("series needs at least one game");
  const int rows = games.front().rows();
  const int cols = games.front().cols();
  for (const auto& g : games) {
    if (g.rows() != rows || g.cols() != cols) {
      throw ShapeMismatch("game '" + g.name() + "' is " + std::to_string(g.rows()) + "x" +
                          std::to_string(g.cols()) + ", expected " + std::to_string(rows) + "x" +
                          std::to_string(cols));
    }
  }

  std::vector<Outcome> entries(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      int overall = 0;
      switch (agg) {
        case Aggregator::kSumSign:
        case Aggregator::kMajority: {
          // Payoffs are +-1/0, so the summed payoff equals wins - losses.
          int total = 0;
          for (const auto& g : games) total += g.value(i, j);
          overall = sign(total);
          break;
        }
        case Aggregator::kLexicographic:
          for (const auto& g : games) {
            if (g.value(i, j) != 0) {
              overall = g.value(i, j);
              break;
            }
          }
          break;
      }
      entries[static_cast<std::size_t>(i) * cols + j] = static_cast<Outcome>(overall);
    }
  }

  std::string name = games.front().name();
  if (games.size() > 1) {
    name = "series";
    for (const auto& g : games) name += "-" + g.name();
  }
  bool symmetric = true;
  for (const auto& g : games) symmetric = symmetric && g.symmetric_flag();
  symmetric = symmetric && is_symmetric(GameTable(name, rows, cols, entries));
  const auto& first = games.front();
  return GameTable(std::move(name), rows, cols, std::move(entries), symmetric, first.row_labels(),
                   first.col_labels());
}

}  // namespace intransit
