#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace intransit {

// Payoff to player 1 of a single play: loss, draw or win.
enum class Outcome : std::int8_t { kLoss = -1, kDraw = 0, kWin = 1 };

inline int to_int(Outcome o) { return static_cast<int>(o); }
inline Outcome negate(Outcome o) { return static_cast<Outcome>(-static_cast<int>(o)); }
std::optional<Outcome> outcome_from_int(int v);

enum class Side { kRow, kCol };

inline Side opposite(Side s) { return s == Side::kRow ? Side::kCol : Side::kRow; }
const char* side_name(Side s);

// Largest number of strategies accepted on either side.
inline constexpr int kMaxStrategies = 10000;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }
  // The description without the position prefix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Finite win/draw/loss two-player zero-sum game in normal form.
//
// Strategy indices in the public API are 1-based, as in game files and
// reports. Immutable after construction.
class GameTable {
 public:
  // Throws InvariantError if the shape is invalid or if `symmetric` is set
  // and the entries are not antisymmetric.
  GameTable(std::string name, int rows, int cols, std::vector<Outcome> entries,
            bool symmetric = false, std::vector<std::string> row_labels = {},
            std::vector<std::string> col_labels = {});

  // Convenience for tests and literals: entries given as -1/0/+1 ints.
  static GameTable from_ints(std::string name, const std::vector<std::vector<int>>& rows,
                             bool symmetric = false);

  const std::string& name() const { return name_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int count(Side side) const { return side == Side::kRow ? rows_ : cols_; }
  bool symmetric_flag() const { return symmetric_; }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  // 1-based, bounds-checked.
  Outcome at(int i, int j) const;
  // 0-based, unchecked. Hot loops only.
  Outcome cell(int i, int j) const { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  int value(int i, int j) const { return to_int(cell(i, j)); }

  const std::vector<Outcome>& entries() const { return entries_; }

  // Label of a 1-based strategy, falling back to its index.
  std::string label(Side side, int index) const;
  // Resolves a label or a 1-based number to a 1-based index.
  std::optional<int> resolve(Side side, std::string_view token) const;

  // Payoffs from the other seat: same strategy grid, every entry negated.
  GameTable role_swapped() const;

  bool operator==(const GameTable& other) const = default;

 private:
  std::string name_;
  int rows_;
  int cols_;
  std::vector<Outcome> entries_;
  bool symmetric_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

GameTable parse_game(std::string_view text);
GameTable load_game(const std::string& path);
// Canonical game file text; parse_game(serialize_game(g)) == g.
std::string serialize_game(const GameTable& table);

// 1-based lookup; throws IndexError when out of range.
Outcome outcome(const GameTable& table, int i, int j);

bool is_symmetric(const GameTable& table);

// Closed form 3^(rows*cols) as a saturating 64-bit value.
std::uint64_t game_count_closed_form(int rows, int cols);

// Number of distinct rows x cols win/draw/loss tables. When rows*cols is at
// most kEnumerationLimit every table is materialized and deduplicated;
// beyond that the closed form is returned.
inline constexpr int kEnumerationLimit = 12;
std::uint64_t enumerate_game_count(int rows, int cols);
// Serial reference of the enumeration kernel.
std::uint64_t enumerate_game_count_serial(int rows, int cols);

}  // namespace intransit
