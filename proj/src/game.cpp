#include "intransit/game.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace intransit {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<Outcome> parse_entry(std::string_view tok) {
  if (tok == "+1" || tok == "1" || tok == "w") return Outcome::kWin;
  if (tok == "0" || tok == "-0" || tok == "+0" || tok == "d") return Outcome::kDraw;
  if (tok == "-1" || tok == "l") return Outcome::kLoss;
  return std::nullopt;
}

int parse_count(const std::string& tok, int line, const char* what) {
  int v = 0;
  std::size_t used = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 1 || v > kMaxStrategies) {
    throw ParseError(std::string("invalid ") + what + " '" + tok + "'", line, 1);
  }
  return v;
}

}  // namespace

std::optional<Outcome> outcome_from_int(int v) {
  if (v < -1 || v > 1) return std::nullopt;
  return static_cast<Outcome>(v);
}

const char* side_name(Side s) { return s == Side::kRow ? "row" : "col"; }

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + what
                                  : what),
      message_(what),
      line_(line),
      column_(column) {}

GameTable::GameTable(std::string name, int rows, int cols, std::vector<Outcome> entries,
                     bool symmetric, std::vector<std::string> row_labels,
                     std::vector<std::string> col_labels)
    : name_(std::move(name)),
      rows_(rows),
      cols_(cols),
      entries_(std::move(entries)),
      symmetric_(symmetric),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {
  if (rows_ < 1 || cols_ < 1 || rows_ > kMaxStrategies || cols_ > kMaxStrategies) {
    throw InvariantError("game '" + name_ + "': shape must be between 1 and " +
                         std::to_string(kMaxStrategies) + " per side");
  }
  if (entries_.size() != static_cast<std::size_t>(rows_) * cols_) {
    throw InvariantError("game '" + name_ + "': entry count does not match shape");
  }
  for (Outcome o : entries_) {
    if (!outcome_from_int(to_int(o))) throw InvariantError("game '" + name_ + "': bad outcome");
  }
  if (!row_labels_.empty() && static_cast<int>(row_labels_.size()) != rows_) {
    throw InvariantError("game '" + name_ + "': row label count does not match rows");
  }
  if (!col_labels_.empty() && static_cast<int>(col_labels_.size()) != cols_) {
    throw InvariantError("game '" + name_ + "': col label count does not match cols");
  }
  if (symmetric_ && !is_symmetric(*this)) {
    throw InvariantError("game '" + name_ + "' is declared symmetric but is not antisymmetric");
  }
}

GameTable GameTable::from_ints(std::string name, const std::vector<std::vector<int>>& rows,
                               bool symmetric) {
  if (rows.empty()) throw InvariantError("empty table");
  const int ncols = static_cast<int>(rows.front().size());
  std::vector<Outcome> entries;
  entries.reserve(rows.size() * ncols);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != ncols) throw InvariantError("ragged table");
    for (int v : r) {
      auto o = outcome_from_int(v);
      if (!o) throw InvariantError("entry out of {-1, 0, +1}");
      entries.push_back(*o);
    }
  }
  return GameTable(std::move(name), static_cast<int>(rows.size()), ncols, std::move(entries),
                   symmetric);
}

Outcome GameTable::at(int i, int j) const {
  if (i < 1 || i > rows_ || j < 1 || j > cols_) {
    throw IndexError("cell (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  return cell(i - 1, j - 1);
}

std::string GameTable::label(Side side, int index) const {
  const auto& labels = side == Side::kRow ? row_labels_ : col_labels_;
  if (index >= 1 && index <= static_cast<int>(labels.size())) return labels[index - 1];
  return std::to_string(index);
}

std::optional<int> GameTable::resolve(Side side, std::string_view token) const {
  const auto& labels = side == Side::kRow ? row_labels_ : col_labels_;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] == token) return static_cast<int>(k) + 1;
  }
  int v = 0;
  std::size_t used = 0;
  try {
    v = std::stoi(std::string(token), &used);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (used != token.size() || v < 1 || v > count(side)) return std::nullopt;
  return v;
}

GameTable GameTable::role_swapped() const {
  std::vector<Outcome> swapped(entries_.size());
  std::transform(entries_.begin(), entries_.end(), swapped.begin(), negate);
  return GameTable(name_ + "-swapped", rows_, cols_, std::move(swapped), symmetric_, row_labels_,
                   col_labels_);
}

GameTable parse_game(std::string_view text) {
  std::optional<std::string> name;
  std::optional<bool> symmetric;
  int rows = 0;
  int cols = 0;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<Outcome> entries;
  std::vector<bool> seen_rows;

  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string& key = toks[0];
    if (key == "game") {
      if (toks.size() != 2) throw ParseError("expected 'game <name>'", lineno, 1);
      name = toks[1];
    } else if (key == "symmetric") {
      if (toks.size() != 2 || (toks[1] != "true" && toks[1] != "false")) {
        throw ParseError("expected 'symmetric true|false'", lineno, 1);
      }
      symmetric = toks[1] == "true";
    } else if (key == "rows") {
      if (toks.size() != 4 || toks[2] != "cols") {
        throw ParseError("expected 'rows <n> cols <m>'", lineno, 1);
      }
      rows = parse_count(toks[1], lineno, "row count");
      cols = parse_count(toks[3], lineno, "column count");
      entries.assign(static_cast<std::size_t>(rows) * cols, Outcome::kDraw);
      seen_rows.assign(rows, false);
    } else if (key == "labels_rows" || key == "labels_cols") {
      if (rows == 0) throw ParseError(key + " before shape declaration", lineno, 1);
      auto& dst = key == "labels_rows" ? row_labels : col_labels;
      const int want = key == "labels_rows" ? rows : cols;
      dst.assign(toks.begin() + 1, toks.end());
      if (static_cast<int>(dst.size()) != want) {
        throw ParseError(key + " has " + std::to_string(dst.size()) + " labels, expected " +
                             std::to_string(want),
                         lineno, 1);
      }
    } else if (key == "row") {
      if (rows == 0) throw ParseError("row before shape declaration", lineno, 1);
      if (toks.size() < 2 || toks[1].empty() || toks[1].back() != ':') {
        throw ParseError("expected 'row <i>: <entries>'", lineno, 1);
      }
      const int r = parse_count(toks[1].substr(0, toks[1].size() - 1), lineno, "row index");
      if (r > rows) throw ParseError("row index " + std::to_string(r) + " out of range", lineno, 5);
      if (seen_rows[r - 1]) throw ParseError("duplicate row " + std::to_string(r), lineno, 1);
      seen_rows[r - 1] = true;
      if (static_cast<int>(toks.size()) - 2 != cols) {
        throw ParseError("row " + std::to_string(r) + " has " + std::to_string(toks.size() - 2) +
                             " entries, expected " + std::to_string(cols),
                         lineno, 1);
      }
      for (int j = 0; j < cols; ++j) {
        auto o = parse_entry(toks[j + 2]);
        if (!o) throw ParseError("bad entry '" + toks[j + 2] + "'", lineno, 1);
        entries[static_cast<std::size_t>(r - 1) * cols + j] = *o;
      }
    } else {
      throw ParseError("unknown directive '" + key + "'", lineno, 1);
    }
    if (end == text.size()) break;
  }

  if (!name) throw ParseError("missing 'game' line");
  if (!symmetric) throw ParseError("missing 'symmetric' line");
  if (rows == 0) throw ParseError("missing 'rows/cols' line");
  for (int r = 0; r < rows; ++r) {
    if (!seen_rows[r]) throw ParseError("missing row " + std::to_string(r + 1));
  }
  return GameTable(*name, rows, cols, std::move(entries), *symmetric, std::move(row_labels),
                   std::move(col_labels));
}

GameTable load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open game file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_game(ss.str());
}

std::string serialize_game(const GameTable& table) {
  std::ostringstream out;
  out << "game " << table.name() << "\n";
  out << "symmetric " << (table.symmetric_flag() ? "true" : "false") << "\n";
  out << "rows " << table.rows() << " cols " << table.cols() << "\n";
  if (!table.row_labels().empty()) {
    out << "labels_rows";
    for (const auto& l : table.row_labels()) out << ' ' << l;
    out << "\n";
  }
  if (!table.col_labels().empty()) {
    out << "labels_cols";
    for (const auto& l : table.col_labels()) out << ' ' << l;
    out << "\n";
  }
  for (int i = 0; i < table.rows(); ++i) {
    out << "row " << i + 1 << ":";
    for (int j = 0; j < table.cols(); ++j) {
      const int v = table.value(i, j);
      out << ' ' << (v > 0 ? "+1" : v < 0 ? "-1" : "0");
    }
    out << "\n";
  }
  return out.str();
}

Outcome outcome(const GameTable& table, int i, int j) { return table.at(i, j); }

bool is_symmetric(const GameTable& table) {
  if (table.rows() != table.cols()) return false;
  for (int i = 0; i < table.rows(); ++i) {
    for (int j = i; j < table.cols(); ++j) {
      if (table.value(i, j) != -table.value(j, i)) return false;
    }
  }
  return true;
}

std::uint64_t game_count_closed_form(int rows, int cols) {
  if (rows < 1 || cols < 1) return 0;
  const long long cells = static_cast<long long>(rows) * cols;
  std::uint64_t count = 1;
  for (long long k = 0; k < cells; ++k) {
    if (count > UINT64_MAX / 3) return UINT64_MAX;
    count *= 3;
  }
  return count;
}

namespace {

// Advances a base-3 odometer over cell values {-1, 0, +1}; false on wrap.
bool odometer_step(std::vector<std::int8_t>& cells, std::size_t from) {
  for (std::size_t k = from; k < cells.size(); ++k) {
    if (cells[k] < 1) {
      ++cells[k];
      return true;
    }
    cells[k] = -1;
  }
  return false;
}

// Two bits per cell; injective for up to 32 cells.
std::uint64_t pack(const std::vector<std::int8_t>& cells) {
  std::uint64_t key = 0;
  for (auto c : cells) key = (key << 2) | static_cast<std::uint64_t>(c + 1);
  return key;
}

}  // namespace

std::uint64_t enumerate_game_count_serial(int rows, int cols) {
  if (rows < 1 || cols < 1) return 0;
  const int n = rows * cols;
  if (n > kEnumerationLimit) return game_count_closed_form(rows, cols);
  std::vector<std::int8_t> cells(n, -1);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(game_count_closed_form(rows, cols));
  do {
    seen.insert(pack(cells));
  } while (odometer_step(cells, 0));
  return seen.size();
}

std::uint64_t enumerate_game_count(int rows, int cols) {
  if (rows < 1 || cols < 1) return 0;
  const int n = rows * cols;
  if (n > kEnumerationLimit) return game_count_closed_form(rows, cols);
  // Shards are fixed prefixes of the first `lead` cells, so the per-shard
  // distinct sets are disjoint and their sizes add up.
  const int lead = std::min(n, 3);
  int shards = 1;
  for (int k = 0; k < lead; ++k) shards *= 3;
  std::vector<std::uint64_t> per_shard(shards, 0);

#pragma omp parallel for schedule(dynamic, 1)
  for (int s = 0; s < shards; ++s) {
    std::vector<std::int8_t> cells(n, -1);
    int code = s;
    for (int k = 0; k < lead; ++k) {
      cells[k] = static_cast<std::int8_t>(code % 3 - 1);
      code /= 3;
    }
    std::unordered_set<std::uint64_t> seen;
    do {
      seen.insert(pack(cells));
    } while (odometer_step(cells, lead));
    per_shard[s] = seen.size();
  }

  std::uint64_t total = 0;
  for (auto c : per_shard) total += c;
  return total;
}

}  // namespace intransit
