#include "intransit/crosstable.hpp"

#include <cmath>

namespace intransit {

namespace {

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& f : out) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace

Crosstable parse_crosstable(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> lines;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    if (line.front() == '#') continue;
    lines.emplace_back(lineno, line);
  }
  if (lines.empty()) throw ParseError("empty crosstable");

  auto header = split_csv(lines.front().second);
  if (header.empty() || header.front() != "names") {
    throw ParseError("header must start with 'names'", lines.front().first, 1);
  }
  Crosstable ct;
  ct.names.assign(header.begin() + 1, header.end());
  const std::size_t k = ct.names.size();
  if (k == 0) throw ParseError("no participants", lines.front().first, 1);
  if (lines.size() - 1 != k) {
    throw ParseError("expected " + std::to_string(k) + " score rows, got " +
                     std::to_string(lines.size() - 1));
  }
  ct.scores.assign(k, std::vector<std::optional<double>>(k));

  for (std::size_t a = 0; a < k; ++a) {
    const auto [ln, line] = lines[a + 1];
    auto fields = split_csv(line);
    if (fields.size() != k + 1) {
      throw ParseError("row has " + std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(k + 1),
                       ln, 1);
    }
    if (fields.front() != ct.names[a]) {
      throw ParseError("row " + std::to_string(a + 1) + " is labelled '" + fields.front() +
                           "', expected '" + ct.names[a] + "'",
                       ln, 1);
    }
    for (std::size_t b = 0; b < k; ++b) {
      const std::string& f = fields[b + 1];
      if (f.empty()) continue;
      if (a == b) throw ParseError("diagonal cell must be empty", ln, 1);
      double v = 0.0;
      std::size_t used = 0;
      try {
        v = std::stod(f, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != f.size() || !(v >= 0.0 && v <= 1.0)) {
        throw ParseError("score '" + f + "' is not a fraction in [0, 1]", ln, 1);
      }
      ct.scores[a][b] = v;
    }
  }

  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const auto& ab = ct.scores[a][b];
      const auto& ba = ct.scores[b][a];
      if (ab.has_value() != ba.has_value()) {
        throw ComplementarityViolation("only one of " + ct.names[a] + "/" + ct.names[b] +
                                       " scores is present");
      }
      if (ab && std::abs(*ab + *ba - 1.0) > kComplementarityTolerance) {
        throw ComplementarityViolation(ct.names[a] + " vs " + ct.names[b] +
                                       " scores do not sum to 1");
      }
    }
  }
  return ct;
}

GameTable dominance_table(const Crosstable& table, double margin, const std::string& name) {
  if (!(margin >= 0.0 && margin < 0.5)) throw std::invalid_argument("margin must be in [0, 0.5)");
  const int k = static_cast<int>(table.names.size());
  std::vector<Outcome> entries(static_cast<std::size_t>(k) * k, Outcome::kDraw);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const auto& s = table.scores[a][b];
      if (!s) continue;
      Outcome o = Outcome::kDraw;
      if (*s > 0.5 + margin) {
        o = Outcome::kWin;
      } else if (*s < 0.5 - margin) {
        o = Outcome::kLoss;
      }
      entries[static_cast<std::size_t>(a) * k + b] = o;
    }
  }
  // Complementarity within 1e-6 can still straddle a threshold; settle each
  // pair from the lower-indexed side so the table is antisymmetric.
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      entries[static_cast<std::size_t>(b) * k + a] =
          negate(entries[static_cast<std::size_t>(a) * k + b]);
    }
  }
  return GameTable(name, k, k, std::move(entries), true, table.names, table.names);
}

std::pair<Crosstable, GameTable> ingest_crosstable(std::string_view text, double margin,
                                                   const std::string& name) {
  auto ct = parse_crosstable(text);
  auto g = dominance_table(ct, margin, name);
  return {std::move(ct), std::move(g)};
}

}  // namespace intransit
