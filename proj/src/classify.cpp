#include "intransit/classify.hpp"

#include <algorithm>
#include <sstream>

namespace intransit {

const char* class_kind_name(ClassKind kind) {
  switch (kind) {
    case ClassKind::kStrictDomination: return "StrictDomination";
    case ClassKind::kWeakDomination: return "WeakDomination";
    case ClassKind::kStronglyIntransitive: return "StronglyIntransitive";
    case ClassKind::kOther: return "Other";
  }
  return "Other";
}

std::optional<ClassKind> class_kind_from_name(const std::string& name) {
  for (auto k : {ClassKind::kStrictDomination, ClassKind::kWeakDomination,
                 ClassKind::kStronglyIntransitive, ClassKind::kOther}) {
    if (name == class_kind_name(k)) return k;
  }
  return std::nullopt;
}

std::optional<int> find_dominator(const GameTable& table, bool strict) {
  const int threshold = strict ? 1 : 0;
  for (int i = 0; i < table.rows(); ++i) {
    bool ok = true;
    for (int j = 0; j < table.cols() && ok; ++j) ok = table.value(i, j) >= threshold;
    if (ok) return i + 1;
  }
  return std::nullopt;
}

std::optional<Witnesses> is_strongly_intransitive(const GameTable& table) {
  Witnesses w;
  w.col_answer.reserve(table.rows());
  w.row_answer.reserve(table.cols());
  for (int i = 0; i < table.rows(); ++i) {
    int found = 0;
    for (int j = 0; j < table.cols() && !found; ++j) {
      if (table.value(i, j) == -1) found = j + 1;
    }
    if (!found) return std::nullopt;
    w.col_answer.push_back(found);
  }
  for (int j = 0; j < table.cols(); ++j) {
    int found = 0;
    for (int i = 0; i < table.rows() && !found; ++i) {
      if (table.value(i, j) == 1) found = i + 1;
    }
    if (!found) return std::nullopt;
    w.row_answer.push_back(found);
  }
  return w;
}

std::vector<NashCell> pure_nash(const GameTable& table) {
  std::vector<int> col_max(table.cols(), -2);
  std::vector<int> row_min(table.rows(), 2);
  for (int i = 0; i < table.rows(); ++i) {
    for (int j = 0; j < table.cols(); ++j) {
      col_max[j] = std::max(col_max[j], table.value(i, j));
      row_min[i] = std::min(row_min[i], table.value(i, j));
    }
  }
  std::vector<NashCell> cells;
  for (int i = 0; i < table.rows(); ++i) {
    for (int j = 0; j < table.cols(); ++j) {
      const int v = table.value(i, j);
      if (v == col_max[j] && v == row_min[i]) cells.push_back({i + 1, j + 1});
    }
  }
  return cells;
}

Classification classify(const GameTable& table) {
  Classification c;
  if (auto d = find_dominator(table, true)) {
    c.kind = ClassKind::kStrictDomination;
    c.dominator = d;
  } else if (auto d = find_dominator(table, false)) {
    c.kind = ClassKind::kWeakDomination;
    c.dominator = d;
  } else if (auto w = is_strongly_intransitive(table)) {
    c.kind = ClassKind::kStronglyIntransitive;
    c.witnesses = std::move(w);
  }
  return c;
}

int best_response(const GameTable& table, Side side, int opponent_strategy) {
  if (side == Side::kRow) {
    if (opponent_strategy < 1 || opponent_strategy > table.cols()) {
      throw IndexError("column strategy " + std::to_string(opponent_strategy) + " out of range");
    }
    const int j = opponent_strategy - 1;
    int best = 0;
    for (int i = 1; i < table.rows(); ++i) {
      if (table.value(i, j) > table.value(best, j)) best = i;
    }
    return best + 1;
  }
  if (opponent_strategy < 1 || opponent_strategy > table.rows()) {
    throw IndexError("row strategy " + std::to_string(opponent_strategy) + " out of range");
  }
  const int i = opponent_strategy - 1;
  int best = 0;
  for (int j = 1; j < table.cols(); ++j) {
    if (table.value(i, j) < table.value(i, best)) best = j;
  }
  return best + 1;
}

namespace {

// Depth-first search for cycles whose smallest vertex is `start`; each cycle
// is emitted once, in its canonical rotation.
void extend(const GameTable& t, int start, int max_len, std::vector<int>& path,
            std::vector<bool>& on_path, std::vector<Cycle>& out) {
  const int last = path.back();
  for (int next = start; next < t.rows(); ++next) {
    // Edge last -> next iff next beats last.
    if (t.value(next, last) != 1) continue;
    if (next == start) {
      if (path.size() >= 3) {
        Cycle c;
        for (int v : path) c.push_back(v + 1);
        out.push_back(std::move(c));
      }
      continue;
    }
    if (on_path[next] || static_cast<int>(path.size()) >= max_len) continue;
    on_path[next] = true;
    path.push_back(next);
    extend(t, start, max_len, path, on_path, out);
    path.pop_back();
    on_path[next] = false;
  }
}

}  // namespace

std::vector<Cycle> find_cycles(const GameTable& table, int max_len) {
  if (!is_symmetric(table)) throw NotSymmetric("cycle search needs a symmetric game");
  if (max_len < 3 || max_len > 5) throw std::invalid_argument("max_len must be 3, 4 or 5");
  std::vector<Cycle> out;
  std::vector<bool> on_path(table.rows(), false);
  for (int start = 0; start < table.rows(); ++start) {
    std::vector<int> path{start};
    on_path[start] = true;
    extend(table, start, max_len, path, on_path, out);
    on_path[start] = false;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_cycle(const GameTable& table, const Cycle& cycle) {
  std::string s;
  for (int v : cycle) s += table.label(Side::kRow, v) + " -> ";
  s += table.label(Side::kRow, cycle.front());
  return s;
}

std::string classification_report(const GameTable& table, const Classification& c,
                                   const std::vector<Cycle>& cycles) {
  std::ostringstream out;
  out << "classification=" << class_kind_name(c.kind) << "\n";
  out << "dominator=" << (c.dominator ? table.label(Side::kRow, *c.dominator) : "none") << "\n";
  if (c.witnesses) {
    for (std::size_t i = 0; i < c.witnesses->col_answer.size(); ++i) {
      out << "witness col " << table.label(Side::kRow, static_cast<int>(i) + 1) << " -> "
          << table.label(Side::kCol, c.witnesses->col_answer[i]) << "\n";
    }
    for (std::size_t j = 0; j < c.witnesses->row_answer.size(); ++j) {
      out << "witness row " << table.label(Side::kCol, static_cast<int>(j) + 1) << " -> "
          << table.label(Side::kRow, c.witnesses->row_answer[j]) << "\n";
    }
  }
  for (const auto& cyc : cycles) out << "cycle: " << format_cycle(table, cyc) << "\n";
  return out.str();
}

}  // namespace intransit
