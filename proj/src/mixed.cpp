#include "intransit/mixed.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace intransit {

bool MixedStrategy::valid() const {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) return false;
    sum += p;
  }
  return !probs.empty() && std::abs(sum - 1.0) <= 1e-9;
}

MixedStrategy MixedStrategy::pure(int size, int index) {
  MixedStrategy m{std::vector<double>(size, 0.0)};
  m.probs.at(index - 1) = 1.0;
  return m;
}

MixedStrategy MixedStrategy::uniform(int size) {
  return MixedStrategy{std::vector<double>(size, 1.0 / size)};
}

namespace {

void check_shape(const GameTable& t, const MixedStrategy& row, const MixedStrategy& col) {
  if (static_cast<int>(row.probs.size()) != t.rows() ||
      static_cast<int>(col.probs.size()) != t.cols()) {
    throw ShapeMismatch("mixture sizes do not match the " + std::to_string(t.rows()) + "x" +
                        std::to_string(t.cols()) + " table");
  }
}

}  // namespace

double expected_payoff(const GameTable& table, const MixedStrategy& row, const MixedStrategy& col) {
  check_shape(table, row, col);
  double v = 0.0;
  for (int i = 0; i < table.rows(); ++i) {
    for (int j = 0; j < table.cols(); ++j) v += row.probs[i] * col.probs[j] * table.value(i, j);
  }
  return v;
}

double exploitability(const GameTable& table, const MixedStrategy& row, const MixedStrategy& col) {
  check_shape(table, row, col);
  double best_row = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < table.rows(); ++i) {
    double v = 0.0;
    for (int j = 0; j < table.cols(); ++j) v += col.probs[j] * table.value(i, j);
    best_row = std::max(best_row, v);
  }
  double worst_col = std::numeric_limits<double>::infinity();
  for (int j = 0; j < table.cols(); ++j) {
    double v = 0.0;
    for (int i = 0; i < table.rows(); ++i) v += row.probs[i] * table.value(i, j);
    worst_col = std::min(worst_col, v);
  }
  return best_row - worst_col;
}

FictitiousPlayResult fictitious_play(const GameTable& table, long iters, double tol) {
  if (iters < 1) throw std::invalid_argument("iters must be at least 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const int n = table.rows();
  const int m = table.cols();

  std::vector<long> row_counts(n, 0);
  std::vector<long> col_counts(m, 0);
  // Cumulative payoff of each pure strategy against the opponent's history.
  std::vector<long> row_payoff(n, 0);
  std::vector<long> col_payoff(m, 0);

  FictitiousPlayResult best;
  best.exploitability = std::numeric_limits<double>::infinity();

  for (long t = 1; t <= iters; ++t) {
    int r = 0;
    for (int i = 1; i < n; ++i) {
      if (row_payoff[i] > row_payoff[r]) r = i;
    }
    int c = 0;
    for (int j = 1; j < m; ++j) {
      if (col_payoff[j] < col_payoff[c]) c = j;
    }
    ++row_counts[r];
    ++col_counts[c];
    for (int i = 0; i < n; ++i) row_payoff[i] += table.value(i, c);
    for (int j = 0; j < m; ++j) col_payoff[j] += table.value(r, j);

    // Exact exploitability of the empirical pair from the running sums.
    long hi = row_payoff[0];
    for (int i = 1; i < n; ++i) hi = std::max(hi, row_payoff[i]);
    long lo = col_payoff[0];
    for (int j = 1; j < m; ++j) lo = std::min(lo, col_payoff[j]);
    const double gap = static_cast<double>(hi - lo) / static_cast<double>(t);

    const bool last = t == iters;
    if (gap < best.exploitability || gap <= tol || last) {
      if (gap < best.exploitability) {
        best.row.probs.assign(n, 0.0);
        best.col.probs.assign(m, 0.0);
        for (int i = 0; i < n; ++i) best.row.probs[i] = static_cast<double>(row_counts[i]) / t;
        for (int j = 0; j < m; ++j) best.col.probs[j] = static_cast<double>(col_counts[j]) / t;
        best.exploitability = gap;
      }
      best.iterations = t;
      if (gap <= tol) {
        best.converged = true;
        break;
      }
    }
  }
  best.value = expected_payoff(table, best.row, best.col);
  return best;
}

}  // namespace intransit
