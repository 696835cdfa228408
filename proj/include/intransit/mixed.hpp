#pragma once

#include <vector>

#include "intransit/game.hpp"

namespace intransit {

struct MixedStrategy {
  std::vector<double> probs;

  // Non-negative entries summing to 1 within 1e-9.
  bool valid() const;
  static MixedStrategy pure(int size, int index);  // 1-based index
  static MixedStrategy uniform(int size);
};

// Best pure row payoff against `col` minus worst pure column payoff against
// `row`. Zero exactly at an equilibrium. Throws ShapeMismatch.
double exploitability(const GameTable& table, const MixedStrategy& row, const MixedStrategy& col);

// Expected payoff to player 1.
double expected_payoff(const GameTable& table, const MixedStrategy& row, const MixedStrategy& col);

struct FictitiousPlayResult {
  MixedStrategy row;
  MixedStrategy col;
  double value = 0.0;
  double exploitability = 0.0;
  long iterations = 0;
  // False when the iteration budget ran out before reaching the tolerance;
  // the mixtures are then the best seen so far.
  bool converged = false;
};

// Simultaneous fictitious play: each side best-responds to the empirical
// mixture of the other with lowest-index tie-breaking, stopping once the
// empirical pair is within `tol` of an equilibrium.
FictitiousPlayResult fictitious_play(const GameTable& table, long iters, double tol);

}  // namespace intransit
