// strategy_tables.hpp: reference optimal single-qubit strategies. For each
// setting count, the co-optimal (strategy, probe) rows and the per-gate
// success probabilities they attain.

#pragma once

#include "sdsteer/quantum_core.hpp"
#include "sdsteer/sd_protocols.hpp"

#include <vector>

namespace sdsteer {

struct StrategyTableRow {
  GuessStrategy strategy;
  BlochVector probe;
  /// Per-gate success probability, one entry per gate (no 1/m weight).
  std::vector<double> per_gate;

  double average() const;
};

/// Rows in reference order; throws std::invalid_argument for unsupported n.
std::vector<StrategyTableRow> strategy_table(int n);

}  // namespace sdsteer
