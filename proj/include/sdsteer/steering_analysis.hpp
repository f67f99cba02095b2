// steering_analysis.hpp: local-hidden-state bounds per setting count,
// Werner-state nonlocality regimes, and η sweeps.

#pragma once

#include <ostream>
#include <vector>

namespace sdsteer {

/// Werner visibility above which entanglement holds.
double entanglement_threshold();
/// Werner visibility above which CHSH is violated.
double chsh_threshold();
/// Visibility at or below which a local model is known (external constant).
inline constexpr double kBellLocalThreshold = 0.683;

/// η*_n; throws std::invalid_argument for unsupported n.
double lhs_bound(int n);

struct NonlocalityClass {
  bool separable = false;
  bool entangled = false;
  bool steerable = false;  // at the given setting count
  bool chsh_violating = false;
  bool bell_local = false;  // known local model exists
};

/// All flags use strict inequalities above their thresholds. Throws
/// std::invalid_argument for η ∉ [0, 1] or unsupported n.
NonlocalityClass classify_werner(double eta, int n);

/// Steering certified by the Bell-diagonal protocol: tx − tz > √2.
bool bell_diagonal_steerable(double tx, double tz);

struct SweepRecord {
  double eta = 0.0;
  int n = 0;
  double p_two_qubit = 0.0;
  double p_single_bound = 0.0;
  NonlocalityClass cls;
};

/// One record per grid value in input order; the two-qubit probability is
/// the full protocol trace, the bound is the exact single-qubit optimum.
std::vector<SweepRecord> sweep_werner(const std::vector<double>& eta_grid, int n);

/// eta,n,p_two_qubit,p_single_bound,entangled,steerable,chsh_violating,bell_local
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);

}  // namespace sdsteer
