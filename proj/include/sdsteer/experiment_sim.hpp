// experiment_sim.hpp: finite-count emulation of the two-qubit protocol and
// Werner-visibility estimation by fidelity maximization.
//
// Counts are drawn from std::mt19937_64 seeded with the caller's seed and
// std::poisson_distribution, one independent draw per joint outcome in the
// fixed order (gate, b, j, a). Runs are reproducible for a given seed and
// standard library.

#pragma once

#include "sdsteer/channel_factory.hpp"
#include "sdsteer/quantum_core.hpp"
#include "sdsteer/sd_protocols.hpp"

#include <cstdint>
#include <ostream>
#include <vector>

namespace sdsteer {

struct CountRecord {
  int gate = 0;
  int b = 0;
  int j = 0;
  int a = 0;
  std::uint64_t counts = 0;
};

struct EstimateResult {
  double p_hat = 0.0;
  /// √(p̂(1−p̂)/N) with N the realized total count.
  double std_error = 0.0;
  std::uint64_t total_counts = 0;
  std::vector<CountRecord> counts;
};

/// Poisson means are total_pairs × exact joint probability. A run with no
/// counts at all reports p_hat = 0 and std_error = 0. Throws
/// std::invalid_argument when total_pairs < 1.
EstimateResult simulate_run(const DensityMatrix& rho_ab, const DiscriminationSetup& setup,
                            const AliceDirectionTable& table, std::uint64_t total_pairs,
                            std::uint64_t seed);
EstimateResult simulate_run(const DensityMatrix& rho_ab, const SubchannelFamily& family,
                            const AliceDirectionTable& table, std::uint64_t total_pairs,
                            std::uint64_t seed);

struct EtaFit {
  double eta = 0.0;
  double fidelity = 0.0;
};

/// argmax over η ∈ [0, 1] of F(werner(η), ρ_e) by golden-section search to
/// 1e-6. √F is concave in η, so the search finds the global maximum.
EtaFit estimate_eta_by_fidelity(const DensityMatrix& rho_e);

struct RunRow {
  double eta = 0.0;
  int n = 0;
  std::uint64_t total_pairs = 0;
  std::uint64_t seed = 0;
  EstimateResult result;
};

/// eta,n,total_pairs,seed,p_hat,std_error
void write_run_csv(std::ostream& os, const std::vector<RunRow>& rows);

}  // namespace sdsteer
