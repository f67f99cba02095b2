// sd_protocols.hpp: success probabilities of the subchannel-discrimination
// task: the single-qubit protocol (strategy enumeration and exact probe
// optimization) and the two-qubit protocol with Alice's assisted guess.

#pragma once

#include "sdsteer/channel_factory.hpp"
#include "sdsteer/quantum_core.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sdsteer {

/// How Bob guesses j from his outcome b for one gate.
enum class GuessRule : std::uint8_t {
  kConstZero,  // j = 0
  kConstOne,   // j = 1
  kSame,       // j = b
  kFlip,       // j = b ⊕ 1
};

int apply_rule(GuessRule rule, int b);
std::string_view rule_name(GuessRule rule);

/// One rule per gate index; 4^m strategies for m gates.
class GuessStrategy {
 public:
  GuessStrategy() = default;
  explicit GuessStrategy(std::vector<GuessRule> rules) : rules_(std::move(rules)) {}

  /// Base-4 decoding with the first gate as the most significant digit, so
  /// increasing index is lexicographic order over rules.
  static GuessStrategy from_index(std::uint64_t index, std::size_t gate_count);

  /// Parses "(b, b^1, 0)" / "b,b^1,0" style strings; tokens 0, 1, b, b^1.
  static GuessStrategy parse(std::string_view text);

  static std::uint64_t count(std::size_t gate_count);

  std::size_t gate_count() const { return rules_.size(); }
  GuessRule rule(std::size_t gate) const { return rules_.at(gate); }
  int guess(std::size_t gate, int b) const { return apply_rule(rules_.at(gate), b); }
  const std::vector<GuessRule>& rules() const { return rules_; }

  std::string to_string() const;
  friend bool operator==(const GuessStrategy&, const GuessStrategy&) = default;

 private:
  std::vector<GuessRule> rules_;
};

/// Alice's measurement direction for every (b, gate) pair.
class AliceDirectionTable {
 public:
  /// entries[m][b]; every direction must be a unit vector.
  explicit AliceDirectionTable(std::vector<std::array<BlochVector, 2>> entries);

  const BlochVector& direction(int b, std::size_t gate) const;
  std::size_t gate_count() const { return entries_.size(); }

 private:
  std::vector<std::array<BlochVector, 2>> entries_;
};

/// Directions along the antipodal vertex pairs for setting count n.
AliceDirectionTable alice_directions(int n);

/// b = 0 → (0, 0, −1), b = 1 → (1, 0, 0).
AliceDirectionTable bell_diagonal_alice_directions();

enum class Method { kExact, kMonteCarlo };

struct ProtocolResult {
  double success_probability = 0.0;
  Method method = Method::kExact;
  double std_error = 0.0;
  std::optional<GuessStrategy> strategy;
  std::optional<BlochVector> probe;
};

// ------------------------- single-qubit protocol ---------------------------

/// outcome[m][j][b] = Tr[U(|0⟩⟨0| ⊗ g_m ρ g_m†)U† (Π_j ⊗ Π_b)], without the
/// 1/m weight.
using SingleQubitOutcomes = std::vector<std::array<std::array<double, 2>, 2>>;

SingleQubitOutcomes single_qubit_outcomes(const DiscriminationSetup& setup,
                                          const DensityMatrix& probe);

/// Success probability averaged over the gates; throws std::invalid_argument
/// when the strategy does not have one rule per gate.
double single_qubit_success(const DiscriminationSetup& setup, const GuessStrategy& strategy,
                            const DensityMatrix& probe);
double single_qubit_success(const SubchannelFamily& family, const GuessStrategy& strategy,
                            const DensityMatrix& probe);

/// Per-gate success probabilities (no 1/m weight).
std::vector<double> single_qubit_success_per_gate(const DiscriminationSetup& setup,
                                                  const GuessStrategy& strategy,
                                                  const DensityMatrix& probe);

/// O_s with Tr[O_s ρ] = single_qubit_success(setup, s, ρ) for every ρ.
ComplexMatrix strategy_observable(const DiscriminationSetup& setup,
                                  const GuessStrategy& strategy);

/// max over 4^m strategies of λ_max(O_s); witness is the lexicographically
/// first optimal strategy and its top eigenvector as a Bloch vector.
ProtocolResult single_qubit_bound(const DiscriminationSetup& setup);
ProtocolResult single_qubit_bound(const SubchannelFamily& family);

/// Points on the unit sphere from a Fibonacci lattice.
std::vector<BlochVector> fibonacci_sphere(std::size_t count);

/// Brute-force lower bound: best pure probe on a Fibonacci grid, best rule per
/// gate from the simulated outcome table. Requires grid_size ≥ 1000.
double single_qubit_bound_grid_oracle(const DiscriminationSetup& setup, std::size_t grid_size);
double single_qubit_bound_grid_oracle(const SubchannelFamily& family, std::size_t grid_size);

// --------------------------- two-qubit protocol ----------------------------

/// One joint outcome of the two-qubit protocol.
struct JointOutcome {
  int gate = 0;  // 0-based gate index m
  int b = 0;     // Bob's signal outcome
  int j = 0;     // auxiliary outcome (the branch)
  int a = 0;     // Alice's outcome along n⃗_{b,m}
  double probability = 0.0;  // includes the 1/m gate weight
};

/// Full outcome distribution on Alice ⊗ auxiliary ⊗ signal. Throws
/// std::invalid_argument on a non-4×4 state or a table of the wrong size.
std::vector<JointOutcome> two_qubit_joint_distribution(const DensityMatrix& rho_ab,
                                                       const DiscriminationSetup& setup,
                                                       const AliceDirectionTable& table);

/// Probability that Alice's guess j = a is right.
ProtocolResult two_qubit_success(const DensityMatrix& rho_ab, const DiscriminationSetup& setup,
                                 const AliceDirectionTable& table);
ProtocolResult two_qubit_success(const DensityMatrix& rho_ab, const SubchannelFamily& family,
                                 const AliceDirectionTable& table);

// ----------------------------- Bell diagonal --------------------------------

/// (tx, tz) with ty = tx lies in the triangle (−1,−1), (0,1), (1,−1).
bool in_bell_diagonal_triangle(double tx, double tz, double tol = 1e-12);

/// Full protocol trace on ρ_BD(tx, tx, tz); throws std::invalid_argument
/// outside the triangle.
ProtocolResult bell_diagonal_success(double tx, double tz);

ProtocolResult bell_diagonal_bound();

}  // namespace sdsteer
