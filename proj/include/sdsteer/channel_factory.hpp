// channel_factory.hpp: subchannel families for the regularly spaced
// (Platonic-solid) measurement settings, their dilation unitaries, Kraus
// operators and gate sets, plus the Bell-diagonal variant.

#pragma once

#include "sdsteer/quantum_core.hpp"

#include <json.hpp>

#include <array>
#include <vector>

namespace sdsteer {

/// Setting counts with a known construction.
inline constexpr std::array<int, 5> kSupportedSettings{2, 3, 4, 6, 10};

bool is_supported_setting_count(int n);

/// Throws std::invalid_argument for unsupported n.
void require_supported_setting_count(int n);

/// What the discrimination protocols need: the 4×4 dilation (auxiliary
/// qubit first, signal second) and the gate set applied to the signal qubit
/// before it, each used with probability 1/m.
struct DiscriminationSetup {
  ComplexMatrix dilation;
  std::vector<ComplexMatrix> gates;

  std::size_t gate_count() const { return gates.size(); }
};

/// K_ij for i, j ∈ {0,1}, indexed kraus[i][j].
using KrausSet = std::array<std::array<ComplexMatrix, 2>, 2>;

struct SubchannelFamily {
  int n = 0;
  ComplexMatrix e;
  ComplexMatrix v1, v2, v3;
  ComplexMatrix cnot1, cnot2;
  ComplexMatrix dilation;
  ComplexMatrix a0, a1;
  KrausSet kraus;
  std::vector<ComplexMatrix> gates;

  DiscriminationSetup setup() const { return {dilation, gates}; }
  std::vector<ComplexMatrix> kraus_list() const;
};

struct BellDiagonalFamily {
  ComplexMatrix a0, a1;
  KrausSet kraus;

  /// [[A0, −A1], [A1, A0]] with the trivial gate set {𝕀}.
  DiscriminationSetup setup() const;
  std::vector<ComplexMatrix> kraus_list() const;
};

// Fixed circuit pieces shared by every n.
ComplexMatrix cnot_control_first();
ComplexMatrix cnot_control_second();
ComplexMatrix v1_gate();
ComplexMatrix v2_gate();
ComplexMatrix v3_gate();

/// Auxiliary-qubit rotation E for setting count n.
ComplexMatrix e_gate(int n);

/// Gate set g_1 … g_m for setting count n (g_1 = 𝕀).
std::vector<ComplexMatrix> gate_set(int n);

/// U = (𝕀⊗V3)·CNOT2·(𝕀⊗V2)·CNOT1·(E⊗V1)
ComplexMatrix compose_dilation(const ComplexMatrix& e);

/// [[A0, −A1], [A1, A0]]
ComplexMatrix block_dilation(const ComplexMatrix& a0, const ComplexMatrix& a1);

/// K_ij = |i⟩⟨i|·A_j
KrausSet kraus_from_blocks(const ComplexMatrix& a0, const ComplexMatrix& a1);

/// Throws std::invalid_argument for unsupported n.
SubchannelFamily build_family(int n);

BellDiagonalFamily build_bell_diagonal_family();

struct ValidationReport {
  /// ‖Σ K†K − 𝕀‖_max
  double completeness_defect = 0.0;
  /// Largest eigenvalue of K†K per subchannel; trace non-increasing iff ≤ 1.
  std::vector<double> max_kraus_gain;
  /// Minimum Choi eigenvalue per subchannel, then of the full channel.
  std::vector<double> choi_min_eigenvalues;
  double channel_choi_min_eigenvalue = 0.0;

  bool trace_non_increasing(double tol = 1e-10) const;
  bool completely_positive(double tol = 1e-10) const;
  bool trace_preserving(double tol = kStructuralTol) const;
  bool valid_channel() const;
};

/// Choi(K) = (𝕀⊗K)|Ω⟩⟨Ω|(𝕀⊗K)† with |Ω⟩ = Σ|ii⟩ unnormalized.
ComplexMatrix choi_matrix(const ComplexMatrix& kraus);

/// Throws std::invalid_argument on non-square or mismatched matrices.
ValidationReport validate_channel(const std::vector<ComplexMatrix>& kraus);

/// True when X is a nonnegative multiple of target within tol.
bool proportional_nonnegative(const ComplexMatrix& x, const ComplexMatrix& target,
                              double tol = 1e-10);

/// Checks the four conditions A_j†|i⟩⟨i|A_j ∝ |±n⃗_i⟩⟨±n⃗_i| that shape the
/// two-setting construction (sign + for j = 0, − for j = 1).
bool design_conditions_check(const ComplexMatrix& a0, const ComplexMatrix& a1,
                             const BlochVector& n0, const BlochVector& n1,
                             double tol = 1e-10);
bool design_conditions_check(const SubchannelFamily& family, const BlochVector& n0,
                             const BlochVector& n1);

// ------------------------------ JSON export --------------------------------

/// [[ [re, im], ... ], ...] row-major
nlohmann::json matrix_to_json(const ComplexMatrix& m);
/// Inverse of matrix_to_json; throws std::invalid_argument on malformed input.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json family_to_json(const SubchannelFamily& family);
nlohmann::json family_to_json(const BellDiagonalFamily& family);

}  // namespace sdsteer
