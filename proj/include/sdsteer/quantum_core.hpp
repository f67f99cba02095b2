// quantum_core.hpp: dense complex matrices, qubit states, projectors and
// two-qubit figures of merit (fidelity, concurrence, CHSH).

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>

namespace sdsteer {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kSpectralTol = 1e-9;
inline constexpr double kPsdFloor = -1e-10;

// --------------------------- matrix helpers --------------------------------

ComplexMatrix identity(std::size_t dim);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Kronecker product a ⊗ b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entry modulus of a − b. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Entrywise comparison with an absolute tolerance.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kStructuralTol);

bool is_hermitian(const ComplexMatrix& m, double tol = kStructuralTol);
bool is_unitary(const ComplexMatrix& m, double tol = kStructuralTol);

/// Eigenvalues of a Hermitian matrix in ascending order.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m);

/// Square root of a positive semidefinite matrix; negative eigenvalues
/// (numerical noise) are clamped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

struct EigenPair {
  double value;
  ComplexVector vector;
};

/// Largest eigenvalue and a unit eigenvector of a Hermitian matrix.
/// Throws std::invalid_argument if m is not Hermitian within 1e-10.
EigenPair max_eigenvalue_hermitian(const ComplexMatrix& m);

// --------------------------- Bloch vectors ---------------------------------

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  BlochVector operator-() const { return {-x, -y, -z}; }
  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

double dot(const BlochVector& a, const BlochVector& b);

/// n⃗·σ⃗
ComplexMatrix pauli_dot(const BlochVector& n);

/// Bloch vector (Tr ρσx, Tr ρσy, Tr ρσz) of a 2×2 operator.
BlochVector bloch_of(const ComplexMatrix& rho);

/// Bloch vector of the pure state |ψ⟩ (normalized internally).
BlochVector bloch_of_ket(const ComplexVector& psi);

// --------------------------- density matrices ------------------------------

/// A validated density matrix on 2, 4 or 8 dimensions: Hermitian and unit
/// trace within 1e-12, eigenvalues ≥ −1e-10.
class DensityMatrix {
 public:
  /// Throws std::invalid_argument when any invariant fails.
  explicit DensityMatrix(ComplexMatrix m);

  /// ½(𝕀 + r⃗·σ⃗); requires |r| ≤ 1 + 1e-12.
  static DensityMatrix from_bloch(const BlochVector& r);
  static DensityMatrix pure(const ComplexVector& psi);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

// --------------------------- measurements ----------------------------------

/// Projective two-outcome measurement along a unit direction. Outcome 0 is
/// the +n⃗ eigenprojector, outcome 1 the −n⃗ one.
class MeasurementSetting {
 public:
  /// Throws std::invalid_argument unless |n| = 1 within 1e-12.
  explicit MeasurementSetting(BlochVector direction);

  const BlochVector& direction() const { return direction_; }

 private:
  BlochVector direction_;
};

/// (𝕀 + (−1)^outcome n⃗·σ⃗)/2
ComplexMatrix projector(const MeasurementSetting& setting, int outcome);

/// |outcome⟩⟨outcome| in the computational basis.
ComplexMatrix z_projector(int outcome);

// --------------------------- two-qubit states ------------------------------

/// (|00⟩ + |11⟩)/√2, i.e. |HH⟩+|VV⟩ with H ↔ 0.
ComplexVector phi_plus();

/// η|Φ⟩⟨Φ| + (1−η)𝕀/4; requires 0 ≤ η ≤ 1.
DensityMatrix werner_state(double eta);

/// Closed-form spectrum of ρ_BD in the Bell basis (Φ+, Φ−, Ψ+, Ψ−).
std::array<double, 4> bell_diagonal_weights(double tx, double ty, double tz);

/// ¼(𝕀 + Σ t_i σ_i⊗σ_i); throws std::invalid_argument when (tx,ty,tz) lies
/// outside the positivity tetrahedron.
DensityMatrix bell_diagonal_state(double tx, double ty, double tz);

/// Uhlmann fidelity [Tr √(√ρt ρe √ρt)]².
double fidelity(const DensityMatrix& target, const DensityMatrix& actual);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

/// ⟨a⃗·σ⃗ ⊗ b⃗·σ⃗⟩_ρ
double correlator(const DensityMatrix& rho, const BlochVector& a,
                  const BlochVector& b);

struct ChshSettings {
  MeasurementSetting a0;
  MeasurementSetting a1;
  MeasurementSetting b0;
  MeasurementSetting b1;
};

/// Settings in the x–z plane that give S = 2√2 on |Φ⟩.
ChshSettings werner_optimal_chsh_settings();

/// S = E(a0,b0) + E(a0,b1) + E(a1,b0) − E(a1,b1)
double chsh_parameter(const DensityMatrix& rho, const ChshSettings& settings);

}  // namespace sdsteer
