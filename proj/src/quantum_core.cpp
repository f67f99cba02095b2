#include "sdsteer/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sdsteer {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
}

}  // namespace

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim),
                                 static_cast<Eigen::Index>(dim));
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0,
       1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI,
       kI, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0,
       0.0, -1.0;
  return m;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs_diff(a, b) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && approx_equal(m, m.adjoint(), tol);
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() &&
         approx_equal(m.adjoint() * m, identity(m.rows()), tol);
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  require_square(m, "hermitian_eigenvalues");
  // Symmetrize so that 1e-16 asymmetries from products do not leak into the
  // solver, which only reads the lower triangle.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  require_square(m, "psd_sqrt");
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

EigenPair max_eigenvalue_hermitian(const ComplexMatrix& m) {
  require_square(m, "max_eigenvalue_hermitian");
  if (!is_hermitian(m, 1e-10)) {
    throw std::invalid_argument("max_eigenvalue_hermitian: matrix is not Hermitian");
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const Eigen::Index last = h.rows() - 1;
  ComplexVector v = es.eigenvectors().col(last);
  // Fix the global phase so the first non-negligible component is real
  // and positive; callers get a reproducible vector.
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return {es.eigenvalues()(last), v.normalized()};
}

// --------------------------- Bloch vectors ---------------------------------

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

double dot(const BlochVector& a, const BlochVector& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

ComplexMatrix pauli_dot(const BlochVector& n) {
  return n.x * pauli_x() + n.y * pauli_y() + n.z * pauli_z();
}

BlochVector bloch_of(const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw std::invalid_argument("bloch_of: expected a 2x2 matrix");
  }
  return {(rho * pauli_x()).trace().real(), (rho * pauli_y()).trace().real(),
          (rho * pauli_z()).trace().real()};
}

BlochVector bloch_of_ket(const ComplexVector& psi) {
  const ComplexVector v = psi.normalized();
  return bloch_of(v * v.adjoint());
}

// --------------------------- density matrices ------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_, "DensityMatrix");
  const auto d = m_.rows();
  if (d != 2 && d != 4 && d != 8) {
    throw std::invalid_argument("DensityMatrix: dimension must be 2, 4 or 8");
  }
  if (!is_hermitian(m_, kStructuralTol)) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(m_.trace() - Complex{1.0, 0.0}) > kStructuralTol) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  if (hermitian_eigenvalues(m_).minCoeff() < kPsdFloor) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_bloch(const BlochVector& r) {
  if (r.norm() > 1.0 + kStructuralTol) {
    throw std::invalid_argument("DensityMatrix::from_bloch: |r| > 1");
  }
  return DensityMatrix(0.5 * (identity(2) + pauli_dot(r)));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  if (psi.norm() == 0.0) {
    throw std::invalid_argument("DensityMatrix::pure: zero vector");
  }
  const ComplexVector v = psi.normalized();
  return DensityMatrix(v * v.adjoint());
}

// --------------------------- measurements ----------------------------------

MeasurementSetting::MeasurementSetting(BlochVector direction)
    : direction_(direction) {
  if (std::abs(direction_.norm() - 1.0) > kStructuralTol) {
    throw std::invalid_argument("MeasurementSetting: direction must have unit norm");
  }
}

ComplexMatrix projector(const MeasurementSetting& setting, int outcome) {
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("projector: outcome must be 0 or 1");
  }
  const double sign = outcome == 0 ? 1.0 : -1.0;
  return 0.5 * (identity(2) + sign * pauli_dot(setting.direction()));
}

ComplexMatrix z_projector(int outcome) {
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("z_projector: outcome must be 0 or 1");
  }
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(outcome, outcome) = 1.0;
  return p;
}

// --------------------------- two-qubit states ------------------------------

ComplexVector phi_plus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

DensityMatrix werner_state(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("werner_state: eta must lie in [0, 1]");
  }
  const ComplexVector phi = phi_plus();
  return DensityMatrix(eta * (phi * phi.adjoint()) + (1.0 - eta) * identity(4) / 4.0);
}

std::array<double, 4> bell_diagonal_weights(double tx, double ty, double tz) {
  return {(1.0 + tx - ty + tz) / 4.0, (1.0 - tx + ty + tz) / 4.0,
          (1.0 + tx + ty - tz) / 4.0, (1.0 - tx - ty - tz) / 4.0};
}

DensityMatrix bell_diagonal_state(double tx, double ty, double tz) {
  const auto w = bell_diagonal_weights(tx, ty, tz);
  if (*std::min_element(w.begin(), w.end()) < kPsdFloor) {
    throw std::invalid_argument(
        "bell_diagonal_state: (tx, ty, tz) lies outside the positivity tetrahedron");
  }
  ComplexMatrix m = identity(4);
  m += tx * tensor(pauli_x(), pauli_x());
  m += ty * tensor(pauli_y(), pauli_y());
  m += tz * tensor(pauli_z(), pauli_z());
  return DensityMatrix(m / 4.0);
}

double fidelity(const DensityMatrix& target, const DensityMatrix& actual) {
  if (target.dim() != actual.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const ComplexMatrix s = psd_sqrt(target.matrix());
  const ComplexMatrix inner = psd_sqrt(s * actual.matrix() * s);
  const double root_f = inner.trace().real();
  return root_f * root_f;
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("concurrence: expected a two-qubit state");
  }
  const ComplexMatrix yy = tensor(pauli_y(), pauli_y());
  const ComplexMatrix flipped = yy * rho.matrix().conjugate() * yy;
  // The eigenvalues of √(√ρ ρ̃ √ρ) are the square roots of the spectrum of ρρ̃.
  const ComplexMatrix s = psd_sqrt(rho.matrix());
  Eigen::VectorXd lambda = hermitian_eigenvalues(s * flipped * s).cwiseMax(0.0).cwiseSqrt();
  std::sort(lambda.data(), lambda.data() + lambda.size(), std::greater<>());
  return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

double correlator(const DensityMatrix& rho, const BlochVector& a, const BlochVector& b) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("correlator: expected a two-qubit state");
  }
  return (rho.matrix() * tensor(pauli_dot(a), pauli_dot(b))).trace().real();
}

ChshSettings werner_optimal_chsh_settings() {
  const double r = 1.0 / std::sqrt(2.0);
  return {MeasurementSetting({0.0, 0.0, 1.0}), MeasurementSetting({1.0, 0.0, 0.0}),
          MeasurementSetting({r, 0.0, r}), MeasurementSetting({-r, 0.0, r})};
}

double chsh_parameter(const DensityMatrix& rho, const ChshSettings& s) {
  const auto e = [&](const MeasurementSetting& a, const MeasurementSetting& b) {
    return correlator(rho, a.direction(), b.direction());
  };
  return e(s.a0, s.b0) + e(s.a0, s.b1) + e(s.a1, s.b0) - e(s.a1, s.b1);
}

}  // namespace sdsteer
