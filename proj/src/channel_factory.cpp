#include "sdsteer/channel_factory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sdsteer {

namespace {

constexpr Complex kI{0.0, 1.0};

ComplexMatrix rotation(double c, double s) {
  ComplexMatrix m(2, 2);
  m << c, -s,
       s, c;
  return m;
}

}  // namespace

bool is_supported_setting_count(int n) {
  return std::find(kSupportedSettings.begin(), kSupportedSettings.end(), n) !=
         kSupportedSettings.end();
}

void require_supported_setting_count(int n) {
  if (!is_supported_setting_count(n)) {
    throw std::invalid_argument("unsupported setting count " + std::to_string(n) +
                                " (expected one of 2, 3, 4, 6, 10)");
  }
}

ComplexMatrix cnot_control_first() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

ComplexMatrix cnot_control_second() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 3) = m(2, 2) = m(3, 1) = 1.0;
  return m;
}

ComplexMatrix v1_gate() {
  const double r = 1.0 / std::sqrt(2.0);
  return rotation(r, r);
}

ComplexMatrix v2_gate() {
  const double r = 1.0 / std::sqrt(2.0);
  return rotation(r, -r);
}

ComplexMatrix v3_gate() { return v1_gate(); }

ComplexMatrix e_gate(int n) {
  require_supported_setting_count(n);
  using std::sqrt;
  switch (n) {
    case 2:
    case 3:
      return rotation(std::cos(std::numbers::pi / 8), std::sin(std::numbers::pi / 8));
    case 4:
    case 10: {
      const double s3 = std::numbers::sqrt3;
      return rotation(sqrt((3.0 + s3) / 6.0), sqrt((3.0 - s3) / 6.0));
    }
    default: {  // n == 6
      const double r = sqrt(2.0 - 2.0 / sqrt(5.0));
      return rotation(0.5 * sqrt(2.0 + r), 0.5 * sqrt(2.0 - r));
    }
  }
}

std::vector<ComplexMatrix> gate_set(int n) {
  require_supported_setting_count(n);
  const double s2 = std::numbers::sqrt2;
  std::vector<ComplexMatrix> gates{identity(2)};
  switch (n) {
    case 2:
      break;
    case 3: {
      ComplexMatrix g2(2, 2), g3(2, 2);
      g2 << (kI + s2) / 2.0, kI / 2.0,
            kI / 2.0, (-kI + s2) / 2.0;
      g3 << (kI - s2) / 2.0, -kI / 2.0,
            -kI / 2.0, -(kI + s2) / 2.0;
      gates.push_back(g2);
      gates.push_back(g3);
      break;
    }
    case 4: {
      ComplexMatrix g2(2, 2);
      g2 << 1.0, 0.0,
            0.0, -kI;
      gates.push_back(g2);
      break;
    }
    case 6: {
      ComplexMatrix g2(2, 2), g3(2, 2);
      g2 << 1.0, -kI,
            1.0, kI;
      g3 << 1.0, 1.0,
            kI, -kI;
      gates.push_back(g2 / s2);
      gates.push_back(g3 / s2);
      break;
    }
    case 10: {
      const double s5 = std::sqrt(5.0);
      ComplexMatrix g2(2, 2);
      g2 << (1.0 + s5 - 2.0 * kI) / 4.0, -(1.0 - kI) * (s5 - 1.0) / (4.0 * s2),
            (1.0 + kI) * (s5 - 1.0) / (4.0 * s2), (1.0 + s5 + 2.0 * kI) / 4.0;
      ComplexMatrix power = g2;
      for (int k = 0; k < 4; ++k) {
        gates.push_back(power);
        power = power * g2;
      }
      break;
    }
  }
  return gates;
}

ComplexMatrix compose_dilation(const ComplexMatrix& e) {
  const ComplexMatrix id = identity(2);
  return tensor(id, v3_gate()) * cnot_control_second() * tensor(id, v2_gate()) *
         cnot_control_first() * tensor(e, v1_gate());
}

ComplexMatrix block_dilation(const ComplexMatrix& a0, const ComplexMatrix& a1) {
  ComplexMatrix u(4, 4);
  u.topLeftCorner(2, 2) = a0;
  u.topRightCorner(2, 2) = -a1;
  u.bottomLeftCorner(2, 2) = a1;
  u.bottomRightCorner(2, 2) = a0;
  return u;
}

KrausSet kraus_from_blocks(const ComplexMatrix& a0, const ComplexMatrix& a1) {
  KrausSet k;
  for (int i = 0; i < 2; ++i) {
    k[i][0] = z_projector(i) * a0;
    k[i][1] = z_projector(i) * a1;
  }
  return k;
}

namespace {

std::vector<ComplexMatrix> flatten(const KrausSet& k) {
  return {k[0][0], k[0][1], k[1][0], k[1][1]};
}

}  // namespace

std::vector<ComplexMatrix> SubchannelFamily::kraus_list() const { return flatten(kraus); }

std::vector<ComplexMatrix> BellDiagonalFamily::kraus_list() const { return flatten(kraus); }

DiscriminationSetup BellDiagonalFamily::setup() const {
  return {block_dilation(a0, a1), {identity(2)}};
}

SubchannelFamily build_family(int n) {
  require_supported_setting_count(n);
  SubchannelFamily f;
  f.n = n;
  f.e = e_gate(n);
  f.v1 = v1_gate();
  f.v2 = v2_gate();
  f.v3 = v3_gate();
  f.cnot1 = cnot_control_first();
  f.cnot2 = cnot_control_second();
  f.dilation = compose_dilation(f.e);
  // Only the first block column acts on the auxiliary |0⟩ input; the other
  // column is checked against the block form by the tests rather than
  // being normalized here.
  f.a0 = f.dilation.topLeftCorner(2, 2);
  f.a1 = f.dilation.bottomLeftCorner(2, 2);
  f.kraus = kraus_from_blocks(f.a0, f.a1);
  f.gates = gate_set(n);
  return f;
}

BellDiagonalFamily build_bell_diagonal_family() {
  const double r = 1.0 / std::sqrt(2.0);
  BellDiagonalFamily f;
  f.a0.resize(2, 2);
  f.a1.resize(2, 2);
  f.a0 << r, 0.0,
          0.5, 0.5;
  f.a1 << 0.0, r,
          0.5, -0.5;
  f.kraus = kraus_from_blocks(f.a0, f.a1);
  return f;
}

// ------------------------------ validation ---------------------------------

bool ValidationReport::trace_non_increasing(double tol) const {
  return std::all_of(max_kraus_gain.begin(), max_kraus_gain.end(),
                     [tol](double g) { return g <= 1.0 + tol; });
}

bool ValidationReport::completely_positive(double tol) const {
  return channel_choi_min_eigenvalue >= -tol &&
         std::all_of(choi_min_eigenvalues.begin(), choi_min_eigenvalues.end(),
                     [tol](double v) { return v >= -tol; });
}

bool ValidationReport::trace_preserving(double tol) const {
  return completeness_defect <= tol;
}

bool ValidationReport::valid_channel() const {
  return trace_preserving() && trace_non_increasing() && completely_positive();
}

ComplexMatrix choi_matrix(const ComplexMatrix& kraus) {
  if (kraus.rows() != kraus.cols()) {
    throw std::invalid_argument("choi_matrix: Kraus operator must be square");
  }
  const auto d = kraus.rows();
  ComplexVector omega = ComplexVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) omega(i * d + i) = 1.0;
  const ComplexVector v = tensor(identity(d), kraus) * omega;
  return v * v.adjoint();
}

ValidationReport validate_channel(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) {
    throw std::invalid_argument("validate_channel: no Kraus operators");
  }
  const auto d = kraus.front().rows();
  for (const auto& k : kraus) {
    if (k.rows() != k.cols() || k.rows() != d) {
      throw std::invalid_argument("validate_channel: Kraus operators must be square and equal-sized");
    }
  }
  ValidationReport report;
  ComplexMatrix completeness = ComplexMatrix::Zero(d, d);
  ComplexMatrix total_choi = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus) {
    const ComplexMatrix gain = k.adjoint() * k;
    completeness += gain;
    report.max_kraus_gain.push_back(hermitian_eigenvalues(gain).maxCoeff());
    const ComplexMatrix c = choi_matrix(k);
    total_choi += c;
    report.choi_min_eigenvalues.push_back(hermitian_eigenvalues(c).minCoeff());
  }
  report.completeness_defect = max_abs_diff(completeness, identity(d));
  report.channel_choi_min_eigenvalue = hermitian_eigenvalues(total_choi).minCoeff();
  return report;
}

bool proportional_nonnegative(const ComplexMatrix& x, const ComplexMatrix& target,
                              double tol) {
  const Complex overlap = (target.adjoint() * target).trace();
  if (std::abs(overlap) == 0.0) return false;
  const Complex c = (target.adjoint() * x).trace() / overlap;
  if (std::abs(c.imag()) > tol || c.real() < -tol) return false;
  return max_abs_diff(x, c.real() * target) <= tol;
}

bool design_conditions_check(const ComplexMatrix& a0, const ComplexMatrix& a1,
                             const BlochVector& n0, const BlochVector& n1, double tol) {
  const MeasurementSetting s0(n0);
  const MeasurementSetting s1(n1);
  const auto conj = [](const ComplexMatrix& a, int i) {
    return ComplexMatrix(a.adjoint() * z_projector(i) * a);
  };
  return proportional_nonnegative(conj(a0, 0), projector(s0, 0), tol) &&
         proportional_nonnegative(conj(a1, 0), projector(s0, 1), tol) &&
         proportional_nonnegative(conj(a0, 1), projector(s1, 0), tol) &&
         proportional_nonnegative(conj(a1, 1), projector(s1, 1), tol);
}

bool design_conditions_check(const SubchannelFamily& family, const BlochVector& n0,
                             const BlochVector& n1) {
  return design_conditions_check(family.a0, family.a1, n0, n1);
}

// ------------------------------ JSON export --------------------------------

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw std::invalid_argument("matrix JSON must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix JSON rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& entry = row[static_cast<std::size_t>(c)];
      if (entry.is_number()) {
        m(r, c) = entry.get<double>();
      } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
                 entry[1].is_number()) {
        m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
      } else {
        throw std::invalid_argument("matrix JSON entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

namespace {

nlohmann::json kraus_to_json(const KrausSet& k) {
  nlohmann::json out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out["K" + std::to_string(i) + std::to_string(j)] = matrix_to_json(k[i][j]);
    }
  }
  return out;
}

}  // namespace

nlohmann::json family_to_json(const SubchannelFamily& f) {
  nlohmann::json out;
  out["n"] = f.n;
  out["E"] = matrix_to_json(f.e);
  out["V1"] = matrix_to_json(f.v1);
  out["V2"] = matrix_to_json(f.v2);
  out["V3"] = matrix_to_json(f.v3);
  out["CNOT1"] = matrix_to_json(f.cnot1);
  out["CNOT2"] = matrix_to_json(f.cnot2);
  out["U"] = matrix_to_json(f.dilation);
  out["A0"] = matrix_to_json(f.a0);
  out["A1"] = matrix_to_json(f.a1);
  out["kraus"] = kraus_to_json(f.kraus);
  auto gates = nlohmann::json::array();
  for (const auto& g : f.gates) gates.push_back(matrix_to_json(g));
  out["gates"] = std::move(gates);
  return out;
}

nlohmann::json family_to_json(const BellDiagonalFamily& f) {
  nlohmann::json out;
  out["A0"] = matrix_to_json(f.a0);
  out["A1"] = matrix_to_json(f.a1);
  out["kraus"] = kraus_to_json(f.kraus);
  out["U"] = matrix_to_json(f.setup().dilation);
  return out;
}

}  // namespace sdsteer
