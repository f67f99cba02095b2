#include "sdsteer/waveplate.hpp"

#include "sdsteer/channel_factory.hpp"
#include "sdsteer/format.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sdsteer {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_finite(double phi) {
  if (!std::isfinite(phi)) throw std::invalid_argument("wave plate angle must be finite");
}

}  // namespace

ComplexMatrix jones_hwp(double phi) {
  require_finite(phi);
  const double c = std::cos(2 * phi);
  const double s = std::sin(2 * phi);
  ComplexMatrix m(2, 2);
  m << c, -s,
       s, c;
  return m;
}

ComplexMatrix jones_hwp_reflection(double phi) {
  require_finite(phi);
  const double c = std::cos(2 * phi);
  const double s = std::sin(2 * phi);
  ComplexMatrix m(2, 2);
  m << c, s,
       s, -c;
  return m;
}

ComplexMatrix jones_qwp(double phi) {
  require_finite(phi);
  const double c2 = std::cos(phi) * std::cos(phi);
  const double s2 = std::sin(phi) * std::sin(phi);
  const Complex off = 0.5 * (1.0 - kI) * std::sin(2 * phi);
  ComplexMatrix m(2, 2);
  m << c2 + kI * s2, off,
       off, kI * c2 + s2;
  return m;
}

ComplexMatrix compile(const WavePlateSequence& seq, HwpModel model) {
  ComplexMatrix m = identity(2);
  for (const Plate& p : seq) {
    ComplexMatrix j;
    if (p.kind == PlateKind::kQwp) {
      j = jones_qwp(p.angle);
    } else {
      j = model == HwpModel::kRotation ? jones_hwp(p.angle) : jones_hwp_reflection(p.angle);
    }
    m = j * m;
  }
  return m;
}

PhaseDistance distance_up_to_phase(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("distance_up_to_phase: dimension mismatch");
  }
  if (!is_unitary(u, 1e-10) || !is_unitary(v, 1e-10)) {
    throw std::invalid_argument("distance_up_to_phase: inputs must be unitary");
  }
  // |u_k − e^{iθ} v_k|² = c_k − 2 Re(w_k e^{iθ}) with w_k = conj(u_k) v_k.
  // The max over k of these sinusoids is minimized either at the minimum of
  // one of them or where two of them cross.
  const Eigen::Index count = u.size();
  std::vector<double> c(static_cast<std::size_t>(count));
  std::vector<Complex> w(static_cast<std::size_t>(count));
  for (Eigen::Index k = 0; k < count; ++k) {
    const Complex a = u(k);
    const Complex b = v(k);
    c[static_cast<std::size_t>(k)] = std::norm(a) + std::norm(b);
    w[static_cast<std::size_t>(k)] = std::conj(a) * b;
  }
  const Complex trace = (v.adjoint() * u).trace();
  std::vector<double> candidates{0.0, std::arg(trace)};
  for (const Complex& wk : w) {
    if (std::abs(wk) > 0.0) candidates.push_back(-std::arg(wk));
  }
  for (std::size_t a = 0; a < w.size(); ++a) {
    for (std::size_t b = a + 1; b < w.size(); ++b) {
      const Complex delta = w[a] - w[b];
      const double mag = std::abs(delta);
      if (mag == 0.0) continue;
      const double k = 0.5 * (c[a] - c[b]) / mag;
      if (std::abs(k) > 1.0) continue;
      const double base = -std::arg(delta);
      const double spread = std::acos(k);
      candidates.push_back(base + spread);
      candidates.push_back(base - spread);
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (double theta : candidates) {
    best = std::min(best, max_abs_diff(u, std::polar(1.0, theta) * v));
  }
  return {best, std::abs(trace) < kStructuralTol};
}

std::vector<GateRecipe> waveplate_recipes(int n) {
  require_supported_setting_count(n);
  constexpr double pi = std::numbers::pi;
  const auto deg = [](double d) { return d * std::numbers::pi / 180.0; };
  const auto q = [](double a) { return Plate{PlateKind::kQwp, a}; };
  const auto h = [](double a) { return Plate{PlateKind::kHwp, a}; };
  switch (n) {
    case 2: return {};
    case 3: return {{2, {q(-3 * pi / 8)}}, {3, {q(-pi / 8)}}};
    case 4: return {{2, {q(pi / 2)}}};
    case 6: return {{2, {h(pi / 8), q(0.0)}}, {3, {h(pi / 8), q(-pi / 4)}}};
    default: {
      // QWP1, HWP, QWP2 in degrees.
      constexpr double table[4][3] = {
          {25.6, 49.7, 40.8}, {8.8, 64.2, 57.6}, {-32.4, 64.2, -81.2}, {-49.2, 49.7, -64.4}};
      std::vector<GateRecipe> out;
      for (int k = 0; k < 4; ++k) {
        out.push_back({k + 2, {q(deg(table[k][0])), h(deg(table[k][1])), q(deg(table[k][2]))}});
      }
      return out;
    }
  }
}

double recipe_tolerance(int n) {
  require_supported_setting_count(n);
  // Each of three plates is off by at most 0.05°, and every Jones entry moves
  // by at most 2|δφ| per plate.
  return n == 10 ? 6e-3 : 1e-9;
}

std::vector<RecipeCheck> verify_recipes(int n, HwpModel model) {
  const auto recipes = waveplate_recipes(n);
  const auto gates = gate_set(n);
  std::vector<RecipeCheck> out;
  for (const auto& recipe : recipes) {
    const ComplexMatrix realized = compile(recipe.plates, model);
    RecipeCheck check;
    check.n = n;
    check.gate = recipe.gate;
    check.distance = distance_up_to_phase(realized, gates.at(static_cast<std::size_t>(recipe.gate - 1)));
    check.closest_distance = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < gates.size(); ++k) {
      const double d = distance_up_to_phase(realized, gates[k]).value;
      if (d < check.closest_distance) {
        check.closest_distance = d;
        check.closest_gate = static_cast<int>(k) + 1;
      }
    }
    check.tolerance = recipe_tolerance(n);
    check.pass = !check.distance.incomparable && check.distance.value < check.tolerance;
    out.push_back(check);
  }
  return out;
}

void write_recipe_report(std::ostream& os, const std::vector<RecipeCheck>& checks) {
  os << std::left << std::setw(4) << "n" << std::setw(6) << "gate" << std::setw(17) << "distance"
     << std::setw(12) << "tolerance" << std::setw(6) << "pass" << "closest\n";
  for (const auto& c : checks) {
    os << std::left << std::setw(4) << c.n << std::setw(6) << ("g" + std::to_string(c.gate))
       << std::setw(17) << (fmt_real(c.distance.value) + (c.distance.incomparable ? "*" : ""))
       << std::setw(12) << fmt_real(c.tolerance) << std::setw(6) << (c.pass ? "pass" : "FAIL")
       << "g" << c.closest_gate << " (" << fmt_real(c.closest_distance) << ")\n";
  }
}

}  // namespace sdsteer
