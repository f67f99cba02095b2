#include "sdsteer/sd_protocols.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sdsteer {

int apply_rule(GuessRule rule, int b) {
  switch (rule) {
    case GuessRule::kConstZero: return 0;
    case GuessRule::kConstOne: return 1;
    case GuessRule::kSame: return b;
    case GuessRule::kFlip: return b ^ 1;
  }
  throw std::logic_error("apply_rule: unknown rule");
}

std::string_view rule_name(GuessRule rule) {
  switch (rule) {
    case GuessRule::kConstZero: return "0";
    case GuessRule::kConstOne: return "1";
    case GuessRule::kSame: return "b";
    case GuessRule::kFlip: return "b^1";
  }
  return "?";
}

GuessStrategy GuessStrategy::from_index(std::uint64_t index, std::size_t gate_count) {
  if (index >= count(gate_count)) {
    throw std::out_of_range("GuessStrategy::from_index: index exceeds 4^m");
  }
  std::vector<GuessRule> rules(gate_count);
  for (std::size_t k = gate_count; k-- > 0;) {
    rules[k] = static_cast<GuessRule>(index % 4);
    index /= 4;
  }
  return GuessStrategy(std::move(rules));
}

std::uint64_t GuessStrategy::count(std::size_t gate_count) {
  return std::uint64_t{1} << (2 * gate_count);
}

GuessStrategy GuessStrategy::parse(std::string_view text) {
  std::string cleaned;
  for (char c : text) {
    if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) continue;
    cleaned.push_back(c);
  }
  std::vector<GuessRule> rules;
  std::stringstream ss(cleaned);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token == "0") {
      rules.push_back(GuessRule::kConstZero);
    } else if (token == "1") {
      rules.push_back(GuessRule::kConstOne);
    } else if (token == "b") {
      rules.push_back(GuessRule::kSame);
    } else if (token == "b^1" || token == "b+1") {
      rules.push_back(GuessRule::kFlip);
    } else {
      throw std::invalid_argument("GuessStrategy::parse: bad token '" + token + "'");
    }
  }
  if (rules.empty()) throw std::invalid_argument("GuessStrategy::parse: empty strategy");
  return GuessStrategy(std::move(rules));
}

std::string GuessStrategy::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    if (k) out += ", ";
    out += rule_name(rules_[k]);
  }
  return out + ")";
}

// --------------------------- Alice directions ------------------------------

namespace {
using Rows = std::vector<std::array<BlochVector, 2>>;
}  // namespace

AliceDirectionTable::AliceDirectionTable(std::vector<std::array<BlochVector, 2>> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("AliceDirectionTable: no gates");
  }
  for (const auto& row : entries_) {
    for (const auto& v : row) {
      if (std::abs(v.norm() - 1.0) > kStructuralTol) {
        throw std::invalid_argument("AliceDirectionTable: directions must be unit vectors");
      }
    }
  }
}

const BlochVector& AliceDirectionTable::direction(int b, std::size_t gate) const {
  if (b != 0 && b != 1) throw std::out_of_range("AliceDirectionTable: b must be 0 or 1");
  return entries_.at(gate)[static_cast<std::size_t>(b)];
}

AliceDirectionTable alice_directions(int n) {
  require_supported_setting_count(n);
  using std::sqrt;
  const double s2 = std::numbers::sqrt2;
  const double s3 = std::numbers::sqrt3;
  const double s5 = sqrt(5.0);
  const double s6 = sqrt(6.0);
  const double s15 = sqrt(15.0);
  switch (n) {
    case 2:
      return AliceDirectionTable(Rows{{{{1 / s2, 0, 1 / s2}, {-1 / s2, 0, 1 / s2}}}});
    case 3: {
      const BlochVector diag{1 / s2, 0, 1 / s2};
      const BlochVector anti{-1 / s2, 0, 1 / s2};
      const BlochVector y{0, 1, 0};
      return AliceDirectionTable(Rows{{{diag, anti}}, {{diag, y}}, {{y, anti}}});
    }
    case 4:
      return AliceDirectionTable(Rows{
          {{{s2 / s3, 0, 1 / s3}, {-s2 / s3, 0, 1 / s3}}},
          {{{0, -s2 / s3, 1 / s3}, {0, s2 / s3, 1 / s3}}},
      });
    case 6: {
      const double a = sqrt(50 + 10 * s5) / 10;
      const double b = sqrt(50 - 10 * s5) / 10;
      return AliceDirectionTable(Rows{
          {{{a, 0, b}, {-a, 0, b}}},
          {{{0, -b, a}, {0, -b, -a}}},
          {{{b, -a, 0}, {b, a, 0}}},
      });
    }
    default: {  // n == 10
      const double p = s2 / (s15 - s3);
      const double w = (s5 - 1) / (2 * s3);
      const double u = (s5 - 1) / (2 * s6);
      const double t = 2 / (s15 - s3);
      return AliceDirectionTable(Rows{
          {{{s2 / s3, 0, 1 / s3}, {-s2 / s3, 0, 1 / s3}}},
          {{{0, s2 / s3, 1 / s3}, {-p, -p, w}}},
          {{{-s5 / s6, 1 / s6, 0}, {0, -s2 / s3, 1 / s3}}},
          {{{-p, -p, -w}, {u, -u, t}}},
          {{{1 / s6, -s5 / s6, 0}, {-u, u, t}}},
      });
    }
  }
}

AliceDirectionTable bell_diagonal_alice_directions() {
  return AliceDirectionTable(Rows{{{{0, 0, -1}, {1, 0, 0}}}});
}

// ------------------------- single-qubit protocol ---------------------------

namespace {

void require_gates(const DiscriminationSetup& setup) {
  if (setup.gates.empty()) throw std::invalid_argument("empty gate set");
  if (setup.dilation.rows() != 4 || setup.dilation.cols() != 4) {
    throw std::invalid_argument("dilation must be 4x4");
  }
}

void require_strategy_size(const DiscriminationSetup& setup, const GuessStrategy& s) {
  if (s.gate_count() != setup.gate_count()) {
    throw std::invalid_argument("strategy has " + std::to_string(s.gate_count()) +
                                " rules but the gate set has " +
                                std::to_string(setup.gate_count()) + " gates");
  }
}

}  // namespace

SingleQubitOutcomes single_qubit_outcomes(const DiscriminationSetup& setup,
                                          const DensityMatrix& probe) {
  require_gates(setup);
  if (probe.dim() != 2) throw std::invalid_argument("probe must be a qubit state");
  const ComplexMatrix& u = setup.dilation;
  SingleQubitOutcomes out(setup.gate_count());
  for (std::size_t k = 0; k < setup.gate_count(); ++k) {
    const ComplexMatrix& g = setup.gates[k];
    const ComplexMatrix input = tensor(z_projector(0), g * probe.matrix() * g.adjoint());
    const ComplexMatrix evolved = u * input * u.adjoint();
    for (int j = 0; j < 2; ++j) {
      for (int b = 0; b < 2; ++b) {
        out[k][j][b] = (tensor(z_projector(j), z_projector(b)) * evolved).trace().real();
      }
    }
  }
  return out;
}

std::vector<double> single_qubit_success_per_gate(const DiscriminationSetup& setup,
                                                  const GuessStrategy& strategy,
                                                  const DensityMatrix& probe) {
  require_strategy_size(setup, strategy);
  const auto outcomes = single_qubit_outcomes(setup, probe);
  std::vector<double> per_gate(outcomes.size(), 0.0);
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    for (int b = 0; b < 2; ++b) per_gate[k] += outcomes[k][strategy.guess(k, b)][b];
  }
  return per_gate;
}

double single_qubit_success(const DiscriminationSetup& setup, const GuessStrategy& strategy,
                            const DensityMatrix& probe) {
  const auto per_gate = single_qubit_success_per_gate(setup, strategy, probe);
  double total = 0.0;
  for (double p : per_gate) total += p;
  return total / static_cast<double>(per_gate.size());
}

double single_qubit_success(const SubchannelFamily& family, const GuessStrategy& strategy,
                            const DensityMatrix& probe) {
  return single_qubit_success(family.setup(), strategy, probe);
}

namespace {

/// Heisenberg-picture effect of guessing j after outcome b, restricted to
/// the auxiliary |0⟩ input: ⟨0|U†(Π_j⊗Π_b)U|0⟩ on the signal qubit.
ComplexMatrix pulled_back_effect(const ComplexMatrix& u, int j, int b) {
  const ComplexMatrix full = u.adjoint() * tensor(z_projector(j), z_projector(b)) * u;
  return full.topLeftCorner(2, 2);
}

}  // namespace

ComplexMatrix strategy_observable(const DiscriminationSetup& setup,
                                  const GuessStrategy& strategy) {
  require_gates(setup);
  require_strategy_size(setup, strategy);
  std::array<std::array<ComplexMatrix, 2>, 2> effects;
  for (int j = 0; j < 2; ++j) {
    for (int b = 0; b < 2; ++b) effects[j][b] = pulled_back_effect(setup.dilation, j, b);
  }
  ComplexMatrix o = ComplexMatrix::Zero(2, 2);
  for (std::size_t k = 0; k < setup.gate_count(); ++k) {
    const ComplexMatrix& g = setup.gates[k];
    ComplexMatrix per_gate = ComplexMatrix::Zero(2, 2);
    for (int b = 0; b < 2; ++b) per_gate += effects[strategy.guess(k, b)][b];
    o += g.adjoint() * per_gate * g;
  }
  o /= static_cast<double>(setup.gate_count());
  return 0.5 * (o + o.adjoint());
}

ProtocolResult single_qubit_bound(const DiscriminationSetup& setup) {
  require_gates(setup);
  const std::size_t m = setup.gate_count();
  const std::uint64_t total = GuessStrategy::count(m);
  ProtocolResult best;
  best.success_probability = -1.0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const auto strategy = GuessStrategy::from_index(idx, m);
    const auto top = max_eigenvalue_hermitian(strategy_observable(setup, strategy));
    // Ties within solver precision keep the earlier (lexicographically first)
    // strategy.
    if (top.value > best.success_probability + kStructuralTol) {
      best.success_probability = top.value;
      best.strategy = strategy;
      best.probe = bloch_of_ket(top.vector);
    }
  }
  best.method = Method::kExact;
  best.std_error = 0.0;
  return best;
}

ProtocolResult single_qubit_bound(const SubchannelFamily& family) {
  return single_qubit_bound(family.setup());
}

std::vector<BlochVector> fibonacci_sphere(std::size_t count) {
  std::vector<BlochVector> points;
  points.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    points.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return points;
}

double single_qubit_bound_grid_oracle(const DiscriminationSetup& setup, std::size_t grid_size) {
  if (grid_size < 1000) {
    throw std::invalid_argument("single_qubit_bound_grid_oracle: grid_size must be >= 1000");
  }
  constexpr std::array<GuessRule, 4> kRules{GuessRule::kConstZero, GuessRule::kConstOne,
                                            GuessRule::kSame, GuessRule::kFlip};
  double best = 0.0;
  for (const auto& point : fibonacci_sphere(grid_size)) {
    const auto outcomes = single_qubit_outcomes(setup, DensityMatrix::from_bloch(point));
    // The average over gates separates, so the best of the 4^m strategies
    // takes the best rule for each gate independently.
    double value = 0.0;
    for (const auto& gate : outcomes) {
      double best_rule = 0.0;
      for (GuessRule r : kRules) {
        best_rule = std::max(best_rule, gate[apply_rule(r, 0)][0] + gate[apply_rule(r, 1)][1]);
      }
      value += best_rule;
    }
    best = std::max(best, value / static_cast<double>(outcomes.size()));
  }
  return best;
}

double single_qubit_bound_grid_oracle(const SubchannelFamily& family, std::size_t grid_size) {
  return single_qubit_bound_grid_oracle(family.setup(), grid_size);
}

// --------------------------- two-qubit protocol ----------------------------

namespace {

/// ρ_AB ⊗ |0⟩⟨0| reordered to Alice ⊗ auxiliary ⊗ signal.
ComplexMatrix embed_with_auxiliary(const ComplexMatrix& rho_ab) {
  ComplexMatrix out = ComplexMatrix::Zero(8, 8);
  for (int a = 0; a < 2; ++a) {
    for (int s = 0; s < 2; ++s) {
      for (int a2 = 0; a2 < 2; ++a2) {
        for (int s2 = 0; s2 < 2; ++s2) {
          // auxiliary index 0 on both sides
          out(a * 4 + s, a2 * 4 + s2) = rho_ab(a * 2 + s, a2 * 2 + s2);
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<JointOutcome> two_qubit_joint_distribution(const DensityMatrix& rho_ab,
                                                       const DiscriminationSetup& setup,
                                                       const AliceDirectionTable& table) {
  require_gates(setup);
  if (rho_ab.dim() != 4) throw std::invalid_argument("rho_ab must be a two-qubit state");
  if (table.gate_count() != setup.gate_count()) {
    throw std::invalid_argument("Alice table and gate set sizes differ");
  }
  const ComplexMatrix initial = embed_with_auxiliary(rho_ab.matrix());
  const double weight = 1.0 / static_cast<double>(setup.gate_count());
  std::vector<JointOutcome> out;
  out.reserve(setup.gate_count() * 8);
  for (std::size_t k = 0; k < setup.gate_count(); ++k) {
    const ComplexMatrix bob = setup.dilation * tensor(identity(2), setup.gates[k]);
    const ComplexMatrix w = tensor(identity(2), bob);
    const ComplexMatrix evolved = w * initial * w.adjoint();
    for (int b = 0; b < 2; ++b) {
      const MeasurementSetting alice(table.direction(b, k));
      for (int j = 0; j < 2; ++j) {
        const ComplexMatrix bob_effect = tensor(z_projector(j), z_projector(b));
        for (int a = 0; a < 2; ++a) {
          const ComplexMatrix effect = tensor(projector(alice, a), bob_effect);
          const double p = (effect * evolved).trace().real();
          out.push_back({static_cast<int>(k), b, j, a, weight * p});
        }
      }
    }
  }
  return out;
}

ProtocolResult two_qubit_success(const DensityMatrix& rho_ab, const DiscriminationSetup& setup,
                                 const AliceDirectionTable& table) {
  double success = 0.0;
  for (const auto& o : two_qubit_joint_distribution(rho_ab, setup, table)) {
    if (o.a == o.j) success += o.probability;
  }
  ProtocolResult result;
  result.success_probability = std::clamp(success, 0.0, 1.0);
  result.method = Method::kExact;
  return result;
}

ProtocolResult two_qubit_success(const DensityMatrix& rho_ab, const SubchannelFamily& family,
                                 const AliceDirectionTable& table) {
  return two_qubit_success(rho_ab, family.setup(), table);
}

// ----------------------------- Bell diagonal --------------------------------

bool in_bell_diagonal_triangle(double tx, double tz, double tol) {
  const auto w = bell_diagonal_weights(tx, tx, tz);
  return std::all_of(w.begin(), w.end(), [tol](double v) { return v >= -tol; });
}

ProtocolResult bell_diagonal_success(double tx, double tz) {
  if (!in_bell_diagonal_triangle(tx, tz)) {
    throw std::invalid_argument("bell_diagonal_success: (tx, tz) lies outside the positivity triangle");
  }
  const DensityMatrix rho = bell_diagonal_state(tx, tx, tz);
  return two_qubit_success(rho, build_bell_diagonal_family().setup(),
                           bell_diagonal_alice_directions());
}

ProtocolResult bell_diagonal_bound() {
  return single_qubit_bound(build_bell_diagonal_family().setup());
}

}  // namespace sdsteer
