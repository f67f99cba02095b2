// Standalone acceptance run: one PASS/FAIL line per criterion, nonzero exit
// when any criterion fails.

#include "sdsteer/channel_factory.hpp"
#include "sdsteer/experiment_sim.hpp"
#include "sdsteer/sd_protocols.hpp"
#include "sdsteer/steering_analysis.hpp"
#include "sdsteer/strategy_tables.hpp"
#include "sdsteer/waveplate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sdsteer;

namespace {

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt5 = std::sqrt(5.0);

double expected_bound(int n) {
  switch (n) {
    case 2: return (1 + 1 / kSqrt2) / 2;
    case 3:
    case 4: return (1 + 1 / kSqrt3) / 2;
    case 6: return (7 + kSqrt5) / 12;
    default: return (13 + kSqrt5) / 20;
  }
}

Outcome exact_bounds() {
  Outcome o;
  const Clock clock;
  double worst = 0;
  for (int n : kSupportedSettings) {
    const double err = std::abs(single_qubit_bound(build_family(n)).success_probability -
                                expected_bound(n));
    worst = std::max(worst, err);
    o.require(err < 1e-9, "n=" + std::to_string(n));
  }
  const double t = clock.seconds();
  o.require(t < 5.0, "runtime");
  o.detail << " worst=" << worst << " time=" << t << "s";
  return o;
}

Outcome grid_oracle() {
  Outcome o;
  double worst = 0;
  for (int n : kSupportedSettings) {
    const auto f = build_family(n);
    const double err = std::abs(single_qubit_bound_grid_oracle(f, 10000) -
                                single_qubit_bound(f).success_probability);
    worst = std::max(worst, err);
    o.require(err < 1e-3, "n=" + std::to_string(n));
  }
  o.detail << " worst=" << worst;
  return o;
}

Outcome werner_linearity() {
  Outcome o;
  const Clock clock;
  double worst = 0;
  int checks = 0;
  for (int n : kSupportedSettings) {
    const auto f = build_family(n);
    const auto table = alice_directions(n);
    for (int k = 0; k <= 10; ++k) {
      const double eta = k / 10.0;
      const double p = two_qubit_success(werner_state(eta), f, table).success_probability;
      const double err = std::abs(p - (0.5 + eta / 2));
      worst = std::max(worst, err);
      o.require(err < 1e-9, "n=" + std::to_string(n) + " eta=" + std::to_string(eta));
      ++checks;
    }
  }
  const double t = clock.seconds();
  o.require(checks == 55, "check count");
  o.require(t < 10.0, "runtime");
  o.detail << " checks=" << checks << " worst=" << worst << " time=" << t << "s";
  return o;
}

Outcome threshold_consistency() {
  Outcome o;
  double worst = 0;
  for (int n : kSupportedSettings) {
    const double eta = 2 * single_qubit_bound(build_family(n)).success_probability - 1;
    const double err = std::abs(eta - lhs_bound(n));
    worst = std::max(worst, err);
    o.require(err < 1e-9, "n=" + std::to_string(n));
  }
  const double eta10 = lhs_bound(10);
  o.require(std::abs(eta10 - (3 + kSqrt5) / 10) < 1e-9, "eta*_10");
  o.detail << " worst=" << worst << " eta*_10=" << eta10;
  return o;
}

Outcome strategy_tables() {
  Outcome o;
  double worst = 0;
  int rows = 0;
  for (int n : kSupportedSettings) {
    const auto setup = build_family(n).setup();
    for (const auto& row : strategy_table(n)) {
      const auto probe = DensityMatrix::from_bloch(row.probe);
      const auto per_gate = single_qubit_success_per_gate(setup, row.strategy, probe);
      for (std::size_t m = 0; m < per_gate.size(); ++m) {
        worst = std::max(worst, std::abs(per_gate[m] - row.per_gate[m]));
      }
      const double avg = single_qubit_success(setup, row.strategy, probe);
      worst = std::max(worst, std::abs(avg - row.average()));
      ++rows;
    }
  }
  o.require(worst < 1e-9, "row mismatch");
  const auto optimal_average = [](int n) {
    double best = 0;
    for (const auto& row : strategy_table(n)) best = std::max(best, row.average());
    return best;
  };
  o.require(std::abs(optimal_average(6) - (7 + kSqrt5) / 12) < 1e-9, "six-setting average");
  o.require(std::abs(optimal_average(10) - (13 + kSqrt5) / 20) < 1e-9, "ten-setting average");
  o.detail << " rows=" << rows << " worst=" << worst;
  return o;
}

void check_channel(Outcome& o, const std::string& name, const std::vector<ComplexMatrix>& kraus,
                   const ComplexMatrix& dilation, const ComplexMatrix& a0,
                   const ComplexMatrix& a1) {
  const ValidationReport r = validate_channel(kraus);
  o.require(r.completeness_defect < 1e-12, name + " completeness");
  o.require(*std::min_element(r.choi_min_eigenvalues.begin(), r.choi_min_eigenvalues.end()) >=
                -1e-10,
            name + " choi");
  o.require(is_unitary(dilation, 1e-12), name + " unitary");
  o.require(max_abs_diff(dilation, block_dilation(a0, a1)) < 1e-12, name + " block form");
}

Outcome channel_validity() {
  Outcome o;
  for (int n : kSupportedSettings) {
    const auto f = build_family(n);
    check_channel(o, "n=" + std::to_string(n), f.kraus_list(), f.dilation, f.a0, f.a1);
  }
  const auto bd = build_bell_diagonal_family();
  check_channel(o, "bell-diagonal", bd.kraus_list(), bd.setup().dilation, bd.a0, bd.a1);

  const double sp = std::sin(std::numbers::pi / 8);
  ComplexMatrix a0(2, 2), a1(2, 2);
  a0 << 1 / (4 * sp), sp / kSqrt2,
        1 / (4 * sp), -sp / kSqrt2;
  a1 << sp / kSqrt2, -1 / (4 * sp),
        sp / kSqrt2, 1 / (4 * sp);
  const auto f2 = build_family(2);
  const double err = std::max(max_abs_diff(f2.a0, a0), max_abs_diff(f2.a1, a1));
  o.require(err < 1e-12, "n=2 closed-form blocks");
  o.detail << " n2_block_err=" << err;
  return o;
}

Outcome bell_diagonal() {
  Outcome o;
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int points = 0;
  double worst = 0;
  while (points < 50) {
    const double tx = u(rng);
    const double tz = u(rng);
    if (!in_bell_diagonal_triangle(tx, tz, 0.0)) continue;
    const double p = bell_diagonal_success(tx, tz).success_probability;
    worst = std::max(worst, std::abs(p - (2 + tx - tz) / 4));
    ++points;
  }
  o.require(worst < 1e-10, "random points");
  // Boundary points on the segment tz = tx − √2 that stay inside the triangle.
  for (double tx : {0.5, 0.6, 0.7}) {
    const double tz = tx - kSqrt2;
    o.require(in_bell_diagonal_triangle(tx, tz + 1e-6), "probe inside triangle");
    o.require(!bell_diagonal_steerable(tx, tz + 1e-6), "below boundary");
    o.require(bell_diagonal_steerable(tx, tz - 1e-6), "above boundary");
  }
  const double bound = bell_diagonal_bound().success_probability;
  o.require(std::abs(bound - (1 + 1 / kSqrt2) / 2) < 1e-9, "bound");
  o.detail << " worst=" << worst << " bound=" << bound;
  return o;
}

Outcome classification() {
  Outcome o;
  const auto pink = classify_werner(0.45, 10);
  o.require(pink.entangled && !pink.steerable && pink.bell_local, "eta=0.45");
  const auto red = classify_werner(0.6, 10);
  o.require(red.steerable && red.bell_local, "eta=0.6");
  o.require(classify_werner(0.75, 10).chsh_violating, "eta=0.75");
  const double c = concurrence(werner_state(0.436));
  o.require(std::abs(c - 0.154) < 0.002, "concurrence");
  o.detail << " concurrence(0.436)=" << c;
  return o;
}

Outcome monte_carlo() {
  Outcome o;
  const Clock clock;
  const double eta = 0.8;
  const auto f = build_family(2);
  const auto table = alice_directions(2);
  const auto rho = werner_state(eta);
  const double exact = two_qubit_success(rho, f, table).success_probability;
  std::vector<double> p_hats;
  double se_sum = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto r = simulate_run(rho, f, table, 62500, seed);
    p_hats.push_back(r.p_hat);
    se_sum += r.std_error;
  }
  double mean = 0;
  for (double p : p_hats) mean += p;
  mean /= static_cast<double>(p_hats.size());
  double var = 0;
  for (double p : p_hats) var += (p - mean) * (p - mean);
  const double sd = std::sqrt(var / static_cast<double>(p_hats.size() - 1));
  const double se = se_sum / static_cast<double>(p_hats.size());
  const double bias = std::abs(mean - exact);
  const double t = clock.seconds();
  o.require(sd >= 0.001 && sd <= 0.003, "spread");
  o.require(bias < 3 * se, "bias");
  o.require(t < 30.0, "runtime");
  o.detail << " std=" << sd << " mean_se=" << se << " bias=" << bias << " time=" << t << "s";
  return o;
}

Outcome waveplates() {
  Outcome o;
  for (int n : {3, 4, 6, 10}) {
    const double tol = n == 10 ? 6e-3 : 1e-9;
    for (const auto& c : verify_recipes(n)) {
      const bool ok = !c.distance.incomparable && c.distance.value < tol;
      o.require(ok, "n=" + std::to_string(n) + " g" + std::to_string(c.gate));
      o.detail << " n" << n << "g" << c.gate << "=" << c.distance.value;
      if (!ok && c.closest_gate != c.gate) {
        o.detail << "(nearest g" << c.closest_gate << "=" << c.closest_distance << ")";
      }
    }
  }
  return o;
}

Outcome chsh() {
  Outcome o;
  const auto s = werner_optimal_chsh_settings();
  const double s1 = chsh_parameter(werner_state(1.0), s);
  const double sh = chsh_parameter(werner_state(1 / kSqrt2), s);
  o.require(std::abs(s1 - 2 * kSqrt2) < 1e-9, "S(1)");
  o.require(std::abs(sh - 2) < 1e-9, "S(1/sqrt2)");
  double worst = 0;
  const auto f = build_family(2);
  const auto table = alice_directions(2);
  for (int k = 0; k <= 20; ++k) {
    const auto rho = werner_state(k / 20.0);
    const double p = two_qubit_success(rho, f, table).success_probability;
    worst = std::max(worst, std::abs(chsh_parameter(rho, s) - 2 * kSqrt2 * (2 * p - 1)));
  }
  o.require(worst < 1e-9, "S-P relation");
  o.detail << " S(1)=" << s1 << " S(1/sqrt2)=" << sh << " worst=" << worst;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"single-qubit bounds", exact_bounds},
      {"grid oracle", grid_oracle},
      {"werner linearity", werner_linearity},
      {"threshold consistency", threshold_consistency},
      {"strategy tables", strategy_tables},
      {"channel validity", channel_validity},
      {"bell-diagonal", bell_diagonal},
      {"classification", classification},
      {"monte carlo", monte_carlo},
      {"wave-plate recipes", waveplates},
      {"chsh", chsh},
  };
  int failures = 0;
  int index = 1;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s:%s\n", o.pass ? "PASS" : "FAIL", index++, c.name,
                o.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
