#include "sdsteer/waveplate.hpp"

#include "sdsteer/channel_factory.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sdsteer {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

ComplexMatrix mat(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b,
       c, d;
  return m;
}

TEST(Jones, HalfWavePlateRotationForm) {
  const double r = 1 / std::sqrt(2.0);
  EXPECT_LT(max_abs_diff(jones_hwp(0), identity(2)), 1e-15);
  EXPECT_LT(max_abs_diff(jones_hwp(kPi / 4), mat(0, -1, 1, 0)), 1e-15);
  EXPECT_LT(max_abs_diff(jones_hwp(kPi / 8), mat(r, -r, r, r)), 1e-15);
}

TEST(Jones, HalfWavePlateReflectionForm) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    const double phi = angle(rng);
    EXPECT_LT(max_abs_diff(jones_hwp_reflection(phi), jones_hwp(phi) * pauli_z()), 1e-15);
  }
  EXPECT_LT(max_abs_diff(jones_hwp_reflection(kPi / 4), pauli_x()), 1e-15);
}

TEST(Jones, QuarterWavePlate) {
  EXPECT_LT(max_abs_diff(jones_qwp(0), mat(1, 0, 0, kI)), 1e-15);
  EXPECT_LT(max_abs_diff(jones_qwp(kPi / 2), mat(kI, 0, 0, 1)), 1e-15);
  EXPECT_LT(max_abs_diff(jones_qwp(kPi / 4), 0.5 * mat(1.0 + kI, 1.0 - kI, 1.0 - kI, 1.0 + kI)),
            1e-15);
}

TEST(Jones, UnitaryForRandomAngles) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double phi = angle(rng);
    EXPECT_TRUE(is_unitary(jones_hwp(phi), 1e-12));
    EXPECT_TRUE(is_unitary(jones_hwp_reflection(phi), 1e-12));
    EXPECT_TRUE(is_unitary(jones_qwp(phi), 1e-12));
  }
  EXPECT_THROW(jones_qwp(std::nan("")), std::invalid_argument);
}

TEST(Compile, FirstPlateActsFirst) {
  EXPECT_EQ(max_abs_diff(compile({}), identity(2)), 0.0);
  const WavePlateSequence seq{{PlateKind::kHwp, 0.3}, {PlateKind::kQwp, 0.7}};
  EXPECT_LT(max_abs_diff(compile(seq), jones_qwp(0.7) * jones_hwp(0.3)), 1e-15);
  EXPECT_LT(max_abs_diff(compile(seq, HwpModel::kReflection),
                         jones_qwp(0.7) * jones_hwp_reflection(0.3)),
            1e-15);
}

TEST(Compile, QuarterPlateRealizesPhaseGate) {
  const ComplexMatrix g = compile({{PlateKind::kQwp, kPi / 2}});
  const ComplexMatrix target = mat(1, 0, 0, -kI);
  EXPECT_LT(max_abs_diff(g, kI * target), 1e-15);
  EXPECT_LT(distance_up_to_phase(g, target).value, 1e-15);
}

// --------------------------- phase distance --------------------------------

TEST(PhaseDistance, Examples) {
  EXPECT_EQ(distance_up_to_phase(identity(2), identity(2)).value, 0.0);
  EXPECT_LT(distance_up_to_phase(identity(2), kI * identity(2)).value, 1e-15);
  const PhaseDistance flip = distance_up_to_phase(identity(2), pauli_x());
  EXPECT_GE(flip.value, 1.0 - 1e-15);
  EXPECT_TRUE(flip.incomparable);
  EXPECT_FALSE(distance_up_to_phase(identity(2), mat(1, 0, 0, kI)).incomparable);
}

TEST(PhaseDistance, RejectsBadInputs) {
  EXPECT_THROW(distance_up_to_phase(identity(2), identity(4)), std::invalid_argument);
  EXPECT_THROW(distance_up_to_phase(2.0 * identity(2), identity(2)), std::invalid_argument);
}

TEST(PhaseDistance, MatchesDenseScan) {
  std::mt19937_64 rng(3);
  constexpr int kSteps = 100000;
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix u = testing::random_unitary(2, rng);
    const ComplexMatrix v = testing::random_unitary(2, rng);
    double scan = 1e9;
    for (int k = 0; k < kSteps; ++k) {
      const double theta = 2 * kPi * k / kSteps;
      scan = std::min(scan, max_abs_diff(u, std::polar(1.0, theta) * v));
    }
    const double exact = distance_up_to_phase(u, v).value;
    EXPECT_LE(exact, scan + 1e-12);
    // Each entry moves by at most |Δθ| between scan points.
    EXPECT_GE(exact, scan - kPi / kSteps);
  }
}

TEST(PhaseDistance, IsAPseudometric) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    const ComplexMatrix a = testing::random_unitary(2, rng);
    const ComplexMatrix b = testing::random_unitary(2, rng);
    const ComplexMatrix c = testing::random_unitary(2, rng);
    const double ab = distance_up_to_phase(a, b).value;
    EXPECT_NEAR(ab, distance_up_to_phase(b, a).value, 1e-12);
    EXPECT_LE(distance_up_to_phase(a, c).value,
              ab + distance_up_to_phase(b, c).value + 1e-9);
    EXPECT_LT(distance_up_to_phase(a, std::polar(1.0, 0.1 * trial) * a).value, 1e-12);
  }
}

// ------------------------------- recipes -----------------------------------

TEST(Recipes, ExactRecipesForThreeAndFour) {
  for (int n : {3, 4}) {
    for (HwpModel model : {HwpModel::kRotation, HwpModel::kReflection}) {
      for (const auto& c : verify_recipes(n, model)) {
        EXPECT_LT(c.distance.value, 1e-9) << "n=" << n << " g" << c.gate;
        EXPECT_TRUE(c.pass);
        EXPECT_EQ(c.closest_gate, c.gate);
      }
    }
  }
  EXPECT_EQ(verify_recipes(3).size(), 2u);
  EXPECT_EQ(verify_recipes(4).size(), 1u);
}

TEST(Recipes, TenSettingWithinRoundingTolerance) {
  const auto checks = verify_recipes(10);
  ASSERT_EQ(checks.size(), 4u);
  for (const auto& c : checks) {
    EXPECT_LT(c.distance.value, recipe_tolerance(10)) << "g" << c.gate;
    EXPECT_EQ(c.closest_gate, c.gate);
    EXPECT_TRUE(c.pass);
  }
}

TEST(Recipes, RotationFormCannotRealizeTenSettingGates) {
  for (const auto& c : verify_recipes(10, HwpModel::kRotation)) {
    EXPECT_GT(c.distance.value, 0.5) << "g" << c.gate;
    EXPECT_FALSE(c.pass);
  }
}

TEST(Recipes, SixSettingRecipesRealizeEachOthersGate) {
  // The recipe listed for g2 compiles to g3 and vice versa.
  const auto checks = verify_recipes(6);
  ASSERT_EQ(checks.size(), 2u);
  EXPECT_EQ(checks[0].gate, 2);
  EXPECT_EQ(checks[0].closest_gate, 3);
  EXPECT_LT(checks[0].closest_distance, 1e-9);
  EXPECT_EQ(checks[1].gate, 3);
  EXPECT_EQ(checks[1].closest_gate, 2);
  EXPECT_LT(checks[1].closest_distance, 1e-9);
  for (const auto& c : checks) EXPECT_FALSE(c.pass);
}

TEST(Recipes, TwoSettingHasNone) {
  EXPECT_TRUE(waveplate_recipes(2).empty());
  EXPECT_TRUE(verify_recipes(2).empty());
  EXPECT_THROW(verify_recipes(7), std::invalid_argument);
}

/// Exact angles lie within the 0.05° rounding box of the tabulated ones, and
/// the worst distance over that box stays below the recipe tolerance.
TEST(Recipes, TenSettingToleranceCoversRoundingBox) {
  const double half_step = 0.05 * kPi / 180;
  const auto gates = gate_set(10);
  const auto recipes = waveplate_recipes(10);
  for (const auto& recipe : recipes) {
    const ComplexMatrix target = gates[static_cast<std::size_t>(recipe.gate - 1)];
    std::array<double, 3> x{recipe.plates[0].angle, recipe.plates[1].angle, recipe.plates[2].angle};
    const auto realize = [](const std::array<double, 3>& a) {
      return compile({{PlateKind::kQwp, a[0]}, {PlateKind::kHwp, a[1]}, {PlateKind::kQwp, a[2]}},
                     HwpModel::kReflection);
    };
    const auto dist = [&](const std::array<double, 3>& a) {
      return distance_up_to_phase(realize(a), target).value;
    };
    // Smooth surrogate for the search: 1 − |Tr(g†M)|/2 vanishes exactly when
    // M equals g up to phase.
    const auto loss = [&](const std::array<double, 3>& a) {
      return 1.0 - std::abs((target.adjoint() * realize(a)).trace()) / 2.0;
    };
    double best = loss(x);
    for (double step = half_step; step > 1e-12; step /= 2) {
      bool moved = true;
      while (moved) {
        moved = false;
        for (std::size_t i = 0; i < 3; ++i) {
          for (double s : {step, -step}) {
            auto y = x;
            y[i] += s;
            const double d = loss(y);
            if (d < best) {
              best = d;
              x = y;
              moved = true;
            }
          }
        }
      }
    }
    EXPECT_LT(dist(x), 1e-6) << "g" << recipe.gate;
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_LE(std::abs(x[i] - recipe.plates[i].angle), half_step + 1e-9);
    }
    double worst = 0.0;
    for (int corner = 0; corner < 8; ++corner) {
      auto y = x;
      for (std::size_t i = 0; i < 3; ++i) y[i] += ((corner >> i) & 1 ? 1 : -1) * half_step;
      worst = std::max(worst, dist(y));
    }
    EXPECT_LT(worst, recipe_tolerance(10)) << "g" << recipe.gate;
  }
}

TEST(Recipes, ReportTable) {
  std::ostringstream os;
  write_recipe_report(os, verify_recipes(4));
  const std::string text = os.str();
  EXPECT_NE(text.find("tolerance"), std::string::npos);
  EXPECT_NE(text.find("pass"), std::string::npos);
  EXPECT_NE(text.find("g2"), std::string::npos);
}

}  // namespace
}  // namespace sdsteer
