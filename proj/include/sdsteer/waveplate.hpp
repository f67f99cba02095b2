// waveplate.hpp: Jones matrices for half- and quarter-wave plates, plate
// sequences, and the check that the bench recipes realize the gate sets up
// to a global phase.

#pragma once

#include "sdsteer/quantum_core.hpp"

#include <ostream>
#include <vector>

namespace sdsteer {

/// [[cos 2φ, −sin 2φ], [sin 2φ, cos 2φ]]: the rotation form.
ComplexMatrix jones_hwp(double phi);

/// [[cos 2φ, sin 2φ], [sin 2φ, −cos 2φ]]: the reflection form, equal to
/// jones_hwp(φ)·σ_z.
ComplexMatrix jones_hwp_reflection(double phi);

/// [[cos²φ + i sin²φ, ½(1−i) sin 2φ], [½(1−i) sin 2φ, i cos²φ + sin²φ]]
ComplexMatrix jones_qwp(double phi);

enum class PlateKind { kHwp, kQwp };

/// Which half-wave-plate matrix a sequence uses.
enum class HwpModel { kRotation, kReflection };

struct Plate {
  PlateKind kind = PlateKind::kHwp;
  double angle = 0.0;  // radians
};

/// Plates in the order light meets them.
using WavePlateSequence = std::vector<Plate>;

/// Product with the first plate right-most. Empty sequence gives 𝕀₂. Throws
/// std::invalid_argument on a non-finite angle.
ComplexMatrix compile(const WavePlateSequence& seq, HwpModel model = HwpModel::kRotation);

struct PhaseDistance {
  /// min over θ of max_ij |u_ij − e^{iθ} v_ij|
  double value = 0.0;
  /// Tr(v†u) vanishes, so no phase is preferred.
  bool incomparable = false;
};

/// Exact minimization over the global phase. Throws std::invalid_argument on
/// shape mismatch or when either input is not unitary within 1e-10.
PhaseDistance distance_up_to_phase(const ComplexMatrix& u, const ComplexMatrix& v);

struct GateRecipe {
  int gate = 0;  // 1-based index m of g_m
  WavePlateSequence plates;
};

/// Bench recipes for g_2 … g_m; empty for n = 2. Ten-setting angles are the
/// tabulated 0.1° values. Throws std::invalid_argument for unsupported n.
std::vector<GateRecipe> waveplate_recipes(int n);

/// Distance tolerance for recipe checks: exact angles for n ∈ {3, 4, 6},
/// 0.1°-rounded angles for n = 10.
double recipe_tolerance(int n);

struct RecipeCheck {
  int n = 0;
  int gate = 0;
  PhaseDistance distance;
  /// Gate of the family closest to the compiled recipe, and its distance.
  int closest_gate = 0;
  double closest_distance = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<RecipeCheck> verify_recipes(int n, HwpModel model = HwpModel::kReflection);

/// Plain-text table: n, gate, distance, tolerance, pass/fail, closest gate.
void write_recipe_report(std::ostream& os, const std::vector<RecipeCheck>& checks);

}  // namespace sdsteer
