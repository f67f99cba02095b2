#include "sdsteer/steering_analysis.hpp"

#include "sdsteer/channel_factory.hpp"
#include "sdsteer/format.hpp"
#include "sdsteer/sd_protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace sdsteer {

double entanglement_threshold() { return 1.0 / 3.0; }

double chsh_threshold() { return 1.0 / std::sqrt(2.0); }

double lhs_bound(int n) {
  require_supported_setting_count(n);
  const double s5 = std::sqrt(5.0);
  switch (n) {
    case 2: return 1.0 / std::sqrt(2.0);
    case 3:
    case 4: return 1.0 / std::sqrt(3.0);
    case 6: return (1.0 + s5) / 6.0;
    default: return (3.0 + s5) / 10.0;
  }
}

NonlocalityClass classify_werner(double eta, int n) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("classify_werner: eta must lie in [0, 1]");
  }
  NonlocalityClass c;
  c.entangled = eta > entanglement_threshold();
  c.separable = !c.entangled;
  c.steerable = eta > lhs_bound(n);
  c.chsh_violating = eta > chsh_threshold();
  c.bell_local = eta <= kBellLocalThreshold;
  return c;
}

bool bell_diagonal_steerable(double tx, double tz) { return tx - tz > std::sqrt(2.0); }

std::vector<SweepRecord> sweep_werner(const std::vector<double>& eta_grid, int n) {
  std::vector<SweepRecord> out;
  if (eta_grid.empty()) return out;
  const SubchannelFamily family = build_family(n);
  const AliceDirectionTable table = alice_directions(n);
  const double bound = single_qubit_bound(family).success_probability;
  out.reserve(eta_grid.size());
  for (double eta : eta_grid) {
    SweepRecord r;
    r.eta = eta;
    r.n = n;
    r.cls = classify_werner(eta, n);
    r.p_two_qubit = two_qubit_success(werner_state(eta), family, table).success_probability;
    r.p_single_bound = bound;
    out.push_back(r);
  }
  return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "eta,n,p_two_qubit,p_single_bound,entangled,steerable,chsh_violating,bell_local\n";
  for (const auto& r : records) {
    os << fmt_real(r.eta) << ',' << r.n << ',' << fmt_real(r.p_two_qubit) << ','
       << fmt_real(r.p_single_bound) << ',' << fmt_bool(r.cls.entangled) << ','
       << fmt_bool(r.cls.steerable) << ',' << fmt_bool(r.cls.chsh_violating) << ','
       << fmt_bool(r.cls.bell_local) << '\n';
  }
}

}  // namespace sdsteer
