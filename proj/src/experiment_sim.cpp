#include "sdsteer/experiment_sim.hpp"

#include "sdsteer/format.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace sdsteer {

EstimateResult simulate_run(const DensityMatrix& rho_ab, const DiscriminationSetup& setup,
                            const AliceDirectionTable& table, std::uint64_t total_pairs,
                            std::uint64_t seed) {
  if (total_pairs < 1) throw std::invalid_argument("simulate_run: total_pairs must be >= 1");
  const auto joint = two_qubit_joint_distribution(rho_ab, setup, table);
  std::mt19937_64 rng(seed);
  EstimateResult r;
  r.counts.reserve(joint.size());
  std::uint64_t successes = 0;
  for (const auto& o : joint) {
    const double mean = static_cast<double>(total_pairs) * std::max(0.0, o.probability);
    std::uint64_t c = 0;
    if (mean > 0.0) {
      std::poisson_distribution<std::uint64_t> dist(mean);
      c = dist(rng);
    }
    r.counts.push_back({o.gate, o.b, o.j, o.a, c});
    r.total_counts += c;
    if (o.a == o.j) successes += c;
  }
  if (r.total_counts == 0) return r;
  const double n = static_cast<double>(r.total_counts);
  r.p_hat = static_cast<double>(successes) / n;
  r.std_error = std::sqrt(r.p_hat * (1.0 - r.p_hat) / n);
  return r;
}

EstimateResult simulate_run(const DensityMatrix& rho_ab, const SubchannelFamily& family,
                            const AliceDirectionTable& table, std::uint64_t total_pairs,
                            std::uint64_t seed) {
  return simulate_run(rho_ab, family.setup(), table, total_pairs, seed);
}

EtaFit estimate_eta_by_fidelity(const DensityMatrix& rho_e) {
  if (rho_e.dim() != 4) {
    throw std::invalid_argument("estimate_eta_by_fidelity: expected a two-qubit state");
  }
  const auto f = [&](double eta) { return fidelity(werner_state(eta), rho_e); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > 1e-7) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  EtaFit best{0.5 * (lo + hi), 0.0};
  best.fidelity = f(best.eta);
  // The bracket never reaches the endpoints exactly.
  for (double edge : {0.0, 1.0}) {
    const double fe = f(edge);
    if (fe > best.fidelity) best = {edge, fe};
  }
  return best;
}

void write_run_csv(std::ostream& os, const std::vector<RunRow>& rows) {
  os << "eta,n,total_pairs,seed,p_hat,std_error\n";
  for (const auto& r : rows) {
    os << fmt_real(r.eta) << ',' << r.n << ',' << r.total_pairs << ',' << r.seed << ','
       << fmt_real(r.result.p_hat) << ',' << fmt_real(r.result.std_error) << '\n';
  }
}

}  // namespace sdsteer
