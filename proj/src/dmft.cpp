#include "nrdmft/dmft.hpp"

#include <cmath>

#include "nrdmft/error.hpp"
#include "nrdmft/ipt.hpp"

namespace nrdmft {

void DmftOptions::validate() const {
  if (!(damping > 0.0 && damping <= 1.0))
    throw input_error("dmft_loop.InvalidOptions", "damping must lie in (0, 1]");
  if (n_max_atoms && *n_max_atoms < 4) throw input_error("dmft_loop.InvalidOptions", "n_max_atoms must be >= 4");
  if (n_max_self_energy_atoms && *n_max_self_energy_atoms < 4)
    throw input_error("dmft_loop.InvalidOptions", "n_max_self_energy_atoms must be >= 4");
  if (!(tol_w2 > 0.0)) throw input_error("dmft_loop.InvalidOptions", "tol_w2 must be > 0");
  if (max_iter < 1) throw input_error("dmft_loop.InvalidOptions", "max_iter must be >= 1");
  if (!(eta > 0.0)) throw input_error("dmft_loop.InvalidOptions", "eta must be > 0");
}

std::string to_string(DmftStatus s) {
  switch (s) {
    case DmftStatus::Running: return "running";
    case DmftStatus::Converged: return "converged";
    case DmftStatus::MaxIterations: return "max_iter";
    case DmftStatus::AtomicLimit: return "atomic_limit";
  }
  return "unknown";
}

DmftState step(DmftState state, const LatticeSpec& lattice, const DmftOptions& opts) {
  opts.validate();
  if (lattice.w_norm_sq == 0.0) {
    state.disconnected = true;
    state.nu = DiscreteMeasure();
    state.status = DmftStatus::AtomicLimit;
    return state;
  }
  const double levels = static_cast<double>(state.nu.size()) + 1.0;
  const double triples = levels * (levels + 1.0) * (levels + 2.0) / 6.0;
  if (triples > static_cast<double>(opts.triple_budget))
    throw numerical_error("dmft_loop.AtomBudgetExceeded",
                          "the IPT map would materialize " + std::to_string(triples) + " poles from " +
                              std::to_string(state.nu.size()) + " atoms (budget " +
                              std::to_string(opts.triple_budget) + ")");

  const DiscreteMeasure mu = ipt_map(state.nu, lattice.w_norm_sq, lattice.beta);
  state.mu_atom_history.push_back(mu.size());
  state.mu_mass_history.push_back(mu.mass());
  const DiscreteMeasure mu_used =
      opts.n_max_self_energy_atoms ? compress_symmetric(mu, *opts.n_max_self_energy_atoms).measure : mu;
  if (mu_used.size() > opts.pole_budget)
    throw numerical_error("dmft_loop.AtomBudgetExceeded",
                          "the bath update would receive a self-energy with " + std::to_string(mu_used.size()) +
                              " atoms (budget " + std::to_string(opts.pole_budget) + ")");
  const DiscreteMeasure image = bath_update(mu_used, lattice).nu;

  DiscreteMeasure next = state.nu.scaled(1.0 - opts.damping) + image.scaled(opts.damping);
  double cost = 0.0;
  if (opts.n_max_atoms) {
    Compression c = compress_symmetric(next, *opts.n_max_atoms);
    next = std::move(c.measure);
    cost = std::sqrt(c.cost);
  }
  state.compression_cost_history.push_back(cost);
  if (cost > opts.tol_w2 / 10.0) state.compression_warning = true;

  state.residual_history.push_back(wasserstein2(next, state.nu));
  state.atom_history.push_back(next.size());
  const MomentTargets t = hybridization_moment_targets(lattice, mu.mass());
  state.moment_ledger.push_back(
      {moment(next, 1), moment(next, 2), moment(image, 1), moment(image, 2), t.m1, t.m2});
  state.nu = std::move(next);
  state.mu_last = mu;
  return state;
}

DiscreteMeasure non_interacting_nu(const LatticeSpec& lattice) {
  return bath_update(DiscreteMeasure(), lattice).nu;
}

DmftState solve(const LatticeSpec& lattice, const DmftOptions& opts, std::optional<DiscreteMeasure> nu0) {
  opts.validate();
  lattice.validate();
  DmftState state;
  if (lattice.w_norm_sq == 0.0) {
    state.disconnected = true;
    state.status = DmftStatus::AtomicLimit;
    return state;
  }
  state.nu = nu0 ? std::move(*nu0) : non_interacting_nu(lattice);
  if (!is_probability(state.nu))
    throw input_error("dmft_loop.NotProbability", "initial nu must have unit mass");

  for (int it = 0; it < opts.max_iter; ++it) {
    state = step(std::move(state), lattice, opts);
    const auto& masses = state.mu_mass_history;
    if (masses.size() < 2) continue;
    const double prev = masses[masses.size() - 2];
    const double rel = std::abs(masses.back() - prev) / std::max(std::abs(prev), 1e-300);
    if (state.residual_history.back() < opts.tol_w2 && rel < opts.tol_w2) {
      state.status = DmftStatus::Converged;
      return state;
    }
  }
  state.status = DmftStatus::MaxIterations;
  return state;
}

std::vector<std::pair<double, double>> export_spectrum(const DiscreteMeasure& m, double eta, double lo,
                                                       double hi, std::size_t count) {
  if (!(eta > 0.0)) throw input_error("dmft_loop.InvalidBroadening", "eta must be > 0");
  if (count < 2 || !(hi > lo)) throw input_error("dmft_loop.InvalidGrid", "need count >= 2 and hi > lo");
  std::vector<std::pair<double, double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double w = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    out.emplace_back(w, -cauchy_transform(m, Complex(w, eta)).imag() / M_PI);
  }
  return out;
}

}  // namespace nrdmft
