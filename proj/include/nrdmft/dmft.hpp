#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nrdmft/bath_update.hpp"
#include "nrdmft/measure.hpp"

namespace nrdmft {

struct DmftOptions {
  double damping = 0.5;                                      // lambda in (0, 1]
  std::optional<std::size_t> n_max_atoms = 64;               // nu after mixing; nullopt disables
  std::optional<std::size_t> n_max_self_energy_atoms = 256;  // mu before the bath update
  double tol_w2 = 1e-4;
  int max_iter = 200;
  double eta = 0.05;
  // Largest number of triples the IPT map may materialize, and largest
  // self-energy measure handed to the bath update.
  std::size_t triple_budget = 2'000'000;
  std::size_t pole_budget = 50'000;

  void validate() const;
};

enum class DmftStatus { Running, Converged, MaxIterations, AtomicLimit };
std::string to_string(DmftStatus s);

// m1, m2: moments of nu after the step. image_m1, image_m2: moments of the
// bath update output before mixing and compression.
struct MomentLedgerEntry {
  double m1;
  double m2;
  double image_m1;
  double image_m2;
  double target_m1;
  double target_m2;
};

struct DmftState {
  DiscreteMeasure nu;
  DiscreteMeasure mu_last;
  std::vector<double> residual_history;
  std::vector<std::size_t> atom_history;     // atoms of nu after each step
  std::vector<std::size_t> mu_atom_history;  // atoms of the IPT output before compression
  std::vector<double> compression_cost_history;  // W2 cost of compressing nu
  std::vector<double> mu_mass_history;
  std::vector<MomentLedgerEntry> moment_ledger;
  bool compression_warning = false;              // some cost exceeded tol_w2 / 10
  bool disconnected = false;                     // Delta = 0, atomic limit
  DmftStatus status = DmftStatus::Running;

  int iterations() const { return static_cast<int>(residual_history.size()); }
};

// nu <- compress((1 - lambda) nu + lambda F(nu)) with F the bath update of the
// IPT self-energy of nu.
DmftState step(DmftState state, const LatticeSpec& lattice, const DmftOptions& opts);

// The Sigma = 0 hybridization measure, used as the default starting point.
DiscreteMeasure non_interacting_nu(const LatticeSpec& lattice);

// Iterates until the W2 residual and the relative change of mass(mu) both fall
// below tol_w2, or max_iter steps.
DmftState solve(const LatticeSpec& lattice, const DmftOptions& opts,
                std::optional<DiscreteMeasure> nu0 = std::nullopt);

// (omega, -Im cauchy_transform(m, omega + i eta) / pi) on count evenly spaced
// points of [lo, hi].
std::vector<std::pair<double, double>> export_spectrum(const DiscreteMeasure& m, double eta, double lo,
                                                       double hi, std::size_t count);

}  // namespace nrdmft
