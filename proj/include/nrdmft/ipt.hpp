#pragma once

#include <vector>

#include "nrdmft/measure.hpp"

namespace nrdmft {

// Eigenvalues and squared head components of the arrowhead matrix with head
// c, arms sqrt(a_k) and diagonal x_k, for delta = sum a_k delta_{x_k}.
// sum_k weights[k] / (z - levels[k]) = 1 / (z - c - cauchy_transform(delta, z)).
struct EffectiveLevels {
  std::vector<double> levels;   // strictly increasing, interlacing the atoms of delta
  std::vector<double> weights;  // positive, summing to 1

  DiscreteMeasure measure() const;
};

EffectiveLevels effective_levels(const DiscreteMeasure& delta, double c = 0.0);

// One pole of the second-order self-energy: position e1+e2+e3 and coefficient
// p1 p2 p3 (1 + e^{-beta E}) / prod (1 + e^{-beta e_i}).
struct IptResidue {
  int k1, k2, k3;  // k1 <= k2 <= k3
  int multiplicity;
  double position;
  double coefficient;  // per ordered triple
};

std::vector<IptResidue> ipt_residues(const EffectiveLevels& xi, double beta);

// mu such that Sigma(z) = U^2 cauchy_transform(mu, z) for the hybridization
// w_norm_sq * nu at half filling.
DiscreteMeasure ipt_map(const DiscreteMeasure& nu, double w_norm_sq, double beta);

// The same map through Fermi reweighting and explicit triple convolution.
DiscreteMeasure ipt_map_by_convolution(const DiscreteMeasure& nu, double w_norm_sq, double beta);

// U^2 * integral_0^beta e^{i w_n tau} G(tau)^3 dtau with adaptive quadrature.
// Throws ipt_solver.QuadratureFailure if the error estimate exceeds 1e-8.
Complex ipt_matsubara_oracle(const DiscreteMeasure& delta, double U, double beta, int n);

}  // namespace nrdmft
