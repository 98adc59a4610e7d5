#pragma once

#include <Eigen/Dense>

#include "nrdmft/fock.hpp"
#include "nrdmft/measure.hpp"

namespace nrdmft {

// Single-site translation-invariant lattice data seen from one site: the
// couplings W to the remaining sites and the hopping matrix H_perp among them.
struct LatticeSpec {
  Eigen::VectorXd W;
  Eigen::MatrixXd H_perp;
  double U = 0.0;
  double beta = 1.0;
  double w_norm_sq = 0.0;

  static LatticeSpec make(Eigen::VectorXd W, Eigen::MatrixXd H_perp, double U, double beta);
  void validate() const;
};

// Automorphism search over weighted graphs with at most 12 vertices.
bool is_vertex_transitive(const HubbardSpec& spec);

// Rejects graphs that are not vertex-transitive (or have non-constant U) with
// ba_map.NotVertexTransitive. Graphs above 12 vertices are accepted only with
// attest_transitive = true.
LatticeSpec lattice_from_hubbard(const HubbardSpec& spec, int site = 0, bool attest_transitive = false);

struct Hybridization {
  DiscreteMeasure nu;         // probability measure; Delta = w_norm_sq * cauchy_transform(nu)
  bool disconnected = false;  // W = 0: Delta vanishes identically and nu is empty
};

// nu(z) from ||W||^2 cauchy(nu, z) = W (z - H_perp - U^2 cauchy(mu, z))^{-1} W^T.
Hybridization bath_update(const DiscreteMeasure& mu, const LatticeSpec& lattice);

// Physical block H_perp with every site coupled to K replica levels x_k with
// strength U sqrt(w_k).
Eigen::MatrixXd embedding_matrix(const DiscreteMeasure& mu, const LatticeSpec& lattice);

// bath_update by dense eigendecomposition of embedding_matrix.
Hybridization bath_update_dense(const DiscreteMeasure& mu, const LatticeSpec& lattice);

// |W (z - H_perp - Sigma(z))^{-1} W^T - ||W||^2 cauchy(bath_update(mu), z)|.
double resolvent_check(const DiscreteMeasure& mu, const LatticeSpec& lattice, Complex z);

struct MomentTargets {
  double m1;
  double m2;
};

// W H_perp W^T / ||W||^2 and W (H_perp^2 + U^2 mu_mass) W^T / ||W||^2.
MomentTargets hybridization_moment_targets(const LatticeSpec& lattice, double mu_mass);

}  // namespace nrdmft
