#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <vector>

#include "nrdmft/measure.hpp"

namespace nrdmft {

struct Edge {
  int i;
  int j;
  double t;
};

struct HubbardSpec {
  int n_sites = 1;
  std::vector<Edge> edges;
  std::vector<double> on_site_U;  // one entry per site
  double beta = 1.0;
  double chem_potential = 0.0;

  static HubbardSpec ring(int n, double t, double U, double beta, double mu);

  // Real symmetric n_sites x n_sites hopping matrix.
  Eigen::MatrixXd hopping_matrix() const;
  void validate() const;
};

struct AimSpec {
  HubbardSpec impurity;
  std::vector<double> bath_energies;
  Eigen::MatrixXd couplings;  // impurity sites x bath levels, spin-diagonal

  int n_orbitals() const { return impurity.n_sites + static_cast<int>(bath_energies.size()); }
  void validate() const;
};

// Spin-orbital index 2*orbital + spin; Fock states are occupation bitstrings
// with bit p for spin-orbital p. Annihilating mode p picks up (-1) raised to
// the number of occupied modes below p.
namespace fock {

constexpr int kMaxModes = 12;

inline int mode(int orbital, int spin) { return 2 * orbital + spin; }
int sign_below(std::uint32_t state, int p);

}  // namespace fock

struct ManyBodyHamiltonian {
  int n_modes = 0;
  Eigen::MatrixXcd one_body;        // n_modes x n_modes, Hermitian
  std::vector<double> interaction;  // U per orbital (n_modes/2 entries or empty)
  Eigen::SparseMatrix<Complex> matrix;
};

// dGamma(H0) + sum_i U_i n_{i,up} n_{i,down}.
ManyBodyHamiltonian build_hamiltonian(const Eigen::MatrixXcd& one_body,
                                      const std::vector<double>& interaction = {});
ManyBodyHamiltonian build_hubbard(const HubbardSpec& spec);
ManyBodyHamiltonian build_aim(const AimSpec& spec);

// Spin-orbital one-body matrices.
Eigen::MatrixXcd hubbard_one_body(const HubbardSpec& spec);
Eigen::MatrixXcd aim_one_body(const AimSpec& spec);

// Sparse operators on the full Fock space.
Eigen::SparseMatrix<Complex> annihilation_operator(int n_modes, int p);
Eigen::SparseMatrix<Complex> number_operator(int n_modes);
Eigen::SparseMatrix<Complex> spin_z_operator(int n_modes);

struct Sector {
  int particles = 0;
  std::vector<std::uint32_t> states;  // Fock states spanning the sector
  Eigen::VectorXd energies;           // ascending
  Eigen::MatrixXcd vectors;           // columns are eigenvectors in `states` basis
  Eigen::VectorXd log_weights;        // log rho
};

struct SpectralDecomposition {
  int n_modes = 0;
  double beta = 0.0;
  double chem_potential = 0.0;
  std::vector<Sector> sectors;  // index = particle number

  std::size_t dimension() const;
  std::vector<double> all_energies() const;
  std::vector<double> gibbs_weights() const;
  // Same eigenvectors and weights, energies E - mu*N.
  SpectralDecomposition grand_canonical() const;
};

// Diagonalizes H sector by sector in particle number. Eigenvectors are
// normalized so that their first component above 1e-12 in modulus is real and
// positive.
SpectralDecomposition gibbs(const ManyBodyHamiltonian& h, double beta, double chem_potential);

// Pole form of the Kallen-Lehmann sum: G(z) = R diag(c/(z - e)) R^H.
class GreensFunction {
 public:
  explicit GreensFunction(const SpectralDecomposition& d);

  Eigen::MatrixXcd operator()(Complex z) const;
  int n_modes() const { return static_cast<int>(residues_.rows()); }
  std::size_t n_poles() const { return poles_.size(); }

  // Spectral measure of the diagonal entry G_pp: G_pp = cauchy_transform.
  DiscreteMeasure spectral_measure(int p) const;

 private:
  std::vector<double> poles_;
  std::vector<double> pole_weights_;
  Eigen::MatrixXcd residues_;
};

Eigen::MatrixXcd kl_greens(const SpectralDecomposition& d, Complex z);

// (z - H0) - G(z)^{-1}; throws fock_oracle.IllConditionedGreensFunction when
// the reciprocal condition number of G falls below 1e-12.
Eigen::MatrixXcd self_energy_exact(const SpectralDecomposition& d, const Eigen::MatrixXcd& one_body,
                                   Complex z);

inline double matsubara_frequency(double beta, int n) { return (2 * n + 1) * M_PI / beta; }

// Fourier coefficients of the imaginary-time Green's function, computed in
// closed form from the eigenbasis of H - mu*N for n in [n_first, n_last].
std::vector<Eigen::MatrixXcd> matsubara_coefficients(const SpectralDecomposition& d, int n_first,
                                                     int n_last);

// V (z - H_bath)^{-1} V^T on the impurity spin-orbitals.
Eigen::MatrixXcd hybridization(const AimSpec& spec, Complex z);

}  // namespace nrdmft
