#include "nrdmft/fock_suite.hpp"

#include <algorithm>
#include <random>

#include "nrdmft/fock.hpp"

namespace nrdmft {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

Complex upper_point(Rng& rng) { return {uniform(rng, -4.0, 4.0), uniform(rng, 0.05, 3.0)}; }

Eigen::MatrixXcd random_hermitian(Rng& rng, int n) {
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
  return 0.5 * (a + a.adjoint());
}

// Largest eigenvalue of (M - M^H)/(2i); <= 0 means -M is Pick-valued.
double max_imag_eig(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd im = (m - m.adjoint()) / Complex(0.0, 2.0);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(im, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

double commutator_norm(const Eigen::SparseMatrix<Complex>& a, const Eigen::SparseMatrix<Complex>& b) {
  const Eigen::SparseMatrix<Complex> c = a * b - b * a;
  return c.norm();
}

HubbardSpec random_hubbard(Rng& rng, int n_sites) {
  HubbardSpec s;
  s.n_sites = n_sites;
  for (int i = 0; i < n_sites; ++i)
    for (int j = i + 1; j < n_sites; ++j)
      if (uniform(rng, 0.0, 1.0) < 0.7) s.edges.push_back({i, j, uniform(rng, -1.0, 1.0)});
  for (int i = 0; i < n_sites; ++i) s.on_site_U.push_back(uniform(rng, 0.5, 4.0));
  s.beta = uniform(rng, 0.5, 5.0);
  s.chem_potential = uniform(rng, -1.0, 2.0);
  return s;
}

AimSpec random_aim(Rng& rng, double U) {
  AimSpec a;
  a.impurity = HubbardSpec::ring(1, 0.0, U, uniform(rng, 0.5, 5.0), U / 2);
  a.bath_energies = {uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
  a.couplings = Eigen::MatrixXd(1, 2);
  a.couplings << uniform(rng, 0.2, 1.5), uniform(rng, 0.2, 1.5);
  return a;
}

SuiteRow row(std::string name, double worst, double tol) {
  return {std::move(name), worst < tol, worst, tol};
}

}  // namespace

std::vector<SuiteRow> run_oracle_suite(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SuiteRow> rows;

  {
    double worst = 0.0;
    double spread = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 5);
      const Eigen::MatrixXcd h0 = random_hermitian(rng, n);
      const ManyBodyHamiltonian h = build_hamiltonian(h0);
      std::vector<GreensFunction> gs;
      for (int k = 0; k < 3; ++k) gs.emplace_back(gibbs(h, uniform(rng, 0.2, 8.0), uniform(rng, -2.0, 2.0)));
      for (int s = 0; s < 20; ++s) {
        const Complex z = upper_point(rng);
        const Eigen::MatrixXcd r = (z * Eigen::MatrixXcd::Identity(n, n) - h0).inverse();
        const Eigen::MatrixXcd g0 = gs[0](z);
        worst = std::max(worst, (g0 - r).norm());
        for (int k = 1; k < 3; ++k) spread = std::max(spread, (gs[k](z) - g0).norm());
      }
    }
    rows.push_back(row("resolvent identity (U = 0)", worst, 1e-10));
    rows.push_back(row("Gibbs-state independence (U = 0)", spread, 1e-10));
  }

  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const ManyBodyHamiltonian h = build_hubbard(random_hubbard(rng, 1 + static_cast<int>(rng() % 3)));
      worst = std::max({worst, commutator_norm(h.matrix, number_operator(h.n_modes)),
                        commutator_norm(h.matrix, spin_z_operator(h.n_modes))});
    }
    rows.push_back(row("[H, N] = [H, Sz] = 0", worst, 1e-12));
  }

  {
    double worst_g = -1.0;
    double worst_s = -1.0;
    for (int trial = 0; trial < 3; ++trial) {
      const HubbardSpec spec = random_hubbard(rng, 2);
      const SpectralDecomposition d = gibbs(build_hubbard(spec), spec.beta, spec.chem_potential);
      const GreensFunction g(d);
      const Eigen::MatrixXcd h0 = hubbard_one_body(spec);
      for (int s = 0; s < 50; ++s) {
        const Complex z = upper_point(rng);
        worst_g = std::max(worst_g, max_imag_eig(g(z)));
        worst_s = std::max(worst_s, max_imag_eig(self_energy_exact(d, h0, z)));
      }
    }
    rows.push_back(row("Pick property of -G", worst_g, 1e-10));
    rows.push_back(row("Pick property of -Sigma", worst_s, 1e-8));
  }

  {
    double worst = 0.0;
    for (double U : {1.0, 4.0}) {
      const AimSpec aim = random_aim(rng, U);
      const SpectralDecomposition d = gibbs(build_aim(aim), aim.impurity.beta, aim.impurity.chem_potential);
      const Eigen::MatrixXcd h0 = aim_one_body(aim);
      for (int s = 0; s < 20; ++s) {
        const Eigen::MatrixXcd sigma = self_energy_exact(d, h0, upper_point(rng));
        for (Eigen::Index i = 0; i < sigma.rows(); ++i)
          for (Eigen::Index j = 0; j < sigma.cols(); ++j)
            if (i >= 2 || j >= 2) worst = std::max(worst, std::abs(sigma(i, j)));
      }
    }
    rows.push_back(row("self-energy confined to the impurity", worst, 1e-8));
  }

  {
    double worst = 0.0;
    double symmetry = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const HubbardSpec spec = random_hubbard(rng, 2);
      const SpectralDecomposition d = gibbs(build_hubbard(spec), spec.beta, spec.chem_potential);
      const GreensFunction g(d.grand_canonical());
      const std::vector<Eigen::MatrixXcd> gn = matsubara_coefficients(d, -6, 5);
      for (int n = -5; n <= 5; ++n) {
        const Complex iw(0.0, matsubara_frequency(spec.beta, n));
        worst = std::max(worst, (gn[static_cast<std::size_t>(n + 6)] - g(iw)).norm());
        symmetry = std::max(symmetry, (gn[static_cast<std::size_t>(n - 1 + 6)].adjoint() -
                                       gn[static_cast<std::size_t>(-n + 6)]).norm());
      }
    }
    rows.push_back(row("Matsubara coefficients = G(i w_n)", worst, 1e-10));
    rows.push_back(row("Matsubara Hermitian symmetry", symmetry, 1e-10));
  }

  {
    double worst_formula = 0.0;
    double worst_pick = -1.0;
    for (int trial = 0; trial < 5; ++trial) {
      const AimSpec aim = random_aim(rng, 2.0);
      const Eigen::MatrixXcd h0 = aim_one_body(aim);
      for (int s = 0; s < 20; ++s) {
        const Complex z = upper_point(rng);
        // Schur complement of z - H0 on the impurity block.
        const Eigen::MatrixXcd a = z * Eigen::MatrixXcd::Identity(h0.rows(), h0.cols()) - h0;
        const Eigen::MatrixXcd schur =
            a.topRightCorner(2, h0.cols() - 2) * a.bottomRightCorner(h0.rows() - 2, h0.cols() - 2).inverse() *
            a.bottomLeftCorner(h0.rows() - 2, 2);
        const Eigen::MatrixXcd delta = hybridization(aim, z);
        worst_formula = std::max(worst_formula, (delta - schur).norm());
        worst_pick = std::max(worst_pick, max_imag_eig(delta));
      }
    }
    rows.push_back(row("hybridization = V (z - H_bath)^-1 V^T", worst_formula, 1e-10));
    rows.push_back(row("Pick property of -Delta", worst_pick, 1e-12));
  }

  return rows;
}

}  // namespace nrdmft
