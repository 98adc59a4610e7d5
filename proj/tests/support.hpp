#pragma once

// Random inputs and reference implementations used across the test suites.
// The references deliberately take a different route from the library.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nrdmft/fock.hpp"
#include "nrdmft/measure.hpp"

namespace testsupport {

using nrdmft::Atom;
using nrdmft::Complex;
using nrdmft::DiscreteMeasure;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Positions in [-r, r], weights in [0.1, 1], then scaled to the given mass.
inline DiscreteMeasure random_measure(std::mt19937_64& rng, int atoms, double mass = 1.0, double r = 3.0) {
  std::vector<Atom> a;
  double total = 0.0;
  for (int i = 0; i < atoms; ++i) {
    a.push_back({uniform(rng, -r, r), uniform(rng, 0.1, 1.0)});
    total += a.back().weight;
  }
  for (Atom& x : a) x.weight *= mass / total;
  return DiscreteMeasure(std::move(a));
}

inline Complex random_upper(std::mt19937_64& rng, double im_lo = 0.05) {
  return {uniform(rng, -4.0, 4.0), uniform(rng, im_lo, 3.0)};
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, int n, bool real = false) {
  Eigen::MatrixXcd h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = Complex(uniform(rng, -1, 1), real ? 0.0 : uniform(rng, -1, 1));
  return 0.5 * (h + h.adjoint());
}

// W2 by integrating the squared difference of the two quantile functions
// over the union of their breakpoints.
inline double quantile_w2(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  auto cumulative = [](const DiscreteMeasure& m) {
    std::vector<double> c;
    double s = 0.0;
    for (const Atom& x : m.atoms()) c.push_back(s += x.weight / m.mass());
    c.back() = 1.0;
    return c;
  };
  const std::vector<double> ca = cumulative(a);
  const std::vector<double> cb = cumulative(b);
  std::vector<double> cuts = ca;
  cuts.insert(cuts.end(), cb.begin(), cb.end());
  cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  auto quantile = [](const DiscreteMeasure& m, const std::vector<double>& c, double t) {
    const auto it = std::lower_bound(c.begin(), c.end(), t);
    return m[static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - c.begin(), c.size() - 1))].position;
  };
  double cost = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double len = cuts[k + 1] - cuts[k];
    if (len <= 0.0) continue;
    const double t = 0.5 * (cuts[k] + cuts[k + 1]);
    const double d = quantile(a, ca, t) - quantile(b, cb, t);
    cost += len * d * d;
  }
  return std::sqrt(cost);
}

// Eigenvalues and squared first components of the dense arrowhead matrix.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> dense_arrowhead(const DiscreteMeasure& delta, double c) {
  const auto k = static_cast<Eigen::Index>(delta.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k + 1, k + 1);
  a(0, 0) = c;
  for (Eigen::Index j = 0; j < k; ++j) {
    a(j + 1, j + 1) = delta[static_cast<std::size_t>(j)].position;
    a(0, j + 1) = a(j + 1, 0) = std::sqrt(delta[static_cast<std::size_t>(j)].weight);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  return {es.eigenvalues(), es.eigenvectors().row(0).transpose().cwiseAbs2()};
}

// Fock-space operators from Kronecker products: mode p is bit p of the state
// index, and c_p = I x ... x I x a x Z x ... x Z with the Z string on the
// modes below p.
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

inline Eigen::MatrixXcd kron_annihilator(int n_modes, int p) {
  Eigen::MatrixXcd lower(2, 2), z(2, 2), id = Eigen::MatrixXcd::Identity(2, 2);
  lower << 0, 1, 0, 0;
  z << 1, 0, 0, -1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = n_modes - 1; q >= 0; --q) out = kron(out, q > p ? id : (q == p ? lower : z));
  return out;
}

inline Eigen::MatrixXcd kron_hamiltonian(const Eigen::MatrixXcd& h0, const std::vector<double>& u) {
  const int n = static_cast<int>(h0.rows());
  std::vector<Eigen::MatrixXcd> c;
  for (int p = 0; p < n; ++p) c.push_back(kron_annihilator(n, p));
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) h += h0(p, q) * c[p].adjoint() * c[q];
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Eigen::MatrixXcd nu = c[2 * i].adjoint() * c[2 * i];
    const Eigen::MatrixXcd nd = c[2 * i + 1].adjoint() * c[2 * i + 1];
    h += u[i] * nu * nd;
  }
  return h;
}

// Kallen-Lehmann sum over a full dense diagonalization of H - mu N, no
// particle-number sectors. Poles are differences of eigenvalues of H, or of
// H - mu N when grand_frame is set.
inline Eigen::MatrixXcd dense_kl_greens(const Eigen::MatrixXcd& h0, const std::vector<double>& u, double beta,
                                        double mu, Complex z, bool grand_frame = false) {
  const int n = static_cast<int>(h0.rows());
  const int dim = 1 << n;
  Eigen::MatrixXcd number = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Eigen::MatrixXcd> c;
  for (int p = 0; p < n; ++p) {
    c.push_back(kron_annihilator(n, p));
    number += c.back().adjoint() * c.back();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(kron_hamiltonian(h0, u) - mu * number);
  const Eigen::VectorXd eg = es.eigenvalues();
  const Eigen::MatrixXcd v = es.eigenvectors();
  Eigen::VectorXd rho(dim), e(dim);
  for (int a = 0; a < dim; ++a) {
    rho[a] = std::exp(-beta * (eg[a] - eg[0]));
    e[a] = grand_frame ? eg[a] : eg[a] + mu * (v.col(a).adjoint() * number * v.col(a))(0, 0).real();
  }
  rho /= rho.sum();
  std::vector<Eigen::MatrixXcd> cv;
  for (int p = 0; p < n; ++p) cv.push_back(v.adjoint() * c[p] * v);  // <a|c_p|b>
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const Complex denom = z - (e[b] - e[a]);
      const double w = rho[a] + rho[b];
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) g(p, q) += w * cv[p](a, b) * std::conj(cv[q](a, b)) / denom;
    }
  return g;
}

// Composite Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace testsupport
