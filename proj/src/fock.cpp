#include "nrdmft/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>

#include "nrdmft/error.hpp"

namespace nrdmft {

HubbardSpec HubbardSpec::ring(int n, double t, double U, double beta, double mu) {
  HubbardSpec s;
  s.n_sites = n;
  s.on_site_U.assign(static_cast<std::size_t>(std::max(n, 0)), U);
  s.beta = beta;
  s.chem_potential = mu;
  if (n == 2) s.edges.push_back({0, 1, t});
  if (n >= 3)
    for (int i = 0; i < n; ++i) s.edges.push_back({i, (i + 1) % n, t});
  return s;
}

Eigen::MatrixXd HubbardSpec::hopping_matrix() const {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n_sites, n_sites);
  for (const Edge& e : edges) {
    t(e.i, e.j) = e.t;
    t(e.j, e.i) = e.t;
  }
  return t;
}

void HubbardSpec::validate() const {
  if (n_sites < 1) throw input_error("fock_oracle.InvalidSpec", "n_sites must be >= 1");
  if (static_cast<int>(on_site_U.size()) != n_sites)
    throw input_error("fock_oracle.InvalidSpec", "on_site_U needs one entry per site");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw input_error("fock_oracle.InvalidSpec", "beta must be finite and > 0");
  if (!std::isfinite(chem_potential))
    throw input_error("fock_oracle.InvalidSpec", "chemical potential must be finite");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n_sites || e.j >= n_sites)
      throw input_error("fock_oracle.InvalidGraph", "edge endpoint out of range");
    if (e.i == e.j) throw input_error("fock_oracle.InvalidGraph", "self-loop at site " + std::to_string(e.i));
    if (!std::isfinite(e.t)) throw input_error("fock_oracle.InvalidGraph", "non-finite hopping");
    if (!seen.insert(std::minmax(e.i, e.j)).second)
      throw input_error("fock_oracle.InvalidGraph",
                        "duplicate edge " + std::to_string(e.i) + "-" + std::to_string(e.j));
  }
}

void AimSpec::validate() const {
  impurity.validate();
  if (couplings.rows() != impurity.n_sites ||
      couplings.cols() != static_cast<Eigen::Index>(bath_energies.size()))
    throw input_error("fock_oracle.InvalidSpec", "couplings must be impurity sites x bath levels");
}

namespace fock {

int sign_below(std::uint32_t state, int p) {
  const std::uint32_t below = state & ((1u << p) - 1u);
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

}  // namespace fock

namespace {

void check_modes(int n_modes) {
  if (n_modes < 1 || n_modes > fock::kMaxModes)
    throw input_error("fock_oracle.DimensionGuard",
                      std::to_string(n_modes) + " spin-orbitals exceed the limit of " +
                          std::to_string(fock::kMaxModes));
}

}  // namespace

ManyBodyHamiltonian build_hamiltonian(const Eigen::MatrixXcd& one_body,
                                      const std::vector<double>& interaction) {
  const int n = static_cast<int>(one_body.rows());
  check_modes(n);
  if (one_body.cols() != n || (one_body - one_body.adjoint()).norm() > 1e-12 * (1.0 + one_body.norm()))
    throw input_error("fock_oracle.NotHermitian", "one-body matrix must be square and Hermitian");
  if (2 * static_cast<int>(interaction.size()) > n)
    throw input_error("fock_oracle.InvalidSpec", "more interaction entries than orbitals");

  const std::uint32_t dim = 1u << n;
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::uint32_t s = 0; s < dim; ++s) {
    Complex diag = 0.0;
    for (int p = 0; p < n; ++p)
      if (s >> p & 1u) diag += one_body(p, p);
    for (std::size_t i = 0; i < interaction.size(); ++i)
      if ((s >> (2 * i) & 1u) && (s >> (2 * i + 1) & 1u)) diag += interaction[i];
    if (diag != 0.0) triplets.emplace_back(s, s, diag);

    for (int q = 0; q < n; ++q) {
      if (!(s >> q & 1u)) continue;
      const std::uint32_t s1 = s ^ (1u << q);
      const int sign1 = fock::sign_below(s, q);
      for (int p = 0; p < n; ++p) {
        if (p == q || (s1 >> p & 1u) || one_body(p, q) == 0.0) continue;
        const std::uint32_t s2 = s1 | (1u << p);
        triplets.emplace_back(s2, s, one_body(p, q) * double(sign1 * fock::sign_below(s1, p)));
      }
    }
  }
  ManyBodyHamiltonian h;
  h.n_modes = n;
  h.one_body = one_body;
  h.interaction = interaction;
  h.matrix.resize(dim, dim);
  h.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return h;
}

Eigen::MatrixXcd hubbard_one_body(const HubbardSpec& spec) {
  spec.validate();
  const Eigen::MatrixXd t = spec.hopping_matrix();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * spec.n_sites, 2 * spec.n_sites);
  for (int i = 0; i < spec.n_sites; ++i)
    for (int j = 0; j < spec.n_sites; ++j)
      for (int s = 0; s < 2; ++s) h(fock::mode(i, s), fock::mode(j, s)) = t(i, j);
  return h;
}

ManyBodyHamiltonian build_hubbard(const HubbardSpec& spec) {
  spec.validate();
  if (spec.n_sites > 6)
    throw input_error("fock_oracle.DimensionGuard", "at most 6 sites (4^L <= 4096)");
  return build_hamiltonian(hubbard_one_body(spec), spec.on_site_U);
}

Eigen::MatrixXcd aim_one_body(const AimSpec& spec) {
  spec.validate();
  const int li = spec.impurity.n_sites;
  const int n_orb = spec.n_orbitals();
  Eigen::MatrixXd orb = Eigen::MatrixXd::Zero(n_orb, n_orb);
  orb.topLeftCorner(li, li) = spec.impurity.hopping_matrix();
  for (std::size_t b = 0; b < spec.bath_energies.size(); ++b) {
    const int k = li + static_cast<int>(b);
    orb(k, k) = spec.bath_energies[b];
    for (int i = 0; i < li; ++i) {
      orb(i, k) = spec.couplings(i, static_cast<Eigen::Index>(b));
      orb(k, i) = orb(i, k);
    }
  }
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n_orb, 2 * n_orb);
  for (int i = 0; i < n_orb; ++i)
    for (int j = 0; j < n_orb; ++j)
      for (int s = 0; s < 2; ++s) h(fock::mode(i, s), fock::mode(j, s)) = orb(i, j);
  return h;
}

ManyBodyHamiltonian build_aim(const AimSpec& spec) {
  spec.validate();
  if (2 * spec.n_orbitals() > fock::kMaxModes)
    throw input_error("fock_oracle.DimensionGuard", "at most 12 spin-orbitals in an impurity model");
  return build_hamiltonian(aim_one_body(spec), spec.impurity.on_site_U);
}

Eigen::SparseMatrix<Complex> annihilation_operator(int n_modes, int p) {
  check_modes(n_modes);
  const std::uint32_t dim = 1u << n_modes;
  std::vector<Eigen::Triplet<Complex>> t;
  for (std::uint32_t s = 0; s < dim; ++s)
    if (s >> p & 1u) t.emplace_back(s ^ (1u << p), s, double(fock::sign_below(s, p)));
  Eigen::SparseMatrix<Complex> c(dim, dim);
  c.setFromTriplets(t.begin(), t.end());
  return c;
}

Eigen::SparseMatrix<Complex> number_operator(int n_modes) {
  check_modes(n_modes);
  const std::uint32_t dim = 1u << n_modes;
  std::vector<Eigen::Triplet<Complex>> t;
  for (std::uint32_t s = 0; s < dim; ++s) t.emplace_back(s, s, double(std::popcount(s)));
  Eigen::SparseMatrix<Complex> m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Eigen::SparseMatrix<Complex> spin_z_operator(int n_modes) {
  check_modes(n_modes);
  const std::uint32_t dim = 1u << n_modes;
  std::vector<Eigen::Triplet<Complex>> t;
  for (std::uint32_t s = 0; s < dim; ++s) {
    double sz = 0.0;
    for (int p = 0; p < n_modes; ++p)
      if (s >> p & 1u) sz += (p % 2 == 0) ? 0.5 : -0.5;
    t.emplace_back(s, s, sz);
  }
  Eigen::SparseMatrix<Complex> m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

std::size_t SpectralDecomposition::dimension() const {
  std::size_t n = 0;
  for (const Sector& s : sectors) n += s.states.size();
  return n;
}

std::vector<double> SpectralDecomposition::all_energies() const {
  std::vector<double> e;
  for (const Sector& s : sectors) e.insert(e.end(), s.energies.begin(), s.energies.end());
  std::sort(e.begin(), e.end());
  return e;
}

std::vector<double> SpectralDecomposition::gibbs_weights() const {
  std::vector<double> w;
  for (const Sector& s : sectors)
    for (double lw : s.log_weights) w.push_back(std::exp(lw));
  return w;
}

SpectralDecomposition SpectralDecomposition::grand_canonical() const {
  SpectralDecomposition out = *this;
  for (Sector& s : out.sectors) s.energies.array() -= chem_potential * s.particles;
  out.chem_potential = 0.0;
  return out;
}

SpectralDecomposition gibbs(const ManyBodyHamiltonian& h, double beta, double chem_potential) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw input_error("fock_oracle.InvalidSpec", "beta must be finite and > 0");
  const int n = h.n_modes;
  const std::uint32_t dim = 1u << n;

  SpectralDecomposition d;
  d.n_modes = n;
  d.beta = beta;
  d.chem_potential = chem_potential;
  d.sectors.resize(static_cast<std::size_t>(n) + 1);
  std::vector<int> local(dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    Sector& sec = d.sectors[static_cast<std::size_t>(std::popcount(s))];
    local[s] = static_cast<int>(sec.states.size());
    sec.states.push_back(s);
  }

  for (int count = 0; count <= n; ++count) {
    Sector& sec = d.sectors[static_cast<std::size_t>(count)];
    sec.particles = count;
    const auto m = static_cast<Eigen::Index>(sec.states.size());
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index col = 0; col < m; ++col) {
      for (Eigen::SparseMatrix<Complex>::InnerIterator it(h.matrix, sec.states[col]); it; ++it) {
        const auto row_state = static_cast<std::uint32_t>(it.row());
        if (std::popcount(row_state) != count) {
          if (std::abs(it.value()) > 1e-12)
            throw input_error("fock_oracle.NumberNotConserved",
                              "Hamiltonian couples particle-number sectors");
          continue;
        }
        block(local[row_state], col) = it.value();
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
    if (es.info() != Eigen::Success)
      throw numerical_error("fock_oracle.EigenFailure", "sector eigendecomposition failed");
    sec.energies = es.eigenvalues();
    sec.vectors = es.eigenvectors();
    for (Eigen::Index k = 0; k < m; ++k) {
      auto v = sec.vectors.col(k);
      for (Eigen::Index r = 0; r < m; ++r) {
        if (std::abs(v[r]) > 1e-12) {
          v *= std::conj(v[r]) / std::abs(v[r]);
          break;
        }
      }
    }
  }

  // log rho = -beta (E - mu N) - log Z, shifted by the minimum exponent.
  double max_exponent = -INFINITY;
  for (const Sector& s : d.sectors)
    for (double e : s.energies) max_exponent = std::max(max_exponent, -beta * (e - chem_potential * s.particles));
  double z = 0.0;
  for (const Sector& s : d.sectors)
    for (double e : s.energies) z += std::exp(-beta * (e - chem_potential * s.particles) - max_exponent);
  const double log_z = max_exponent + std::log(z);
  for (Sector& s : d.sectors)
    s.log_weights = (-beta * (s.energies.array() - chem_potential * s.particles) - log_z).matrix();
  return d;
}

namespace {

// A_p = V_N^H c_p V_{N+1} for every mode p: amplitudes <psi|c_p|psi'> with
// psi in sector N and psi' in sector N+1.
std::vector<Eigen::MatrixXcd> transition_amplitudes(const SpectralDecomposition& d, int count) {
  const Sector& lo = d.sectors[static_cast<std::size_t>(count)];
  const Sector& hi = d.sectors[static_cast<std::size_t>(count) + 1];
  std::unordered_map<std::uint32_t, Eigen::Index> lo_index;
  for (std::size_t k = 0; k < lo.states.size(); ++k) lo_index[lo.states[k]] = static_cast<Eigen::Index>(k);

  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(d.n_modes));
  for (int p = 0; p < d.n_modes; ++p) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(lo.states.size()),
                                                static_cast<Eigen::Index>(hi.states.size()));
    for (std::size_t k = 0; k < hi.states.size(); ++k) {
      const std::uint32_t s = hi.states[k];
      if (s >> p & 1u) c(lo_index.at(s ^ (1u << p)), static_cast<Eigen::Index>(k)) = double(fock::sign_below(s, p));
    }
    out.push_back(lo.vectors.adjoint() * c * hi.vectors);
  }
  return out;
}

}  // namespace

GreensFunction::GreensFunction(const SpectralDecomposition& d) {
  std::vector<Eigen::VectorXcd> columns;
  for (int count = 0; count < d.n_modes; ++count) {
    const Sector& lo = d.sectors[static_cast<std::size_t>(count)];
    const Sector& hi = d.sectors[static_cast<std::size_t>(count) + 1];
    const std::vector<Eigen::MatrixXcd> a = transition_amplitudes(d, count);
    for (Eigen::Index i = 0; i < lo.energies.size(); ++i) {
      for (Eigen::Index j = 0; j < hi.energies.size(); ++j) {
        Eigen::VectorXcd r(d.n_modes);
        for (int p = 0; p < d.n_modes; ++p) r[p] = a[static_cast<std::size_t>(p)](i, j);
        if (r.squaredNorm() < 1e-28) continue;
        poles_.push_back(hi.energies[j] - lo.energies[i]);
        pole_weights_.push_back(std::exp(lo.log_weights[i]) + std::exp(hi.log_weights[j]));
        columns.push_back(std::move(r));
      }
    }
  }
  residues_.resize(d.n_modes, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) residues_.col(static_cast<Eigen::Index>(k)) = columns[k];
}

Eigen::MatrixXcd GreensFunction::operator()(Complex z) const {
  if (z.imag() == 0.0)
    throw input_error("fock_oracle.RealArgument", "Green's function evaluated on the real axis");
  Eigen::VectorXcd c(static_cast<Eigen::Index>(poles_.size()));
  for (std::size_t k = 0; k < poles_.size(); ++k) c[static_cast<Eigen::Index>(k)] = pole_weights_[k] / (z - poles_[k]);
  return residues_ * c.asDiagonal() * residues_.adjoint();
}

DiscreteMeasure GreensFunction::spectral_measure(int p) const {
  if (p < 0 || p >= n_modes()) throw input_error("fock_oracle.InvalidMode", "mode index out of range");
  std::vector<Atom> atoms;
  for (std::size_t k = 0; k < poles_.size(); ++k)
    atoms.push_back({poles_[k], pole_weights_[k] * std::norm(residues_(p, static_cast<Eigen::Index>(k)))});
  return DiscreteMeasure(std::move(atoms));
}

Eigen::MatrixXcd kl_greens(const SpectralDecomposition& d, Complex z) {
  return GreensFunction(d)(z);
}

Eigen::MatrixXcd self_energy_exact(const SpectralDecomposition& d, const Eigen::MatrixXcd& one_body,
                                   Complex z) {
  const Eigen::MatrixXcd g = kl_greens(d, z);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(g);
  const double rcond = lu.rcond();
  if (!(rcond >= 1e-12))
    throw numerical_error("fock_oracle.IllConditionedGreensFunction",
                          "reciprocal condition number " + std::to_string(rcond));
  const auto n = one_body.rows();
  return z * Eigen::MatrixXcd::Identity(n, n) - one_body - lu.inverse();
}

std::vector<Eigen::MatrixXcd> matsubara_coefficients(const SpectralDecomposition& d, int n_first,
                                                     int n_last) {
  const double beta = d.beta;
  const double mu = d.chem_potential;
  std::vector<Eigen::MatrixXcd> out;
  for (int n = n_first; n <= n_last; ++n)
    out.push_back(Eigen::MatrixXcd::Zero(d.n_modes, d.n_modes));

  for (int count = 0; count < d.n_modes; ++count) {
    const Sector& lo = d.sectors[static_cast<std::size_t>(count)];
    const Sector& hi = d.sectors[static_cast<std::size_t>(count) + 1];
    const std::vector<Eigen::MatrixXcd> a = transition_amplitudes(d, count);
    for (Eigen::Index i = 0; i < lo.energies.size(); ++i) {
      for (Eigen::Index j = 0; j < hi.energies.size(); ++j) {
        Eigen::VectorXcd r(d.n_modes);
        for (int p = 0; p < d.n_modes; ++p) r[p] = a[static_cast<std::size_t>(p)](i, j);
        if (r.squaredNorm() < 1e-28) continue;
        const Eigen::MatrixXcd rr = r * r.adjoint();
        // G(tau) = -sum rho_psi e^{tau d} r r^H with d = E'_psi - E'_psi'; the
        // integral over [0, beta] against e^{i w tau} is
        // -rho_psi (e^{(i w + d) beta} - 1)/(i w + d), and e^{i w beta} = -1.
        const double dd = (lo.energies[i] - mu * lo.particles) - (hi.energies[j] - mu * hi.particles);
        const double rho = std::exp(lo.log_weights[i]);
        const double rho_shift = std::exp(lo.log_weights[i] + beta * dd);
        for (int n = n_first; n <= n_last; ++n) {
          const Complex iw(0.0, matsubara_frequency(beta, n));
          out[static_cast<std::size_t>(n - n_first)] += ((rho + rho_shift) / (iw + dd)) * rr;
        }
      }
    }
  }
  return out;
}

Eigen::MatrixXcd hybridization(const AimSpec& spec, Complex z) {
  spec.validate();
  const int li = spec.impurity.n_sites;
  Eigen::MatrixXcd orb = Eigen::MatrixXcd::Zero(li, li);
  for (std::size_t b = 0; b < spec.bath_energies.size(); ++b) {
    const Complex g = 1.0 / (z - spec.bath_energies[b]);
    const Eigen::VectorXd v = spec.couplings.col(static_cast<Eigen::Index>(b));
    orb += g * (v * v.transpose()).cast<Complex>();
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * li, 2 * li);
  for (int i = 0; i < li; ++i)
    for (int j = 0; j < li; ++j)
      for (int s = 0; s < 2; ++s) out(fock::mode(i, s), fock::mode(j, s)) = orb(i, j);
  return out;
}

}  // namespace nrdmft
