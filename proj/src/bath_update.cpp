#include "nrdmft/bath_update.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nrdmft/error.hpp"
#include "nrdmft/ipt.hpp"

namespace nrdmft {

LatticeSpec LatticeSpec::make(Eigen::VectorXd W, Eigen::MatrixXd H_perp, double U, double beta) {
  LatticeSpec l;
  l.W = std::move(W);
  l.H_perp = std::move(H_perp);
  l.U = U;
  l.beta = beta;
  l.w_norm_sq = l.W.squaredNorm();
  l.validate();
  return l;
}

void LatticeSpec::validate() const {
  if (H_perp.rows() != W.size() || H_perp.cols() != W.size())
    throw input_error("ba_map.InvalidLattice", "H_perp must be square with the length of W");
  if ((H_perp - H_perp.transpose()).norm() > 1e-12 * (1.0 + H_perp.norm()))
    throw input_error("ba_map.InvalidLattice", "H_perp must be symmetric");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw input_error("ba_map.InvalidLattice", "beta must be > 0");
  if (!std::isfinite(U)) throw input_error("ba_map.InvalidLattice", "U must be finite");
  if (std::abs(w_norm_sq - W.squaredNorm()) > 1e-12 * (1.0 + w_norm_sq))
    throw input_error("ba_map.InvalidLattice", "w_norm_sq does not match W");
}

namespace {

constexpr double kGraphTol = 1e-12;

bool same(double a, double b) { return std::abs(a - b) <= kGraphTol * (1.0 + std::abs(a)); }

struct AutomorphismSearch {
  const Eigen::MatrixXd& t;
  const std::vector<double>& u;
  std::vector<std::vector<double>> row_signature;
  std::vector<int> image;
  std::vector<bool> used;

  AutomorphismSearch(const Eigen::MatrixXd& t_, const std::vector<double>& u_) : t(t_), u(u_) {
    const auto n = t.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
      std::vector<double> r;
      for (Eigen::Index j = 0; j < n; ++j) r.push_back(t(i, j));
      std::sort(r.begin(), r.end());
      row_signature.push_back(std::move(r));
    }
  }

  bool compatible(int i, int c) const {
    if (!same(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(c)])) return false;
    const auto& a = row_signature[static_cast<std::size_t>(i)];
    const auto& b = row_signature[static_cast<std::size_t>(c)];
    for (std::size_t k = 0; k < a.size(); ++k)
      if (!same(a[k], b[k])) return false;
    for (int j = 0; j < i; ++j)
      if (!same(t(i, j), t(c, image[static_cast<std::size_t>(j)]))) return false;
    return same(t(i, i), t(c, c));
  }

  bool extend(int i) {
    const int n = static_cast<int>(t.rows());
    if (i == n) return true;
    for (int c = 0; c < n; ++c) {
      if (used[static_cast<std::size_t>(c)] || !compatible(i, c)) continue;
      used[static_cast<std::size_t>(c)] = true;
      image[static_cast<std::size_t>(i)] = c;
      if (extend(i + 1)) return true;
      used[static_cast<std::size_t>(c)] = false;
    }
    return false;
  }

  bool maps_first_to(int v) {
    const auto n = static_cast<std::size_t>(t.rows());
    image.assign(n, -1);
    used.assign(n, false);
    if (!compatible(0, v)) return false;
    image[0] = v;
    used[static_cast<std::size_t>(v)] = true;
    return extend(1);
  }
};

}  // namespace

bool is_vertex_transitive(const HubbardSpec& spec) {
  spec.validate();
  if (spec.n_sites > 12)
    throw input_error("ba_map.TransitivityUnchecked", "automorphism search is limited to 12 vertices");
  const Eigen::MatrixXd t = spec.hopping_matrix();
  AutomorphismSearch search(t, spec.on_site_U);
  for (int v = 1; v < spec.n_sites; ++v)
    if (!search.maps_first_to(v)) return false;
  return true;
}

LatticeSpec lattice_from_hubbard(const HubbardSpec& spec, int site, bool attest_transitive) {
  spec.validate();
  if (site < 0 || site >= spec.n_sites) throw input_error("ba_map.InvalidSite", "site index out of range");
  for (double u : spec.on_site_U)
    if (!same(u, spec.on_site_U.front()))
      throw input_error("ba_map.NotVertexTransitive", "on-site U is not constant");
  if (spec.n_sites > 12) {
    if (!attest_transitive)
      throw input_error("ba_map.TransitivityUnchecked",
                        "graphs above 12 vertices need an explicit transitivity attestation");
  } else if (!is_vertex_transitive(spec)) {
    throw input_error("ba_map.NotVertexTransitive", "graph has no automorphism moving site 0 to every site");
  }

  const Eigen::MatrixXd t = spec.hopping_matrix();
  const int m = spec.n_sites - 1;
  Eigen::VectorXd w(m);
  Eigen::MatrixXd h(m, m);
  std::vector<int> rest;
  for (int i = 0; i < spec.n_sites; ++i)
    if (i != site) rest.push_back(i);
  for (int a = 0; a < m; ++a) {
    w[a] = t(site, rest[static_cast<std::size_t>(a)]);
    for (int b = 0; b < m; ++b) h(a, b) = t(rest[static_cast<std::size_t>(a)], rest[static_cast<std::size_t>(b)]);
  }
  return LatticeSpec::make(std::move(w), std::move(h), spec.on_site_U.front(), spec.beta);
}

Hybridization bath_update(const DiscreteMeasure& mu, const LatticeSpec& lattice) {
  lattice.validate();
  Hybridization out;
  if (lattice.w_norm_sq == 0.0) {
    out.disconnected = true;
    return out;
  }
  // Sigma(z) I commutes with H_perp, so the embedding splits along the
  // eigenvectors of H_perp into independent arrowheads with head lambda_m.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lattice.H_perp);
  if (es.info() != Eigen::Success)
    throw numerical_error("ba_map.EigenFailure", "H_perp eigendecomposition failed");
  const Eigen::VectorXd lambda = es.eigenvalues();
  const Eigen::VectorXd c = es.eigenvectors().transpose() * lattice.W;

  struct Cluster {
    double level;
    double weight;
  };
  std::vector<Cluster> clusters;
  for (Eigen::Index m = 0; m < lambda.size(); ++m) {
    if (!clusters.empty() &&
        lambda[m] - clusters.back().level <= DiscreteMeasure::kCoincidenceTolerance * (1.0 + std::abs(lambda[m]))) {
      clusters.back().weight += c[m] * c[m];
    } else {
      clusters.push_back({lambda[m], c[m] * c[m]});
    }
  }
  std::erase_if(clusters, [&](const Cluster& k) { return k.weight < 1e-14 * lattice.w_norm_sq; });
  double kept = 0.0;
  for (const Cluster& k : clusters) kept += k.weight;

  const DiscreteMeasure sigma = mu.scaled(lattice.U * lattice.U);
  std::vector<Atom> atoms;
  for (const Cluster& k : clusters) {
    const EffectiveLevels xi = effective_levels(sigma, k.level);
    for (std::size_t j = 0; j < xi.levels.size(); ++j)
      atoms.push_back({xi.levels[j], k.weight / kept * xi.weights[j]});
  }
  out.nu = DiscreteMeasure(std::move(atoms));
  return out;
}

Eigen::MatrixXd embedding_matrix(const DiscreteMeasure& mu, const LatticeSpec& lattice) {
  lattice.validate();
  const auto p = lattice.H_perp.rows();
  const auto k = static_cast<Eigen::Index>(mu.size());
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(p * (1 + k), p * (1 + k));
  e.topLeftCorner(p, p) = lattice.H_perp;
  for (Eigen::Index site = 0; site < p; ++site) {
    for (Eigen::Index a = 0; a < k; ++a) {
      const Eigen::Index r = p + site * k + a;
      e(r, r) = mu[static_cast<std::size_t>(a)].position;
      e(site, r) = e(r, site) = lattice.U * std::sqrt(mu[static_cast<std::size_t>(a)].weight);
    }
  }
  return e;
}

Hybridization bath_update_dense(const DiscreteMeasure& mu, const LatticeSpec& lattice) {
  Hybridization out;
  if (lattice.w_norm_sq == 0.0) {
    out.disconnected = true;
    return out;
  }
  const Eigen::MatrixXd e = embedding_matrix(mu, lattice);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e);
  const auto p = lattice.H_perp.rows();
  const Eigen::VectorXd overlap = es.eigenvectors().topRows(p).transpose() * lattice.W;
  std::vector<Atom> atoms;
  for (Eigen::Index j = 0; j < overlap.size(); ++j) {
    const double s = overlap[j] * overlap[j];
    if (s >= 1e-14 * lattice.w_norm_sq) atoms.push_back({es.eigenvalues()[j], s / lattice.w_norm_sq});
  }
  out.nu = DiscreteMeasure(std::move(atoms));
  return out;
}

double resolvent_check(const DiscreteMeasure& mu, const LatticeSpec& lattice, Complex z) {
  if (!(z.imag() > 0.0)) throw input_error("ba_map.NotUpperHalfPlane", "z must satisfy Im z > 0");
  const auto p = lattice.H_perp.rows();
  const Complex sigma = lattice.U * lattice.U * cauchy_transform(mu, z);
  const Eigen::MatrixXcd a = (z - sigma) * Eigen::MatrixXcd::Identity(p, p) - lattice.H_perp.cast<Complex>();
  const Eigen::VectorXcd w = lattice.W.cast<Complex>();
  const Complex lhs = w.dot(a.partialPivLu().solve(w));
  const Hybridization h = bath_update(mu, lattice);
  const Complex rhs = h.disconnected ? Complex(0.0) : lattice.w_norm_sq * cauchy_transform(h.nu, z);
  return std::abs(lhs - rhs);
}

MomentTargets hybridization_moment_targets(const LatticeSpec& lattice, double mu_mass) {
  if (lattice.w_norm_sq == 0.0) return {0.0, 0.0};
  const Eigen::VectorXd hw = lattice.H_perp * lattice.W;
  const double u2 = lattice.U * lattice.U;
  return {lattice.W.dot(hw) / lattice.w_norm_sq, (hw.squaredNorm() + u2 * mu_mass * lattice.w_norm_sq) / lattice.w_norm_sq};
}

}  // namespace nrdmft
