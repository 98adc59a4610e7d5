#include "nrdmft/nevanlinna.hpp"

#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>

#include "nrdmft/error.hpp"

namespace nrdmft {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr double kDenominatorFloor = 1e-13;
constexpr double kDataRelError = 1e-14;

}  // namespace

Complex cayley(Complex z) {
  if (z == -kI) throw input_error("nevanlinna_pick.CayleyPole", "cayley is undefined at -i");
  return (z - kI) / (z + kI);
}

Complex cayley_inv(Complex w) {
  if (w == 1.0) throw input_error("nevanlinna_pick.CayleyPole", "cayley_inv is undefined at 1");
  return kI * (1.0 + w) / (1.0 - w);
}

Complex blaschke(Complex a, Complex z) {
  if (!(std::abs(a) < 1.0)) throw input_error("nevanlinna_pick.InvalidBlaschkeCenter", "need |a| < 1");
  return (z - a) / (1.0 - std::conj(a) * z);
}

Complex blaschke_inverse(Complex a, Complex w) { return blaschke(-a, w); }

void InterpolationProblem::validate() const {
  if (nodes.size() != values.size())
    throw input_error("nevanlinna_pick.InvalidProblem", "nodes and values differ in length");
  if (nodes.empty()) throw input_error("nevanlinna_pick.InvalidProblem", "no interpolation points");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (!(nodes[k].imag() > 0.0))
      throw input_error("nevanlinna_pick.InvalidProblem", "node " + std::to_string(k + 1) + " not in the upper half-plane");
    if (values[k].imag() < 0.0)
      throw input_error("nevanlinna_pick.InvalidProblem", "value " + std::to_string(k + 1) + " has negative imaginary part");
    for (std::size_t j = 0; j < k; ++j)
      if (nodes[j] == nodes[k])
        throw input_error("nevanlinna_pick.DuplicateNode",
                          "nodes " + std::to_string(j + 1) + " and " + std::to_string(k + 1) + " coincide");
  }
}

DiscProblem to_disc(const InterpolationProblem& p) {
  p.validate();
  DiscProblem d;
  for (std::size_t k = 0; k < p.nodes.size(); ++k) {
    d.nodes.push_back(cayley(p.nodes[k]));
    d.values.push_back(cayley(p.values[k]));
  }
  return d;
}

DiscProblem schur_step(const DiscProblem& p) {
  if (p.nodes.size() < 2) throw input_error("nevanlinna_pick.InvalidProblem", "Schur step needs two points");
  const Complex z1 = p.nodes.front();
  const Complex w1 = p.values.front();
  if (std::abs(w1) >= 1.0)
    throw input_error("nevanlinna_pick.UnimodularPivot", "Schur step needs |w_1| < 1");
  DiscProblem out;
  for (std::size_t k = 1; k < p.nodes.size(); ++k) {
    out.nodes.push_back(p.nodes[k]);
    out.values.push_back(blaschke(w1, p.values[k]) / blaschke(z1, p.nodes[k]));
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NoSolution: return "NoSolution";
    case Verdict::UniqueSolution: return "UniqueSolution";
    case Verdict::Indeterminate: return "Indeterminate";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

namespace {

// The recursion divides by quantities that shrink geometrically with depth on
// Matsubara-type node sets, so it runs in 100-digit arithmetic.
using Wide = boost::multiprecision::cpp_complex_100;
using WideReal = Wide::value_type;

Wide widen(Complex z) { return Wide(WideReal(z.real()), WideReal(z.imag())); }

Wide wide_cayley(const Wide& z) {
  const Wide i(0, 1);
  return (z - i) / (z + i);
}

// err[j] bounds the error carried by values[j] (first-order propagation of
// the input error through each reduction); the unit-circle band at a pivot is
// tol plus four times that bound.
Classification classify_disc(std::vector<Wide> nodes, std::vector<Wide> values, std::vector<double> err,
                             std::optional<int> max_depth, double tol) {
  const int n = static_cast<int>(nodes.size());
  const int limit = max_depth ? std::min(*max_depth, n) : n;
  if (limit < 1) throw input_error("nevanlinna_pick.InvalidDepth", "max_depth must be >= 1");
  const WideReal floor = WideReal(kDenominatorFloor);

  // values[k-1..] hold the points k..n after k-1 reductions.
  for (int k = 1; k <= limit; ++k) {
    const Wide wk = values.front();
    const Wide zk = nodes.front();
    const double ek = err.front();
    const WideReal r = abs(wk);
    const WideReal band = WideReal(tol + 4.0 * ek);
    if (r > 1 + band) return {Verdict::NoSolution, k, k};
    if (r >= 1 - band) {
      for (std::size_t j = 1; j < values.size(); ++j)
        if (abs(values[j] - wk) > WideReal(tol + 4.0 * (ek + err[j]))) return {Verdict::NoSolution, k, k + static_cast<int>(j)};
      return {Verdict::UniqueSolution, k, k};
    }
    if (k == n || k == limit) return {Verdict::Indeterminate, k, 0};

    const double pivot_gap = static_cast<double>(1 - r * r);
    std::vector<Wide> next_nodes;
    std::vector<Wide> next_values;
    std::vector<double> next_err;
    for (std::size_t j = 1; j < nodes.size(); ++j) {
      const Wide value_den = 1 - conj(wk) * values[j];
      const Wide node_num = nodes[j] - zk;
      if (abs(value_den) < floor || abs(node_num) < floor)
        return {Verdict::Inconclusive, k, k + static_cast<int>(j)};
      const Wide node_factor = (1 - conj(zk) * nodes[j]) / node_num;
      next_nodes.push_back(nodes[j]);
      next_values.push_back(((values[j] - wk) / value_den) * node_factor);
      const double den = static_cast<double>(abs(value_den));
      const double dv = pivot_gap / (den * den);
      const double dw = (den + static_cast<double>(abs(values[j] - wk) * abs(values[j]))) / (den * den);
      next_err.push_back(static_cast<double>(abs(node_factor)) * (dv * err[j] + dw * ek));
    }
    nodes = std::move(next_nodes);
    values = std::move(next_values);
    err = std::move(next_err);
  }
  return {Verdict::Indeterminate, limit, 0};
}

}  // namespace

Classification classify(const InterpolationProblem& problem, std::optional<int> max_depth, double tol) {
  problem.validate();
  std::vector<Wide> nodes;
  std::vector<Wide> values;
  std::vector<double> err;
  for (std::size_t k = 0; k < problem.nodes.size(); ++k) {
    const Complex w = problem.values[k];
    nodes.push_back(wide_cayley(widen(problem.nodes[k])));
    values.push_back(wide_cayley(widen(w)));
    // Values are taken as accurate to kDataRelError relative; the Cayley map
    // scales errors by 2 / |w + i|^2.
    err.push_back(kDataRelError * (1.0 + std::abs(w)) * 2.0 / std::norm(w + kI));
  }
  return classify_disc(std::move(nodes), std::move(values), std::move(err), max_depth, tol);
}

InterpolationProblem matsubara_problem(const PickRepresentation& pick, double beta) {
  if (!(beta > 0.0)) throw input_error("nevanlinna_pick.NonPositiveBeta", "beta must be > 0");
  InterpolationProblem p;
  const int count = static_cast<int>(pick.measure.size()) + 2;
  for (int n = 0; n < count; ++n) {
    const Complex z(0.0, (2 * n + 1) * M_PI / beta);
    p.nodes.push_back(z);
    p.values.push_back(pick(z));
  }
  return p;
}

Classification matsubara_uniqueness_check(const PickRepresentation& pick, double beta) {
  if (pick.linear != 0.0)
    throw input_error("nevanlinna_pick.InvalidProblem", "the uniqueness check needs linear = 0");
  const InterpolationProblem p = matsubara_problem(pick, beta);
  p.validate();
  // Re-evaluate the rational function at full width so that the data are
  // those of exactly K atoms.
  std::vector<Wide> nodes;
  std::vector<Wide> values;
  for (const Complex& z : p.nodes) {
    const Wide zw = widen(z);
    Wide f(WideReal(pick.constant), WideReal(0));
    for (const Atom& a : pick.measure.atoms()) f += Wide(WideReal(a.weight)) / (Wide(WideReal(a.position)) - zw);
    nodes.push_back(wide_cayley(zw));
    values.push_back(wide_cayley(f));
  }
  std::vector<double> err(nodes.size(), 0.0);
  return classify_disc(std::move(nodes), std::move(values), std::move(err), std::nullopt, 1e-9);
}

}  // namespace nrdmft
