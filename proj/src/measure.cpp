#include "nrdmft/measure.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <string>
#include <tuple>

#include "nrdmft/error.hpp"

namespace nrdmft {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.position) || !std::isfinite(a.weight))
      throw input_error("measure_core.NonFiniteAtom", "atom with non-finite position or weight");
    if (a.weight < 0.0)
      throw input_error("measure_core.NegativeWeight",
                        "atom at " + std::to_string(a.position) + " has negative weight");
  }
  std::erase_if(atoms, [](const Atom& a) { return a.weight == 0.0; });
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.position < b.position; });

  atoms_.reserve(atoms.size());
  std::size_t i = 0;
  while (i < atoms.size()) {
    const double anchor = atoms[i].position;
    const double tol = kCoincidenceTolerance * (1.0 + std::abs(anchor));
    double weight = 0.0;
    double first_moment = 0.0;
    std::size_t j = i;
    for (; j < atoms.size() && atoms[j].position - anchor <= tol; ++j) {
      weight += atoms[j].weight;
      first_moment += atoms[j].weight * atoms[j].position;
    }
    const double position = (j - i == 1) ? anchor : first_moment / weight;
    atoms_.push_back({position, weight});
    i = j;
  }
}

DiscreteMeasure DiscreteMeasure::dirac(double position, double weight) {
  return DiscreteMeasure({{position, weight}});
}

double DiscreteMeasure::mass() const noexcept {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.weight;
  return s;
}

double DiscreteMeasure::max_abs_position() const noexcept {
  double r = 0.0;
  for (const Atom& a : atoms_) r = std::max(r, std::abs(a.position));
  return r;
}

DiscreteMeasure DiscreteMeasure::scaled(double factor) const {
  if (factor < 0.0) throw input_error("measure_core.NegativeWeight", "negative scale factor");
  std::vector<Atom> out(atoms_.begin(), atoms_.end());
  for (Atom& a : out) a.weight *= factor;
  return DiscreteMeasure(std::move(out));
}

DiscreteMeasure DiscreteMeasure::reflected() const {
  std::vector<Atom> out;
  out.reserve(atoms_.size());
  for (const Atom& a : atoms_) out.push_back({-a.position, a.weight});
  return DiscreteMeasure(std::move(out));
}

DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  std::vector<Atom> atoms(a.atoms().begin(), a.atoms().end());
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return DiscreteMeasure(std::move(atoms));
}

Complex cauchy_transform(const DiscreteMeasure& m, Complex z) {
  if (z.imag() == 0.0)
    throw input_error("measure_core.RealArgument", "Cauchy transform evaluated on the real axis");
  Complex s = 0.0;
  for (const Atom& a : m.atoms()) s += a.weight / (z - a.position);
  return s;
}

double moment(const DiscreteMeasure& m, int k) {
  if (k < 0) throw input_error("measure_core.NegativeOrder", "moment order must be >= 0");
  double s = 0.0;
  for (const Atom& a : m.atoms()) s += a.weight * std::pow(a.position, k);
  return s;
}

DiscreteMeasure convolve(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  std::vector<Atom> out;
  out.reserve(a.size() * b.size());
  for (const Atom& x : a.atoms())
    for (const Atom& y : b.atoms()) out.push_back({x.position + y.position, x.weight * y.weight});
  return DiscreteMeasure(std::move(out));
}

double fermi_factor(double beta, double x) {
  const double t = beta * x;
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

DiscreteMeasure fermi_reweight(const DiscreteMeasure& m, double beta, FermiMode mode) {
  if (!(beta > 0.0)) throw input_error("measure_core.NonPositiveBeta", "beta must be > 0");
  std::vector<Atom> out(m.atoms().begin(), m.atoms().end());
  for (Atom& a : out) {
    const double f = fermi_factor(beta, a.position);
    a.weight = (mode == FermiMode::Divide) ? a.weight * f : a.weight / f;
  }
  return DiscreteMeasure(std::move(out));
}

bool is_probability(const DiscreteMeasure& m, double tol) {
  return std::abs(m.mass() - 1.0) <= tol;
}

double wasserstein2(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  if (!is_probability(a) || !is_probability(b))
    throw input_error("measure_core.NotProbability",
                      "Wasserstein distance requires unit-mass measures (got " +
                          std::to_string(a.mass()) + ", " + std::to_string(b.mass()) + ")");
  // Walk both quantile functions; each step consumes the smaller remaining
  // mass of the current pair of atoms. Masses are renormalized so that
  // roundoff in the total does not leave an unmatched sliver.
  const double sa = a.mass();
  const double sb = b.mass();
  std::size_t i = 0;
  std::size_t j = 0;
  double ra = a[0].weight / sa;
  double rb = b[0].weight / sb;
  double cost = 0.0;
  while (i < a.size() && j < b.size()) {
    const double d = a[i].position - b[j].position;
    if (ra <= rb) {
      cost += ra * d * d;
      rb -= ra;
      if (++i < a.size()) ra = a[i].weight / sa;
    } else {
      cost += rb * d * d;
      ra -= rb;
      if (++j < b.size()) rb = b[j].weight / sb;
    }
  }
  return std::sqrt(std::max(cost, 0.0));
}

Compression compress(const DiscreteMeasure& m, std::size_t n_max) {
  if (n_max < 1) throw input_error("measure_core.InvalidAtomBudget", "n_max must be >= 1");
  Compression result;
  if (m.size() <= n_max) {
    result.measure = m;
    return result;
  }

  const std::size_t n = m.size();
  std::vector<double> x(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = m[i].position;
    w[i] = m[i].weight;
  }
  std::vector<std::size_t> prev(n), next(n), version(n, 0);
  std::vector<bool> alive(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    prev[i] = i == 0 ? n : i - 1;
    next[i] = i + 1;  // n marks the end
  }

  auto pair_cost = [&](std::size_t l, std::size_t r) {
    const double d = x[l] - x[r];
    return w[l] * w[r] * d * d / (w[l] + w[r]);
  };

  // (cost, left index, version of left, version of right); smallest cost first,
  // ties broken by position order.
  using Entry = std::tuple<double, std::size_t, std::size_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t i = 0; i + 1 < n; ++i) heap.emplace(pair_cost(i, i + 1), i, 0, 0);

  std::size_t count = n;
  while (count > n_max) {
    auto [c, l, vl, vr] = heap.top();
    heap.pop();
    if (!alive[l] || version[l] != vl) continue;
    const std::size_t r = next[l];
    if (r >= n || version[r] != vr) continue;

    const double wt = w[l] + w[r];
    x[l] = (w[l] * x[l] + w[r] * x[r]) / wt;
    w[l] = wt;
    alive[r] = false;
    next[l] = next[r];
    if (next[r] < n) prev[next[r]] = l;
    ++version[l];
    result.cost += c;
    ++result.merges;
    --count;

    if (prev[l] < n) heap.emplace(pair_cost(prev[l], l), prev[l], version[prev[l]], version[l]);
    if (next[l] < n) heap.emplace(pair_cost(l, next[l]), l, version[l], version[next[l]]);
  }

  std::vector<Atom> out;
  out.reserve(count);
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) out.push_back({x[i], w[i]});
  result.measure = DiscreteMeasure(std::move(out));
  return result;
}

Compression compress_symmetric(const DiscreteMeasure& m, std::size_t n_max) {
  if (m.size() <= n_max) return compress(m, n_max);
  double scale = 0.0;
  for (const Atom& a : m.atoms()) scale = std::max(scale, std::abs(a.position));
  const double x_tol = 1e-10 * std::max(scale, 1.0), w_tol = 1e-10 * std::max(m.mass(), 1e-300);
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = m[i];
    const Atom& b = m[n - 1 - i];
    if (std::abs(a.position + b.position) > x_tol || std::abs(a.weight - b.weight) > w_tol) return compress(m, n_max);
  }

  std::vector<Atom> half;
  std::optional<Atom> center;
  for (std::size_t i = 0; i < n / 2; ++i) half.push_back({m[i].position, 0.5 * (m[i].weight + m[n - 1 - i].weight)});
  if (n % 2 == 1) center = Atom{0.0, m[n / 2].weight};
  const std::size_t budget = (n_max - (center ? 1 : 0)) / 2;
  if (budget < 1) return compress(m, n_max);

  Compression h = compress(DiscreteMeasure(std::move(half)), budget);
  Compression result;
  result.measure = h.measure + h.measure.reflected();
  if (center) result.measure = result.measure + DiscreteMeasure({*center});
  result.cost = 2.0 * h.cost;
  result.merges = n - result.measure.size();
  return result;
}

}  // namespace nrdmft
