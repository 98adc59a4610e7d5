#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nrdmft {

using Complex = std::complex<double>;

struct Atom {
  double position;
  double weight;

  bool operator==(const Atom&) const = default;
};

// Finite positive measure on the real line with finitely many atoms.
//
// Atoms are kept sorted by strictly increasing position. Zero-weight atoms are
// dropped and atoms closer than 1e-12*(1+|x|) are merged (weights added,
// position replaced by the barycenter) when the measure is built.
class DiscreteMeasure {
 public:
  static constexpr double kCoincidenceTolerance = 1e-12;

  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  static DiscreteMeasure dirac(double position, double weight = 1.0);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }

  double mass() const noexcept;
  double max_abs_position() const noexcept;

  DiscreteMeasure scaled(double factor) const;
  DiscreteMeasure reflected() const;

  bool operator==(const DiscreteMeasure&) const = default;

 private:
  std::vector<Atom> atoms_;
};

// Sum of two measures (atom union).
DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b);

// sum_k w_k / (z - x_k); z must be off the real axis.
Complex cauchy_transform(const DiscreteMeasure& m, Complex z);

double moment(const DiscreteMeasure& m, int k);

DiscreteMeasure convolve(const DiscreteMeasure& a, const DiscreteMeasure& b);

enum class FermiMode { Divide, Multiply };

// Logistic factor 1/(1+exp(-beta*x)), evaluated without overflow.
double fermi_factor(double beta, double x);

// Divide: w -> w/(1+exp(-beta x)); Multiply: w -> w*(1+exp(-beta x)).
DiscreteMeasure fermi_reweight(const DiscreteMeasure& m, double beta, FermiMode mode);

// Order-2 Wasserstein distance between probability measures, computed from
// the monotone (quantile) coupling.
double wasserstein2(const DiscreteMeasure& a, const DiscreteMeasure& b);

bool is_probability(const DiscreteMeasure& m, double tol = 1e-9);

struct Compression {
  DiscreteMeasure measure;
  // Sum of per-merge costs w_i w_j (x_i - x_j)^2 / (w_i + w_j); equals the
  // drop in second moment and the squared transport cost of the merge.
  double cost = 0.0;
  std::size_t merges = 0;
};

// Greedy adjacent-pair merging down to at most n_max atoms. Mass and mean
// are preserved, the second moment never increases.
Compression compress(const DiscreteMeasure& m, std::size_t n_max);

// Reflection-equivariant variant: when m is symmetric under x -> -x (atoms
// matching to 1e-10 relative), compresses the negative half and mirrors it,
// keeping an atom at 0 as is. Otherwise identical to compress.
Compression compress_symmetric(const DiscreteMeasure& m, std::size_t n_max);

}  // namespace nrdmft
