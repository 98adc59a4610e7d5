#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nrdmft/measure.hpp"
#include "nrdmft/pick.hpp"

namespace nrdmft {

// (z - i)/(z + i): upper half-plane onto the unit disc.
Complex cayley(Complex z);
Complex cayley_inv(Complex w);

// b_a(z) = (z - a)/(1 - conj(a) z), |a| < 1. Its inverse is b_{-a}.
Complex blaschke(Complex a, Complex z);
Complex blaschke_inverse(Complex a, Complex w);

// Pick data f(z_n) = w_n with Im z_n > 0 and Im w_n >= 0.
struct InterpolationProblem {
  std::vector<Complex> nodes;
  std::vector<Complex> values;

  void validate() const;
};

// The same data after the Cayley transform of nodes and values.
struct DiscProblem {
  std::vector<Complex> nodes;
  std::vector<Complex> values;
};

DiscProblem to_disc(const InterpolationProblem& p);

// Removes the first point: w_k <- b_{w_1}(w_k) / b_{z_1}(z_k) for k >= 2.
// Requires |w_1| < 1 and at least two points.
DiscProblem schur_step(const DiscProblem& p);

enum class Verdict { NoSolution, UniqueSolution, Indeterminate, Inconclusive };
std::string to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::Indeterminate;
  int depth = 0;    // 1-based index of the point at which the verdict was reached
  int witness = 0;  // 1-based; 0 when not applicable
};

// Iterated Schur reduction. A pivot with |w| > 1 + tol means no solution; a
// pivot within tol of the unit circle with all later values equal to it means
// a unique (Blaschke product) solution, and a later differing value means no
// solution. max_depth bounds the number of pivots examined (default: all).
// Values are treated as accurate to 1e-14 relative; that error is propagated
// through the reductions and widens the band around the unit circle.
Classification classify(const InterpolationProblem& problem, std::optional<int> max_depth = std::nullopt,
                        double tol = 1e-9);

// Samples the Pick function at i w_n, n = 0..K+1, K = number of atoms.
InterpolationProblem matsubara_problem(const PickRepresentation& pick, double beta);
Classification matsubara_uniqueness_check(const PickRepresentation& pick, double beta);

}  // namespace nrdmft
