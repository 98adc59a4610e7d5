#pragma once

#include <functional>
#include <vector>

#include "nrdmft/measure.hpp"

namespace nrdmft {

// Nevanlinna-Riesz data of a Pick function with a discrete measure:
//   p(z) = linear*z + constant + sum_k w_k / (x_k - z).
// With linear = constant = 0, p = -cauchy_transform(measure, .), so p holds
// -G, -Sigma or -Delta when the measure is the corresponding spectral measure.
struct PickRepresentation {
  double linear = 0.0;
  double constant = 0.0;
  DiscreteMeasure measure;

  PickRepresentation() = default;
  PickRepresentation(double linear, double constant, DiscreteMeasure measure);

  Complex operator()(Complex z) const;
};

struct MomentLadder {
  static constexpr int kRungs = 8;
  // y_j = y0 * 2^j with y0 = 10 * (1 + support_radius).
  static double base(double support_radius) { return 10.0 * (1.0 + support_radius); }
};

// Recovers (m_0, ..., m_order) from the large-|z| expansion
//   -f(iy) = m_0/(iy) + m_1/(iy)^2 + ...
// by least-squares fits of y*Im(-f(iy)) and y^2*Re(-f(iy)) in powers of
// 1/y^2 along the ladder. f must decay at infinity: remove the linear and
// constant parts of a Pick function before calling. Throws
// pick.IllConditioned when the fits over rungs 0..6 and 1..7 disagree by more
// than rel_tol relative to max(|m_k|, m_0 R^k), R = support_radius.
std::vector<double> extract_moments_via_asymptotics(const std::function<Complex(Complex)>& f,
                                                    int order, double support_radius,
                                                    double rel_tol = 1e-6);

}  // namespace nrdmft
