#include "nrdmft/pick.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "nrdmft/error.hpp"

namespace nrdmft {

PickRepresentation::PickRepresentation(double linear_, double constant_, DiscreteMeasure measure_)
    : linear(linear_), constant(constant_), measure(std::move(measure_)) {
  if (!(linear >= 0.0))
    throw input_error("measure_core.NegativeLinearCoefficient", "linear coefficient must be >= 0");
}

Complex PickRepresentation::operator()(Complex z) const {
  return linear * z + constant - cauchy_transform(measure, z);
}

namespace {

// Least-squares coefficients c of data_j = sum_i c_i u_j^i.
Eigen::VectorXd fit(const Eigen::VectorXd& u, const Eigen::VectorXd& data, int n_terms) {
  Eigen::MatrixXd a(u.size(), n_terms);
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    double p = 1.0;
    for (int i = 0; i < n_terms; ++i, p *= u[j]) a(j, i) = p;
  }
  return a.colPivHouseholderQr().solve(data);
}

std::vector<double> fit_ladder(const std::vector<Complex>& g, const std::vector<double>& y,
                               double y0, int first, int count, int order) {
  Eigen::VectorXd u(count), even(count), odd(count);
  for (int j = 0; j < count; ++j) {
    const double yj = y[first + j];
    u[j] = (y0 / yj) * (y0 / yj);
    even[j] = yj * g[first + j].imag();
    odd[j] = yj * yj * g[first + j].real();
  }
  const int n_even = order / 2 + 1;
  const int n_odd = (order + 1) / 2;
  // Two extra terms absorb the truncated tail of the series.
  const int extra = 2;
  std::vector<double> m(order + 1, 0.0);
  const Eigen::VectorXd ce = fit(u, even, std::min(n_even + extra, count - 1));
  double scale = 1.0;
  for (int i = 0; i < n_even; ++i, scale /= y0 * y0) {
    const double sign = (i % 2 == 0) ? -1.0 : 1.0;
    m[2 * i] = sign * ce[i] / scale;
  }
  if (n_odd > 0) {
    const Eigen::VectorXd co = fit(u, odd, std::min(n_odd + extra, count - 1));
    scale = 1.0;
    for (int i = 0; i < n_odd; ++i, scale /= y0 * y0) {
      const double sign = (i % 2 == 0) ? -1.0 : 1.0;
      m[2 * i + 1] = sign * co[i] / scale;
    }
  }
  return m;
}

}  // namespace

std::vector<double> extract_moments_via_asymptotics(const std::function<Complex(Complex)>& f,
                                                    int order, double support_radius,
                                                    double rel_tol) {
  if (order < 0) throw input_error("measure_core.NegativeOrder", "order must be >= 0");
  if (order > 8)
    throw input_error("measure_core.OrderTooLarge", "at most 8 moments can be fitted on the ladder");
  const int rungs = MomentLadder::kRungs;
  const double y0 = MomentLadder::base(support_radius);
  std::vector<double> y(rungs);
  std::vector<Complex> g(rungs);
  for (int j = 0; j < rungs; ++j) {
    y[j] = y0 * std::ldexp(1.0, j);
    g[j] = -f(Complex(0.0, y[j]));
  }

  const std::vector<double> full = fit_ladder(g, y, y0, 0, rungs, order);
  const std::vector<double> low = fit_ladder(g, y, y0, 0, rungs - 1, order);
  const std::vector<double> high = fit_ladder(g, y, y0, 1, rungs - 1, order);

  const double m0 = std::abs(full[0]);
  for (int k = 0; k <= order; ++k) {
    const double scale = std::max(std::abs(full[k]), m0 * std::pow(support_radius, k));
    const double spread = std::abs(low[k] - high[k]);
    if (spread > rel_tol * scale && spread > 0.0)
      throw numerical_error("measure_core.IllConditioned",
                            "moment " + std::to_string(k) + " differs by " + std::to_string(spread) +
                                " between ladder halves");
  }
  return full;
}

}  // namespace nrdmft
