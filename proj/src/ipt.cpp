#include "nrdmft/ipt.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "nrdmft/error.hpp"

namespace nrdmft {

DiscreteMeasure EffectiveLevels::measure() const {
  std::vector<Atom> atoms;
  for (std::size_t k = 0; k < levels.size(); ++k) atoms.push_back({levels[k], weights[k]});
  return DiscreteMeasure(std::move(atoms));
}

namespace {

// Secular function of the arrowhead matrix written relative to `origin`:
// s(t) = origin + t - c - sum_j a_j / (t - d_j), d_j = x_j - origin.
struct Secular {
  const std::vector<double>& d;
  const std::vector<double>& a;
  double origin;
  double c;

  double value(double t) const {
    double s = origin + t - c;
    for (std::size_t j = 0; j < d.size(); ++j) s -= a[j] / (t - d[j]);
    return s;
  }
  double slope(double t) const {
    double s = 1.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      const double r = t - d[j];
      s += a[j] / (r * r);
    }
    return s;
  }
  double head_weight(double t) const { return 1.0 / slope(t); }
};

// Root of the increasing function s on (lo, hi), s(lo) < 0 < s(hi) in the
// limit sense. Newton steps, falling back to bisection when a step leaves the
// bracket.
double bracketed_root(const Secular& s, double lo, double hi) {
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double v = s.value(t);
    if (v == 0.0) return t;
    if (v < 0.0) lo = t;
    else hi = t;
    const double width = hi - lo;
    if (width <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)) ||
        width <= std::numeric_limits<double>::denorm_min())
      break;
    double next = t - v / s.slope(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) break;
    t = next;
  }
  return t;
}

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

EffectiveLevels effective_levels(const DiscreteMeasure& delta, double c) {
  if (!std::isfinite(c)) throw input_error("ipt_solver.InvalidShift", "shift must be finite");
  EffectiveLevels out;
  if (delta.empty() || delta.mass() == 0.0) {
    out.levels = {c};
    out.weights = {1.0};
    return out;
  }
  const std::size_t k = delta.size();
  std::vector<double> x(k), a(k);
  for (std::size_t j = 0; j < k; ++j) {
    x[j] = delta[j].position;
    a[j] = delta[j].weight;
    if (!(a[j] > 0.0)) throw input_error("ipt_solver.NonPositiveWeight", "hybridization weights must be > 0");
  }
  const double arm = std::sqrt(delta.mass());
  const double lower = std::min(c, x.front()) - 2.0 * arm;
  const double upper = std::max(c, x.back()) + 2.0 * arm;

  std::vector<double> d(k);
  auto relative_to = [&](double origin) {
    for (std::size_t j = 0; j < k; ++j) d[j] = x[j] - origin;
    return Secular{d, a, origin, c};
  };

  for (std::size_t i = 0; i <= k; ++i) {
    double origin;
    double lo;
    double hi;
    if (i == 0) {
      origin = x[0];
      lo = lower - origin;
      hi = 0.0;
    } else if (i == k) {
      origin = x[k - 1];
      lo = 0.0;
      hi = upper - origin;
    } else {
      const double mid = 0.5 * (x[i - 1] + x[i]);
      const Secular left = relative_to(x[i - 1]);
      if (left.value(mid - x[i - 1]) >= 0.0) {
        origin = x[i - 1];
        lo = 0.0;
        hi = mid - origin;
      } else {
        origin = x[i];
        lo = mid - origin;
        hi = 0.0;
      }
    }
    const Secular s = relative_to(origin);
    const double t = bracketed_root(s, lo, hi);
    out.levels.push_back(origin + t);
    out.weights.push_back(s.head_weight(t));
  }
  return out;
}

std::vector<IptResidue> ipt_residues(const EffectiveLevels& xi, double beta) {
  if (!(beta > 0.0)) throw input_error("ipt_solver.NonPositiveBeta", "beta must be > 0");
  const int n = static_cast<int>(xi.levels.size());
  std::vector<double> log_p(n), log_f(n);
  for (int k = 0; k < n; ++k) {
    log_p[k] = std::log(xi.weights[k]);
    log_f[k] = softplus(-beta * xi.levels[k]);
  }
  std::vector<IptResidue> out;
  out.reserve(static_cast<std::size_t>(n) * (n + 1) * (n + 2) / 6);
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = k1; k2 < n; ++k2) {
      for (int k3 = k2; k3 < n; ++k3) {
        const double e = xi.levels[k1] + xi.levels[k2] + xi.levels[k3];
        const double log_coef = log_p[k1] + log_p[k2] + log_p[k3] + softplus(-beta * e) -
                                (log_f[k1] + log_f[k2] + log_f[k3]);
        const int mult = (k1 == k3) ? 1 : (k1 == k2 || k2 == k3) ? 3 : 6;
        out.push_back({k1, k2, k3, mult, e, std::exp(log_coef)});
      }
    }
  }
  return out;
}

namespace {

void check_ipt_inputs(const DiscreteMeasure& nu, double w_norm_sq, double beta) {
  if (!is_probability(nu))
    throw input_error("ipt_solver.NotProbability",
                      "nu must have unit mass (got " + std::to_string(nu.mass()) + ")");
  if (!(w_norm_sq >= 0.0) || !std::isfinite(w_norm_sq))
    throw input_error("ipt_solver.InvalidCoupling", "w_norm_sq must be finite and >= 0");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw input_error("ipt_solver.NonPositiveBeta", "beta must be finite and > 0");
}

}  // namespace

DiscreteMeasure ipt_map(const DiscreteMeasure& nu, double w_norm_sq, double beta) {
  check_ipt_inputs(nu, w_norm_sq, beta);
  const EffectiveLevels xi = effective_levels(nu.scaled(w_norm_sq), 0.0);
  const std::vector<IptResidue> res = ipt_residues(xi, beta);
  std::vector<Atom> atoms;
  atoms.reserve(res.size());
  for (const IptResidue& r : res) atoms.push_back({r.position, r.multiplicity * r.coefficient});
  return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure ipt_map_by_convolution(const DiscreteMeasure& nu, double w_norm_sq, double beta) {
  check_ipt_inputs(nu, w_norm_sq, beta);
  const DiscreteMeasure xi = effective_levels(nu.scaled(w_norm_sq), 0.0).measure();
  const DiscreteMeasure xi_t = fermi_reweight(xi, beta, FermiMode::Divide);
  const DiscreteMeasure mu_t = convolve(convolve(xi_t, xi_t), xi_t);
  return fermi_reweight(mu_t, beta, FermiMode::Multiply);
}

namespace {

struct TauIntegrand {
  const EffectiveLevels* xi;
  double beta;
  double omega;
  bool imaginary;
};

// -sum_k p_k e^{-tau e_k} / (1 + e^{-beta e_k}), both signs of e_k without overflow.
double g_tau(const EffectiveLevels& xi, double beta, double tau) {
  double g = 0.0;
  for (std::size_t k = 0; k < xi.levels.size(); ++k) {
    const double e = xi.levels[k];
    const double term = e >= 0.0 ? std::exp(-tau * e) / (1.0 + std::exp(-beta * e))
                                 : std::exp(-(beta - tau) * (-e)) / (1.0 + std::exp(-beta * (-e)));
    g -= xi.weights[k] * term;
  }
  return g;
}

double integrand(double tau, void* params) {
  const auto* p = static_cast<const TauIntegrand*>(params);
  const double g = g_tau(*p->xi, p->beta, tau);
  const double phase = p->omega * tau;
  return g * g * g * (p->imaginary ? std::sin(phase) : std::cos(phase));
}

}  // namespace

Complex ipt_matsubara_oracle(const DiscreteMeasure& delta, double U, double beta, int n) {
  if (!(beta > 0.0)) throw input_error("ipt_solver.NonPositiveBeta", "beta must be > 0");
  if (U == 0.0) return 0.0;
  const EffectiveLevels xi = effective_levels(delta, 0.0);
  const double omega = (2 * n + 1) * M_PI / beta;

  gsl_set_error_handler_off();
  const std::size_t limit = 2000;
  std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
      gsl_integration_workspace_alloc(limit), gsl_integration_workspace_free);

  double parts[2];
  double errors[2];
  for (int part = 0; part < 2; ++part) {
    TauIntegrand params{&xi, beta, omega, part == 1};
    gsl_function fn{&integrand, &params};
    const int status = gsl_integration_qag(&fn, 0.0, beta, 1e-13, 1e-12, limit, GSL_INTEG_GAUSS61,
                                           ws.get(), &parts[part], &errors[part]);
    errors[part] *= U * U;
    if (status != GSL_SUCCESS && errors[part] > 1e-8)
      throw numerical_error("ipt_solver.QuadratureFailure", gsl_strerror(status));
  }
  const double err = std::hypot(errors[0], errors[1]);
  if (err > 1e-8)
    throw numerical_error("ipt_solver.QuadratureFailure",
                          "error estimate " + std::to_string(err) + " exceeds 1e-8");
  return U * U * Complex(parts[0], parts[1]);
}

}  // namespace nrdmft
