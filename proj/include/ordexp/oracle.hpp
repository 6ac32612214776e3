#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ordexp/risk.hpp"
#include "ordexp/types.hpp"

namespace ordexp {
namespace oracle {

// Golden-section argmin of a unimodal f on [a, b] to absolute tolerance tol.
double golden_section(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-10);

// Numeric argmin of analytic_affine_risk over c; brackets stay clear of the
// moment-generating-function boundary c p = 1.
double minimize_affine_risk(int n_i, int m, double p);

// Numeric argmin of analytic_shift_risk over alpha in [-10 sigma, 10 sigma].
double minimize_shift_risk(int n_i, double sigma_i, double p);

// One-sample Kolmogorov-Smirnov statistic against a CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Critical values at significance 0.01 (asymptotic, c(0.01) = 1.628).
double ks_critical_1pct(std::size_t n);
double ks_two_sample_critical_1pct(std::size_t n, std::size_t m);

// CDF of Gamma(shape, scale) with integer shape (Erlang), and of the
// two-parameter exponential.
double erlang_cdf(int shape, double scale, double x);
double exp_cdf(double mu, double sigma, double x);

// Gauss rules used by the risk integrator; exposed for direct testing.
// Nodes ascending.  gauss_gamma returns the rule for the Gamma(shape) density
// (weights sum to 1); gauss_legendre the rule on [-1, 1].
void gauss_gamma(int n, int shape, std::vector<double>& x, std::vector<double>& w);
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Quadrature evaluation of the risk integral for k = 2, splitting panels at
// the clip kinks so each panel's integrand is smooth.  An MC-free cross-check
// of mc_risk.
double brute_force_risk(EstimatorId estimator, const GridPoint& point,
                        int quadrature_nodes = 32);

}  // namespace oracle
}  // namespace ordexp
