#pragma once

#include <span>

#include "ordexp/types.hpp"

namespace ordexp {
namespace est {

// All estimators are pure functions of the sufficient statistics; population
// indices are zero-based.  Preconditions mirror validate(): callers that pass
// a validated configuration never hit the exceptions.

// BAEE multiplier (1/p)(1 - (n_i/(n_i - p))^{1/n_i}); also the kappa_0i of the
// unequal-unknown-scale case.  Negative for every admissible (n_i, p).
double c0(int n_i, double p);

// Clip-bound factor d = (1/p)(1 - (n_i/(n_i - p))^{1/(n_total + 1)}).
double bound_multiplier(int n_i, int n_total, double p);

// Pooled-T BAEE multiplier (1/p)(1 - (n_i/(n_i - p))^{1/(n_total - k + 1)}).
double beta0(int n_i, int n_total, int k, double p);

// q = sum n_j / sigma_j (the paper reuses the letter q for this rate sum;
// it is unrelated to the loss weight).
double rate_sum(std::span<const int> ns, std::span<const double> sigmas);

// Known-sigma BLEE shift alpha_0i, both printed and loss-consistent forms.
double blee_alpha0(int n_i, double sigma_i, double p, BleeVariant variant);

// Shift used by every known-sigma improvement:
// g_i = (sigma_i/p) ln((q sigma_i - p)/(q sigma_i)).
double known_scale_shift(int i, std::span<const int> ns,
                         std::span<const double> sigmas, double p);

double mle(int i, std::span<const double> x_mins);
double baee_affine(double x_min_i, double t_i, double mult);
double rmle(int i, std::span<const double> x_mins);
double rmle_improved(int i, std::span<const double> x_mins,
                     std::span<const int> ns, std::span<const double> sigmas,
                     double p);

// Brewster-Zidek improvement of the BAEE under ordered scales: clips c0 into
// [l_1, u_1] for the first component and at u_i from above otherwise.
// Throws on t_i = 0 (the W ratios are undefined).
double improved_ordered_scale(int i, const SufficientStats& stats,
                              std::span<const int> ns, double p);

double blee_known_scale(int i, std::span<const double> x_mins,
                        std::span<const int> ns, std::span<const double> sigmas,
                        double p, BleeVariant variant);

double improved_known_scale(int i, std::span<const double> x_mins,
                            std::span<const int> ns,
                            std::span<const double> sigmas, double p,
                            BleeVariant variant);

double improved_equal_scale(int i, std::span<const double> x_mins,
                            double t_pooled, std::span<const int> ns, double p);

double improved_unequal_scale(int i, const SufficientStats& stats,
                              std::span<const int> ns, double p);

}  // namespace est
}  // namespace ordexp
