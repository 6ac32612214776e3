#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ordexp/types.hpp"

namespace ordexp {

// Linex loss of estimate `delta` at truth (mu, sigma).
double linex_loss(double delta, double mu, double sigma, double p);

// Exact risk of X_(1) + c T when X_(1) ~ mu + Exp(sigma/n_i) and
// T ~ Gamma(m, sigma):  n_i/(n_i - p) (1 - p c)^{-m} - p/n_i - p c m - 1.
// Constant in (mu, sigma).
double analytic_affine_risk(double c, int n_i, int m, double p);

// Exact risk of X_(1) + alpha under the sigma_i-scaled loss:
// e^{p alpha/sigma} n/(n - p) - p alpha/sigma - p/n - 1.
double analytic_shift_risk(double alpha, int n_i, double sigma_i, double p);

// One cell of a risk table: scenario + scheme + loss.
struct GridPoint {
  Scenario scenario;
  SchemeConfig scheme = SchemeConfig::iid();
  LossSpec loss;

  double sigma_ratio() const;  // sigma_1 / sigma_k (ordered-scale table key)
  double mu_gap() const;       // mu_k - mu_1 (ordered-location table key)
};

// Monte Carlo risk with common random numbers: the samples of replication r
// depend only on (seed, r, scenario, scheme), never on the estimator, and the
// reduction is a fixed pairwise tree, so results are bit-identical for any
// thread count (cap with ORDEXP_THREADS).
RiskEstimate mc_risk(EstimatorId estimator, const GridPoint& point,
                     std::int64_t reps, std::uint64_t seed);

// Same replications evaluated under every estimator in one pass.
std::vector<RiskEstimate> mc_risk_many(std::span<const EstimatorId> estimators,
                                       const GridPoint& point, std::int64_t reps,
                                       std::uint64_t seed);

struct PairedRisk {
  RiskEstimate baseline;
  RiskEstimate candidate;
  double diff_mean = 0.0;  // mean(loss_baseline - loss_candidate)
  double diff_se = 0.0;
};

PairedRisk mc_risk_paired(EstimatorId baseline, EstimatorId candidate,
                          const GridPoint& point, std::int64_t reps,
                          std::uint64_t seed);

PriResult pri(const RiskEstimate& baseline, const RiskEstimate& candidate);

// True if `estimator` is defined for the scenario kind.
bool estimator_applies(EstimatorId estimator, ScenarioKind kind);

}  // namespace ordexp
