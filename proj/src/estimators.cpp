#include "ordexp/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ordexp {
namespace est {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

double c0(int n_i, double p) {
  require(p != 0.0, "c0: p must be nonzero");
  require(double(n_i) > p, "c0: requires n_i > p");
  const double n = n_i;
  return (1.0 - std::pow(n / (n - p), 1.0 / n)) / p;
}

double bound_multiplier(int n_i, int n_total, double p) {
  require(p != 0.0, "bound_multiplier: p must be nonzero");
  require(double(n_i) > p, "bound_multiplier: requires n_i > p");
  const double n = n_i;
  return (1.0 - std::pow(n / (n - p), 1.0 / (n_total + 1.0))) / p;
}

double beta0(int n_i, int n_total, int k, double p) {
  require(p != 0.0, "beta0: p must be nonzero");
  require(double(n_i) > p, "beta0: requires n_i > p");
  require(n_total - k >= 1, "beta0: pooled T needs n - k >= 1");
  const double n = n_i;
  return (1.0 - std::pow(n / (n - p), 1.0 / (n_total - k + 1.0))) / p;
}

double rate_sum(std::span<const int> ns, std::span<const double> sigmas) {
  double q = 0.0;
  for (std::size_t j = 0; j < ns.size(); ++j) q += double(ns[j]) / sigmas[j];
  return q;
}

double blee_alpha0(int n_i, double sigma_i, double p, BleeVariant variant) {
  require(p != 0.0, "blee_alpha0: p must be nonzero");
  const double n = n_i;
  if (variant == BleeVariant::PaperPrinted) {
    require(n > p * sigma_i, "blee_alpha0: printed form requires n_i > p*sigma_i");
    return std::log((n - p * sigma_i) / n) / p;
  }
  require(n > p, "blee_alpha0: requires n_i > p");
  return sigma_i / p * std::log((n - p) / n);
}

double known_scale_shift(int i, std::span<const int> ns,
                         std::span<const double> sigmas, double p) {
  const double q = rate_sum(ns, sigmas);
  const double qs = q * sigmas[i];
  require(qs > p, "known_scale_shift: requires q*sigma_i > p");
  return sigmas[i] / p * std::log((qs - p) / qs);
}

double mle(int i, std::span<const double> x_mins) { return x_mins[i]; }

double baee_affine(double x_min_i, double t_i, double mult) {
  return x_min_i + mult * t_i;
}

double rmle(int i, std::span<const double> x_mins) {
  double m = x_mins[i];
  for (std::size_t j = i + 1; j < x_mins.size(); ++j)
    m = std::min(m, x_mins[j]);
  return m;
}

double rmle_improved(int i, std::span<const double> x_mins,
                     std::span<const int> ns, std::span<const double> sigmas,
                     double p) {
  return rmle(i, x_mins) + known_scale_shift(i, ns, sigmas, p);
}

double improved_ordered_scale(int i, const SufficientStats& stats,
                              std::span<const int> ns, double p) {
  const int k = int(ns.size());
  require(stats.t[i] > 0.0, "improved_ordered_scale: t_i = 0 is degenerate");
  int n_total = 0;
  for (int n : ns) n_total += n;
  const double c = c0(ns[i], p);
  const double d = bound_multiplier(ns[i], n_total, p);

  double mult;
  if (i == 0) {
    double wsum = 0.0;
    for (int j = 1; j < k; ++j) wsum += stats.t[j] / stats.t[0];
    const double l1 = d * (1.0 + wsum);
    const double u1 = d;
    mult = std::clamp(c, l1, u1);
  } else {
    double wsum = 0.0;
    for (int j = 0; j < i; ++j) wsum += stats.t[j] / stats.t[i];
    const double ui = d * (1.0 + wsum);
    mult = std::min(c, ui);
  }
  return stats.x_min[i] + mult * stats.t[i];
}

double blee_known_scale(int i, std::span<const double> x_mins,
                        std::span<const int> ns, std::span<const double> sigmas,
                        double p, BleeVariant variant) {
  return x_mins[i] + blee_alpha0(ns[i], sigmas[i], p, variant);
}

double improved_known_scale(int i, std::span<const double> x_mins,
                            std::span<const int> ns,
                            std::span<const double> sigmas, double p,
                            BleeVariant variant) {
  const int k = int(ns.size());
  const double alpha = blee_alpha0(ns[i], sigmas[i], p, variant);
  const double g = known_scale_shift(i, ns, sigmas, p);

  if (i < k - 1) {
    double ymin = 0.0;
    for (int j = i + 1; j < k; ++j) ymin = std::min(ymin, x_mins[j] - x_mins[i]);
    const double gamma_i = g + ymin;
    return x_mins[i] + std::min(alpha, gamma_i);
  }
  double ymin = 0.0;
  for (int j = 0; j < k - 1; ++j) ymin = std::min(ymin, x_mins[j] - x_mins[i]);
  const double nu_k = g + ymin;
  const double gamma_k = g;
  return x_mins[i] + std::clamp(alpha, nu_k, gamma_k);
}

double improved_equal_scale(int i, std::span<const double> x_mins,
                            double t_pooled, std::span<const int> ns, double p) {
  const int k = int(ns.size());
  int n_total = 0;
  for (int n : ns) n_total += n;
  const double b = beta0(ns[i], n_total, k, p);

  double bound = 0.0;
  for (int j = i + 1; j < k; ++j) bound = std::min(bound, x_mins[j] - x_mins[i]);
  return x_mins[i] + std::min(b * t_pooled, bound);
}

double improved_unequal_scale(int i, const SufficientStats& stats,
                              std::span<const int> ns, double p) {
  const int k = int(ns.size());
  const double kappa = c0(ns[i], p);

  double bound = 0.0;
  for (int j = i + 1; j < k; ++j)
    bound = std::min(bound, stats.x_min[j] - stats.x_min[i]);
  return stats.x_min[i] + std::min(kappa * stats.t[i], bound);
}

}  // namespace est
}  // namespace ordexp
