#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordexp {

// Linex loss  q * (exp(p t) - p t - 1)  in the standardized error t.
// p != 0; q is fixed at 1 and kept only so configurations can state it.
struct LossSpec {
  double p = 1.0;
  double q = 1.0;
};

// One two-parameter exponential population: density (1/sigma) e^{-(x-mu)/sigma}
// on x > mu, sampled n times.
struct Population {
  double mu = 0.0;
  double sigma = 1.0;
  int n = 2;
};

enum class ScenarioKind {
  OrderedScale,           // sigma_1 <= ... <= sigma_k, mu_i unrestricted
  LocKnownScale,          // mu_1 <= ... <= mu_k, sigma_i known
  LocEqualUnknownScale,   // mu_1 <= ... <= mu_k, common unknown sigma
  LocUnequalUnknownScale  // mu_1 <= ... <= mu_k, unknown unequal sigma_i
};

// Which component is being estimated and under which order restriction.
// target_index is zero-based.
struct Scenario {
  ScenarioKind kind = ScenarioKind::OrderedScale;
  std::vector<Population> populations;
  int target_index = 0;

  int k() const { return int(populations.size()); }
  int total_n() const {
    int n = 0;
    for (const auto& pop : populations) n += pop.n;
    return n;
  }
};

enum class SchemeKind { IID, TypeII, ProgressiveII, Records };

struct SchemeConfig {
  SchemeKind kind = SchemeKind::IID;
  std::vector<int> m;                      // TypeII: observed failures per population
  std::vector<std::vector<int>> removals;  // ProgressiveII: S_{i1..im_i}
  std::vector<int> records;                // Records: record count per population

  static SchemeConfig iid() { return {}; }
  static SchemeConfig type2(std::vector<int> m) {
    return {SchemeKind::TypeII, std::move(m), {}, {}};
  }
  static SchemeConfig progressive(std::vector<std::vector<int>> removals) {
    return {SchemeKind::ProgressiveII, {}, std::move(removals), {}};
  }
  static SchemeConfig record_values(std::vector<int> r) {
    return {SchemeKind::Records, {}, {}, std::move(r)};
  }
};

// Per-population reduced data: first order statistic (or first record), the
// Gamma-distributed spread statistic, and its shape.
struct SufficientStats {
  std::vector<double> x_min;
  std::vector<double> t;
  std::vector<int> shape;

  double pooled_t() const {
    double s = 0.0;
    for (double v : t) s += v;
    return s;
  }
};

enum class Estimator {
  MLE,
  RMLE,
  BAEE,
  BLEE,
  ImprovedOrderedScale,
  ImprovedKnownScale,
  ImprovedEqualScale,
  ImprovedUnequalScale,
  RMLEImproved,
};

// The printed alpha_0i = (1/p) ln((n_i - p sigma_i)/n_i) does not minimize the
// sigma-scaled risk unless sigma_i = 1; the exact minimizer is
// (sigma_i/p) ln((n_i - p)/n_i).  Both are shipped and selectable.
enum class BleeVariant { PaperPrinted, LossConsistent };

struct EstimatorId {
  Estimator tag = Estimator::MLE;
  BleeVariant variant = BleeVariant::PaperPrinted;  // used by BLEE family only

  friend bool operator==(const EstimatorId&, const EstimatorId&) = default;
};

std::string to_string(EstimatorId id);
std::string to_string(ScenarioKind kind);
std::string to_string(SchemeKind kind);

// Monte Carlo estimate of E[loss] for one estimator at one grid point.
struct RiskEstimate {
  EstimatorId estimator;
  double mean_loss = 0.0;
  double std_error = 0.0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
};

struct PriResult {
  EstimatorId baseline;
  EstimatorId candidate;
  double pri_percent = 0.0;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Scenario& scenario, const SchemeConfig& scheme,
                          const LossSpec& loss);

// Gamma shape of t_i and the rate multiplier of x_min under `scheme`
// (x_min - mu ~ Exp(sigma / rate_count)).
int scheme_shape(const SchemeConfig& scheme, const Scenario& scenario, int i);
double scheme_min_rate_count(const SchemeConfig& scheme, const Scenario& scenario, int i);

}  // namespace ordexp
