#include "ordexp/types.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>

namespace ordexp {

namespace {

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

}  // namespace

std::string to_string(EstimatorId id) {
  switch (id.tag) {
    case Estimator::MLE: return "mle";
    case Estimator::RMLE: return "rmle";
    case Estimator::BAEE: return "baee";
    case Estimator::BLEE:
      return id.variant == BleeVariant::PaperPrinted ? "blee_paper"
                                                     : "blee_consistent";
    case Estimator::ImprovedOrderedScale: return "improved_ordered_scale";
    case Estimator::ImprovedKnownScale:
      return id.variant == BleeVariant::PaperPrinted
                 ? "improved_known_scale_paper"
                 : "improved_known_scale_consistent";
    case Estimator::ImprovedEqualScale: return "improved_equal_scale";
    case Estimator::ImprovedUnequalScale: return "improved_unequal_scale";
    case Estimator::RMLEImproved: return "rmle_improved";
  }
  return "?";
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::OrderedScale: return "ordered-scale";
    case ScenarioKind::LocKnownScale: return "loc-known-scale";
    case ScenarioKind::LocEqualUnknownScale: return "loc-equal-scale";
    case ScenarioKind::LocUnequalUnknownScale: return "loc-unequal-scale";
  }
  return "?";
}

std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::IID: return "iid";
    case SchemeKind::TypeII: return "type2";
    case SchemeKind::ProgressiveII: return "progressive";
    case SchemeKind::Records: return "records";
  }
  return "?";
}

int scheme_shape(const SchemeConfig& scheme, const Scenario& scenario, int i) {
  switch (scheme.kind) {
    case SchemeKind::IID: return scenario.populations[i].n - 1;
    case SchemeKind::TypeII: return scheme.m[i] - 1;
    case SchemeKind::ProgressiveII: return int(scheme.removals[i].size()) - 1;
    case SchemeKind::Records: return scheme.records[i] - 1;
  }
  return 0;
}

double scheme_min_rate_count(const SchemeConfig& scheme, const Scenario& scenario,
                             int i) {
  // X_min - mu ~ Exp(sigma / rate): first failure among n units, except for
  // record data where the first record is a single Exp(mu, sigma) draw.
  return scheme.kind == SchemeKind::Records
             ? 1.0
             : double(scenario.populations[i].n);
}

ValidationReport validate(const Scenario& scenario, const SchemeConfig& scheme,
                          const LossSpec& loss) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  if (!(std::fabs(loss.p) >= 1e-10) || !std::isfinite(loss.p))
    fail("loss: p must be nonzero (|p| >= 1e-10)");
  if (loss.q != 1.0) fail("loss: q is fixed at 1");

  const int k = scenario.k();
  if (k < 2) fail("scenario: needs at least two populations");
  if (scenario.target_index < 0 || scenario.target_index >= k)
    fail("scenario: target_index out of range");

  for (int i = 0; i < k; ++i) {
    const auto& pop = scenario.populations[i];
    if (!(pop.sigma > 0.0))
      fail(fmt("population %d: sigma must be > 0", i + 1));
    if (pop.n < 2) fail(fmt("population %d: n must be >= 2", i + 1));
  }
  if (!report.ok()) return report;

  switch (scenario.kind) {
    case ScenarioKind::OrderedScale:
      for (int i = 0; i + 1 < k; ++i)
        if (scenario.populations[i].sigma > scenario.populations[i + 1].sigma)
          fail(fmt("ordered-scale: sigma_%d > sigma_%d violates the ordering",
                   i + 1, i + 2));
      break;
    case ScenarioKind::LocKnownScale:
    case ScenarioKind::LocEqualUnknownScale:
    case ScenarioKind::LocUnequalUnknownScale:
      for (int i = 0; i + 1 < k; ++i)
        if (scenario.populations[i].mu > scenario.populations[i + 1].mu)
          fail(fmt("ordered-location: mu_%d > mu_%d violates the ordering",
                   i + 1, i + 2));
      break;
  }
  if (scenario.kind == ScenarioKind::LocEqualUnknownScale) {
    for (int i = 1; i < k; ++i)
      if (scenario.populations[i].sigma != scenario.populations[0].sigma)
        fail("equal-scale: all sigma_i must be equal");
  }

  switch (scheme.kind) {
    case SchemeKind::IID:
      break;
    case SchemeKind::TypeII:
      if (int(scheme.m.size()) != k) {
        fail("type2: m must list one value per population");
        break;
      }
      for (int i = 0; i < k; ++i)
        if (scheme.m[i] < 2 || scheme.m[i] > scenario.populations[i].n)
          fail(fmt("type2: need 2 <= m_%d <= n_%d", i + 1, i + 1));
      break;
    case SchemeKind::ProgressiveII:
      if (int(scheme.removals.size()) != k) {
        fail("progressive: removals must list one vector per population");
        break;
      }
      for (int i = 0; i < k; ++i) {
        const auto& s = scheme.removals[i];
        if (int(s.size()) < 2) {
          fail(fmt("progressive: need m_%d >= 2 stages", i + 1));
          continue;
        }
        int total = int(s.size());
        bool neg = false;
        for (int v : s) {
          if (v < 0) neg = true;
          total += v;
        }
        if (neg) fail(fmt("progressive: removals of population %d must be >= 0", i + 1));
        if (total != scenario.populations[i].n)
          fail(fmt("progressive: m_%d + sum(S_%dj) must equal n_%d", i + 1, i + 1,
                   i + 1));
      }
      break;
    case SchemeKind::Records:
      if (int(scheme.records.size()) != k) {
        fail("records: r must list one value per population");
        break;
      }
      for (int i = 0; i < k; ++i)
        if (scheme.records[i] < 2) fail(fmt("records: need r_%d >= 2", i + 1));
      break;
  }
  if (!report.ok()) return report;

  // Estimator constants must be well defined for the scenario.  The effective
  // per-population sample size entering every formula is the Gamma shape + 1
  // (n_i, m_i, or r_i depending on the scheme).
  const double p = loss.p;
  std::vector<int> eff(k);
  int eff_total = 0;
  for (int i = 0; i < k; ++i) {
    eff[i] = scheme_shape(scheme, scenario, i) + 1;
    eff_total += eff[i];
  }
  for (int i = 0; i < k; ++i)
    if (!(double(eff[i]) > p))
      fail(fmt("constants: need n_%d > p (have n_%d = %d, p = %g)", i + 1, i + 1,
               eff[i], p));

  if (scenario.kind == ScenarioKind::LocKnownScale) {
    double q = 0.0;
    for (int i = 0; i < k; ++i)
      q += double(eff[i]) / scenario.populations[i].sigma;
    for (int i = 0; i < k; ++i) {
      const double sigma = scenario.populations[i].sigma;
      if (!(q * sigma > p))
        fail(fmt("constants: need q*sigma_%d > p (q = %g)", i + 1, q));
      if (!(double(eff[i]) > p * sigma))
        fail(fmt("constants: need n_%d > p*sigma_%d for the printed BLEE shift",
                 i + 1, i + 1));
    }
  }
  if (scenario.kind == ScenarioKind::LocEqualUnknownScale) {
    if (!(double(eff_total) > p)) fail("constants: need total n > p");
    if (eff_total - k < 1) fail("constants: pooled T needs n - k >= 1");
  }
  return report;
}

}  // namespace ordexp
