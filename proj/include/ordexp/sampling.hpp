#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ordexp/types.hpp"

namespace ordexp {

// Sequential view of one Philox stream.  A value depends only on
// (seed, stream, position), so generators are pure functions of the stream
// coordinates and replications simply use disjoint stream ids.
struct UniformStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t pos = 0;

  double next();
};

// One population's ordered observations, kept as mu + sigma * z with the
// standardized offsets z stored explicitly.  Location and scale then act on
// exact factors: shifting mu moves every observation by exactly the shift and
// leaves the spread statistic bit-identical, and scaling sigma scales
// (observation - mu) and t by exactly that factor.
struct RawSample {
  SchemeKind scheme = SchemeKind::IID;
  double mu = 0.0;
  double sigma = 1.0;
  std::vector<double> z;  // ascending, > 0 for generated data

  std::size_t size() const { return z.size(); }
  double observation(std::size_t j) const { return mu + sigma * z[j]; }
  std::vector<double> observations() const;

  // Ad-hoc sample from plain values (sorted into place, mu = 0, sigma = 1).
  static RawSample from_observations(std::vector<double> values,
                                     SchemeKind scheme = SchemeKind::IID);
};

struct StatTriple {
  double x_min = 0.0;
  double t = 0.0;
  int shape = 0;
};

// Standard exponential by inversion; u = 0.5 gives ln 2.
double exp_quantile(double u);

RawSample draw_iid(const Population& pop, UniformStream& stream);
StatTriple reduce_iid(const RawSample& raw);

// First m order statistics of n via the exponential-spacings representation.
RawSample draw_type2(const Population& pop, int m, UniformStream& stream);
StatTriple reduce_type2(const RawSample& prefix, int n, int m);

StatTriple draw_progressive(const Population& pop, std::span<const int> removals,
                            UniformStream& stream);

StatTriple draw_records(const Population& pop, int r, UniformStream& stream);

// Direct draw of (x_min, t): x_min ~ mu + Exp(sigma/rate_count),
// t ~ Gamma(shape, sigma).  The Monte Carlo fast path.
StatTriple draw_stats_direct(const Population& pop, int shape, double rate_count,
                             UniformStream& stream);

// Direct-path sufficient statistics for a whole scenario; replication `rep`
// reads stream `rep` of `seed`.
SufficientStats draw_scenario_direct(const Scenario& scenario,
                                     const SchemeConfig& scheme,
                                     std::uint64_t seed, std::uint64_t rep);

// Raw-path sufficient statistics under the configured scheme (slow path,
// used to validate the direct path distributionally).
SufficientStats draw_scenario_raw(const Scenario& scenario,
                                  const SchemeConfig& scheme, std::uint64_t seed,
                                  std::uint64_t rep);

}  // namespace ordexp
