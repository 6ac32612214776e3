#include "ordexp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ordexp/kernels.hpp"
#include "ordexp/philox.hpp"

namespace ordexp {

double UniformStream::next() { return philox_uniform(seed, stream, pos++); }

double exp_quantile(double u) { return kernels::std_exponential_one(u); }

std::vector<double> RawSample::observations() const {
  std::vector<double> out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) out[j] = mu + sigma * z[j];
  return out;
}

RawSample RawSample::from_observations(std::vector<double> values,
                                       SchemeKind scheme) {
  std::sort(values.begin(), values.end());
  return RawSample{scheme, 0.0, 1.0, std::move(values)};
}

RawSample draw_iid(const Population& pop, UniformStream& stream) {
  RawSample raw{SchemeKind::IID, pop.mu, pop.sigma, std::vector<double>(pop.n)};
  for (int j = 0; j < pop.n; ++j) raw.z[j] = exp_quantile(stream.next());
  std::sort(raw.z.begin(), raw.z.end());
  return raw;
}

StatTriple reduce_iid(const RawSample& raw) {
  const int n = int(raw.size());
  if (n < 2) throw std::invalid_argument("reduce_iid: need a sample of size >= 2");
  double t = 0.0;
  for (int j = 1; j < n; ++j) t += raw.z[j] - raw.z[0];
  return {raw.mu + raw.sigma * raw.z[0], raw.sigma * t, n - 1};
}

RawSample draw_type2(const Population& pop, int m, UniformStream& stream) {
  if (m < 2 || m > pop.n) throw std::invalid_argument("draw_type2: need 2 <= m <= n");
  RawSample raw{SchemeKind::TypeII, pop.mu, pop.sigma, std::vector<double>(m)};
  // spacing j has rate (n - j + 1)/sigma while n - j + 1 units remain on test
  double at = 0.0;
  for (int j = 0; j < m; ++j) {
    at += exp_quantile(stream.next()) / double(pop.n - j);
    raw.z[j] = at;
  }
  return raw;
}

StatTriple reduce_type2(const RawSample& prefix, int n, int m) {
  if (m < 2 || m > n) throw std::invalid_argument("reduce_type2: need 2 <= m <= n");
  if (int(prefix.size()) != m)
    throw std::invalid_argument("reduce_type2: prefix must hold m order statistics");
  double t = 0.0;
  for (int j = 1; j < m; ++j) t += prefix.z[j] - prefix.z[0];
  t += double(n - m) * (prefix.z[m - 1] - prefix.z[0]);
  return {prefix.mu + prefix.sigma * prefix.z[0], prefix.sigma * t, m - 1};
}

StatTriple draw_progressive(const Population& pop, std::span<const int> removals,
                            UniformStream& stream) {
  const int m = int(removals.size());
  int total = m;
  for (int s : removals) {
    if (s < 0) throw std::invalid_argument("draw_progressive: removals must be >= 0");
    total += s;
  }
  if (m < 2 || total != pop.n)
    throw std::invalid_argument("draw_progressive: m + sum(S_j) must equal n, m >= 2");

  double at = 0.0, t_std = 0.0, first = 0.0;
  int on_test = pop.n;
  for (int j = 0; j < m; ++j) {
    at += exp_quantile(stream.next()) / double(on_test);
    if (j == 0) first = at;
    t_std += double(removals[j] + 1) * (at - first);
    on_test -= 1 + removals[j];
  }
  return {pop.mu + pop.sigma * first, pop.sigma * t_std, m - 1};
}

StatTriple draw_records(const Population& pop, int r, UniformStream& stream) {
  if (r < 2) throw std::invalid_argument("draw_records: need r >= 2");
  // First record is one Exp(mu, sigma) draw; the exponential's memorylessness
  // makes the later record increments i.i.d. Exp(sigma).
  const double first = exp_quantile(stream.next());
  double inc = 0.0;
  for (int j = 1; j < r; ++j) inc += exp_quantile(stream.next());
  return {pop.mu + pop.sigma * first, pop.sigma * inc, r - 1};
}

StatTriple draw_stats_direct(const Population& pop, int shape, double rate_count,
                             UniformStream& stream) {
  if (shape < 1) throw std::invalid_argument("draw_stats_direct: need shape >= 1");
  const double e_min = exp_quantile(stream.next()) / rate_count;
  double g = 0.0;
  for (int j = 0; j < shape; ++j) g += exp_quantile(stream.next());
  return {pop.mu + pop.sigma * e_min, pop.sigma * g, shape};
}

SufficientStats draw_scenario_direct(const Scenario& scenario,
                                     const SchemeConfig& scheme,
                                     std::uint64_t seed, std::uint64_t rep) {
  UniformStream stream{seed, rep, 0};
  SufficientStats stats;
  for (int i = 0; i < scenario.k(); ++i) {
    const auto s = draw_stats_direct(scenario.populations[i],
                                     scheme_shape(scheme, scenario, i),
                                     scheme_min_rate_count(scheme, scenario, i),
                                     stream);
    stats.x_min.push_back(s.x_min);
    stats.t.push_back(s.t);
    stats.shape.push_back(s.shape);
  }
  return stats;
}

SufficientStats draw_scenario_raw(const Scenario& scenario,
                                  const SchemeConfig& scheme, std::uint64_t seed,
                                  std::uint64_t rep) {
  UniformStream stream{seed, rep, 0};
  SufficientStats stats;
  for (int i = 0; i < scenario.k(); ++i) {
    const auto& pop = scenario.populations[i];
    StatTriple s;
    switch (scheme.kind) {
      case SchemeKind::IID: s = reduce_iid(draw_iid(pop, stream)); break;
      case SchemeKind::TypeII:
        s = reduce_type2(draw_type2(pop, scheme.m[i], stream), pop.n, scheme.m[i]);
        break;
      case SchemeKind::ProgressiveII:
        s = draw_progressive(pop, scheme.removals[i], stream);
        break;
      case SchemeKind::Records:
        s = draw_records(pop, scheme.records[i], stream);
        break;
    }
    stats.x_min.push_back(s.x_min);
    stats.t.push_back(s.t);
    stats.shape.push_back(s.shape);
  }
  return stats;
}

}  // namespace ordexp
