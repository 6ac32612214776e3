#include "ordexp/verify.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "ordexp/csv.hpp"
#include "ordexp/estimators.hpp"
#include "ordexp/oracle.hpp"
#include "ordexp/risk.hpp"
#include "ordexp/sampling.hpp"

namespace ordexp {

namespace {

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

const std::vector<double> kPGrid = {-4, -2, -1, -0.5, 0.5, 1, 2, 4};

SuiteResult constants_suite() {
  SuiteResult suite{"constants-vs-oracle", {}, ""};
  int checked = 0;
  for (int n = 2; n <= 30; ++n) {
    for (double p : kPGrid) {
      if (!(double(n) > p)) continue;
      ++checked;
      const double c = est::c0(n, p);
      const double c_ref = oracle::minimize_affine_risk(n, n - 1, p);
      if (std::fabs(c - c_ref) >= 1e-8)
        suite.failures.push_back(
            fmt("c0(%d, %g) = %.12f but oracle argmin = %.12f", n, p, c, c_ref));

      const double b = est::beta0(n, 2 * n, 2, p);
      const double b_ref = oracle::minimize_affine_risk(n, 2 * n - 2, p);
      if (std::fabs(b - b_ref) >= 1e-8)
        suite.failures.push_back(
            fmt("beta0(%d, %d, 2, %g) = %.12f but oracle argmin = %.12f", n,
                2 * n, p, b, b_ref));

      for (double sigma : {0.5, 1.0, 1.5}) {
        const double a =
            est::blee_alpha0(n, sigma, p, BleeVariant::LossConsistent);
        const double a_ref = oracle::minimize_shift_risk(n, sigma, p);
        if (std::fabs(a - a_ref) >= 1e-8)
          suite.failures.push_back(
              fmt("alpha0(%d, sigma=%g, %g) = %.12f but oracle argmin = %.12f",
                  n, sigma, p, a, a_ref));
      }
    }
  }
  suite.summary = fmt("%d (n, p) combinations against golden-section argmins",
                      checked);
  return suite;
}

SuiteResult equivariance_suite(std::uint64_t seed) {
  SuiteResult suite{"equivariance", {}, ""};
  UniformStream stream{seed, 0xE9, 0};
  const std::vector<int> ns = {5, 7};
  const double p = 1.0;
  const auto close = [](double a, double b) {
    return std::fabs(a - b) <= 1e-9 * (1.0 + std::fabs(a) + std::fabs(b));
  };

  for (int rep = 0; rep < 200; ++rep) {
    SufficientStats st;
    st.x_min = {stream.next() * 4 - 2, stream.next() * 4 - 2};
    st.t = {stream.next() * 3 + 0.05, stream.next() * 3 + 0.05};
    st.shape = {4, 6};
    const double a = stream.next() * 2 + 0.25;
    const double b1 = stream.next() * 4 - 2;
    const double b2 = stream.next() * 4 - 2;

    // ordered-scale family: common rescale, per-population shifts
    for (int i = 0; i < 2; ++i) {
      SufficientStats tr{{a * st.x_min[0] + b1, a * st.x_min[1] + b2},
                         {a * st.t[0], a * st.t[1]},
                         st.shape};
      const double base = est::improved_ordered_scale(i, st, ns, p);
      const double moved = est::improved_ordered_scale(i, tr, ns, p);
      const double bi = i == 0 ? b1 : b2;
      if (!close(moved, a * base + bi))
        suite.failures.push_back(
            fmt("improved_ordered_scale[%d] not affine equivariant", i + 1));
    }

    // ordered-location families: common rescale a, common shift b1
    const std::vector<double> x = st.x_min;
    const std::vector<double> xs = {a * x[0] + b1, a * x[1] + b1};
    const double tp = st.t[0] + st.t[1];
    for (int i = 0; i < 2; ++i) {
      {
        const double base = est::improved_equal_scale(i, x, tp, ns, p);
        const double moved = est::improved_equal_scale(i, xs, a * tp, ns, p);
        if (!close(moved, a * base + b1))
          suite.failures.push_back(
              fmt("improved_equal_scale[%d] not affine equivariant", i + 1));
      }
      {
        SufficientStats tr{xs, {a * st.t[0], a * st.t[1]}, st.shape};
        const double base = est::improved_unequal_scale(i, st, ns, p);
        const double moved = est::improved_unequal_scale(i, tr, ns, p);
        if (!close(moved, a * base + b1))
          suite.failures.push_back(
              fmt("improved_unequal_scale[%d] not affine equivariant", i + 1));
      }
      {
        const std::vector<double> sig = {1.0, 1.5};
        const std::vector<double> shifted = {x[0] + b1, x[1] + b1};
        const double base =
            est::improved_known_scale(i, x, ns, sig, p, BleeVariant::PaperPrinted);
        const double moved = est::improved_known_scale(i, shifted, ns, sig, p,
                                                       BleeVariant::PaperPrinted);
        if (!close(moved, base + b1))
          suite.failures.push_back(
              fmt("improved_known_scale[%d] not location equivariant", i + 1));
        if (!close(est::rmle_improved(i, shifted, ns, sig, p),
                   est::rmle_improved(i, x, ns, sig, p) + b1))
          suite.failures.push_back(
              fmt("rmle_improved[%d] not location equivariant", i + 1));
      }
    }
    if (!suite.failures.empty()) break;
  }

  // common-random-number location invariance of the engine, bit for bit
  for (auto kind : {ScenarioKind::OrderedScale, ScenarioKind::LocKnownScale}) {
    const EstimatorId id = kind == ScenarioKind::OrderedScale
                               ? EstimatorId{Estimator::BAEE}
                               : EstimatorId{Estimator::BLEE};
    GridPoint base;
    base.scenario = {kind, {{0.0, 1.0, 5}, {0.0, 1.5, 5}}, 0};
    base.loss = {1.0, 1.0};
    GridPoint shifted = base;
    shifted.scenario.populations[0].mu = 7.0;
    shifted.scenario.populations[1].mu = 7.0;
    const auto r0 = mc_risk(id, base, 4096, seed);
    const auto r1 = mc_risk(id, shifted, 4096, seed);
    if (r0.mean_loss != r1.mean_loss)
      suite.failures.push_back(
          fmt("engine mean loss changed under a common location shift (%s)",
              to_string(kind).c_str()));
  }

  suite.summary = "affine/location equivariance plus bit-exact engine shifts";
  return suite;
}

SuiteResult dominance_suite(VerifyLevel level, std::uint64_t seed) {
  SuiteResult suite{"dominance", {}, ""};
  const std::int64_t reps = level == VerifyLevel::Full ? 50000 : 10000;
  const std::vector<std::pair<int, int>> sizes = {{5, 5}, {5, 7}, {10, 8}};
  const std::vector<double> ordered_ratios = {0.5, 0.8, 1.0};
  const std::vector<double> gaps = {0.0, 0.1, 0.4};
  const std::vector<double> ps = {-2, -0.5, 0.5, 2};
  int points = 0;

  auto check = [&](EstimatorId baseline, EstimatorId candidate,
                   const GridPoint& point, std::uint64_t s) {
    const auto paired = mc_risk_paired(baseline, candidate, point, reps, s);
    ++points;
    if (paired.diff_mean < -3.0 * paired.diff_se)
      suite.failures.push_back(fmt(
          "%s risk exceeds %s by %.3g (se %.3g) at n=(%d,%d) gap=%g p=%g",
          to_string(candidate).c_str(), to_string(baseline).c_str(),
          -paired.diff_mean, paired.diff_se, point.scenario.populations[0].n,
          point.scenario.populations[1].n, point.mu_gap(), point.loss.p));
  };

  std::uint64_t salt = 0;
  for (const auto& [n1, n2] : sizes) {
    for (double key : ordered_ratios) {
      for (double p : ps) {
        GridPoint point;
        point.scenario = {ScenarioKind::OrderedScale,
                          {{0.0, key, n1}, {0.0, 1.0, n2}},
                          0};
        point.loss = {p, 1.0};
        for (int i = 0; i < 2; ++i) {
          point.scenario.target_index = i;
          check({Estimator::BAEE}, {Estimator::ImprovedOrderedScale}, point,
                mix64(seed, ++salt));
        }
      }
    }
    for (double gap : gaps) {
      for (double p : ps) {
        GridPoint point;
        point.loss = {p, 1.0};
        point.scenario = {ScenarioKind::LocKnownScale,
                          {{0.0, 1.0, n1}, {gap, 1.5, n2}},
                          0};
        for (int i = 0; i < 2; ++i) {
          point.scenario.target_index = i;
          for (auto variant : {BleeVariant::PaperPrinted, BleeVariant::LossConsistent})
            check({Estimator::BLEE, variant},
                  {Estimator::ImprovedKnownScale, variant}, point,
                  mix64(seed, ++salt));
          check({Estimator::RMLE}, {Estimator::RMLEImproved}, point,
                mix64(seed, ++salt));
        }
        point.scenario.kind = ScenarioKind::LocEqualUnknownScale;
        point.scenario.populations[1].sigma = 1.0;
        for (int i = 0; i < 2; ++i) {
          point.scenario.target_index = i;
          check({Estimator::BAEE}, {Estimator::ImprovedEqualScale}, point,
                mix64(seed, ++salt));
        }
        point.scenario.kind = ScenarioKind::LocUnequalUnknownScale;
        point.scenario.populations[1].sigma = 1.5;
        for (int i = 0; i < 2; ++i) {
          point.scenario.target_index = i;
          check({Estimator::BAEE}, {Estimator::ImprovedUnequalScale}, point,
                mix64(seed, ++salt));
        }
      }
    }
  }
  suite.summary = fmt("%d paired comparisons at %lld replications", points,
                      (long long)reps);
  return suite;
}

SuiteResult scheme_ks_suite(std::uint64_t seed) {
  SuiteResult suite{"scheme-ks", {}, ""};
  const std::size_t draws = 10000;
  const Population pop{0.0, 1.0, 5};

  auto direct_t = [&](std::uint64_t s, int shape, double rate) {
    std::vector<double> out(draws);
    for (std::size_t r = 0; r < draws; ++r) {
      UniformStream stream{s, r, 0};
      out[r] = draw_stats_direct(pop, shape, rate, stream).t;
    }
    return out;
  };
  auto raw_t = [&](std::uint64_t s, auto&& gen) {
    std::vector<double> out(draws);
    for (std::size_t r = 0; r < draws; ++r) {
      UniformStream stream{s, r, 0};
      out[r] = gen(stream);
    }
    return out;
  };

  struct Case {
    const char* name;
    std::vector<double> raw;
    int gamma_shape;
    double rate;
  };
  std::vector<Case> cases;
  cases.push_back({"iid",
                   raw_t(mix64(seed, 11),
                         [&](UniformStream& s) { return reduce_iid(draw_iid(pop, s)).t; }),
                   4, 5.0});
  cases.push_back({"type2(m=n)",
                   raw_t(mix64(seed, 12),
                         [&](UniformStream& s) {
                           return reduce_type2(draw_type2(pop, 5, s), 5, 5).t;
                         }),
                   4, 5.0});
  cases.push_back({"type2(m=3)",
                   raw_t(mix64(seed, 13),
                         [&](UniformStream& s) {
                           return reduce_type2(draw_type2(pop, 3, s), 5, 3).t;
                         }),
                   2, 5.0});
  cases.push_back({"progressive(S=0)",
                   raw_t(mix64(seed, 14),
                         [&](UniformStream& s) {
                           const std::vector<int> removals = {0, 0, 0, 0, 0};
                           return draw_progressive(pop, removals, s).t;
                         }),
                   4, 5.0});
  cases.push_back({"progressive(S=(1,0,1))",
                   raw_t(mix64(seed, 15),
                         [&](UniformStream& s) {
                           const std::vector<int> removals = {1, 0, 1};
                           return draw_progressive(pop, removals, s).t;
                         }),
                   2, 5.0});
  cases.push_back({"records(r=4)",
                   raw_t(mix64(seed, 16),
                         [&](UniformStream& s) { return draw_records(pop, 4, s).t; }),
                   3, 1.0});

  for (auto& c : cases) {
    const double d1 = oracle::ks_statistic(c.raw, [&](double x) {
      return oracle::erlang_cdf(c.gamma_shape, pop.sigma, x);
    });
    if (d1 >= oracle::ks_critical_1pct(draws))
      suite.failures.push_back(
          fmt("%s: t vs Gamma(%d) one-sample KS %.4f above 1%% critical", c.name,
              c.gamma_shape, d1));
    const auto direct = direct_t(mix64(seed, fnv1a64(c.name)), c.gamma_shape, c.rate);
    const double d2 = oracle::ks_two_sample(c.raw, direct);
    if (d2 >= oracle::ks_two_sample_critical_1pct(draws, draws))
      suite.failures.push_back(
          fmt("%s: raw-path vs direct-path two-sample KS %.4f above 1%% critical",
              c.name, d2));
  }
  suite.summary = fmt("%zu scheme reductions at %zu draws", cases.size(), draws);
  return suite;
}

SuiteResult analytic_mc_suite(VerifyLevel level, std::uint64_t seed) {
  SuiteResult suite{"analytic-vs-mc", {}, ""};
  const std::int64_t reps = level == VerifyLevel::Full ? 50000 : 10000;
  int points = 0;

  auto check = [&](const char* what, EstimatorId id, const GridPoint& point,
                   double expected, std::uint64_t s) {
    const auto r = mc_risk(id, point, reps, s);
    ++points;
    if (std::fabs(r.mean_loss - expected) > 3.0 * r.std_error + 1e-12)
      suite.failures.push_back(
          fmt("%s: mc %.6f vs analytic %.6f (se %.2g)", what, r.mean_loss,
              expected, r.std_error));
  };

  for (double p : {1.0, -1.0}) {
    GridPoint point;
    point.scenario = {ScenarioKind::OrderedScale, {{0.0, 1.0, 5}, {0.0, 2.0, 7}}, 0};
    point.loss = {p, 1.0};
    check("ordered-scale MLE", {Estimator::MLE}, point,
          analytic_affine_risk(0.0, 5, 4, p), mix64(seed, 21));
    check("ordered-scale BAEE", {Estimator::BAEE}, point,
          analytic_affine_risk(est::c0(5, p), 5, 4, p), mix64(seed, 22));

    point.scenario.kind = ScenarioKind::LocKnownScale;
    point.scenario.populations[1].sigma = 1.5;
    point.scenario.target_index = 1;
    for (auto variant : {BleeVariant::PaperPrinted, BleeVariant::LossConsistent}) {
      const double alpha = est::blee_alpha0(7, 1.5, p, variant);
      check("known-scale BLEE", {Estimator::BLEE, variant}, point,
            analytic_shift_risk(alpha, 7, 1.5, p), mix64(seed, 23));
    }

    point.scenario.kind = ScenarioKind::LocEqualUnknownScale;
    point.scenario.populations[1].sigma = 1.0;
    point.scenario.target_index = 0;
    check("equal-scale pooled BAEE", {Estimator::BAEE}, point,
          analytic_affine_risk(est::beta0(5, 12, 2, p), 5, 10, p),
          mix64(seed, 24));

    // censored statistics: Type-II with m = (3, 3) has Gamma shape 2
    point.scenario.kind = ScenarioKind::OrderedScale;
    point.scenario.populations = {{0.0, 1.0, 5}, {0.0, 2.0, 5}};
    point.scheme = SchemeConfig::type2({3, 3});
    check("type2 BAEE", {Estimator::BAEE}, point,
          analytic_affine_risk(est::c0(3, p), 3, 2, p), mix64(seed, 25));
    point.scheme = SchemeConfig::iid();
  }

  // risk constancy on the orbit: same sigma ratio, different scales/locations
  {
    GridPoint a, b;
    a.scenario = {ScenarioKind::OrderedScale, {{0.0, 0.5, 5}, {0.0, 1.0, 5}}, 0};
    a.loss = {1.0, 1.0};
    b = a;
    b.scenario.populations[0] = {3.0, 1.5, 5};
    b.scenario.populations[1] = {9.0, 3.0, 5};
    const auto ra = mc_risk({Estimator::ImprovedOrderedScale}, a, reps, mix64(seed, 26));
    const auto rb = mc_risk({Estimator::ImprovedOrderedScale}, b, reps, mix64(seed, 27));
    ++points;
    if (std::fabs(ra.mean_loss - rb.mean_loss) >
        3.0 * std::hypot(ra.std_error, rb.std_error))
      suite.failures.push_back(
          fmt("improved ordered-scale risk not constant on the sigma-ratio orbit "
              "(%.6f vs %.6f)",
              ra.mean_loss, rb.mean_loss));
  }

  suite.summary = fmt("%d risk points against closed forms at %lld replications",
                      points, (long long)reps);
  return suite;
}

}  // namespace

std::vector<SuiteResult> run_verification(VerifyLevel level, std::uint64_t seed) {
  std::vector<SuiteResult> suites;
  suites.push_back(constants_suite());
  suites.push_back(equivariance_suite(seed));
  suites.push_back(dominance_suite(level, seed));
  suites.push_back(scheme_ks_suite(seed));
  suites.push_back(analytic_mc_suite(level, seed));
  return suites;
}

}  // namespace ordexp
