#include "ordexp/risk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "ordexp/estimators.hpp"
#include "ordexp/kernels.hpp"

namespace ordexp {

double linex_loss(double delta, double mu, double sigma, double p) {
  if (!(sigma > 0.0)) throw std::invalid_argument("linex_loss: sigma must be > 0");
  if (p == 0.0) throw std::invalid_argument("linex_loss: p must be nonzero");
  const double t = (delta - mu) / sigma;
  return std::max(std::exp(p * t) - p * t - 1.0, 0.0);
}

double analytic_affine_risk(double c, int n_i, int m, double p) {
  const double n = n_i;
  if (!(n > p)) throw std::invalid_argument("analytic_affine_risk: requires n_i > p");
  if (!(c * p < 1.0))
    throw std::invalid_argument("analytic_affine_risk: requires c*p < 1");
  if (m < 1) throw std::invalid_argument("analytic_affine_risk: requires m >= 1");
  return n / (n - p) * std::pow(1.0 - p * c, -double(m)) - p / n - p * c * m - 1.0;
}

double analytic_shift_risk(double alpha, int n_i, double sigma_i, double p) {
  const double n = n_i;
  if (!(n > p)) throw std::invalid_argument("analytic_shift_risk: requires n_i > p");
  const double a = p * alpha / sigma_i;
  return std::exp(a) * n / (n - p) - a - p / n - 1.0;
}

double GridPoint::sigma_ratio() const {
  return scenario.populations.front().sigma / scenario.populations.back().sigma;
}

double GridPoint::mu_gap() const {
  return scenario.populations.back().mu - scenario.populations.front().mu;
}

bool estimator_applies(EstimatorId id, ScenarioKind kind) {
  switch (id.tag) {
    case Estimator::MLE:
      return true;
    case Estimator::BAEE:
      return kind == ScenarioKind::OrderedScale ||
             kind == ScenarioKind::LocEqualUnknownScale ||
             kind == ScenarioKind::LocUnequalUnknownScale;
    case Estimator::ImprovedOrderedScale:
      return kind == ScenarioKind::OrderedScale;
    case Estimator::BLEE:
    case Estimator::ImprovedKnownScale:
    case Estimator::RMLEImproved:
      return kind == ScenarioKind::LocKnownScale;
    case Estimator::RMLE:
      return kind != ScenarioKind::OrderedScale;
    case Estimator::ImprovedEqualScale:
      return kind == ScenarioKind::LocEqualUnknownScale;
    case Estimator::ImprovedUnequalScale:
      return kind == ScenarioKind::LocUnequalUnknownScale;
  }
  return false;
}

namespace {

// Replications are processed in fixed blocks; the block size is part of the
// numeric contract (per-block pairwise sums feed a fixed tree, so thread
// scheduling cannot change any bit of the output).
constexpr std::int64_t kBlock = 2048;

int engine_threads() {
  if (const char* env = std::getenv("ORDEXP_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

// Per-estimator evaluation with all constants precomputed.  Estimates are
// formed in location-reduced coordinates (mu shifted so mu_1 = 0), which
// every estimator here is equivariant to; a common location shift therefore
// cannot change any computed loss bit.
struct EvalContext {
  Estimator tag = Estimator::MLE;
  bool pooled_baee = false;  // BAEE under equal unknown scales uses beta0 * T
  int target = 0;
  int k = 0;
  double mult = 0.0;   // c0 / kappa0 multiplier of the target
  double d = 0.0;      // ordered-scale clip-bound factor
  double alpha = 0.0;  // BLEE shift
  double g = 0.0;      // known-sigma improvement shift
  double beta = 0.0;   // pooled-T multiplier

  double operator()(const double* x, const double* t) const {
    const int i = target;
    switch (tag) {
      case Estimator::MLE:
        return x[i];
      case Estimator::RMLE: {
        double m = x[i];
        for (int j = i + 1; j < k; ++j) m = std::min(m, x[j]);
        return m;
      }
      case Estimator::RMLEImproved: {
        double m = x[i];
        for (int j = i + 1; j < k; ++j) m = std::min(m, x[j]);
        return m + g;
      }
      case Estimator::BAEE: {
        if (!pooled_baee) return x[i] + mult * t[i];
        double tp = 0.0;
        for (int j = 0; j < k; ++j) tp += t[j];
        return x[i] + beta * tp;
      }
      case Estimator::BLEE:
        return x[i] + alpha;
      case Estimator::ImprovedOrderedScale: {
        double m;
        if (i == 0) {
          double wsum = 0.0;
          for (int j = 1; j < k; ++j) wsum += t[j] / t[0];
          m = std::clamp(mult, d * (1.0 + wsum), d);
        } else {
          double wsum = 0.0;
          for (int j = 0; j < i; ++j) wsum += t[j] / t[i];
          m = std::min(mult, d * (1.0 + wsum));
        }
        return x[i] + m * t[i];
      }
      case Estimator::ImprovedKnownScale: {
        if (i < k - 1) {
          double ymin = 0.0;
          for (int j = i + 1; j < k; ++j) ymin = std::min(ymin, x[j] - x[i]);
          return x[i] + std::min(alpha, g + ymin);
        }
        double ymin = 0.0;
        for (int j = 0; j < k - 1; ++j) ymin = std::min(ymin, x[j] - x[i]);
        return x[i] + std::clamp(alpha, g + ymin, g);
      }
      case Estimator::ImprovedEqualScale: {
        double tp = 0.0;
        for (int j = 0; j < k; ++j) tp += t[j];
        double bound = 0.0;
        for (int j = i + 1; j < k; ++j) bound = std::min(bound, x[j] - x[i]);
        return x[i] + std::min(beta * tp, bound);
      }
      case Estimator::ImprovedUnequalScale: {
        double bound = 0.0;
        for (int j = i + 1; j < k; ++j) bound = std::min(bound, x[j] - x[i]);
        return x[i] + std::min(mult * t[i], bound);
      }
    }
    return x[i];
  }
};

struct EnginePlan {
  int k = 0;
  int target = 0;
  double p = 0.0;
  double sigma_target = 0.0;
  std::vector<double> mu_rel;    // mu_i - mu_1
  std::vector<double> sigma;
  std::vector<double> inv_rate;  // 1 / rate_count
  std::vector<int> shape;
  int uniforms_per_rep = 0;
  std::vector<EvalContext> evals;
};

EnginePlan make_plan(std::span<const EstimatorId> estimators,
                     const GridPoint& point) {
  const auto& sc = point.scenario;
  const auto report = validate(sc, point.scheme, point.loss);
  if (!report.ok()) {
    std::string msg = "mc_risk: invalid grid point:";
    for (const auto& v : report.violations) msg += " [" + v + "]";
    throw std::invalid_argument(msg);
  }
  for (const auto& id : estimators)
    if (!estimator_applies(id, sc.kind))
      throw std::invalid_argument("mc_risk: estimator '" + to_string(id) +
                                  "' does not apply to scenario '" +
                                  to_string(sc.kind) + "'");

  EnginePlan plan;
  plan.k = sc.k();
  plan.target = sc.target_index;
  plan.p = point.loss.p;
  plan.sigma_target = sc.populations[plan.target].sigma;
  std::vector<int> eff(plan.k);
  int eff_total = 0;
  for (int i = 0; i < plan.k; ++i) {
    const auto& pop = sc.populations[i];
    plan.mu_rel.push_back(pop.mu - sc.populations[0].mu);
    plan.sigma.push_back(pop.sigma);
    plan.inv_rate.push_back(1.0 / scheme_min_rate_count(point.scheme, sc, i));
    plan.shape.push_back(scheme_shape(point.scheme, sc, i));
    plan.uniforms_per_rep += 1 + plan.shape.back();
    eff[i] = plan.shape.back() + 1;
    eff_total += eff[i];
  }

  for (const auto& id : estimators) {
    EvalContext ev;
    ev.tag = id.tag;
    ev.target = plan.target;
    ev.k = plan.k;
    const int n_i = eff[plan.target];
    switch (id.tag) {
      case Estimator::BAEE:
        if (sc.kind == ScenarioKind::LocEqualUnknownScale) {
          ev.pooled_baee = true;
          ev.beta = est::beta0(n_i, eff_total, plan.k, plan.p);
        } else {
          ev.mult = est::c0(n_i, plan.p);
        }
        break;
      case Estimator::ImprovedOrderedScale:
        ev.mult = est::c0(n_i, plan.p);
        ev.d = est::bound_multiplier(n_i, eff_total, plan.p);
        break;
      case Estimator::BLEE:
        ev.alpha =
            est::blee_alpha0(n_i, plan.sigma[plan.target], plan.p, id.variant);
        break;
      case Estimator::ImprovedKnownScale:
        ev.alpha =
            est::blee_alpha0(n_i, plan.sigma[plan.target], plan.p, id.variant);
        ev.g = est::known_scale_shift(plan.target, eff, plan.sigma, plan.p);
        break;
      case Estimator::RMLEImproved:
        ev.g = est::known_scale_shift(plan.target, eff, plan.sigma, plan.p);
        break;
      case Estimator::ImprovedEqualScale:
        ev.beta = est::beta0(n_i, eff_total, plan.k, plan.p);
        break;
      case Estimator::ImprovedUnequalScale:
        ev.mult = est::c0(n_i, plan.p);
        break;
      case Estimator::MLE:
      case Estimator::RMLE:
        break;
    }
    plan.evals.push_back(ev);
  }
  return plan;
}

struct BlockSums {
  double sum = 0.0;
  double sumsq = 0.0;
};

// Evaluates one block of replications [rep0, rep0 + len) for every estimator.
// loss_keep, when nonempty, receives the raw per-replication losses
// (estimator-major) for paired-difference reductions.
void run_block(const EnginePlan& plan, std::uint64_t seed, std::int64_t rep0,
               std::int64_t len, std::vector<double>& scratch,
               std::span<BlockSums> out, std::span<double> loss_keep) {
  const auto& ops = kernels::active();
  const int n_cols = (plan.uniforms_per_rep + 1) & ~1;
  const std::size_t b = std::size_t(len);
  const std::size_t k = std::size_t(plan.k);

  // scratch: [n_cols uniform/exponential columns][x rep-major][t rep-major][z][loss]
  const std::size_t need = std::size_t(n_cols) * b + 2 * k * b + 2 * b;
  if (scratch.size() < need) scratch.resize(need);
  double* cols = scratch.data();
  double* xs = cols + std::size_t(n_cols) * b;
  double* ts = xs + k * b;
  double* zs = ts + k * b;
  double* ls = zs + b;

  for (int c = 0; c < n_cols; c += 2)
    ops.uniform_pair_columns(seed, std::uint64_t(rep0), b, std::uint64_t(c / 2),
                             cols + std::size_t(c) * b,
                             cols + std::size_t(c + 1) * b);
  ops.std_exponential(cols, cols, std::size_t(n_cols) * b);

  // Assemble x~ and t per population with the same arithmetic as
  // draw_stats_direct, so single draws and engine draws agree exactly.
  int col = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double* e_min = cols + std::size_t(col) * b;
    const double mu = plan.mu_rel[i];
    const double sig = plan.sigma[i];
    const double inv_rate = plan.inv_rate[i];
    for (std::size_t r = 0; r < b; ++r)
      xs[r * k + i] = mu + sig * (e_min[r] * inv_rate);
    ++col;
    for (std::size_t r = 0; r < b; ++r) ts[r * k + i] = 0.0;
    for (int j = 0; j < plan.shape[i]; ++j) {
      const double* e = cols + std::size_t(col) * b;
      for (std::size_t r = 0; r < b; ++r) ts[r * k + i] += e[r];
      ++col;
    }
    for (std::size_t r = 0; r < b; ++r) ts[r * k + i] = sig * ts[r * k + i];
  }

  const double mu_t = plan.mu_rel[plan.target];
  const double inv_sigma = 1.0 / plan.sigma_target;
  for (std::size_t e = 0; e < plan.evals.size(); ++e) {
    const auto& ev = plan.evals[e];
    for (std::size_t r = 0; r < b; ++r)
      zs[r] = (ev(xs + r * k, ts + r * k) - mu_t) * inv_sigma;
    ops.linex_terms(zs, plan.p, ls, b);
    out[e].sum = kernels::pairwise_sum(ls, b);
    if (!loss_keep.empty()) std::copy(ls, ls + b, loss_keep.data() + e * b);
    for (std::size_t r = 0; r < b; ++r) zs[r] = ls[r] * ls[r];
    out[e].sumsq = kernels::pairwise_sum(zs, b);
  }
}

struct Accum {
  std::vector<double> sums;  // one entry per block
  std::vector<double> sumsqs;
};

RiskEstimate finish(EstimatorId id, const Accum& acc, std::int64_t reps,
                    std::uint64_t seed) {
  const double total = kernels::pairwise_sum(acc.sums.data(), acc.sums.size());
  const double total_sq =
      kernels::pairwise_sum(acc.sumsqs.data(), acc.sumsqs.size());
  const double mean = total / double(reps);
  double var = (total_sq - total * total / double(reps)) / double(reps - 1);
  var = std::max(var, 0.0);
  return RiskEstimate{id, mean, std::sqrt(var / double(reps)), reps, seed};
}

std::vector<Accum> run_engine(const EnginePlan& plan, std::int64_t reps,
                              std::uint64_t seed,
                              std::vector<std::vector<double>>* diff_blocks) {
  if (reps < 2) throw std::invalid_argument("mc_risk: need reps >= 2");
  const std::int64_t n_blocks = (reps + kBlock - 1) / kBlock;
  const std::size_t n_est = plan.evals.size();

  std::vector<Accum> acc(n_est);
  for (auto& a : acc) {
    a.sums.resize(std::size_t(n_blocks));
    a.sumsqs.resize(std::size_t(n_blocks));
  }
  if (diff_blocks)
    diff_blocks->assign(2, std::vector<double>(std::size_t(n_blocks)));

  const int n_threads = int(std::min<std::int64_t>(engine_threads(), n_blocks));
  std::atomic<std::int64_t> next_block{0};

  auto worker = [&] {
    std::vector<double> scratch;
    std::vector<BlockSums> sums(n_est);
    std::vector<double> losses;
    for (;;) {
      const std::int64_t blk = next_block.fetch_add(1);
      if (blk >= n_blocks) break;
      const std::int64_t rep0 = blk * kBlock;
      const std::int64_t len = std::min(kBlock, reps - rep0);
      std::span<double> keep;
      if (diff_blocks) {
        losses.resize(n_est * std::size_t(len));
        keep = losses;
      }
      run_block(plan, seed, rep0, len, scratch, sums, keep);
      for (std::size_t e = 0; e < n_est; ++e) {
        acc[e].sums[std::size_t(blk)] = sums[e].sum;
        acc[e].sumsqs[std::size_t(blk)] = sums[e].sumsq;
      }
      if (diff_blocks) {
        // paired difference baseline - candidate, reduced within the block
        for (std::int64_t r = 0; r < len; ++r)
          losses[std::size_t(r)] -= losses[std::size_t(len + r)];
        (*diff_blocks)[0][std::size_t(blk)] =
            kernels::pairwise_sum(losses.data(), std::size_t(len));
        for (std::int64_t r = 0; r < len; ++r)
          losses[std::size_t(r)] *= losses[std::size_t(r)];
        (*diff_blocks)[1][std::size_t(blk)] =
            kernels::pairwise_sum(losses.data(), std::size_t(len));
      }
    }
  };

  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return acc;
}

}  // namespace

std::vector<RiskEstimate> mc_risk_many(std::span<const EstimatorId> estimators,
                                       const GridPoint& point, std::int64_t reps,
                                       std::uint64_t seed) {
  const EnginePlan plan = make_plan(estimators, point);
  const auto acc = run_engine(plan, reps, seed, nullptr);
  std::vector<RiskEstimate> out;
  out.reserve(estimators.size());
  for (std::size_t e = 0; e < estimators.size(); ++e)
    out.push_back(finish(estimators[e], acc[e], reps, seed));
  return out;
}

RiskEstimate mc_risk(EstimatorId estimator, const GridPoint& point,
                     std::int64_t reps, std::uint64_t seed) {
  return mc_risk_many(std::span(&estimator, 1), point, reps, seed)[0];
}

PairedRisk mc_risk_paired(EstimatorId baseline, EstimatorId candidate,
                          const GridPoint& point, std::int64_t reps,
                          std::uint64_t seed) {
  const EstimatorId ids[2] = {baseline, candidate};
  const EnginePlan plan = make_plan(ids, point);
  std::vector<std::vector<double>> diff_blocks;
  const auto acc = run_engine(plan, reps, seed, &diff_blocks);

  PairedRisk out;
  out.baseline = finish(baseline, acc[0], reps, seed);
  out.candidate = finish(candidate, acc[1], reps, seed);
  const double total =
      kernels::pairwise_sum(diff_blocks[0].data(), diff_blocks[0].size());
  const double total_sq =
      kernels::pairwise_sum(diff_blocks[1].data(), diff_blocks[1].size());
  out.diff_mean = total / double(reps);
  double var = (total_sq - total * total / double(reps)) / double(reps - 1);
  out.diff_se = std::sqrt(std::max(var, 0.0) / double(reps));
  return out;
}

PriResult pri(const RiskEstimate& baseline, const RiskEstimate& candidate) {
  if (!(baseline.mean_loss > 0.0))
    throw std::invalid_argument("pri: baseline risk must be positive");
  return PriResult{
      baseline.estimator, candidate.estimator,
      100.0 * (baseline.mean_loss - candidate.mean_loss) / baseline.mean_loss};
}

}  // namespace ordexp
