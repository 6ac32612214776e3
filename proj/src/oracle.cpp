#include "ordexp/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ordexp/estimators.hpp"

namespace ordexp {
namespace oracle {

double golden_section(const std::function<double(double)>& f, double a, double b,
                      double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  if (!std::isfinite(f1) || !std::isfinite(f2))
    throw std::domain_error("golden_section: objective not finite in bracket");
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return (a + b) / 2.0;
}

double minimize_affine_risk(int n_i, int m, double p) {
  if (!(double(n_i) > p))
    throw std::invalid_argument("minimize_affine_risk: requires n_i > p");
  double lo, hi;
  if (p > 0) {
    lo = -10.0;
    hi = std::min(1.0 / p - 1e-9, 10.0);
  } else {
    lo = std::max(1.0 / p + 1e-9, -10.0);
    hi = 10.0;
  }
  return golden_section(
      [&](double c) { return analytic_affine_risk(c, n_i, m, p); }, lo, hi);
}

double minimize_shift_risk(int n_i, double sigma_i, double p) {
  return golden_section(
      [&](double a) { return analytic_shift_risk(a, n_i, sigma_i, p); },
      -10.0 * sigma_i, 10.0 * sigma_i);
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = double(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, f - double(i) / n);
    d = std::max(d, double(i + 1) / n - f);
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::fabs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(double(n)); }

double ks_two_sample_critical_1pct(std::size_t n, std::size_t m) {
  return 1.628 * std::sqrt(double(n + m) / (double(n) * double(m)));
}

double erlang_cdf(int shape, double scale, double x) {
  if (shape < 1) throw std::invalid_argument("erlang_cdf: shape must be >= 1");
  if (!(scale > 0)) throw std::invalid_argument("erlang_cdf: scale must be > 0");
  const double y = x / scale;
  if (y <= 0.0) return 0.0;
  // P = 1 - e^{-y} sum_{j<shape} y^j / j!
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < shape; ++j) {
    term *= y / j;
    sum += term;
  }
  const double tail = std::exp(-y) * sum;
  return tail >= 1.0 ? 0.0 : 1.0 - tail;
}

double exp_cdf(double mu, double sigma, double x) {
  if (x <= mu) return 0.0;
  return -std::expm1(-(x - mu) / sigma);
}

namespace {

// Implicit-QL eigenvalues of a symmetric tridiagonal matrix, accumulating the
// first row of the eigenvector matrix (all that Golub-Welsch weights need).
void tridiag_eig_first_row(std::vector<double>& d, std::vector<double>& e,
                           std::vector<double>& q) {
  const int n = int(d.size());
  q.assign(std::size_t(n), 0.0);
  q[0] = 1.0;
  e.resize(std::size_t(n), 0.0);  // e[i] couples i and i+1; e[n-1] = 0

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 50)
          throw std::runtime_error("tridiag_eig: too many iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = q[i + 1];
          q[i + 1] = s * q[i] + c * f;
          q[i] = c * q[i] - s * f;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

void gauss_gamma(int n, int shape, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1 || shape < 1)
    throw std::invalid_argument("gauss_gamma: need n >= 1, shape >= 1");
  const double alpha = shape - 1;
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> d(un, 0.0), e(un, 0.0), q;
  for (int i = 0; i < n; ++i) {
    d[std::size_t(i)] = 2.0 * i + alpha + 1.0;
    if (i + 1 < n) e[std::size_t(i)] = std::sqrt((i + 1.0) * (i + 1.0 + alpha));
  }
  tridiag_eig_first_row(d, e, q);

  std::vector<std::size_t> order(un, 0);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  x.resize(std::size_t(n));
  w.resize(std::size_t(n));
  for (std::size_t i = 0; i < order.size(); ++i) {
    x[i] = d[order[i]];
    w[i] = q[order[i]] * q[order[i]];  // normalized: weights sum to 1
  }
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(std::size_t(n));
  w.resize(std::size_t(n));
  const int mhalf = (n + 1) / 2;
  for (int i = 0; i < mhalf; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    x[std::size_t(i)] = -z;
    x[std::size_t(n - 1 - i)] = z;
    w[std::size_t(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[std::size_t(n - 1 - i)] = w[std::size_t(i)];
  }
}

namespace {

enum Coord { kE1 = 0, kE2 = 1, kG1 = 2, kG2 = 3, kTP = 4 };

struct QuadDim {
  Coord coord;
  int shape;  // Gamma shape of the coordinate (1 = exponential)
  // Interior kink locations given the already-fixed outer coordinates.
  std::function<void(const std::array<double, 5>&, std::vector<double>&)> splits;
};

// log density of Gamma(shape) at x > 0
double gamma_logpdf(int shape, double x) {
  return (shape - 1) * std::log(x) - x - std::lgamma(double(shape));
}

class QuadEngine {
 public:
  explicit QuadEngine(int nodes) : nodes_(nodes) {
    gauss_legendre(nodes_, gl_x_, gl_w_);
    gauss_gamma(nodes_, 1, lag_x_, lag_w_);  // Gamma(1): plain Laguerre
  }

  double integrate(std::span<const QuadDim> dims,
                   const std::function<double(const std::array<double, 5>&)>& f) {
    std::array<double, 5> vals{};
    return recurse(dims, 0, vals, f);
  }

 private:
  const std::vector<double>& gamma_rule_x(int shape) {
    auto& entry = gamma_rules_[shape];
    if (entry.first.empty()) gauss_gamma(nodes_, shape, entry.first, entry.second);
    return entry.first;
  }
  const std::vector<double>& gamma_rule_w(int shape) {
    auto& entry = gamma_rules_[shape];
    if (entry.first.empty()) gauss_gamma(nodes_, shape, entry.first, entry.second);
    return entry.second;
  }

  double recurse(std::span<const QuadDim> dims, std::size_t idx,
                 std::array<double, 5>& vals,
                 const std::function<double(const std::array<double, 5>&)>& f) {
    if (idx == dims.size()) return f(vals);
    const QuadDim& dim = dims[idx];

    std::vector<double> splits;
    if (dim.splits) {
      dim.splits(vals, splits);
      std::sort(splits.begin(), splits.end());
      splits.erase(std::remove_if(splits.begin(), splits.end(),
                                  [](double s) { return !(s > 1e-12); }),
                   splits.end());
      splits.erase(std::unique(splits.begin(), splits.end(),
                               [](double a, double b) { return b - a < 1e-12; }),
                   splits.end());
    }

    double total = 0.0;
    if (splits.empty()) {
      const auto& xs = gamma_rule_x(dim.shape);
      const auto& ws = gamma_rule_w(dim.shape);
      for (int i = 0; i < nodes_; ++i) {
        vals[dim.coord] = xs[std::size_t(i)];
        total += ws[std::size_t(i)] * recurse(dims, idx + 1, vals, f);
      }
      return total;
    }

    // finite panels [0, s1], [s1, s2], ... with Gauss-Legendre
    double lo = 0.0;
    for (double s : splits) {
      const double half = (s - lo) / 2.0, mid = (s + lo) / 2.0;
      if (half > 0) {
        for (int i = 0; i < nodes_; ++i) {
          const double xv = mid + half * gl_x_[std::size_t(i)];
          if (!(xv > 0)) continue;
          vals[dim.coord] = xv;
          const double dens = std::exp(gamma_logpdf(dim.shape, xv));
          total += gl_w_[std::size_t(i)] * half * dens *
                   recurse(dims, idx + 1, vals, f);
        }
      }
      lo = s;
    }
    // tail [s_last, inf): substitute x = s + h with h ~ plain Laguerre
    for (int i = 0; i < nodes_; ++i) {
      const double xv = lo + lag_x_[std::size_t(i)];
      vals[dim.coord] = xv;
      // density(x) relative to the e^{-h} Laguerre weight:
      // x^{a-1} e^{-x} / Gamma(shape) * e^{h}
      const double factor =
          std::exp(gamma_logpdf(dim.shape, xv) + lag_x_[std::size_t(i)]);
      total += lag_w_[std::size_t(i)] * factor * recurse(dims, idx + 1, vals, f);
    }
    return total;
  }

  int nodes_;
  std::vector<double> gl_x_, gl_w_;
  std::vector<double> lag_x_, lag_w_;
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> gamma_rules_;
};

}  // namespace

double brute_force_risk(EstimatorId id, const GridPoint& point,
                        int quadrature_nodes) {
  const auto& sc = point.scenario;
  if (sc.k() != 2)
    throw std::invalid_argument("brute_force_risk: supports k = 2 only");
  const auto report = validate(sc, point.scheme, point.loss);
  if (!report.ok())
    throw std::invalid_argument("brute_force_risk: invalid grid point");
  if (!estimator_applies(id, sc.kind))
    throw std::invalid_argument("brute_force_risk: estimator/scenario mismatch");

  const double p = point.loss.p;
  const int tau = sc.target_index;
  const std::array<int, 2> eff = {scheme_shape(point.scheme, sc, 0) + 1,
                                  scheme_shape(point.scheme, sc, 1) + 1};
  const std::array<int, 2> shp = {eff[0] - 1, eff[1] - 1};
  const std::array<double, 2> rate = {scheme_min_rate_count(point.scheme, sc, 0),
                                      scheme_min_rate_count(point.scheme, sc, 1)};
  const std::array<double, 2> sig = {sc.populations[0].sigma,
                                     sc.populations[1].sigma};
  const std::array<double, 2> mu_rel = {
      0.0, sc.populations[1].mu - sc.populations[0].mu};
  const std::vector<int> eff_v = {eff[0], eff[1]};
  const std::vector<double> sig_v = {sig[0], sig[1]};
  const int eff_total = eff[0] + eff[1];

  // x observation from its standardized coordinate
  const auto x_of = [=](int i, double e) {
    return mu_rel[std::size_t(i)] + sig[std::size_t(i)] * (e / rate[std::size_t(i)]);
  };
  const Coord e_coord[2] = {kE1, kE2};
  const Coord g_coord[2] = {kG1, kG2};

  // e-coordinate of the point where x_i equals `value` (a kink image)
  const auto e_at = [=](int i, double value) {
    return (value - mu_rel[std::size_t(i)]) * rate[std::size_t(i)] /
           sig[std::size_t(i)];
  };

  std::vector<QuadDim> dims;
  std::function<double(const std::array<double, 5>&)> delta;

  const int oth = 1 - tau;
  switch (id.tag) {
    case Estimator::MLE:
      dims = {{e_coord[tau], 1, nullptr}};
      delta = [=](const std::array<double, 5>& v) {
        return x_of(tau, v[e_coord[tau]]);
      };
      break;

    case Estimator::BLEE: {
      const double alpha = est::blee_alpha0(eff[tau], sig[tau], p, id.variant);
      dims = {{e_coord[tau], 1, nullptr}};
      delta = [=](const std::array<double, 5>& v) {
        return x_of(tau, v[e_coord[tau]]) + alpha;
      };
      break;
    }

    case Estimator::RMLE:
    case Estimator::RMLEImproved: {
      double shift = 0.0;
      if (id.tag == Estimator::RMLEImproved)
        shift = est::known_scale_shift(tau, eff_v, sig_v, p);
      if (tau == 1) {
        dims = {{kE2, 1, nullptr}};
        delta = [=](const std::array<double, 5>& v) {
          return x_of(1, v[kE2]) + shift;
        };
      } else {
        dims = {{kE1, 1,
                 [=](const std::array<double, 5>&, std::vector<double>& s) {
                   s.push_back(e_at(0, mu_rel[1]));  // where the e2 kink leaves 0
                 }},
                {kE2, 1,
                 [=](const std::array<double, 5>& v, std::vector<double>& s) {
                   s.push_back(e_at(1, x_of(0, v[kE1])));
                 }}};
        delta = [=](const std::array<double, 5>& v) {
          return std::min(x_of(0, v[kE1]), x_of(1, v[kE2])) + shift;
        };
      }
      break;
    }

    case Estimator::BAEE: {
      if (sc.kind == ScenarioKind::LocEqualUnknownScale) {
        const double b = est::beta0(eff[tau], eff_total, 2, p);
        dims = {{e_coord[tau], 1, nullptr},
                {kTP, shp[0] + shp[1], nullptr}};
        delta = [=](const std::array<double, 5>& v) {
          return x_of(tau, v[e_coord[tau]]) + b * (sig[0] * v[kTP]);
        };
      } else {
        const double c = est::c0(eff[tau], p);
        dims = {{e_coord[tau], 1, nullptr}, {g_coord[tau], shp[tau], nullptr}};
        delta = [=](const std::array<double, 5>& v) {
          return x_of(tau, v[e_coord[tau]]) + c * (sig[tau] * v[g_coord[tau]]);
        };
      }
      break;
    }

    case Estimator::ImprovedOrderedScale: {
      const double c = est::c0(eff[tau], p);
      const double d = est::bound_multiplier(eff[tau], eff_total, p);
      const double w_star = c / d - 1.0;  // W ratio where the clip engages
      dims = {{e_coord[tau], 1, nullptr},
              {g_coord[tau], shp[tau], nullptr},
              {g_coord[oth], shp[oth],
               [=](const std::array<double, 5>& v, std::vector<double>& s) {
                 s.push_back(w_star * sig[tau] * v[g_coord[tau]] / sig[oth]);
               }}};
      delta = [=](const std::array<double, 5>& v) {
        SufficientStats st;
        st.x_min = {x_of(0, v[kE1]), x_of(1, v[kE2])};
        st.t = {sig[0] * v[kG1], sig[1] * v[kG2]};
        st.shape = {shp[0], shp[1]};
        return est::improved_ordered_scale(tau, st, eff_v, p);
      };
      break;
    }

    case Estimator::ImprovedKnownScale: {
      const double alpha = est::blee_alpha0(eff[tau], sig[tau], p, id.variant);
      const double g = est::known_scale_shift(tau, eff_v, sig_v, p);
      delta = [=](const std::array<double, 5>& v) {
        const std::vector<double> x = {x_of(0, v[kE1]), x_of(1, v[kE2])};
        return est::improved_known_scale(tau, x, eff_v, sig_v, p, id.variant);
      };
      if (tau == 0) {
        const double ystar = std::min(0.0, alpha - g);  // only live kink in Y2
        dims = {{kE1, 1,
                 [=](const std::array<double, 5>&, std::vector<double>& s) {
                   s.push_back(e_at(0, mu_rel[1] - ystar));
                 }},
                {kE2, 1,
                 [=](const std::array<double, 5>& v, std::vector<double>& s) {
                   s.push_back(e_at(1, x_of(0, v[kE1]) + ystar));
                 }}};
      } else {
        dims = {{kE2, 1,
                 [=](const std::array<double, 5>&, std::vector<double>& s) {
                   s.push_back(e_at(1, 0.0));  // x2 = mu_1: Y1 = 0 kink leaves 0
                   if (alpha < g) s.push_back(e_at(1, -(alpha - g)));
                 }},
                {kE1, 1,
                 [=](const std::array<double, 5>& v, std::vector<double>& s) {
                   const double x2 = x_of(1, v[kE2]);
                   s.push_back(e_at(0, x2));  // Y1 = 0
                   if (alpha < g) s.push_back(e_at(0, x2 + (alpha - g)));
                 }}};
      }
      break;
    }

    case Estimator::ImprovedEqualScale: {
      const double b = est::beta0(eff[tau], eff_total, 2, p);
      delta = [=](const std::array<double, 5>& v) {
        const std::vector<double> x = {x_of(0, v[kE1]), x_of(1, v[kE2])};
        return est::improved_equal_scale(tau, x, sig[0] * v[kTP], eff_v, p);
      };
      if (tau == 1) {
        dims = {{kE2, 1, nullptr}, {kTP, shp[0] + shp[1], nullptr}};
      } else {
        dims = {{kE1, 1,
                 [=](const std::array<double, 5>&, std::vector<double>& s) {
                   s.push_back(e_at(0, mu_rel[1]));
                 }},
                {kE2, 1,
                 [=](const std::array<double, 5>& v, std::vector<double>& s) {
                   s.push_back(e_at(1, x_of(0, v[kE1])));
                 }},
                {kTP, shp[0] + shp[1],
                 [=](const std::array<double, 5>& v, std::vector<double>& s) {
                   const double y2 = x_of(1, v[kE2]) - x_of(0, v[kE1]);
                   if (y2 < 0) s.push_back(y2 / (b * sig[0]));
                 }}};
      }
      break;
    }

    case Estimator::ImprovedUnequalScale: {
      const double kappa = est::c0(eff[tau], p);
      delta = [=](const std::array<double, 5>& v) {
        SufficientStats st;
        st.x_min = {x_of(0, v[kE1]), x_of(1, v[kE2])};
        st.t = {sig[0] * v[kG1], sig[1] * v[kG2]};
        st.shape = {shp[0], shp[1]};
        return est::improved_unequal_scale(tau, st, eff_v, p);
      };
      if (tau == 1) {
        dims = {{kE2, 1, nullptr}, {kG2, shp[1], nullptr}};
      } else {
        dims = {{kE1, 1,
                 [=](const std::array<double, 5>&, std::vector<double>& s) {
                   s.push_back(e_at(0, mu_rel[1]));
                 }},
                {kE2, 1,
                 [=](const std::array<double, 5>& v, std::vector<double>& s) {
                   s.push_back(e_at(1, x_of(0, v[kE1])));
                 }},
                {kG1, shp[0],
                 [=](const std::array<double, 5>& v, std::vector<double>& s) {
                   const double y2 = x_of(1, v[kE2]) - x_of(0, v[kE1]);
                   if (y2 < 0) s.push_back(y2 / (kappa * sig[0]));
                 }}};
      }
      break;
    }
  }

  const double mu_target = mu_rel[std::size_t(tau)];
  const double sigma_target = sig[std::size_t(tau)];
  QuadEngine engine(quadrature_nodes);
  return engine.integrate(dims, [&](const std::array<double, 5>& v) {
    return linex_loss(delta(v), mu_target, sigma_target, p);
  });
}

}  // namespace oracle
}  // namespace ordexp
