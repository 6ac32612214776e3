#include "ordexp/kernels.hpp"

#include "ordexp/philox.hpp"
#include "kernel_math.hpp"

namespace ordexp::kernels {

namespace {

void uniform_pair_columns_scalar(std::uint64_t seed, std::uint64_t stream0,
                                 std::size_t count, std::uint64_t block,
                                 double* col_even, double* col_odd) {
  for (std::size_t i = 0; i < count; ++i) {
    const auto pair = Philox4x32::block64(seed, stream0 + i, block);
    col_even[i] = bits_to_unit_double(pair[0]);
    col_odd[i] = bits_to_unit_double(pair[1]);
  }
}

void std_exponential_scalar(const double* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std_exponential_core<ScalarBackend>(u[i]);
}

void linex_terms_scalar(const double* z, double p, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = linex_core<ScalarBackend>(z[i], p);
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar", uniform_pair_columns_scalar,
                       std_exponential_scalar, linex_terms_scalar};
  return ops;
}

double std_exponential_one(double u) {
  return std_exponential_core<ScalarBackend>(u);
}
double exp_one(double x) { return exp_core<ScalarBackend>(x); }
double log_one(double x) { return log_core<ScalarBackend>(x); }

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace ordexp::kernels
