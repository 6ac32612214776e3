#pragma once

#include <cstddef>
#include <cstdint>

namespace ordexp::kernels {

// Batch primitives behind the Monte Carlo engine.  Two implementations exist:
// a scalar reference and an AVX2 one, both instantiated from the same
// branch-free algorithm, so their outputs are identical bit for bit and the
// runtime choice never changes a result.  Select with ORDEXP_SIMD=scalar|avx2
// (default: auto-detect).
struct Ops {
  const char* name;

  // col_even[i], col_odd[i] = the two uniforms of Philox block `block` of
  // stream `stream0 + i`.
  void (*uniform_pair_columns)(std::uint64_t seed, std::uint64_t stream0,
                               std::size_t count, std::uint64_t block,
                               double* col_even, double* col_odd);

  // out[i] = -log(1 - u[i]); standard exponential by inversion.
  void (*std_exponential)(const double* u, double* out, std::size_t n);

  // out[i] = max(exp(p z[i]) - p z[i] - 1, 0).  exp flushes results below
  // DBL_MIN to zero, which is harmless to the loss.
  void (*linex_terms)(const double* z, double p, double* out, std::size_t n);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when not compiled in or not supported
const Ops& active();

// One-off scalar evaluations through the same code path as the batch
// kernels; sampling uses these so single draws and engine draws agree
// exactly.
double std_exponential_one(double u);
double exp_one(double x);
double log_one(double x);

// Deterministic sum: fixed pairwise tree over the index range, independent of
// how the caller partitioned work.
double pairwise_sum(const double* v, std::size_t n);

}  // namespace ordexp::kernels
