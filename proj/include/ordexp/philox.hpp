#pragma once

#include <array>
#include <cstdint>

namespace ordexp {

// Philox4x32-10 counter-based generator (Salmon et al. 2011).
//
// Every variate in the project is addressed as (seed, stream, index): the
// 64-bit stream id selects a replication, the index selects a double within
// it. There is no mutable generator state, so parallel replications and
// repeated evaluation of the same cell read identical numbers by
// construction.
struct Philox4x32 {
  static constexpr uint32_t kMul0 = 0xD2511F53u;
  static constexpr uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr uint32_t kWey0 = 0x9E3779B9u;
  static constexpr uint32_t kWey1 = 0xBB67AE85u;

  static std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr,
                                       std::array<uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
      const uint64_t p0 = uint64_t(kMul0) * ctr[0];
      const uint64_t p1 = uint64_t(kMul1) * ctr[2];
      ctr = {uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], uint32_t(p1),
             uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], uint32_t(p0)};
      key[0] += kWey0;
      key[1] += kWey1;
    }
    return ctr;
  }

  // 2x64 random bits for block `ctr64` of stream `stream` under `seed`.
  static std::array<uint64_t, 2> block64(uint64_t seed, uint64_t stream,
                                         uint64_t ctr64) {
    const auto x = block({uint32_t(ctr64), uint32_t(ctr64 >> 32),
                          uint32_t(stream), uint32_t(stream >> 32)},
                         {uint32_t(seed), uint32_t(seed >> 32)});
    return {uint64_t(x[0]) | (uint64_t(x[1]) << 32),
            uint64_t(x[2]) | (uint64_t(x[3]) << 32)};
  }
};

// Maps 64 random bits to the open interval (0,1): 2^52 equally spaced cell
// midpoints, so 0 and 1 are never produced and the value is exact in double.
inline double bits_to_unit_double(uint64_t r) {
  return (double(r >> 12) + 0.5) * 0x1p-52;
}

// Uniform double with flat index `idx` (two per Philox block).
inline double philox_uniform(uint64_t seed, uint64_t stream, uint64_t idx) {
  const auto pair = Philox4x32::block64(seed, stream, idx >> 1);
  return bits_to_unit_double(pair[idx & 1]);
}

}  // namespace ordexp
