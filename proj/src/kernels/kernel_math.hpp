#pragma once

// Shared exp/log cores, written once against a backend of IEEE primitives and
// instantiated for plain double and for __m256d.  Every operation is a single
// correctly-rounded IEEE-754 op in both backends and the code is branch-free,
// so the two instantiations produce identical bits lane by lane.  Compile with
// -ffp-contract=off; fused multiply-add is only ever introduced through the
// explicit fma primitive.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace ordexp::kernels {

struct ScalarBackend {
  using F = double;
  using U = std::uint64_t;
  using M = bool;

  static F fc(double v) { return v; }
  static U uc(std::uint64_t v) { return v; }
  static F add(F a, F b) { return a + b; }
  static F sub(F a, F b) { return a - b; }
  static F mul(F a, F b) { return a * b; }
  static F div(F a, F b) { return a / b; }
  static F fma(F a, F b, F c) { return std::fma(a, b, c); }
  static F rint(F a) { return std::nearbyint(a); }
  static U asu(F a) { return std::bit_cast<std::uint64_t>(a); }
  static F asf(U a) { return std::bit_cast<double>(a); }
  static U shr(U a, int n) { return a >> n; }
  static U shl(U a, int n) { return a << n; }
  static U uand(U a, U b) { return a & b; }
  static U uor(U a, U b) { return a | b; }
  static M lt(F a, F b) { return a < b; }
  static M le(F a, F b) { return a <= b; }
  static M gt(F a, F b) { return a > b; }
  static M ge(F a, F b) { return a >= b; }
  static M unord(F a, F b) { return std::isnan(a) || std::isnan(b); }
  static F sel(M m, F a, F b) { return m ? a : b; }
};

namespace detail {

// exp coefficients: Taylor 1/j!, j = 2..13, enough for |r| <= (ln 2)/2.
inline constexpr double kExpC[] = {
    0.5,                        // 1/2!
    1.6666666666666666667e-1,   // 1/3!
    4.1666666666666666667e-2,
    8.3333333333333333333e-3,
    1.3888888888888888889e-3,
    1.9841269841269841270e-4,
    2.4801587301587301587e-5,
    2.7557319223985890653e-6,
    2.7557319223985890653e-7,
    2.5052108385441718775e-8,
    2.0876756987868098979e-9,
    1.6059043836821614599e-10,  // 1/13!
};

// log(1+f) rational-free polynomial, fdlibm arrangement.
inline constexpr double kLg1 = 6.666666666666735130e-01;
inline constexpr double kLg2 = 3.999999999940941908e-01;
inline constexpr double kLg3 = 2.857142874366239149e-01;
inline constexpr double kLg4 = 2.222219843214978396e-01;
inline constexpr double kLg5 = 1.818357216161805012e-01;
inline constexpr double kLg6 = 1.531383769920937332e-01;
inline constexpr double kLg7 = 1.479819860511658591e-01;

inline constexpr double kLog2E = 1.44269504088896338700e+00;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;

inline constexpr double kExpOverflow = 7.09782712893383973096e+02;
// log(DBL_MIN): below this the result would be subnormal; flush to 0.
inline constexpr double kExpFlush = -7.08396418532264106224e+02;

inline constexpr double kSqrt2 = 1.41421356237309514547e+00;

}  // namespace detail

// 2^v for an integral-valued v in [-1023, 1023].
template <class B>
typename B::F exp2_integral(typename B::F v) {
  using U = typename B::U;
  const typename B::F biased = B::add(v, B::fc(1023.0 + 0x1p52));
  const U bits = B::shl(B::uand(B::asu(biased), B::uc(0x7FF)), 52);
  return B::asf(bits);
}

// exp(x) with results below DBL_MIN flushed to zero; +-inf/NaN handled.
template <class B>
typename B::F exp_core(typename B::F x) {
  using F = typename B::F;
  using namespace detail;

  const F k = B::rint(B::mul(x, B::fc(kLog2E)));
  F r = B::fma(k, B::fc(-kLn2Hi), x);
  r = B::fma(k, B::fc(-kLn2Lo), r);

  F p = B::fc(kExpC[11]);
  for (int j = 10; j >= 0; --j) p = B::fma(p, r, B::fc(kExpC[j]));
  F y = B::fma(B::mul(r, r), p, r);
  y = B::add(y, B::fc(1.0));

  // 2^k in two exact halves so k = +-1024 stays in range.
  const F ka = B::rint(B::mul(k, B::fc(0.5)));
  const F kb = B::sub(k, ka);
  y = B::mul(B::mul(y, exp2_integral<B>(ka)), exp2_integral<B>(kb));

  y = B::sel(B::gt(x, B::fc(kExpOverflow)),
             B::fc(std::numeric_limits<double>::infinity()), y);
  y = B::sel(B::lt(x, B::fc(kExpFlush)), B::fc(0.0), y);
  y = B::sel(B::unord(x, x), x, y);
  return y;
}

// log(x) for x > 0 (any normal or subnormal); -inf at 0, NaN below, inf at inf.
template <class B>
typename B::F log_core(typename B::F x) {
  using F = typename B::F;
  using U = typename B::U;
  using M = typename B::M;
  using namespace detail;

  const M sub_norm = B::lt(x, B::fc(2.2250738585072014e-308));
  const F xs = B::sel(sub_norm, B::mul(x, B::fc(0x1p54)), x);
  const F e_adj = B::sel(sub_norm, B::fc(-54.0), B::fc(0.0));

  const U bits = B::asu(xs);
  const F eb = B::sub(B::asf(B::uor(B::shr(bits, 52), B::uc(0x4330000000000000ull))),
                      B::fc(0x1p52));
  F m = B::asf(B::uor(B::uand(bits, B::uc(0x000FFFFFFFFFFFFFull)),
                      B::uc(0x3FF0000000000000ull)));
  const M big = B::ge(m, B::fc(kSqrt2));
  m = B::sel(big, B::mul(m, B::fc(0.5)), m);
  F k = B::add(B::sub(eb, B::fc(1023.0)), B::sel(big, B::fc(1.0), B::fc(0.0)));
  k = B::add(k, e_adj);

  const F f = B::sub(m, B::fc(1.0));
  const F s = B::div(f, B::add(f, B::fc(2.0)));
  const F z = B::mul(s, s);
  const F w = B::mul(z, z);
  const F t1 = B::mul(
      w, B::fma(w, B::fma(w, B::fc(kLg6), B::fc(kLg4)), B::fc(kLg2)));
  const F t2 = B::mul(
      z, B::fma(w, B::fma(w, B::fma(w, B::fc(kLg7), B::fc(kLg5)), B::fc(kLg3)),
                B::fc(kLg1)));
  const F rr = B::add(t2, t1);
  const F hfsq = B::mul(B::fc(0.5), B::mul(f, f));

  // k*ln2hi - ((hfsq - (s*(hfsq+R) + k*ln2lo)) - f)
  const F dk_lo = B::mul(k, B::fc(kLn2Lo));
  const F inner = B::fma(s, B::add(hfsq, rr), dk_lo);
  F val = B::sub(B::mul(k, B::fc(kLn2Hi)), B::sub(B::sub(hfsq, inner), f));

  const F inf = B::fc(std::numeric_limits<double>::infinity());
  const F nan = B::fc(std::numeric_limits<double>::quiet_NaN());
  val = B::sel(B::ge(x, inf), inf, val);
  val = B::sel(B::le(x, B::fc(0.0)),
               B::sel(B::lt(x, B::fc(0.0)), nan, B::sub(B::fc(0.0), inf)), val);
  val = B::sel(B::unord(x, x), x, val);
  return val;
}

// -log(1 - u): standard exponential from a uniform in (0,1).
template <class B>
typename B::F std_exponential_core(typename B::F u) {
  const typename B::F one_minus = B::sub(B::fc(1.0), u);
  return B::sub(B::fc(0.0), log_core<B>(one_minus));
}

// max(exp(p z) - p z - 1, 0)
template <class B>
typename B::F linex_core(typename B::F z, typename B::F p) {
  const typename B::F t = B::mul(p, z);
  const typename B::F y = B::sub(B::sub(exp_core<B>(t), t), B::fc(1.0));
  return B::sel(B::lt(y, B::fc(0.0)), B::fc(0.0), y);
}

}  // namespace ordexp::kernels
