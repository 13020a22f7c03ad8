#include <Eigen/Core>
#include <bit>
#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "oracle_half.hpp"
#include "tcsl/half.hpp"

using tcsl::f16_from_f32;
using tcsl::f32_from_f16;

namespace {

float bits32(std::uint32_t u) { return std::bit_cast<float>(u); }

}  // namespace

TEST_CASE("half spot values") {
  CHECK(f16_from_f32(0.0f) == 0x0000);
  CHECK(f16_from_f32(-0.0f) == 0x8000);
  CHECK(f16_from_f32(1.0f) == 0x3C00);
  CHECK(f16_from_f32(-1.0f) == 0xBC00);
  CHECK(f16_from_f32(2.0f) == 0x4000);
  CHECK(f16_from_f32(0.5f) == 0x3800);
  CHECK(f16_from_f32(65504.0f) == 0x7BFF);
  CHECK(f16_from_f32(std::ldexp(1.0f, -24)) == 0x0001);
  CHECK(f16_from_f32(std::ldexp(1.0f, -14)) == 0x0400);
  CHECK(f16_from_f32(std::numeric_limits<float>::infinity()) == 0x7C00);
  CHECK(f16_from_f32(-std::numeric_limits<float>::infinity()) == 0xFC00);

  CHECK(f32_from_f16(0x3C00) == 1.0f);
  CHECK(f32_from_f16(0x4000) == 2.0f);
  CHECK(f32_from_f16(0x7BFF) == 65504.0f);
  CHECK(f32_from_f16(0x0001) == std::ldexp(1.0f, -24));
  CHECK(std::bit_cast<std::uint32_t>(f32_from_f16(0x8000)) == 0x80000000u);
}

TEST_CASE("half NaN handling is canonical") {
  CHECK(f16_from_f32(std::numeric_limits<float>::quiet_NaN()) == 0x7E00);
  CHECK(f16_from_f32(-std::numeric_limits<float>::quiet_NaN()) == 0x7E00);
  CHECK(f16_from_f32(bits32(0x7F800001u)) == 0x7E00);  // signaling payload
  CHECK(f16_from_f32(bits32(0xFFC12345u)) == 0x7E00);
  CHECK(std::isnan(f32_from_f16(0x7C01)));
  CHECK(std::isnan(f32_from_f16(0xFE00)));
  CHECK(std::isnan(f32_from_f16(0x7FFF)));
}

TEST_CASE("half overflow and tie boundaries") {
  // Halfway between 65504 (max finite) and the next binade step is 65520;
  // the tie rounds to even, which lands on infinity.
  CHECK(f16_from_f32(65520.0f) == 0x7C00);
  CHECK(f16_from_f32(std::nextafterf(65520.0f, 0.0f)) == 0x7BFF);
  CHECK(f16_from_f32(std::nextafterf(65520.0f, 1e30f)) == 0x7C00);
  CHECK(f16_from_f32(-65520.0f) == 0xFC00);
  CHECK(f16_from_f32(1e30f) == 0x7C00);

  // Halfway between 0 and the smallest subnormal rounds to even zero.
  const float tiny_half = std::ldexp(1.0f, -25);
  CHECK(f16_from_f32(tiny_half) == 0x0000);
  CHECK(f16_from_f32(-tiny_half) == 0x8000);
  CHECK(f16_from_f32(std::nextafterf(tiny_half, 1.0f)) == 0x0001);
  // 1.5 units of the subnormal lsb ties up to the even quantum 2.
  CHECK(f16_from_f32(std::ldexp(3.0f, -25)) == 0x0002);
  CHECK(f16_from_f32(std::ldexp(1.0f, -26)) == 0x0000);
}

TEST_CASE("every half value decodes exactly and round-trips") {
  int bad = 0;
  std::uint32_t first = 0;
  for (std::uint32_t h = 0; h <= 0xFFFF; ++h) {
    const auto hb = static_cast<tcsl::HalfBits>(h);
    const float got = f32_from_f16(hb);
    const float want = oracle::f32_from_f16(hb);
    bool ok;
    if (tcsl::f16_is_nan(hb)) {
      ok = std::isnan(got);
    } else {
      ok = std::bit_cast<std::uint32_t>(got) == std::bit_cast<std::uint32_t>(want);
      // A representable value must come back unchanged (NaNs canonicalize).
      ok = ok && f16_from_f32(got) == hb;
    }
    if (!ok && !bad++) first = h;
  }
  CAPTURE(first);
  CHECK(bad == 0);
}

TEST_CASE("narrowing matches the arithmetic oracle on a wide probe") {
  int bad = 0;
  std::uint32_t first = 0;
  // Stride keeps the sweep cheap while visiting every exponent, both signs,
  // and a dense spread of mantissas.
  for (std::uint64_t u = 0; u <= 0xFFFFFFFFull; u += 997) {
    const float f = bits32(static_cast<std::uint32_t>(u));
    if (f16_from_f32(f) != oracle::f16_from_f32(f) && !bad++)
      first = static_cast<std::uint32_t>(u);
  }
  CAPTURE(first);
  CHECK(bad == 0);
}

TEST_CASE("narrowing rounds to nearest even at every representable midpoint") {
  int bad = 0;
  std::uint32_t first = 0;
  for (std::uint32_t h = 0; h + 1 <= 0x7BFF; ++h) {  // adjacent positive finite pairs
    const double lo = f32_from_f16(static_cast<tcsl::HalfBits>(h));
    const double hi = f32_from_f16(static_cast<tcsl::HalfBits>(h + 1));
    const float mid = static_cast<float>((lo + hi) / 2.0);  // exact in f32
    const std::uint16_t even = (h & 1) ? static_cast<std::uint16_t>(h + 1)
                                       : static_cast<std::uint16_t>(h);
    bool ok = f16_from_f32(mid) == even;
    ok = ok && f16_from_f32(std::nextafterf(mid, -1e30f)) == h;
    ok = ok && f16_from_f32(std::nextafterf(mid, 1e30f)) == h + 1;
    // Mirror to the negative side.
    const std::uint16_t sh = static_cast<std::uint16_t>(h | 0x8000);
    ok = ok && f16_from_f32(-mid) == (even | 0x8000);
    ok = ok && f16_from_f32(std::nextafterf(-mid, 1e30f)) == sh;
    if (!ok && !bad++) first = h;
  }
  CAPTURE(first);
  CHECK(bad == 0);
}

TEST_CASE("half conversions agree with Eigen") {
  int bad = 0;
  std::uint32_t first = 0;
  for (std::uint32_t h = 0; h <= 0xFFFF; ++h) {
    const auto hb = static_cast<tcsl::HalfBits>(h);
    const float mine = f32_from_f16(hb);
    const float eig = static_cast<float>(Eigen::numext::bit_cast<Eigen::half>(hb));
    const bool ok = tcsl::f16_is_nan(hb)
                        ? (std::isnan(mine) && std::isnan(eig))
                        : std::bit_cast<std::uint32_t>(mine) == std::bit_cast<std::uint32_t>(eig);
    if (!ok && !bad++) first = h;
  }
  CAPTURE(first);
  CHECK(bad == 0);

  bad = 0;
  for (std::uint64_t u = 0; u <= 0xFFFFFFFFull; u += 2503) {
    const float f = bits32(static_cast<std::uint32_t>(u));
    const std::uint16_t mine = f16_from_f32(f);
    const std::uint16_t eig = Eigen::numext::bit_cast<std::uint16_t>(Eigen::half(f));
    const bool ok = std::isnan(f) ? (mine == 0x7E00 && (eig & 0x7C00) == 0x7C00 && (eig & 0x3FF))
                                  : mine == eig;
    if (!ok && !bad++) first = static_cast<std::uint32_t>(u);
  }
  CAPTURE(first);
  CHECK(bad == 0);
}

TEST_CASE("half classification helpers") {
  CHECK(tcsl::f16_is_zero(0x0000));
  CHECK(tcsl::f16_is_zero(0x8000));
  CHECK(!tcsl::f16_is_zero(0x0001));
  CHECK(tcsl::f16_is_inf(0x7C00));
  CHECK(tcsl::f16_is_inf(0xFC00));
  CHECK(!tcsl::f16_is_inf(0x7E00));
  CHECK(tcsl::f16_is_nan(0x7E00));
  CHECK(!tcsl::f16_is_nan(0x7C00));
  CHECK(tcsl::f16_is_finite(0x7BFF));
  CHECK(!tcsl::f16_is_finite(0x7C00));
  CHECK(tcsl::f16_normalize_zero(0x8000) == 0x0000);
  CHECK(tcsl::f16_normalize_zero(0x8001) == 0x8001);
}
