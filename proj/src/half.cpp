#include "tcsl/half.hpp"

#include <bit>
#include <cstdint>

namespace tcsl {

static_assert(std::endian::native == std::endian::little, "file formats assume little-endian");

HalfBits f16_from_f32(float v) {
  const std::uint32_t f = std::bit_cast<std::uint32_t>(v);
  const std::uint32_t sign = (f >> 16) & 0x8000u;
  const std::uint32_t abs = f & 0x7FFFFFFFu;

  if (abs > 0x7F800000u) return kHalfQuietNan;          // any NaN, payload dropped
  if (abs >= 0x47800000u) return HalfBits(sign | 0x7C00u);  // |v| >= 65536 or inf

  if (abs >= 0x38800000u) {
    // Normal result. Rebias the exponent, then round the low 13 mantissa
    // bits to nearest-even; a carry rolls cleanly into the exponent and,
    // for |v| >= 65520, on to infinity.
    std::uint32_t h = (abs - 0x38000000u) >> 13;
    const std::uint32_t rem = (abs - 0x38000000u) & 0x1FFFu;
    h += (rem > 0x1000u) || (rem == 0x1000u && (h & 1u));
    return HalfBits(sign | h);
  }

  // Subnormal or zero result: the value in units of 2^-24 (the subnormal
  // ulp), rounded to nearest-even. A carry to 1024 lands on 2^-14, the
  // smallest normal, which is exactly the exponent-field increment.
  const int exp = static_cast<int>(abs >> 23);
  const int shift = 126 - exp;  // sig * 2^(exp-126) is the value in ulps
  if (abs == 0 || shift > 24) return HalfBits(sign);
  const std::uint32_t sig = 0x800000u | (abs & 0x7FFFFFu);
  std::uint32_t q = sig >> shift;
  const std::uint32_t rem = sig & ((1u << shift) - 1u);
  const std::uint32_t half = 1u << (shift - 1);
  q += (rem > half) || (rem == half && (q & 1u));
  return HalfBits(sign | q);
}

float f32_from_f16(HalfBits b) {
  const std::uint32_t sign = static_cast<std::uint32_t>(b & 0x8000u) << 16;
  const std::uint32_t exp = (b >> 10) & 0x1Fu;
  std::uint32_t man = b & 0x3FFu;
  std::uint32_t out;

  if (exp == 0) {
    if (man == 0) {
      out = sign;
    } else {
      // Subnormal: man * 2^-24. Shift the leading 1 into the implicit slot.
      int e32 = 113;  // exponent field once man reaches 1.xxx * 2^-14
      while (!(man & 0x400u)) {
        man <<= 1;
        --e32;
      }
      out = sign | (static_cast<std::uint32_t>(e32) << 23) | ((man & 0x3FFu) << 13);
    }
  } else if (exp == 0x1Fu) {
    out = sign | 0x7F800000u | (man << 13);  // inf / NaN, payload widened
  } else {
    out = sign | ((exp + 112u) << 23) | (man << 13);
  }
  return std::bit_cast<float>(out);
}

}  // namespace tcsl
