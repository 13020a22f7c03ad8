#pragma once

#include <cstdint>

namespace tcsl {

// Raw IEEE-754 binary16 bit pattern. The codec works on bit patterns so that
// equality, zero handling and file layout stay exact; arithmetic happens in
// binary32 after widening.
using HalfBits = std::uint16_t;

inline constexpr HalfBits kHalfPosZero = 0x0000;
inline constexpr HalfBits kHalfNegZero = 0x8000;
inline constexpr HalfBits kHalfOne = 0x3C00;
inline constexpr HalfBits kHalfPosInf = 0x7C00;
inline constexpr HalfBits kHalfNegInf = 0xFC00;
inline constexpr HalfBits kHalfQuietNan = 0x7E00;  // canonical quiet NaN
inline constexpr float kHalfMaxFinite = 65504.0f;

constexpr bool f16_is_zero(HalfBits b) { return (b & 0x7FFFu) == 0; }
constexpr bool f16_is_nan(HalfBits b) { return (b & 0x7C00u) == 0x7C00u && (b & 0x03FFu) != 0; }
constexpr bool f16_is_inf(HalfBits b) { return (b & 0x7FFFu) == 0x7C00u; }
constexpr bool f16_is_finite(HalfBits b) { return (b & 0x7C00u) != 0x7C00u; }

// -0.0 compares equal to +0.0 but has a different bit pattern; the codec
// stores zeros only as +0.0 so encoded artifacts are canonical.
constexpr HalfBits f16_normalize_zero(HalfBits b) { return f16_is_zero(b) ? kHalfPosZero : b; }

// binary32 -> binary16, round-to-nearest-even. Magnitudes that round above
// 65504 become inf; every NaN maps to the canonical quiet NaN.
HalfBits f16_from_f32(float v);

// binary16 -> binary32. Exact: every binary16 value (including subnormals)
// is representable in binary32.
float f32_from_f16(HalfBits b);

}  // namespace tcsl
