#pragma once

#include <string>

#include "tcsl/matrix.hpp"

namespace tcsl {

// FLDM dense-matrix container, little-endian:
//   "FLDM" | u16 version=1 | u16 dtype (0=f16, 1=f32) | u32 rows | u32 cols |
//   row-major payload (2 or 4 bytes per element).
enum class FldmDtype : std::uint16_t { f16 = 0, f32 = 1 };

struct FldmFile {
  FldmDtype dtype = FldmDtype::f16;
  HalfMatrix f16;   // populated iff dtype == f16
  FloatMatrix f32;  // populated iff dtype == f32
};

void save_fldm(const std::string& path, const HalfMatrix& m);
void save_fldm(const std::string& path, const FloatMatrix& m);

FldmFile load_fldm(const std::string& path);

// Convenience for ops that require an f16 operand; raises bad_dtype on f32.
HalfMatrix load_fldm_f16(const std::string& path);

}  // namespace tcsl
