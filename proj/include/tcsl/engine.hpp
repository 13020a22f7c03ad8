#pragma once

#include <vector>

#include "tcsl/tcsl_format.hpp"

namespace tcsl {

// Dense m_tb x k_tb row-major reconstruction of one tile: zero-fill, then
// scatter each entry's value to its location. This is the load-as-sparse /
// compute-as-dense pivot: everything downstream of here is dense math.
std::vector<HalfBits> extract_tile(const TcslMatrix& t, std::uint32_t tile);

// Sparse x dense GEMM over extracted tiles. Bit-exact against
// dense_gemm_ref(decode(a), b): same widening, same product/add ops, same
// k order (tiles ascending, rows ascending inside a tile).
// Throws Errc::dimension_mismatch when a.k != b.rows().
FloatMatrix spmm(const TcslMatrix& a, const HalfMatrix& b);

// Sparse-encoding registers each thread must hold: max over tiles of
// ceil(tile entries / threads_per_block). Above kRegPressureWarnLimit the
// real kernel would spill; callers surface a warning.
int reg_pressure(const TcslMatrix& t);

inline constexpr int kRegPressureWarnLimit = 64;

}  // namespace tcsl
