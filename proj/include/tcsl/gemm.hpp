#pragma once

#include "tcsl/matrix.hpp"

namespace tcsl {

// Reference dense GEMM: C[m,n] = sum_k f32(A[m,k]) * f32(B[k,n]).
//
// Accumulation contract (the sparse engine reproduces it bit for bit):
//   - each product is a single binary32 multiply of the widened operands,
//   - the running sum is a binary32 add per product, no FMA, no reordering,
//   - k runs over blocks of k_tb ascending, and ascending inside each block
//     (equivalent to plain ascending k over the zero-padded range),
//   - A is zero-padded so M and K reach multiples of m_tb / k_tb, B is
//     zero-padded to the same K; padded products participate in the sum.
//
// Throws Errc::dimension_mismatch when A.cols() != B.rows().
FloatMatrix dense_gemm_ref(const HalfMatrix& a, const HalfMatrix& b, const TileConfig& cfg = {});

}  // namespace tcsl
