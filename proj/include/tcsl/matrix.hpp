#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "tcsl/errors.hpp"
#include "tcsl/half.hpp"

namespace tcsl {

template <class Scalar>
using RowMajorMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using HalfMatrix = RowMajorMatrix<Eigen::half>;
using FloatMatrix = RowMajorMatrix<float>;

inline HalfBits bits_of(Eigen::half h) { return Eigen::numext::bit_cast<HalfBits>(h); }
inline Eigen::half half_from_bits(HalfBits b) { return Eigen::numext::bit_cast<Eigen::half>(b); }

// Thread-block tiling parameters. One sparse tile is m_tb x k_tb elements;
// locations inside a tile are linearized as x * k_tb + y and must fit 16 bits.
struct TileConfig {
  int m_tb = 128;
  int k_tb = 64;
  int threads_per_block = 128;

  int tile_elems() const { return m_tb * k_tb; }
  void validate() const;  // throws Errc::invalid_argument
};

// Output tile width as a function of the GEMM N dimension.
int tile_n_for(int n);

inline int div_up(std::int64_t a, std::int64_t b) { return static_cast<int>((a + b - 1) / b); }

// Deterministic sparse matrix: exactly round(beta * rows * cols) entries are
// +0.0, positions chosen uniformly without replacement from the seed; the
// rest are nonzero values exactly representable in binary16 (magnitudes in
// [0.25, 7.996], uniform sign/exponent/mantissa), so no draw ever rounds to
// zero or clamps.
HalfMatrix gen_random_sparse(int rows, int cols, double beta, std::uint64_t seed);

// Magnitude pruning: the floor(beta * rows * cols) smallest-|v| elements
// become +0.0. Ties keep the element with the smaller row-major index.
// Idempotent at the same beta, bit for bit.
HalfMatrix prune_magnitude(const HalfMatrix& a, double beta);

// Fraction of numerically zero elements (either zero sign counts).
double sparsity(const HalfMatrix& a);

// Maps every -0.0 to +0.0; all other bit patterns pass through.
HalfMatrix normalize_zeros(HalfMatrix a);

}  // namespace tcsl
