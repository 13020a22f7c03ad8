#include "tcsl/gemm.hpp"

#include <vector>

namespace tcsl {

FloatMatrix dense_gemm_ref(const HalfMatrix& a, const HalfMatrix& b, const TileConfig& cfg) {
  cfg.validate();
  if (a.rows() <= 0 || a.cols() <= 0 || b.cols() <= 0)
    raise(Errc::invalid_argument, "operands must be non-empty");
  if (a.cols() != b.rows())
    raise(Errc::dimension_mismatch, "A is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                        ", B has " + std::to_string(b.rows()) + " rows");

  const int m = static_cast<int>(a.rows());
  const int k = static_cast<int>(a.cols());
  const int n = static_cast<int>(b.cols());
  const int k_pad = div_up(k, cfg.k_tb) * cfg.k_tb;

  // Widen both operands once, zero-padding K; products against the padding
  // are +0 * +0 and still take part in the accumulation.
  std::vector<float> bf(static_cast<std::size_t>(k_pad) * n, 0.0f);
  for (int kk = 0; kk < k; ++kk)
    for (int j = 0; j < n; ++j)
      bf[static_cast<std::size_t>(kk) * n + j] = f32_from_f16(bits_of(b(kk, j)));

  FloatMatrix c(m, n);
  std::vector<float> af(static_cast<std::size_t>(k_pad), 0.0f);
  std::vector<float> acc(static_cast<std::size_t>(n));
  for (int i = 0; i < m; ++i) {
    for (int kk = 0; kk < k; ++kk) af[static_cast<std::size_t>(kk)] = f32_from_f16(bits_of(a(i, kk)));
    // One binary32 multiply and one binary32 add per (k, j); for every
    // output element the k order is plain ascending over the padded range,
    // which is identical to ascending k_tb blocks with ascending k inside.
    for (int j = 0; j < n; ++j) acc[static_cast<std::size_t>(j)] = 0.0f;
    for (int kk = 0; kk < k_pad; ++kk) {
      const float av = af[static_cast<std::size_t>(kk)];
      const float* brow = &bf[static_cast<std::size_t>(kk) * n];
      for (int j = 0; j < n; ++j) acc[static_cast<std::size_t>(j)] += av * brow[j];
    }
    for (int j = 0; j < n; ++j) c(i, j) = acc[static_cast<std::size_t>(j)];
  }
  return c;
}

}  // namespace tcsl
