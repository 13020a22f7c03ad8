#pragma once

#include <string>

#include "tcsl/matrix.hpp"
#include "tcsl/pipeline.hpp"

namespace tcsl {

// Computational intensity (FLOP per byte of global traffic) of C = A * B
// with A m x k f16, B k x n f16, operands streamed once, outputs not
// charged: 2*m*k*n / (2*m*k + 2*k*n) = m*n / (m + n). k cancels.
double ci_dense(double m, double n);

// Sparse A at sparsity beta carries 2*(1-beta) bytes per logical element
// (4-byte entries on the surviving fraction): m*n / (m*(1-beta) + n).
double ci_sparse(double m, double n, double beta);

struct RooflinePoint {
  double ci = 0.0;
  double utilization = 0.0;  // attainable fraction of peak, in [0, 1]
  double ridge = 0.0;        // peak / bw_gmem, FLOP per byte
  bool memory_bound = false;
};

RooflinePoint roofline_utilization(double ci, const HardwareParams& hw = {});

// 2*M*K*N FLOP over the kernel time, in TFLOP/s.
double throughput_tflops(double m, double k, double n, double seconds);

struct MemoryReport {
  double dense_bytes = 0.0;
  double tcsl_bytes = 0.0;  // estimate incl. mean group padding + offsets
  double ratio = 0.0;
  std::string flag;  // "saving" | "no-saving" | "counterproductive"
};

MemoryReport memory_report(std::int64_t m, std::int64_t k, double beta, const TileConfig& cfg = {});

struct AnalysisRow {
  int m = 0, k = 0, n = 0;
  double beta = 0.0;
  double ci_dense = 0.0, ci_sparse = 0.0;
  double util_dense = 0.0, util_sparse = 0.0;
  double dense_bytes = 0.0, tcsl_bytes = 0.0, ratio = 0.0;
};

AnalysisRow analyze_shape(int m, int k, int n, double beta, const HardwareParams& hw = {},
                          const TileConfig& cfg = {});

std::string csv_header();
std::string to_csv(const AnalysisRow& r);
std::string to_json(const AnalysisRow& r);

}  // namespace tcsl
