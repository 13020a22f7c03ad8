#include "tcsl/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace tcsl {

namespace {

void check_pos(double v, const char* what) {
  if (!(v > 0)) raise(Errc::invalid_argument, std::string(what) + " must be positive");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

double ci_dense(double m, double n) {
  check_pos(m, "m");
  check_pos(n, "n");
  return m * n / (m + n);
}

double ci_sparse(double m, double n, double beta) {
  check_pos(m, "m");
  check_pos(n, "n");
  if (!(beta >= 0.0 && beta <= 1.0)) raise(Errc::invalid_argument, "sparsity must be in [0, 1]");
  return m * n / (m * (1.0 - beta) + n);
}

RooflinePoint roofline_utilization(double ci, const HardwareParams& hw) {
  check_pos(ci, "ci");
  check_pos(hw.peak_tc_flops, "peak");
  check_pos(hw.bw_gmem, "bw_gmem");
  RooflinePoint p;
  p.ci = ci;
  p.ridge = hw.peak_tc_flops / hw.bw_gmem;
  p.utilization = std::min(1.0, ci * hw.bw_gmem / hw.peak_tc_flops);
  p.memory_bound = ci < p.ridge;
  return p;
}

double throughput_tflops(double m, double k, double n, double seconds) {
  check_pos(m, "m");
  check_pos(k, "k");
  check_pos(n, "n");
  check_pos(seconds, "seconds");
  return 2.0 * m * k * n / seconds / 1e12;
}

MemoryReport memory_report(std::int64_t m, std::int64_t k, double beta, const TileConfig& cfg) {
  cfg.validate();
  if (m <= 0 || k <= 0) raise(Errc::invalid_argument, "matrix dims must be positive");
  if (!(beta >= 0.0 && beta <= 1.0)) raise(Errc::invalid_argument, "sparsity must be in [0, 1]");

  const double num_tiles = static_cast<double>(div_up(m, cfg.m_tb)) * div_up(k, cfg.k_tb);
  // Expected entries: surviving nonzeros plus the mean 16 padding entries
  // that rounding each tile up to whole 32-entry groups costs.
  const double entries = num_tiles * ((1.0 - beta) * cfg.tile_elems() + 16.0);

  MemoryReport r;
  r.dense_bytes = 2.0 * static_cast<double>(m) * static_cast<double>(k);
  r.tcsl_bytes = 4.0 * entries + 4.0 * (num_tiles + 1.0) + 28.0;
  r.ratio = r.tcsl_bytes / r.dense_bytes;
  r.flag = r.ratio >= 1.25 ? "counterproductive" : r.ratio >= 0.90 ? "no-saving" : "saving";
  return r;
}

AnalysisRow analyze_shape(int m, int k, int n, double beta, const HardwareParams& hw,
                          const TileConfig& cfg) {
  AnalysisRow r;
  r.m = m;
  r.k = k;
  r.n = n;
  r.beta = beta;
  r.ci_dense = ci_dense(m, n);
  r.ci_sparse = ci_sparse(m, n, beta);
  r.util_dense = roofline_utilization(r.ci_dense, hw).utilization;
  r.util_sparse = roofline_utilization(r.ci_sparse, hw).utilization;
  const MemoryReport mem = memory_report(m, k, beta, cfg);
  r.dense_bytes = mem.dense_bytes;
  r.tcsl_bytes = mem.tcsl_bytes;
  r.ratio = mem.ratio;
  return r;
}

std::string csv_header() {
  return "m,k,n,beta,ci_dense,ci_sparse,util_dense,util_sparse,dense_bytes,tcsl_bytes,ratio";
}

std::string to_csv(const AnalysisRow& r) {
  std::ostringstream o;
  o << r.m << ',' << r.k << ',' << r.n << ',' << fmt(r.beta) << ',' << fmt(r.ci_dense) << ','
    << fmt(r.ci_sparse) << ',' << fmt(r.util_dense) << ',' << fmt(r.util_sparse) << ','
    << fmt(r.dense_bytes) << ',' << fmt(r.tcsl_bytes) << ',' << fmt(r.ratio);
  return o.str();
}

std::string to_json(const AnalysisRow& r) {
  std::ostringstream o;
  o << "{\"m\":" << r.m << ",\"k\":" << r.k << ",\"n\":" << r.n << ",\"beta\":" << fmt(r.beta)
    << ",\"ci_dense\":" << fmt(r.ci_dense) << ",\"ci_sparse\":" << fmt(r.ci_sparse)
    << ",\"util_dense\":" << fmt(r.util_dense) << ",\"util_sparse\":" << fmt(r.util_sparse)
    << ",\"dense_bytes\":" << fmt(r.dense_bytes) << ",\"tcsl_bytes\":" << fmt(r.tcsl_bytes)
    << ",\"ratio\":" << fmt(r.ratio) << "}";
  return o.str();
}

}  // namespace tcsl
