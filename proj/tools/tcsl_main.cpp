// Command-line front end: generate, prune, encode/decode, multiply, and run
// the analytical models. Exit codes: 0 ok, 1 failed check, 2 usage error,
// 3 broken input file or i/o failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tcsl/analysis.hpp"
#include "tcsl/engine.hpp"
#include "tcsl/extract_sim.hpp"
#include "tcsl/fldm.hpp"
#include "tcsl/gemm.hpp"
#include "tcsl/pipeline.hpp"
#include "tcsl/tcsl_format.hpp"

namespace {

struct Shape {
  int m = 0, k = 0, n = 0;
};

Shape parse_shape(const std::string& s) {
  Shape sh;
  char extra = 0;
  if (std::sscanf(s.c_str(), "%d,%d,%d%c", &sh.m, &sh.k, &sh.n, &extra) != 3)
    tcsl::raise(tcsl::Errc::invalid_argument, "--shape wants M,K,N, got '" + s + "'");
  return sh;
}

std::vector<Shape> parse_shapes(const std::string& s) {
  std::vector<Shape> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!item.empty()) out.push_back(parse_shape(item));
  if (out.empty()) tcsl::raise(tcsl::Errc::invalid_argument, "--shapes wants M,K,N;M,K,N;...");
  return out;
}

std::vector<double> parse_doubles(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        tcsl::raise(tcsl::Errc::invalid_argument, std::string(what) + ": bad number '" + item + "'");
      }
    }
  if (out.empty()) tcsl::raise(tcsl::Errc::invalid_argument, std::string(what) + " is empty");
  return out;
}

tcsl::HardwareParams parse_hw(const std::string& s) {
  tcsl::HardwareParams hw;
  if (s.empty()) return hw;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      tcsl::raise(tcsl::Errc::invalid_argument, "--hw wants key=value pairs, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    double value = 0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      tcsl::raise(tcsl::Errc::invalid_argument, "--hw: bad number in '" + item + "'");
    }
    if (key == "peak")
      hw.peak_tc_flops = value;
    else if (key == "bw" || key == "bw_gmem")
      hw.bw_gmem = value;
    else if (key == "bw_smem")
      hw.bw_smem = value;
    else
      tcsl::raise(tcsl::Errc::invalid_argument, "--hw: unknown key '" + key + "'");
  }
  return hw;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) tcsl::raise(tcsl::Errc::io_failure, "cannot open " + path + " for writing");
  out << text;
  if (!out) tcsl::raise(tcsl::Errc::io_failure, "cannot write " + path);
}

// The decoder-layer MatMul shapes (3h,h | h,h | 4h,h | h,4h) for the three
// hidden sizes the benchmark defaults cover.
std::vector<Shape> default_bench_shapes() {
  std::vector<Shape> out;
  for (int h : {7168, 9216, 12288})
    for (auto [m, k] : {std::pair{3 * h, h}, {h, h}, {4 * h, h}, {h, 4 * h}})
      for (int n : {8, 16, 32, 64}) out.push_back({m, k, n});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tiled sparse-codec laboratory"};
  app.require_subcommand(1);
  int result = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random sparse f16 matrix");
  int g_rows = 0, g_cols = 0;
  double g_beta = 0.0;
  std::uint64_t g_seed = 1;
  std::string g_out;
  gen->add_option("--rows", g_rows, "row count")->required();
  gen->add_option("--cols", g_cols, "column count")->required();
  gen->add_option("--sparsity", g_beta, "zero fraction in [0,1]");
  gen->add_option("--seed", g_seed, "rng seed");
  gen->add_option("-o,--out", g_out, "output FLDM path")->required();
  gen->callback([&] { tcsl::save_fldm(g_out, tcsl::gen_random_sparse(g_rows, g_cols, g_beta, g_seed)); });

  // prune
  auto* prune = app.add_subcommand("prune", "magnitude-prune an f16 matrix");
  std::string p_in, p_out;
  double p_beta = 0.0;
  prune->add_option("-i,--in", p_in, "input FLDM path")->required();
  prune->add_option("--sparsity", p_beta, "target zero fraction")->required();
  prune->add_option("-o,--out", p_out, "output FLDM path")->required();
  prune->callback(
      [&] { tcsl::save_fldm(p_out, tcsl::prune_magnitude(tcsl::load_fldm_f16(p_in), p_beta)); });

  // encode
  auto* enc = app.add_subcommand("encode", "encode an f16 matrix into the tiled sparse format");
  std::string e_in, e_out;
  bool e_no_reorder = false;
  tcsl::TileConfig e_cfg;
  enc->add_option("-i,--in", e_in, "input FLDM path")->required();
  enc->add_option("-o,--out", e_out, "output TCSL path")->required();
  enc->add_flag("--no-reorder", e_no_reorder, "keep row-major scan order");
  enc->add_option("--tile-m", e_cfg.m_tb, "tile rows (default 128)");
  enc->add_option("--tile-k", e_cfg.k_tb, "tile columns (default 64)");
  enc->callback([&] {
    const tcsl::TcslMatrix t = tcsl::encode(tcsl::load_fldm_f16(e_in), e_cfg, !e_no_reorder);
    const int reg = tcsl::reg_pressure(t);
    if (reg > tcsl::kRegPressureWarnLimit)
      std::cerr << "warning: register pressure " << reg << " exceeds "
                << tcsl::kRegPressureWarnLimit << " entries per thread\n";
    tcsl::save_tcsl(e_out, t);
  });

  // decode
  auto* dec = app.add_subcommand("decode", "decode a TCSL file back to dense f16");
  std::string d_in, d_out;
  dec->add_option("-i,--in", d_in, "input TCSL path")->required();
  dec->add_option("-o,--out", d_out, "output FLDM path")->required();
  dec->callback([&] { tcsl::save_fldm(d_out, tcsl::decode(tcsl::load_tcsl(d_in))); });

  // spmm
  auto* sp = app.add_subcommand("spmm", "sparse x dense multiply");
  std::string s_a, s_b, s_out;
  bool s_check = false, s_f16 = false;
  sp->add_option("-a", s_a, "sparse A, TCSL path")->required();
  sp->add_option("-b", s_b, "dense B, FLDM f16 path")->required();
  sp->add_option("-o,--out", s_out, "output FLDM path");
  sp->add_flag("--check", s_check, "verify against the dense reference");
  sp->add_flag("--out-f16", s_f16, "narrow the f32 result to f16 on write");
  sp->callback([&] {
    if (s_out.empty() && !s_check)
      tcsl::raise(tcsl::Errc::invalid_argument, "spmm needs -o and/or --check");
    const tcsl::TcslMatrix a = tcsl::load_tcsl(s_a);
    const tcsl::HalfMatrix b = tcsl::load_fldm_f16(s_b);
    const tcsl::FloatMatrix c = tcsl::spmm(a, b);
    if (!s_out.empty()) {
      if (s_f16) {
        tcsl::HalfMatrix h(c.rows(), c.cols());
        for (Eigen::Index i = 0; i < c.size(); ++i)
          h.data()[i] = tcsl::half_from_bits(tcsl::f16_from_f32(c.data()[i]));
        tcsl::save_fldm(s_out, h);
      } else {
        tcsl::save_fldm(s_out, c);
      }
    }
    if (s_check) {
      const tcsl::FloatMatrix ref = tcsl::dense_gemm_ref(tcsl::decode(a), b, a.cfg);
      bool same = ref.rows() == c.rows() && ref.cols() == c.cols();
      for (Eigen::Index i = 0; same && i < c.size(); ++i)
        same = std::bit_cast<std::uint32_t>(c.data()[i]) == std::bit_cast<std::uint32_t>(ref.data()[i]);
      std::cout << "bit-exact: " << (same ? "true" : "false") << "\n";
      if (!same) result = 1;
    }
  });

  // analyze
  auto* an = app.add_subcommand("analyze", "intensity / roofline / footprint for one shape");
  std::string a_shape, a_betas = "0.7", a_hw, a_json;
  an->add_option("--shape", a_shape, "M,K,N")->required();
  an->add_option("--sparsity", a_betas, "comma-separated zero fractions");
  an->add_option("--hw", a_hw, "peak=F,bw_gmem=B,bw_smem=B overrides");
  an->add_option("--json", a_json, "write JSON here instead of CSV ('-' = stdout)");
  an->callback([&] {
    const Shape sh = parse_shape(a_shape);
    const tcsl::HardwareParams hw = parse_hw(a_hw);
    std::vector<tcsl::AnalysisRow> rows;
    for (double beta : parse_doubles(a_betas, "--sparsity"))
      rows.push_back(tcsl::analyze_shape(sh.m, sh.k, sh.n, beta, hw));
    if (!a_json.empty()) {
      std::string out = "[";
      for (std::size_t i = 0; i < rows.size(); ++i) out += (i ? "," : "") + tcsl::to_json(rows[i]);
      write_text(a_json, out + "]\n");
    } else {
      std::cout << tcsl::csv_header() << "\n";
      for (const auto& r : rows) std::cout << tcsl::to_csv(r) << "\n";
    }
  });

  // bench
  auto* be = app.add_subcommand("bench", "analytical metrics over a shape sweep");
  std::string b_shapes, b_betas = "0.7,0.8,0.9", b_hw, b_csv = "-";
  be->add_option("--shapes", b_shapes, "M,K,N;M,K,N;... (default: decoder-layer sweep)");
  be->add_option("--sparsities", b_betas, "comma-separated zero fractions");
  be->add_option("--hw", b_hw, "hardware overrides");
  be->add_option("--csv", b_csv, "output path ('-' = stdout)");
  be->callback([&] {
    const std::vector<Shape> shapes = b_shapes.empty() ? default_bench_shapes() : parse_shapes(b_shapes);
    const tcsl::HardwareParams hw = parse_hw(b_hw);
    std::string out = tcsl::csv_header() + "\n";
    for (const Shape& sh : shapes)
      for (double beta : parse_doubles(b_betas, "--sparsities"))
        out += tcsl::to_csv(tcsl::analyze_shape(sh.m, sh.k, sh.n, beta, hw)) + "\n";
    write_text(b_csv, out);
  });

  // pipeline
  auto* pi = app.add_subcommand("pipeline", "build, validate and time the pipeline schedule");
  std::string pl_shape, pl_hw, pl_json;
  double pl_beta = 0.0;
  std::uint64_t pl_seed = 7;
  int pl_samples = 32;
  tcsl::TileConfig pl_cfg;
  pi->add_option("--shape", pl_shape, "M,K,N")->required();
  pi->add_option("--sparsity", pl_beta, "zero fraction");
  pi->add_option("--hw", pl_hw, "hardware overrides");
  pi->add_option("--seed", pl_seed, "wavefront sampling seed");
  pi->add_option("--sample-tiles", pl_samples, "tiles sampled for the extract cost");
  pi->add_option("--tile-m", pl_cfg.m_tb, "tile rows (default 128)");
  pi->add_option("--tile-k", pl_cfg.k_tb, "tile columns (default 64)");
  pi->add_option("--json", pl_json, "write timeline+estimate JSON here ('-' = stdout)");
  pi->callback([&] {
    const Shape sh = parse_shape(pl_shape);
    const tcsl::HardwareParams hw = parse_hw(pl_hw);
    const double wf = tcsl::measure_wavefronts_per_group(pl_beta, pl_cfg, pl_seed, pl_samples);
    const tcsl::EventTimeline t = tcsl::build_schedule(sh.m, sh.k, sh.n, pl_beta, pl_cfg, wf);
    const auto violations = tcsl::validate_schedule(t);
    const tcsl::TimeEstimate est = tcsl::estimate_time(t, hw);
    std::printf("iterations: %d  wavefronts/group: %.4f\n", t.iterations, wf);
    std::printf("gmem: %.6e s  smem: %.6e s  tensor-core: %.6e s\n", est.gmem_s, est.smem_s, est.tc_s);
    std::printf("kernel: %.6e s  bound: %s\n", est.kernel_s, tcsl::resource_name(est.bound));
    std::printf("throughput: %.4f TFLOP/s\n",
                tcsl::throughput_tflops(sh.m, sh.k, sh.n, est.kernel_s));
    if (!violations.empty()) {
      for (const auto& v : violations)
        std::cerr << "violation: " << v.rule << " @ iter " << v.iteration << ": " << v.detail << "\n";
      result = 1;
    }
    if (!pl_json.empty())
      write_text(pl_json, "{\"timeline\":" + tcsl::to_json(t) + ",\"estimate\":" + tcsl::to_json(est) +
                              ",\"violations\":" + tcsl::to_json(violations) + "}\n");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const tcsl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_usage() ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return result;
}
