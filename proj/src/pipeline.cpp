#include "tcsl/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "tcsl/extract_sim.hpp"
#include "tcsl/tcsl_format.hpp"

namespace tcsl {

const char* stage_name(StageKind k) {
  switch (k) {
    case StageKind::rst_smem: return "rst_smem";
    case StageKind::gmem2reg: return "gmem2reg";
    case StageKind::ld_dense: return "ld_dense";
    case StageKind::smem2tc: return "smem2tc";
    case StageKind::barrier_async1: return "barrier_async1";
    case StageKind::extract: return "extract";
    case StageKind::barrier_iter: return "barrier_iter";
  }
  return "?";
}

const char* resource_name(Resource r) {
  switch (r) {
    case Resource::gmem: return "gmem";
    case Resource::smem: return "smem";
    case Resource::tensor_core: return "tensor_core";
    case Resource::none: return "none";
  }
  return "?";
}

int EventTimeline::index_of(StageKind kind, int iteration) const {
  for (std::size_t i = 0; i < events.size(); ++i)
    if (events[i].kind == kind && events[i].iteration == iteration) return static_cast<int>(i);
  return -1;
}

EventTimeline build_schedule(int M, int K, int N, double beta, const TileConfig& cfg,
                             double wavefronts_per_group) {
  cfg.validate();
  if (M <= 0 || K <= 0 || N <= 0) raise(Errc::invalid_argument, "shape dims must be positive");
  if (!(beta >= 0.0 && beta <= 1.0)) raise(Errc::invalid_argument, "sparsity must be in [0, 1]");
  if (!(wavefronts_per_group >= 0.0)) raise(Errc::invalid_argument, "wavefronts must be >= 0");

  EventTimeline t;
  t.m = M;
  t.k = K;
  t.n = N;
  t.beta = beta;
  t.cfg = cfg;
  t.n_tb = tile_n_for(N);
  t.iterations = div_up(K, cfg.k_tb);
  t.row_blocks = div_up(M, cfg.m_tb);
  t.col_blocks = div_up(N, t.n_tb);
  t.wavefronts_per_group = wavefronts_per_group;

  // Expected nonzeros per tile, padded up to whole 32-entry groups.
  const double nnz = std::round((1.0 - beta) * cfg.tile_elems());
  t.entries_per_tile = std::ceil(nnz / kGroupSize) * kGroupSize;
  const double groups_per_tile = t.entries_per_tile / kGroupSize;

  const double cost_rst = 2.0 * cfg.tile_elems();
  const double cost_g2r = 4.0 * t.entries_per_tile;
  const double cost_ld = 2.0 * cfg.k_tb * t.n_tb;
  const double cost_tc = 2.0 * cfg.m_tb * static_cast<double>(t.n_tb) * cfg.k_tb;
  const double cost_ext = groups_per_tile * wavefronts_per_group * 128.0;

  const int T = t.iterations;
  t.events.reserve(static_cast<std::size_t>(T) * 7);
  // Event slots per iteration, in issue order. smem2tc(id) drains the buffer
  // pair filled in iteration id-1 while iteration id's loads are in flight;
  // smem2tc(0) is fed by the prologue, smem2tc(T-1) is the epilogue pass.
  for (int id = 0; id < T; ++id) {
    const int buf = id % 2;
    t.events.push_back({StageKind::rst_smem, id, buf, Resource::smem, cost_rst});
    t.events.push_back({StageKind::gmem2reg, id, buf, Resource::gmem, cost_g2r});
    t.events.push_back({StageKind::ld_dense, id, buf, Resource::gmem, cost_ld});
    t.events.push_back({StageKind::smem2tc, id, buf, Resource::tensor_core, cost_tc});
    t.events.push_back({StageKind::barrier_async1, id, buf, Resource::none, 0.0});
    t.events.push_back({StageKind::extract, id, buf, Resource::smem, cost_ext});
    t.events.push_back({StageKind::barrier_iter, id, buf, Resource::none, 0.0});
  }

  const auto at = [&](StageKind k, int id) { return id * 7 + static_cast<int>(k); };
  static_assert(static_cast<int>(StageKind::rst_smem) == 0 && static_cast<int>(StageKind::barrier_iter) == 6);
  for (int id = 0; id < T; ++id) {
    // R1: the scatter waits for the buffer reset (through the async barrier)
    // and for its register payload.
    t.edges.emplace_back(at(StageKind::rst_smem, id), at(StageKind::barrier_async1, id));
    t.edges.emplace_back(at(StageKind::barrier_async1, id), at(StageKind::extract, id));
    t.edges.emplace_back(at(StageKind::gmem2reg, id), at(StageKind::extract, id));
    // R3: the iteration barrier drains this iteration's loads and the
    // tensor-core pass still running from the previous one.
    t.edges.emplace_back(at(StageKind::extract, id), at(StageKind::barrier_iter, id));
    t.edges.emplace_back(at(StageKind::ld_dense, id), at(StageKind::barrier_iter, id));
    if (id >= 1) {
      t.edges.emplace_back(at(StageKind::smem2tc, id - 1), at(StageKind::barrier_iter, id));
      // R2: the tensor-core pass starts once the previous iteration's
      // barrier published the buffers it consumes.
      t.edges.emplace_back(at(StageKind::barrier_iter, id - 1), at(StageKind::smem2tc, id));
      // R4: gmem2reg reuses the registers the previous extract drained.
      t.edges.emplace_back(at(StageKind::barrier_iter, id - 1), at(StageKind::gmem2reg, id));
    }
  }
  return t;
}

double measure_wavefronts_per_group(double beta, const TileConfig& cfg, std::uint64_t seed,
                                    int sample_tiles) {
  cfg.validate();
  if (sample_tiles <= 0) raise(Errc::invalid_argument, "sample_tiles must be positive");
  std::size_t groups = 0, wavefronts = 0;
  for (int i = 0; i < sample_tiles; ++i) {
    const HalfMatrix tile =
        gen_random_sparse(cfg.m_tb, cfg.k_tb, beta, seed + static_cast<std::uint64_t>(i) * 0x9E3779B9u);
    const WavefrontStats s = matrix_extract_stats(encode(tile, cfg, true));
    groups += s.groups;
    wavefronts += s.total_wavefronts;
  }
  return groups ? static_cast<double>(wavefronts) / static_cast<double>(groups) : 1.0;
}

namespace {

struct Graph {
  int n = 0;
  std::vector<std::vector<int>> out;

  explicit Graph(const EventTimeline& t) : n(static_cast<int>(t.events.size())), out(t.events.size()) {
    for (const auto& [from, to] : t.edges)
      if (from >= 0 && from < n && to >= 0 && to < n) out[static_cast<std::size_t>(from)].push_back(to);
  }

  bool reaches(int from, int to) const {
    if (from < 0 || to < 0) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<int> q{from};
    seen[static_cast<std::size_t>(from)] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      if (v == to) return true;
      for (int w : out[static_cast<std::size_t>(v)])
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          q.push_back(w);
        }
    }
    return false;
  }

  bool acyclic() const {
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (const auto& adj : out)
      for (int w : adj) ++indeg[static_cast<std::size_t>(w)];
    std::deque<int> q;
    for (int v = 0; v < n; ++v)
      if (indeg[static_cast<std::size_t>(v)] == 0) q.push_back(v);
    int done = 0;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      ++done;
      for (int w : out[static_cast<std::size_t>(v)])
        if (--indeg[static_cast<std::size_t>(w)] == 0) q.push_back(w);
    }
    return done == n;
  }
};

}  // namespace

std::vector<Violation> validate_schedule(const EventTimeline& t) {
  std::vector<Violation> v;
  int iterations = 0;
  for (const auto& e : t.events) iterations = std::max(iterations, e.iteration + 1);
  if (iterations == 0) {
    v.push_back({"structure", -1, "timeline has no events"});
    return v;
  }

  // Every iteration carries one event of each kind.
  for (int id = 0; id < iterations; ++id)
    for (int k = 0; k <= static_cast<int>(StageKind::barrier_iter); ++k)
      if (t.index_of(static_cast<StageKind>(k), id) < 0)
        v.push_back({"structure", id, std::string("missing ") + stage_name(static_cast<StageKind>(k))});
  if (!v.empty()) return v;

  const Graph g(t);
  if (!g.acyclic()) v.push_back({"acyclic", -1, "dependency graph has a cycle"});

  const auto require = [&](const char* rule, int id, StageKind from, int fid, StageKind to, int tid) {
    if (!g.reaches(t.index_of(from, fid), t.index_of(to, tid)))
      v.push_back({rule, id, std::string(stage_name(to)) + "(" + std::to_string(tid) +
                                ") does not wait for " + stage_name(from) + "(" + std::to_string(fid) + ")"});
  };

  for (int id = 0; id < iterations; ++id) {
    require("R1", id, StageKind::rst_smem, id, StageKind::extract, id);
    require("R1", id, StageKind::gmem2reg, id, StageKind::extract, id);
    if (id >= 1) require("R2", id, StageKind::barrier_iter, id - 1, StageKind::smem2tc, id);
    require("R3", id, StageKind::extract, id, StageKind::barrier_iter, id);
    require("R3", id, StageKind::ld_dense, id, StageKind::barrier_iter, id);
    if (id >= 1) require("R3", id, StageKind::smem2tc, id - 1, StageKind::barrier_iter, id);
    if (id >= 1) require("R4", id, StageKind::barrier_iter, id - 1, StageKind::gmem2reg, id);
  }
  return v;
}

TimeEstimate estimate_time(const EventTimeline& t, const HardwareParams& hw) {
  if (hw.peak_tc_flops <= 0 || hw.bw_gmem <= 0 || hw.bw_smem <= 0)
    raise(Errc::invalid_argument, "hardware rates must be positive");
  t.cfg.validate();

  TimeEstimate e;
  const double grid = static_cast<double>(t.row_blocks) * t.col_blocks;
  const double num_tiles = static_cast<double>(t.row_blocks) * t.iterations;
  const double offset_bytes = 4.0 * (num_tiles + 1.0);
  const double smem_reads_per_tc = 2.0 * (t.cfg.tile_elems() + static_cast<double>(t.cfg.k_tb) * t.n_tb);

  // Streams: the sparse operand and its offsets are charged once over the
  // whole kernel (row blocks each own their slice, column blocks reuse it),
  // the dense operand once (row blocks reuse it); smem traffic and FLOPs are
  // per thread block and scale with the grid.
  for (const auto& ev : t.events) {
    switch (ev.kind) {
      case StageKind::gmem2reg: e.a_bytes += ev.cost * t.row_blocks; break;
      case StageKind::ld_dense: e.b_bytes += ev.cost * t.col_blocks; break;
      case StageKind::rst_smem:
      case StageKind::extract: e.smem_bytes += ev.cost * grid; break;
      case StageKind::smem2tc:
        e.tc_flop += ev.cost * grid;
        e.smem_bytes += smem_reads_per_tc * grid;
        break;
      default: break;
    }
  }
  e.a_bytes += offset_bytes;

  e.gmem_s = (e.a_bytes + e.b_bytes) / hw.bw_gmem;
  e.smem_s = e.smem_bytes / hw.bw_smem;
  e.tc_s = e.tc_flop / hw.peak_tc_flops;
  e.kernel_s = std::max({e.gmem_s, e.smem_s, e.tc_s});
  e.bound = e.kernel_s == e.gmem_s ? Resource::gmem
            : e.kernel_s == e.smem_s ? Resource::smem
                                     : Resource::tensor_core;
  e.a_exceeds_dense = e.a_bytes > 2.0 * static_cast<double>(t.m) * t.k;

  // Per-iteration view of one thread block, same attribution.
  int iterations = 0;
  for (const auto& ev : t.events) iterations = std::max(iterations, ev.iteration + 1);
  e.per_iteration.resize(static_cast<std::size_t>(iterations));
  for (int id = 0; id < iterations; ++id) e.per_iteration[static_cast<std::size_t>(id)].iteration = id;
  for (const auto& ev : t.events) {
    auto& it = e.per_iteration[static_cast<std::size_t>(ev.iteration)];
    switch (ev.kind) {
      case StageKind::gmem2reg:
      case StageKind::ld_dense: it.gmem_s += ev.cost / hw.bw_gmem; break;
      case StageKind::rst_smem:
      case StageKind::extract: it.smem_s += ev.cost / hw.bw_smem; break;
      case StageKind::smem2tc:
        it.tc_s += ev.cost / hw.peak_tc_flops;
        it.smem_s += smem_reads_per_tc / hw.bw_smem;
        break;
      default: break;
    }
  }
  return e;
}

std::string to_json(const EventTimeline& t) {
  std::ostringstream o;
  o << "{\"shape\":{\"m\":" << t.m << ",\"k\":" << t.k << ",\"n\":" << t.n << "},\"beta\":" << t.beta
    << ",\"tile\":{\"m_tb\":" << t.cfg.m_tb << ",\"k_tb\":" << t.cfg.k_tb
    << ",\"n_tb\":" << t.n_tb << ",\"threads\":" << t.cfg.threads_per_block << "}"
    << ",\"iterations\":" << t.iterations << ",\"row_blocks\":" << t.row_blocks
    << ",\"col_blocks\":" << t.col_blocks << ",\"entries_per_tile\":" << t.entries_per_tile
    << ",\"wavefronts_per_group\":" << t.wavefronts_per_group << ",\"events\":[";
  for (std::size_t i = 0; i < t.events.size(); ++i) {
    const auto& ev = t.events[i];
    if (i) o << ",";
    o << "{\"kind\":\"" << stage_name(ev.kind) << "\",\"iter\":" << ev.iteration
      << ",\"buffer\":" << ev.buffer << ",\"resource\":\"" << resource_name(ev.resource)
      << "\",\"cost\":" << ev.cost << "}";
  }
  o << "],\"edges\":[";
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    if (i) o << ",";
    o << "[" << t.edges[i].first << "," << t.edges[i].second << "]";
  }
  o << "]}";
  return o.str();
}

std::string to_json(const TimeEstimate& e) {
  std::ostringstream o;
  o.precision(12);
  o << "{\"gmem_s\":" << e.gmem_s << ",\"smem_s\":" << e.smem_s << ",\"tc_s\":" << e.tc_s
    << ",\"kernel_s\":" << e.kernel_s << ",\"bound\":\"" << resource_name(e.bound) << "\""
    << ",\"a_bytes\":" << e.a_bytes << ",\"b_bytes\":" << e.b_bytes
    << ",\"smem_bytes\":" << e.smem_bytes << ",\"tc_flop\":" << e.tc_flop
    << ",\"a_exceeds_dense\":" << (e.a_exceeds_dense ? "true" : "false") << ",\"per_iteration\":[";
  for (std::size_t i = 0; i < e.per_iteration.size(); ++i) {
    const auto& it = e.per_iteration[i];
    if (i) o << ",";
    o << "{\"iter\":" << it.iteration << ",\"gmem_s\":" << it.gmem_s << ",\"smem_s\":" << it.smem_s
      << ",\"tc_s\":" << it.tc_s << "}";
  }
  o << "]}";
  return o.str();
}

std::string to_json(const std::vector<Violation>& v) {
  std::ostringstream o;
  o << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) o << ",";
    o << "{\"rule\":\"" << v[i].rule << "\",\"iteration\":" << v[i].iteration << ",\"detail\":\""
      << v[i].detail << "\"}";
  }
  o << "]";
  return o.str();
}

}  // namespace tcsl
