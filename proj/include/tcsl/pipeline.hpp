#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcsl/matrix.hpp"

namespace tcsl {

struct HardwareParams {
  double peak_tc_flops = 312e12;   // tensor-core peak, FLOP/s
  double bw_gmem = 2.0e12;         // global-memory bandwidth, B/s
  double bw_smem = 19.49e12;       // shared-memory bandwidth, B/s
};

enum class StageKind : int {
  rst_smem,        // async reset of next iteration's sparse smem buffer
  gmem2reg,        // sparse entries, global -> registers
  ld_dense,        // dense operand tile, global -> smem
  smem2tc,         // the tensor-core pass over the previous buffer pair
  barrier_async1,  // wait until at most one async copy batch is in flight
  extract,         // registers -> smem scatter of the sparse tile
  barrier_iter,    // end-of-iteration wait for all async copies
};

enum class Resource : int { gmem, smem, tensor_core, none };

const char* stage_name(StageKind k);
const char* resource_name(Resource r);

// cost is bytes for gmem/smem stages, FLOP for smem2tc, 0 for barriers.
// The smem2tc stage additionally reads 2*(m_tb*k_tb + k_tb*n_tb) smem bytes;
// estimate_time derives that from the timeline config so the event keeps a
// single cost number.
struct StageEvent {
  StageKind kind;
  int iteration;
  int buffer;  // iteration mod 2 (double buffering)
  Resource resource;
  double cost;
};

// Dependency graph for one thread block's K-loop, double-buffered:
// iteration id issues the loads of buffer id%2 while the tensor-core pass
// smem2tc(id) drains the pair filled in iteration id-1. Ordering rules:
//   R1  extract(id) after rst_smem(id) and gmem2reg(id)
//   R2  smem2tc(id) after barrier_iter(id-1)
//   R3  barrier_iter(id) after extract(id), ld_dense(id), smem2tc(id-1)
//   R4  gmem2reg(id) after barrier_iter(id-1)
// smem2tc(0) is fed by the prologue and has no in-edge; smem2tc(T-1) is the
// epilogue pass with no out-edge. A one-iteration pipeline is prologue only:
// no inter-iteration edges exist.
struct EventTimeline {
  int m = 0, k = 0, n = 0;
  double beta = 0.0;
  TileConfig cfg;
  int n_tb = 0;
  int iterations = 0;  // K_pad / k_tb
  int row_blocks = 0;  // M_pad / m_tb
  int col_blocks = 0;  // N_pad / n_tb
  double entries_per_tile = 0.0;       // group-padded model estimate
  double wavefronts_per_group = 1.0;   // extract-sim measurement fed in
  std::vector<StageEvent> events;
  std::vector<std::pair<int, int>> edges;  // indices into events, from -> to

  int index_of(StageKind kind, int iteration) const;  // -1 when absent
};

EventTimeline build_schedule(int M, int K, int N, double beta, const TileConfig& cfg = {},
                             double wavefronts_per_group = 1.0);

// Mean extract wavefronts per group of a random tile at the given sparsity,
// measured by encoding sample_tiles tiles (reordered) and running the
// extract simulator.
double measure_wavefronts_per_group(double beta, const TileConfig& cfg = {},
                                    std::uint64_t seed = 7, int sample_tiles = 32);

struct Violation {
  std::string rule;  // "R1".."R4", "acyclic", "structure"
  int iteration;     // -1 when not tied to one iteration
  std::string detail;
};

// Checks R1..R4 as reachability over the edge set plus global acyclicity.
// Empty result means the timeline is a valid schedule.
std::vector<Violation> validate_schedule(const EventTimeline& t);

struct IterationBreakdown {
  int iteration;
  double gmem_s, smem_s, tc_s;  // one thread block's iteration, per resource
};

// Bucket model: each resource is an independent stream; the kernel takes as
// long as its slowest stream. Gmem charges the sparse operand once
// (4*total_entries + offset array) and the dense operand once (2*K*N),
// Smem and TC scale with the whole thread-block grid.
struct TimeEstimate {
  double gmem_s = 0, smem_s = 0, tc_s = 0;
  double kernel_s = 0;
  Resource bound = Resource::none;
  double a_bytes = 0, b_bytes = 0, smem_bytes = 0, tc_flop = 0;
  bool a_exceeds_dense = false;  // sparse stream bigger than dense 2*M*K
  std::vector<IterationBreakdown> per_iteration;
};

TimeEstimate estimate_time(const EventTimeline& t, const HardwareParams& hw = {});

std::string to_json(const EventTimeline& t);
std::string to_json(const TimeEstimate& e);
std::string to_json(const std::vector<Violation>& v);

}  // namespace tcsl
