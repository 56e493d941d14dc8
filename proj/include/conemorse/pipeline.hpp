#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "conemorse/geodesics.hpp"
#include "conemorse/homology.hpp"
#include "conemorse/morse.hpp"
#include "conemorse/path_space.hpp"

namespace conemorse {

struct ComplexOptions {
  int segments = 64;
  // Vertex-routed samples. Fewer than ~500 leaves the merges at the broken
  // level noticeably early, so a strip of 0.1 around 4 misses one of them.
  int samples = 600;
  std::optional<double> rips_scale;  // default: 2x mean nearest-neighbour distance
};

struct SampledComplex {
  MorseInput input;
  double rips_scale = 0.0;
  PersistencePairs persistence;
};

/// Enumerate geodesics, sample the homotopies between each classical geodesic
/// and the broken one, and build the energy-filtered Rips complex on them.
SampledComplex build_sampled_complex(const ConeSurface& surface, const ConePoint& p,
                                     const ConePoint& q, const ComplexOptions& options = {});

struct FlowPlan {
  int samples = 200;
  std::uint64_t seed = 1;
  int segments = 64;
  double amplitude = 0.25;
  FlowOptions flow;
  double energy_tol = 1e-4;  // absolute, for matching limits to geodesics
};

struct FlowRecord {
  double initial_energy = 0.0;
  double final_energy = 0.0;
  int iterations = 0;
  bool converged = false;
  bool monotone = true;
  std::optional<GeodesicKind> limit;
};

struct FlowSummary {
  std::vector<FlowRecord> records;  // in sample order
  std::vector<int> basin_hits;      // parallel to the geodesic list
  int unconverged = 0;
  int unresolved = 0;  // converged but matching no geodesic

  int converged() const noexcept {
    return static_cast<int>(records.size()) - unconverged;
  }
  bool all_monotone() const noexcept;
};

/// Flow randomly perturbed starts to critical points and classify the limits.
FlowSummary run_flows(const ConeSurface& surface, const ConePoint& p, const ConePoint& q,
                      const GeodesicSet& geodesics, const FlowPlan& plan);

}  // namespace conemorse
